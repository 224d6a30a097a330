#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace wsc {

// Fixed-universe bitset over graph node ids. Only the operations the solver
// needs; arithmetic paths avoid temporaries.
class ServiceSet {
 public:
  ServiceSet() = default;
  explicit ServiceSet(std::size_t universe)
      : size_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const { return size_; }
  bool empty() const;

  void set(std::uint32_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::uint32_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  void reset();

  ServiceSet& operator|=(const ServiceSet& other);

  std::uint32_t count() const;

  // |this − other|
  std::uint32_t count_minus(const ServiceSet& other) const;

  bool operator==(const ServiceSet& other) const = default;

  // Set members in ascending order.
  std::vector<std::uint32_t> members() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline bool ServiceSet::empty() const {
  for (std::uint64_t w : words_)
    if (w != 0) return false;
  return true;
}

inline void ServiceSet::reset() {
  for (std::uint64_t& w : words_) w = 0;
}

inline ServiceSet& ServiceSet::operator|=(const ServiceSet& other) {
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
  return *this;
}

inline std::uint32_t ServiceSet::count() const {
  std::uint32_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint32_t>(std::popcount(w));
  return n;
}

inline std::uint32_t ServiceSet::count_minus(const ServiceSet& other) const {
  std::uint32_t n = 0;
  for (std::size_t k = 0; k < words_.size(); ++k)
    n += static_cast<std::uint32_t>(std::popcount(words_[k] & ~other.words_[k]));
  return n;
}

inline std::vector<std::uint32_t> ServiceSet::members() const {
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    std::uint64_t w = words_[k];
    while (w != 0) {
      out.push_back(static_cast<std::uint32_t>(k * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

}  // namespace wsc
