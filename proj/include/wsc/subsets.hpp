#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsc/taxonomy.hpp"

namespace wsc {

inline constexpr std::uint32_t kDefaultWidthLimit = 24;

// Mapping between subset indices and subsets of an ordered concept list: bit i
// of an index selects base[i]. Index 0 is the empty set, capacity() the full
// set. Subsets are decoded on demand; the table never materializes all 2^w of
// them.
class SubsetTable {
 public:
  const std::vector<ConceptId>& base() const { return base_; }
  std::uint32_t width() const { return static_cast<std::uint32_t>(base_.size()); }
  std::uint64_t capacity() const { return capacity_; }

  std::vector<ConceptId> subset_at(std::uint64_t index) const;
  std::optional<std::uint32_t> bit_of(ConceptId c) const;

  // Index whose subset is exactly `concepts`; every entry must be in base.
  std::uint64_t encode(std::span<const ConceptId> concepts) const;

 private:
  friend SubsetTable gen_subsets(std::vector<ConceptId>, std::uint32_t,
                                 const std::string&);
  std::vector<ConceptId> base_;
  std::unordered_map<ConceptId, std::uint32_t> bit_;
  std::uint64_t capacity_ = 0;
};

// Builds the index/subset mapping for `base`. Throws InputWidthExceeded when
// base is wider than `width_limit`; `context` names the offending service in
// the error message.
SubsetTable gen_subsets(std::vector<ConceptId> base,
                        std::uint32_t width_limit = kDefaultWidthLimit,
                        const std::string& context = {});

}  // namespace wsc
