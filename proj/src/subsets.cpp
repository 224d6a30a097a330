#include "wsc/subsets.hpp"

#include <stdexcept>

#include "wsc/errors.hpp"

namespace wsc {

std::vector<ConceptId> SubsetTable::subset_at(std::uint64_t index) const {
  std::vector<ConceptId> subset;
  for (std::uint32_t i = 0; index != 0; ++i, index >>= 1)
    if (index & 1) subset.push_back(base_[i]);
  return subset;
}

std::optional<std::uint32_t> SubsetTable::bit_of(ConceptId c) const {
  auto it = bit_.find(c);
  if (it == bit_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t SubsetTable::encode(std::span<const ConceptId> concepts) const {
  std::uint64_t index = 0;
  for (ConceptId c : concepts) {
    auto pos = bit_of(c);
    if (!pos) throw std::logic_error("concept not part of the subset base");
    index |= std::uint64_t{1} << *pos;
  }
  return index;
}

SubsetTable gen_subsets(std::vector<ConceptId> base, std::uint32_t width_limit,
                        const std::string& context) {
  if (base.size() > width_limit) {
    std::string msg = "input set of width " + std::to_string(base.size()) +
                      " exceeds the bit-width limit " + std::to_string(width_limit);
    if (!context.empty()) msg += " (service '" + context + "')";
    throw InputWidthExceeded(msg, static_cast<std::uint32_t>(base.size()),
                             width_limit);
  }
  SubsetTable table;
  table.base_ = std::move(base);
  for (std::uint32_t i = 0; i < table.base_.size(); ++i) {
    auto [it, inserted] = table.bit_.emplace(table.base_[i], i);
    if (!inserted) throw std::logic_error("duplicate concept in subset base");
  }
  table.capacity_ = (std::uint64_t{1} << table.base_.size()) - 1;
  return table;
}

}  // namespace wsc
