#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wsc {

using ConceptId = std::uint32_t;

struct ConceptDecl {
  std::string id;
  std::optional<std::string> parent;
};

// Concept hierarchy with the reflexive-transitive ancestor closure baked in at
// construction time. Immutable afterwards; queries are lookups, so instances
// can be shared freely across threads.
//
// An output concept `out` matches an input concept `in` when they are the same
// concept or `out` lies below `in` in the hierarchy.
class Taxonomy {
 public:
  Taxonomy() = default;

  // Validates ids, parent references and acyclicity, then precomputes the
  // ancestor closure. Parent edges must form a forest.
  static Taxonomy build(const std::vector<ConceptDecl>& concepts);

  std::size_t size() const { return names_.size(); }
  std::optional<ConceptId> find(std::string_view id) const;
  ConceptId require(std::string_view id) const;  // throws ValidationError
  const std::string& name(ConceptId c) const { return names_[c]; }
  std::optional<ConceptId> parent(ConceptId c) const;

  // Reflexive-transitive ancestors of c, ordered from c up to its root.
  std::span<const ConceptId> ancestors(ConceptId c) const;

  bool matches(ConceptId out, ConceptId in) const;

  // Subset of `ins` (input order preserved) matched by at least one of `outs`.
  std::vector<ConceptId> matched_inputs(std::span<const ConceptId> outs,
                                        std::span<const ConceptId> ins) const;

  // Marks every concept matched by producing `out`, i.e. all of its ancestors.
  // `matched` must only ever be written through this function so the marked
  // set stays upward closed; that makes the early exit on a seen entry sound.
  void mark_matched(ConceptId out, std::vector<char>& matched) const;
  void mark_matched(ConceptId out, std::vector<char>& matched,
                    std::vector<ConceptId>& newly_matched) const;

 private:
  static constexpr ConceptId kNoParent = std::numeric_limits<ConceptId>::max();

  std::vector<std::string> names_;
  std::unordered_map<std::string, ConceptId> index_;
  std::vector<ConceptId> parent_;
  std::vector<std::uint64_t> closure_offset_;  // CSR offsets into closure_
  std::vector<ConceptId> closure_;             // root-path runs, self first
};

}  // namespace wsc
