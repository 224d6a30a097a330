#include "wsc/taxonomy.hpp"

#include <algorithm>

#include "wsc/errors.hpp"

namespace wsc {

Taxonomy Taxonomy::build(const std::vector<ConceptDecl>& concepts) {
  Taxonomy t;
  t.names_.reserve(concepts.size());
  for (const auto& decl : concepts) {
    if (decl.id.empty()) throw ValidationError("concept with empty id");
    auto [it, inserted] =
        t.index_.emplace(decl.id, static_cast<ConceptId>(t.names_.size()));
    if (!inserted) throw ValidationError("duplicate concept id '" + decl.id + "'");
    t.names_.push_back(decl.id);
  }

  const std::size_t n = t.names_.size();
  t.parent_.assign(n, kNoParent);
  for (std::size_t i = 0; i < n; ++i) {
    if (!concepts[i].parent) continue;
    auto it = t.index_.find(*concepts[i].parent);
    if (it == t.index_.end())
      throw ValidationError("concept '" + concepts[i].id +
                            "' references undefined parent '" +
                            *concepts[i].parent + "'");
    t.parent_[i] = it->second;
  }

  // Depth of every concept, rejecting cyclic parent chains.
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 on path, 2 done
  std::vector<std::uint32_t> depth(n, 0);
  std::vector<ConceptId> path;
  for (std::size_t i = 0; i < n; ++i) {
    if (state[i] == 2) continue;
    path.clear();
    ConceptId cur = static_cast<ConceptId>(i);
    while (cur != kNoParent && state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      cur = t.parent_[cur];
    }
    if (cur != kNoParent && state[cur] == 1)
      throw ValidationError("cyclic parent chain at concept '" + t.names_[cur] + "'");
    std::uint32_t d = (cur == kNoParent) ? 0 : depth[cur] + 1;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      depth[*it] = d++;
      state[*it] = 2;
    }
  }

  // Ancestor closure as CSR runs, each run the path from the concept to its
  // root (reflexive, so the concept itself comes first).
  t.closure_offset_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    t.closure_offset_[i + 1] = t.closure_offset_[i] + depth[i] + 1;
  t.closure_.resize(t.closure_offset_[n]);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t at = t.closure_offset_[i];
    for (ConceptId c = static_cast<ConceptId>(i); c != kNoParent; c = t.parent_[c])
      t.closure_[at++] = c;
  }
  return t;
}

std::optional<ConceptId> Taxonomy::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ConceptId Taxonomy::require(std::string_view id) const {
  auto found = find(id);
  if (!found) throw ValidationError("unknown concept id '" + std::string(id) + "'");
  return *found;
}

std::optional<ConceptId> Taxonomy::parent(ConceptId c) const {
  if (parent_[c] == kNoParent) return std::nullopt;
  return parent_[c];
}

std::span<const ConceptId> Taxonomy::ancestors(ConceptId c) const {
  return {closure_.data() + closure_offset_[c],
          closure_.data() + closure_offset_[c + 1]};
}

bool Taxonomy::matches(ConceptId out, ConceptId in) const {
  auto run = ancestors(out);
  return std::find(run.begin(), run.end(), in) != run.end();
}

std::vector<ConceptId> Taxonomy::matched_inputs(std::span<const ConceptId> outs,
                                                std::span<const ConceptId> ins) const {
  std::vector<ConceptId> matched;
  for (ConceptId in : ins) {
    for (ConceptId out : outs) {
      if (matches(out, in)) {
        matched.push_back(in);
        break;
      }
    }
  }
  return matched;
}

void Taxonomy::mark_matched(ConceptId out, std::vector<char>& matched) const {
  for (ConceptId a : ancestors(out)) {
    if (matched[a]) break;  // everything above is already marked
    matched[a] = 1;
  }
}

void Taxonomy::mark_matched(ConceptId out, std::vector<char>& matched,
                            std::vector<ConceptId>& newly_matched) const {
  for (ConceptId a : ancestors(out)) {
    if (matched[a]) break;
    matched[a] = 1;
    newly_matched.push_back(a);
  }
}

}  // namespace wsc
