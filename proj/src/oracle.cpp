#include "wsc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "wsc/errors.hpp"
#include "wsc/replay.hpp"
#include "wsc/subsets.hpp"

namespace wsc {

namespace {

std::vector<std::uint32_t> indices_by_id(const std::vector<Service>& repo) {
  std::vector<std::uint32_t> order(repo.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return repo[a].id < repo[b].id;
  });
  return order;
}

bool feasible_subset(const std::vector<Service>& repo,
                     std::span<const std::uint32_t> subset, const Request& req,
                     const Taxonomy& t) {
  std::vector<IoView> views;
  views.reserve(subset.size());
  for (std::uint32_t idx : subset)
    views.push_back({repo[idx].inputs, repo[idx].outputs});
  return closure_replay(t, views, req.provided, req.wanted);
}

}  // namespace

OracleResult oracle_min(const std::vector<Service>& repo, const Request& req,
                        const Taxonomy& t, std::uint32_t limit) {
  if (repo.size() > limit)
    throw InstanceTooLarge("oracle limited to " + std::to_string(limit) +
                           " services, got " + std::to_string(repo.size()));

  const auto order = indices_by_id(repo);
  const std::uint32_t n = static_cast<std::uint32_t>(order.size());
  std::uint64_t explored = 0;

  // Increasing cardinality, so the first feasible subset is a true optimum.
  for (std::uint32_t k = 0; k <= n; ++k) {
    std::vector<std::uint32_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::vector<std::uint32_t> subset(k);
      for (std::uint32_t i = 0; i < k; ++i) subset[i] = order[pick[i]];
      ++explored;
      if (feasible_subset(repo, subset, req, t))
        return OracleResult{k, std::move(subset), explored};

      // next k-combination of {0..n-1}
      std::int64_t pos = static_cast<std::int64_t>(k) - 1;
      while (pos >= 0 && pick[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++pick[pos];
      for (std::uint32_t i = static_cast<std::uint32_t>(pos) + 1; i < k; ++i)
        pick[i] = pick[i - 1] + 1;
    }
  }
  throw Infeasible("no service subset satisfies the request");
}

std::uint64_t per_step_oracle(const LayeredGraph& g, const Taxonomy& t, NodeId s,
                              std::span<const NodeId> precs,
                              const std::vector<CompositionRecord>& records) {
  if (precs.size() > 20)
    throw InstanceTooLarge("per-step oracle limited to 20 precursors, got " +
                           std::to_string(precs.size()));

  const GraphNode& node = g.node(s);
  const SubsetTable table = gen_subsets(node.inputs, kDefaultWidthLimit, node.id);
  const std::uint64_t full = table.capacity();
  const std::uint32_t n = static_cast<std::uint32_t>(precs.size());

  std::vector<std::uint64_t> coverage(n);
  for (std::uint32_t i = 0; i < n; ++i)
    coverage[i] =
        table.encode(t.matched_inputs(g.node(precs[i]).outputs, table.base()));

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  ServiceSet invoked(g.node_count());
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << n); ++pick) {
    std::uint64_t covered = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      if (pick & (std::uint64_t{1} << i)) covered |= coverage[i];
    if (covered != full) continue;
    invoked.reset();
    for (std::uint32_t i = 0; i < n; ++i)
      if (pick & (std::uint64_t{1} << i)) invoked |= records[precs[i]].servs;
    best = std::min<std::uint64_t>(best, invoked.count());
  }
  if (best == std::numeric_limits<std::uint64_t>::max())
    throw std::logic_error("no precursor subset covers the inputs of '" +
                           node.id + "'");
  return best;
}

std::vector<std::uint32_t> greedy_baseline(const std::vector<Service>& repo,
                                           const Request& req, const Taxonomy& t) {
  std::vector<char> matched(t.size(), 0);
  for (ConceptId c : req.provided) t.mark_matched(c, matched);

  const auto order = indices_by_id(repo);
  std::vector<char> invoked(repo.size(), 0);
  std::vector<std::uint32_t> chosen;

  auto unmatched_wanted = [&] {
    std::size_t n = 0;
    for (ConceptId w : req.wanted)
      if (!matched[w]) ++n;
    return n;
  };

  while (unmatched_wanted() > 0) {
    std::int64_t best = -1;
    std::size_t best_wanted = 0, best_new = 0;
    for (std::uint32_t idx : order) {
      const Service& sv = repo[idx];
      if (invoked[idx]) continue;
      if (!std::all_of(sv.inputs.begin(), sv.inputs.end(),
                       [&](ConceptId c) { return matched[c] != 0; }))
        continue;
      std::size_t gain_wanted = 0;
      for (ConceptId w : req.wanted)
        if (!matched[w] &&
            std::any_of(sv.outputs.begin(), sv.outputs.end(),
                        [&](ConceptId o) { return t.matches(o, w); }))
          ++gain_wanted;
      std::size_t gain_new = 0;
      for (ConceptId o : sv.outputs)
        if (!matched[o]) ++gain_new;
      if (gain_wanted == 0 && gain_new == 0) continue;
      if (best < 0 || gain_wanted > best_wanted ||
          (gain_wanted == best_wanted && gain_new > best_new)) {
        best = idx;
        best_wanted = gain_wanted;
        best_new = gain_new;
      }
    }
    if (best < 0)
      throw Infeasible("greedy baseline stalled before covering the request");
    const std::uint32_t idx = static_cast<std::uint32_t>(best);
    invoked[idx] = 1;
    chosen.push_back(idx);
    for (ConceptId o : repo[idx].outputs) t.mark_matched(o, matched);
  }
  return chosen;
}

}  // namespace wsc
