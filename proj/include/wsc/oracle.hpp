#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wsc/graph.hpp"
#include "wsc/model.hpp"
#include "wsc/solver.hpp"
#include "wsc/taxonomy.hpp"

namespace wsc {

inline constexpr std::uint32_t kDefaultOracleLimit = 14;

struct OracleResult {
  std::uint32_t optimal_len = 0;           // dummy-free
  std::vector<std::uint32_t> witness;      // repo indices, id order
  std::uint64_t explored = 0;              // subsets tested
};

// Exhaustive minimum: enumerates service subsets in increasing cardinality and
// returns the first one whose closure replay satisfies the request, so the
// result is a true optimum. Throws InstanceTooLarge above `limit` services and
// Infeasible when nothing works.
OracleResult oracle_min(const std::vector<Service>& repo, const Request& req,
                        const Taxonomy& t,
                        std::uint32_t limit = kDefaultOracleLimit);

// Exact minimum for a single knapsack step: over every precursor subset whose
// matched outputs cover the inputs of s, the smallest union of their
// compositions. Limited to 20 precursors.
std::uint64_t per_step_oracle(const LayeredGraph& g, const Taxonomy& t, NodeId s,
                              std::span<const NodeId> precs,
                              const std::vector<CompositionRecord>& records);

// Fast baseline: repeatedly invoke the invocable service covering the most
// still-unmatched wanted concepts (ties by overall new concepts, then id).
// Feasible but not minimal. Returns repo indices in invocation order.
std::vector<std::uint32_t> greedy_baseline(const std::vector<Service>& repo,
                                           const Request& req, const Taxonomy& t);

}  // namespace wsc
