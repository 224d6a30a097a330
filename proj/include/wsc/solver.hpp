#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wsc/graph.hpp"
#include "wsc/service_set.hpp"
#include "wsc/subsets.hpp"
#include "wsc/taxonomy.hpp"

namespace wsc {

// Best composition known to end at a service: the set of services it invokes
// (itself included, node-indexed) and its size.
struct CompositionRecord {
  NodeId service = 0;
  ServiceSet servs;
  std::uint32_t len = 0;
};

enum class ItemOrder {
  kLen,    // composition length ascending, then id
  kId,     // id ascending
  kInput,  // graph order (layer, then position)
};

const char* to_string(ItemOrder order);
ItemOrder item_order_from_string(const std::string& name);  // throws ValidationError

struct SolverOptions {
  ItemOrder order = ItemOrder::kLen;
  // Cost the literal way: fresh services plus one, instead of the fresh count
  // alone. Off by default; kept for comparison runs.
  bool alg4_literal = false;
  std::uint32_t width_limit = kDefaultWidthLimit;
  std::uint32_t threads = 1;
  // Re-derive per-state costs from first principles while solving. Slow;
  // meant for tests on small instances.
  bool check_invariants = false;
};

struct StepStats {
  NodeId service = 0;
  std::uint32_t items = 0;
  std::uint64_t v_cap = 0;
  std::uint64_t relaxations = 0;
};

struct StepResult {
  CompositionRecord record;
  std::vector<NodeId> chosen;  // selected items, ascending node id
  std::uint64_t final_cost = 0;
  StepStats stats;
};

// Volume of an item against the residual knapsack subset v: the bit encoding
// of the item outputs that match concepts of subset_at(v).
std::uint64_t dv(const Taxonomy& t, std::span<const ConceptId> item_outputs,
                 const SubsetTable& table, std::uint64_t v);

// Cost of invoking an item given the services already invoked: how many
// services of the item's composition are still missing.
std::uint32_t dc(const ServiceSet& item_servs, const ServiceSet& invoked,
                 bool alg4_literal = false);

// One knapsack step: pick a minimum-cost subset of `items` whose matched
// outputs cover every input of s. Items are scanned in the order given;
// records must already hold a CompositionRecord for each item. The returned
// record composes s on top of the chosen items.
StepResult solve_step(const LayeredGraph& g, const Taxonomy& t, NodeId s,
                      std::span<const NodeId> items,
                      const std::vector<CompositionRecord>& records,
                      const SolverOptions& opts = {});

// Reference solver for the same step keeping the full two-dimensional cost
// and choice tables and recomputing volumes and costs from the set forms.
// Must agree with solve_step exactly; exists to cross-check it.
StepResult solve_step_reference(const LayeredGraph& g, const Taxonomy& t, NodeId s,
                                std::span<const NodeId> items,
                                const std::vector<CompositionRecord>& records,
                                const SolverOptions& opts = {});

std::vector<NodeId> order_items(std::vector<NodeId> precs,
                                const std::vector<CompositionRecord>& records,
                                const LayeredGraph& g, ItemOrder order);

struct SolveResult {
  std::vector<CompositionRecord> records;   // per node
  std::vector<std::vector<NodeId>> plan;    // parallel stages, sequential order
  std::uint32_t len_with_dummies = 0;       // length of the sink composition
  std::uint32_t composition_size = 0;       // dummy-free service count
  std::vector<StepStats> steps;
  ItemOrder order = ItemOrder::kLen;
};

// Layer-by-layer sweep: every service gets its record from solve_step once all
// earlier layers are done. Services within a layer only depend on earlier
// layers, so they may be solved on `opts.threads` workers; results are
// published between layers and identical to the sequential run.
SolveResult solve(const LayeredGraph& g, const Taxonomy& t,
                  const SolverOptions& opts = {});

// Splits the final composition (dummies excluded) into invocation stages by
// graph layer: stages run in order, members of a stage in parallel.
std::vector<std::vector<NodeId>> extract_plan(const CompositionRecord& final_record,
                                              const LayeredGraph& g);

}  // namespace wsc
