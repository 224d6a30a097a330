#include "wsc/solver.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <thread>

#include "wsc/errors.hpp"

namespace wsc {

namespace {

constexpr std::uint64_t kInfCost = std::numeric_limits<std::uint64_t>::max() / 4;

// Persistent chosen-item sets: each state points at a node holding the item
// added last, the predecessor state and the cached union of the chosen
// compositions. Extending a set is one cons; copying it is a handle copy.
class ChainArena {
 public:
  static constexpr std::int32_t kEmpty = -1;

  explicit ChainArena(std::size_t universe) : empty_union_(universe) {}

  std::int32_t cons(NodeId item, std::int32_t parent, const ServiceSet& item_servs) {
    ServiceSet combined = union_of(parent);
    combined |= item_servs;
    nodes_.push_back({item, parent, std::move(combined)});
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  const ServiceSet& union_of(std::int32_t state) const {
    return state == kEmpty ? empty_union_ : nodes_[state].servs_union;
  }

  std::vector<NodeId> items_of(std::int32_t state) const {
    std::vector<NodeId> items;
    for (std::int32_t at = state; at != kEmpty; at = nodes_[at].parent)
      items.push_back(nodes_[at].item);
    std::sort(items.begin(), items.end());
    return items;
  }

 private:
  struct Node {
    NodeId item;
    std::int32_t parent;
    ServiceSet servs_union;
  };
  ServiceSet empty_union_;
  std::vector<Node> nodes_;
};

std::uint64_t matched_mask(const Taxonomy& t, std::span<const ConceptId> outputs,
                           const SubsetTable& table) {
  return table.encode(t.matched_inputs(outputs, table.base()));
}

CompositionRecord compose_record(const LayeredGraph& g, NodeId s,
                                 std::span<const NodeId> chosen,
                                 const std::vector<CompositionRecord>& records,
                                 std::uint64_t final_cost) {
  CompositionRecord rec;
  rec.service = s;
  rec.servs = ServiceSet(g.node_count());
  for (NodeId item : chosen) rec.servs |= records[item].servs;
  rec.servs.set(s);
  rec.len = static_cast<std::uint32_t>(final_cost) + 1;
  return rec;
}

}  // namespace

const char* to_string(ItemOrder order) {
  switch (order) {
    case ItemOrder::kLen: return "len";
    case ItemOrder::kId: return "id";
    case ItemOrder::kInput: return "input";
  }
  return "len";
}

ItemOrder item_order_from_string(const std::string& name) {
  if (name == "len") return ItemOrder::kLen;
  if (name == "id") return ItemOrder::kId;
  if (name == "input") return ItemOrder::kInput;
  throw ValidationError("unknown item order '" + name + "'");
}

std::uint64_t dv(const Taxonomy& t, std::span<const ConceptId> item_outputs,
                 const SubsetTable& table, std::uint64_t v) {
  const auto residual = table.subset_at(v);
  const auto provided = t.matched_inputs(item_outputs, residual);
  return table.encode(provided);
}

std::uint32_t dc(const ServiceSet& item_servs, const ServiceSet& invoked,
                 bool alg4_literal) {
  const std::uint32_t fresh = item_servs.count_minus(invoked);
  return alg4_literal ? fresh + 1 : fresh;
}

StepResult solve_step(const LayeredGraph& g, const Taxonomy& t, NodeId s,
                      std::span<const NodeId> items,
                      const std::vector<CompositionRecord>& records,
                      const SolverOptions& opts) {
  const GraphNode& node = g.node(s);
  const SubsetTable table = gen_subsets(node.inputs, opts.width_limit, node.id);
  const std::uint64_t v_cap = table.capacity();
  const std::uint32_t n = static_cast<std::uint32_t>(items.size());

  std::vector<std::uint64_t> item_mask(n);
  for (std::uint32_t i = 0; i < n; ++i)
    item_mask[i] = matched_mask(t, g.node(items[i]).outputs, table);

  std::vector<std::uint64_t> cost(v_cap + 1, kInfCost);
  cost[0] = 0;
  ChainArena arena(g.node_count());
  std::vector<std::int32_t> prev(v_cap + 1, ChainArena::kEmpty);
  std::uint64_t relaxations = 0;

  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<std::int32_t> cur = prev;  // default: inherit the i-1 row
    const CompositionRecord& item_rec = records[items[i]];
    const std::uint64_t mask = item_mask[i];
    for (std::uint64_t v = v_cap; v >= 1; --v) {
      const std::uint64_t vol = mask & v;
      if (vol == 0) continue;  // nothing creditable at this state
      assert((vol | v) == v);
      const std::uint64_t below = v & ~vol;
      assert(below == v - vol);
      if (cost[below] >= kInfCost) continue;
      ++relaxations;
      const ServiceSet& invoked = arena.union_of(prev[below]);
      const std::uint64_t step_cost = dc(item_rec.servs, invoked, opts.alg4_literal);
      if (cost[below] + step_cost < cost[v]) {
        cost[v] = cost[below] + step_cost;
        cur[v] = arena.cons(items[i], prev[below], item_rec.servs);
        // Incremental costs must telescope to the union size.
        if (opts.check_invariants && !opts.alg4_literal &&
            cost[v] != arena.union_of(cur[v]).count())
          throw std::logic_error("cost diverged from the invoked-set size at '" +
                                 node.id + "'");
      }
    }
    prev = std::move(cur);
  }

  if (cost[v_cap] >= kInfCost)
    throw std::logic_error("knapsack step cannot cover the inputs of '" +
                           node.id + "'");

  StepResult result;
  result.chosen = arena.items_of(prev[v_cap]);
  result.final_cost = cost[v_cap];
  result.record = compose_record(g, s, result.chosen, records, result.final_cost);
  result.stats = StepStats{s, n, v_cap, relaxations};
  return result;
}

StepResult solve_step_reference(const LayeredGraph& g, const Taxonomy& t, NodeId s,
                                std::span<const NodeId> items,
                                const std::vector<CompositionRecord>& records,
                                const SolverOptions& opts) {
  const GraphNode& node = g.node(s);
  const SubsetTable table =
      gen_subsets(node.inputs, std::min<std::uint32_t>(opts.width_limit, 20),
                  node.id);
  const std::uint64_t v_cap = table.capacity();
  const std::size_t n = items.size();

  // Full two-dimensional tables, volumes and costs recomputed from the set
  // forms at every cell.
  std::vector<std::vector<std::uint64_t>> cost(
      n + 1, std::vector<std::uint64_t>(v_cap + 1, kInfCost));
  std::vector<std::vector<std::vector<NodeId>>> chosen(
      n + 1, std::vector<std::vector<NodeId>>(v_cap + 1));
  for (std::size_t i = 0; i <= n; ++i) cost[i][0] = 0;

  std::uint64_t relaxations = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const NodeId item = items[i - 1];
    const CompositionRecord& item_rec = records[item];
    for (std::uint64_t v = 1; v <= v_cap; ++v) {
      cost[i][v] = cost[i - 1][v];
      chosen[i][v] = chosen[i - 1][v];
      const std::uint64_t vol = dv(t, g.node(item).outputs, table, v);
      if (vol == 0) continue;
      const std::uint64_t below = v - vol;
      if (cost[i - 1][below] >= kInfCost) continue;
      ++relaxations;
      ServiceSet invoked(g.node_count());
      for (NodeId m : chosen[i - 1][below]) invoked |= records[m].servs;
      const std::uint64_t step_cost = dc(item_rec.servs, invoked, opts.alg4_literal);
      if (cost[i - 1][below] + step_cost < cost[i][v]) {
        cost[i][v] = cost[i - 1][below] + step_cost;
        chosen[i][v] = chosen[i - 1][below];
        chosen[i][v].push_back(item);
      }
    }
  }

  if (cost[n][v_cap] >= kInfCost)
    throw std::logic_error("knapsack step cannot cover the inputs of '" +
                           node.id + "'");

  StepResult result;
  result.chosen = chosen[n][v_cap];
  std::sort(result.chosen.begin(), result.chosen.end());
  result.final_cost = cost[n][v_cap];
  result.record = compose_record(g, s, result.chosen, records, result.final_cost);
  result.stats = StepStats{s, static_cast<std::uint32_t>(n), v_cap, relaxations};
  return result;
}

std::vector<NodeId> order_items(std::vector<NodeId> precs,
                                const std::vector<CompositionRecord>& records,
                                const LayeredGraph& g, ItemOrder order) {
  switch (order) {
    case ItemOrder::kInput:
      break;  // precursors already come in graph order
    case ItemOrder::kId:
      std::sort(precs.begin(), precs.end(), [&](NodeId a, NodeId b) {
        return g.node(a).id < g.node(b).id;
      });
      break;
    case ItemOrder::kLen:
      std::stable_sort(precs.begin(), precs.end(), [&](NodeId a, NodeId b) {
        if (records[a].len != records[b].len) return records[a].len < records[b].len;
        return g.node(a).id < g.node(b).id;
      });
      break;
  }
  return precs;
}

SolveResult solve(const LayeredGraph& g, const Taxonomy& t,
                  const SolverOptions& opts) {
  SolveResult result;
  result.order = opts.order;
  result.records.resize(g.node_count());

  CompositionRecord source;
  source.service = g.source();
  source.servs = ServiceSet(g.node_count());
  source.servs.set(g.source());
  source.len = 1;
  result.records[g.source()] = std::move(source);

  for (std::size_t li = 1; li < g.layers().size(); ++li) {
    const std::vector<NodeId>& layer = g.layers()[li];
    std::vector<StepResult> slots(layer.size());

    auto run_range = [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const NodeId s = layer[k];
        const auto items =
            order_items(precursors(g, t, s), result.records, g, opts.order);
        slots[k] = solve_step(g, t, s, items, result.records, opts);
      }
    };

    const std::size_t workers =
        std::min<std::size_t>(std::max<std::uint32_t>(opts.threads, 1), layer.size());
    if (workers <= 1) {
      run_range(0, layer.size());
    } else {
      // Records from earlier layers are read-only here and every worker writes
      // its own slots, so the outcome matches the sequential run exactly.
      std::vector<std::thread> pool;
      const std::size_t chunk = (layer.size() + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(layer.size(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run_range, begin, end);
      }
      for (auto& th : pool) th.join();
    }

    for (std::size_t k = 0; k < layer.size(); ++k) {
      result.records[layer[k]] = std::move(slots[k].record);
      result.steps.push_back(slots[k].stats);
    }
  }

  const CompositionRecord& sink = result.records[g.sink()];
  result.len_with_dummies = sink.len;
  result.composition_size = sink.len - 2;
  result.plan = extract_plan(sink, g);
  return result;
}

std::vector<std::vector<NodeId>> extract_plan(const CompositionRecord& final_record,
                                              const LayeredGraph& g) {
  std::vector<std::vector<NodeId>> stages(g.layers().size());
  for (std::uint32_t member : final_record.servs.members()) {
    const GraphNode& node = g.node(member);
    if (node.dummy) continue;
    stages[node.layer].push_back(member);
  }
  std::erase_if(stages, [](const auto& stage) { return stage.empty(); });
  return stages;
}

}  // namespace wsc
