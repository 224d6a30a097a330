#include "wsc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "wsc/errors.hpp"

namespace wsc {

namespace {

constexpr const char* kSourceId = "s_o";
constexpr const char* kSinkId = "s_k";

}  // namespace

class GraphBuilder {
 public:
  static LayeredGraph run(const std::vector<Service>& repo, const Request& req,
                          const Taxonomy& t, const BuildOptions& opts) {
    // Forward phase. `matched` is the upward-closed set of concepts covered by
    // everything produced so far; a service is ready once all of its inputs
    // are marked.
    std::vector<char> matched(t.size(), 0);
    std::vector<ConceptId> newly;
    for (ConceptId c : req.provided) t.mark_matched(c, matched, newly);

    std::vector<std::uint32_t> by_id(repo.size());
    std::iota(by_id.begin(), by_id.end(), 0);
    std::sort(by_id.begin(), by_id.end(), [&](std::uint32_t a, std::uint32_t b) {
      return repo[a].id < repo[b].id;
    });

    std::vector<std::vector<std::uint32_t>> needers(t.size());
    std::vector<std::uint32_t> remaining(repo.size(), 0);
    for (std::uint32_t idx : by_id) {
      for (ConceptId c : repo[idx].inputs) {
        needers[c].push_back(idx);
        if (!matched[c]) ++remaining[idx];
      }
    }

    std::vector<std::uint32_t> ready;
    for (std::uint32_t idx : by_id)
      if (remaining[idx] == 0) ready.push_back(idx);

    auto wanted_covered = [&] {
      return std::all_of(req.wanted.begin(), req.wanted.end(),
                         [&](ConceptId c) { return matched[c] != 0; });
    };

    std::vector<std::vector<std::uint32_t>> fwd_layers;
    for (;;) {
      std::vector<std::uint32_t> layer = std::move(ready);
      ready.clear();
      std::sort(layer.begin(), layer.end(), [&](std::uint32_t a, std::uint32_t b) {
        return repo[a].id < repo[b].id;
      });

      newly.clear();
      for (std::uint32_t idx : layer)
        for (ConceptId c : repo[idx].outputs) t.mark_matched(c, matched, newly);
      for (ConceptId c : newly)
        for (std::uint32_t idx : needers[c])
          if (--remaining[idx] == 0) ready.push_back(idx);

      fwd_layers.push_back(std::move(layer));
      if (wanted_covered()) break;
      if (fwd_layers.back().empty()) {
        std::vector<std::string> uncovered;
        for (ConceptId c : req.wanted)
          if (!matched[c]) uncovered.push_back(t.name(c));
        std::string msg = "request cannot be satisfied; uncovered wanted concepts:";
        for (const auto& u : uncovered) msg += " " + u;
        throw UnsatisfiableRequest(msg, std::move(uncovered));
      }
    }

    // Assemble nodes: source, forward layers, sink.
    struct Staged {
      GraphNode node;
      bool keep = true;
    };
    std::vector<std::vector<Staged>> staged;
    staged.push_back({{GraphNode{kSourceId, {}, req.provided, 0, true}}});
    for (const auto& layer : fwd_layers) {
      std::vector<Staged> row;
      row.reserve(layer.size());
      for (std::uint32_t idx : layer)
        row.push_back({GraphNode{repo[idx].id, repo[idx].inputs, repo[idx].outputs,
                                 0, false}});
      staged.push_back(std::move(row));
    }
    staged.push_back({{GraphNode{kSinkId, req.wanted, {}, 0, true}}});

    if (opts.prune) {
      // Backward sweep. `needed` holds the accumulated input concepts of the
      // surviving later services; a service stays only if one of its outputs
      // matches a needed concept. Dummies are exempt.
      std::vector<char> needed(t.size(), 0);
      for (ConceptId c : req.wanted) needed[c] = 1;
      for (auto it = staged.rbegin(); it != staged.rend(); ++it) {
        // The drop test for a whole layer runs against the inputs accumulated
        // from later layers only, so decide first and accumulate afterwards.
        for (Staged& entry : *it) {
          if (entry.node.dummy) continue;
          bool contributes = false;
          for (ConceptId o : entry.node.outputs) {
            for (ConceptId a : t.ancestors(o)) {
              if (needed[a]) {
                contributes = true;
                break;
              }
            }
            if (contributes) break;
          }
          entry.keep = contributes;
        }
        for (Staged& entry : *it)
          if (entry.keep)
            for (ConceptId c : entry.node.inputs) needed[c] = 1;
      }
    }

    LayeredGraph g;
    for (auto& row : staged) {
      std::vector<NodeId> layer_nodes;
      for (Staged& entry : row) {
        if (!entry.keep) continue;
        entry.node.layer = static_cast<std::uint32_t>(g.layers_.size());
        layer_nodes.push_back(static_cast<NodeId>(g.nodes_.size()));
        g.nodes_.push_back(std::move(entry.node));
      }
      if (!layer_nodes.empty()) g.layers_.push_back(std::move(layer_nodes));
    }
    return g;
  }
};

LayeredGraph build_graph(const std::vector<Service>& repo, const Request& req,
                         const Taxonomy& t, const BuildOptions& opts) {
  if (req.wanted.empty()) throw ValidationError("request with no wanted concepts");
  return GraphBuilder::run(repo, req, t, opts);
}

std::vector<NodeId> precursors(const LayeredGraph& g, const Taxonomy& t, NodeId s) {
  if (s >= g.node_count()) throw ValidationError("service not in graph");
  const GraphNode& target = g.node(s);
  std::vector<NodeId> result;
  for (std::uint32_t j = 0; j < target.layer; ++j) {
    for (NodeId p : g.layers()[j]) {
      const GraphNode& candidate = g.node(p);
      if (!t.matched_inputs(candidate.outputs, target.inputs).empty())
        result.push_back(p);
    }
  }
  return result;
}

}  // namespace wsc
