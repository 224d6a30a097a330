#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsc/model.hpp"
#include "wsc/taxonomy.hpp"

namespace wsc {

using NodeId = std::uint32_t;

struct GraphNode {
  std::string id;
  std::vector<ConceptId> inputs;
  std::vector<ConceptId> outputs;
  std::uint32_t layer = 0;
  bool dummy = false;
};

// Layered service dependency graph. Layer 0 holds the dummy source (outputs =
// the request's provided concepts), the last layer the dummy sink (inputs =
// the wanted concepts). Every service in layer i has all inputs matched by
// outputs of layers < i. Node ids are assigned in (layer, id) order, so the
// source is node 0 and the sink the highest node.
class LayeredGraph {
 public:
  NodeId source() const { return 0; }
  NodeId sink() const { return static_cast<NodeId>(nodes_.size() - 1); }
  std::size_t node_count() const { return nodes_.size(); }
  const GraphNode& node(NodeId n) const { return nodes_[n]; }
  const std::vector<std::vector<NodeId>>& layers() const { return layers_; }

  // Non-dummy service count (the graph-size metric).
  std::size_t service_count() const { return nodes_.size() - 2; }

 private:
  friend class GraphBuilder;
  std::vector<GraphNode> nodes_;
  std::vector<std::vector<NodeId>> layers_;
};

struct BuildOptions {
  // Backward sweep dropping services with no output matching any accumulated
  // needed input. Dummies are never dropped.
  bool prune = true;
};

// Forward layer expansion until the wanted concepts are covered, then backward
// pruning. Layer membership is decided against the outputs accumulated from
// strictly earlier layers; services are scanned in id order so construction is
// reproducible. Throws UnsatisfiableRequest when an expansion round adds no
// service while wanted concepts remain uncovered.
LayeredGraph build_graph(const std::vector<Service>& repo, const Request& req,
                         const Taxonomy& t, const BuildOptions& opts = {});

// Earlier-layer services contributing at least one matched input of s, in
// graph order (layer, then position). The source has no precursors.
std::vector<NodeId> precursors(const LayeredGraph& g, const Taxonomy& t, NodeId s);

}  // namespace wsc
