#pragma once

#include <cstdint>

#include "wsc/bundle.hpp"
#include "wsc/graph.hpp"
#include "wsc/solver.hpp"

namespace wsc {

struct RunOptions {
  BuildOptions graph;
  SolverOptions solver;
};

struct RunMetrics {
  std::size_t g_size = 0;   // services in the pruned graph
  double g_time_ms = 0.0;   // graph construction
  double c_time_ms = 0.0;   // composition extraction
  double tot_time_ms = 0.0; // g + c
  std::uint32_t c_services = 0;
  std::uint32_t len_with_dummies = 0;
};

struct RunOutcome {
  LayeredGraph graph;
  SolveResult solution;
  RunMetrics metrics;
};

// Graph construction plus solve, with both phases timed on a monotonic clock.
RunOutcome run_pipeline(const ProblemBundle& bundle, const RunOptions& opts = {});

}  // namespace wsc
