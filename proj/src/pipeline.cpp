#include "wsc/pipeline.hpp"

#include <chrono>

namespace wsc {

RunOutcome run_pipeline(const ProblemBundle& bundle, const RunOptions& opts) {
  using clock = std::chrono::steady_clock;
  using ms = std::chrono::duration<double, std::milli>;

  RunOutcome out;
  const auto t0 = clock::now();
  out.graph = build_graph(bundle.services, bundle.request, bundle.taxonomy, opts.graph);
  const auto t1 = clock::now();
  out.solution = solve(out.graph, bundle.taxonomy, opts.solver);
  const auto t2 = clock::now();

  out.metrics.g_size = out.graph.service_count();
  out.metrics.g_time_ms = ms(t1 - t0).count();
  out.metrics.c_time_ms = ms(t2 - t1).count();
  out.metrics.tot_time_ms = out.metrics.g_time_ms + out.metrics.c_time_ms;
  out.metrics.c_services = out.solution.composition_size;
  out.metrics.len_with_dummies = out.solution.len_with_dummies;
  return out;
}

}  // namespace wsc
