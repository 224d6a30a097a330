#include "wsc/replay.hpp"

#include <algorithm>
#include <vector>

namespace wsc {

namespace {

bool all_matched(std::span<const ConceptId> concepts, const std::vector<char>& matched) {
  return std::all_of(concepts.begin(), concepts.end(),
                     [&](ConceptId c) { return matched[c] != 0; });
}

}  // namespace

bool closure_replay(const Taxonomy& t, std::span<const IoView> services,
                    std::span<const ConceptId> provided,
                    std::span<const ConceptId> wanted) {
  std::vector<char> matched(t.size(), 0);
  for (ConceptId c : provided) t.mark_matched(c, matched);

  std::vector<char> invoked(services.size(), 0);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < services.size(); ++i) {
      if (invoked[i] || !all_matched(services[i].inputs, matched)) continue;
      invoked[i] = 1;
      for (ConceptId o : services[i].outputs) t.mark_matched(o, matched);
      progress = true;
    }
  }
  return all_matched(wanted, matched);
}

bool staged_replay(const Taxonomy& t,
                   const std::vector<std::vector<IoView>>& stages,
                   std::span<const ConceptId> provided,
                   std::span<const ConceptId> wanted) {
  std::vector<char> matched(t.size(), 0);
  for (ConceptId c : provided) t.mark_matched(c, matched);

  for (const auto& stage : stages) {
    for (const IoView& sv : stage)
      if (!all_matched(sv.inputs, matched)) return false;
    for (const IoView& sv : stage)
      for (ConceptId o : sv.outputs) t.mark_matched(o, matched);
  }
  return all_matched(wanted, matched);
}

}  // namespace wsc
