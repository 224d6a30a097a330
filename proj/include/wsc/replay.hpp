#pragma once

#include <span>

#include "wsc/taxonomy.hpp"

namespace wsc {

struct IoView {
  std::span<const ConceptId> inputs;
  std::span<const ConceptId> outputs;
};

// Fixed-point simulation: starting from the provided concepts, repeatedly
// invoke any service whose inputs are all matched. True when the wanted
// concepts end up covered.
bool closure_replay(const Taxonomy& t, std::span<const IoView> services,
                    std::span<const ConceptId> provided,
                    std::span<const ConceptId> wanted);

// Stricter, staged form: every member of a stage must be invocable before the
// stage runs; outputs are published after it. Validates extracted plans.
bool staged_replay(const Taxonomy& t,
                   const std::vector<std::vector<IoView>>& stages,
                   std::span<const ConceptId> provided,
                   std::span<const ConceptId> wanted);

}  // namespace wsc
