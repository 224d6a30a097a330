#pragma once

#include <cstdint>

#include "wsc/bundle.hpp"

namespace wsc {

struct GenParams {
  std::uint32_t services = 10;
  std::uint32_t concepts = 24;
  std::uint32_t depth = 3;     // planted chain length
  std::uint32_t provided = 3;
  std::uint32_t wanted = 2;
  std::uint32_t min_inputs = 1;
  std::uint32_t max_inputs = 3;
  std::uint32_t min_outputs = 1;
  std::uint32_t max_outputs = 2;
  double parent_prob = 0.25;   // chance a concept gets a parent
  bool solvable = true;        // plant a feasible service chain
  bool record_planted = true;  // list the chain in bundle metadata
};

// Deterministic synthetic instance: identical seed and params give a byte
// identical bundle. When solvable, a chain of `depth` services is planted from
// the provided concepts to the wanted ones, so the optimum is at most `depth`;
// the remaining services are noise. Throws ValidationError on contradictory
// parameters.
ProblemBundle generate(std::uint64_t seed, const GenParams& params = {});

}  // namespace wsc
