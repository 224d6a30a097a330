#pragma once

#include <string>
#include <vector>

#include "wsc/taxonomy.hpp"

namespace wsc {

// A semantic service: invocable once every input concept is matched, then all
// output concepts become available. Input/output lists are duplicate free and
// keep their declaration order (bit positions in the solver follow it).
struct Service {
  std::string id;
  std::vector<ConceptId> inputs;
  std::vector<ConceptId> outputs;
};

struct Request {
  std::vector<ConceptId> provided;
  std::vector<ConceptId> wanted;
};

}  // namespace wsc
