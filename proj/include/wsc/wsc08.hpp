#pragma once

#include <string>
#include <vector>

#include "wsc/bundle.hpp"
#include "wsc/taxonomy.hpp"

namespace wsc {

// Best-effort adapter for challenge-style XML inputs. The mapping is
// intentionally loose because the files vary across mirrors:
//
//   taxonomy: every <concept name="..."> contributes a concept whose parent is
//   the enclosing concept or a parent/superclass attribute; <instance
//   name="..."> elements become leaf concepts under their enclosing concept.
//
//   services: every <service name="..."> element; parameters are the
//   name-carrying children of its <inputs>/<outputs> containers (accepted
//   synonyms: in/out, provided/wanted).
//
//   request: <provided>/<wanted> containers (synonyms: given/inputs,
//   goal/outputs) of name-carrying elements.
std::vector<ConceptDecl> parse_wsc08_taxonomy(const std::string& path);
std::vector<ServiceDecl> parse_wsc08_services(const std::string& path);
RequestDecl parse_wsc08_request(const std::string& path);

}  // namespace wsc
