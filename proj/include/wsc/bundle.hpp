#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsc/model.hpp"
#include "wsc/taxonomy.hpp"

namespace wsc {

// String-form declarations as they appear in input documents, before concept
// interning.
struct ServiceDecl {
  std::string id;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

struct RequestDecl {
  std::vector<std::string> provided;
  std::vector<std::string> wanted;
};

struct BundleMeta {
  std::string name;
  std::string source;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> planted;  // known feasible chain, if any
};

struct ProblemBundle {
  Taxonomy taxonomy;
  std::vector<Service> services;
  Request request;
  BundleMeta meta;
};

enum class BundleFormat { kJson, kWsc08 };

BundleFormat bundle_format_from_string(const std::string& name);

// Interns concepts, deduplicates input/output lists (declaration order kept)
// and validates the whole bundle. Unresolved concept references are collected
// exhaustively before the error is raised.
ProblemBundle make_bundle(const std::vector<ConceptDecl>& concepts,
                          const std::vector<ServiceDecl>& services,
                          const RequestDecl& request, BundleMeta meta);

// Single canonical JSON document holding taxonomy, repository and request.
ProblemBundle load_bundle(const std::string& path);

// Three separate documents. JSON parts use the canonical sub-document shapes;
// the wsc08 format goes through the XML adapter.
ProblemBundle load_bundle_parts(const std::string& taxonomy_path,
                                const std::string& repo_path,
                                const std::string& request_path,
                                BundleFormat format);

nlohmann::ordered_json bundle_to_json(const ProblemBundle& bundle);
ProblemBundle bundle_from_json(const nlohmann::ordered_json& doc,
                               const std::string& source);
void save_bundle(const ProblemBundle& bundle, const std::string& path);

}  // namespace wsc
