#include "wsc/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "wsc/errors.hpp"
#include "wsc/wsc08.hpp"

namespace wsc {

namespace {

using nlohmann::ordered_json;

ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::vector<std::string> string_array(const ordered_json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_string()) throw ParseError(where + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<ConceptDecl> concepts_from_json(const ordered_json& doc,
                                            const std::string& where) {
  if (!doc.is_object() || !doc.contains("concepts"))
    throw ParseError(where + ": expected an object with a 'concepts' array");
  std::vector<ConceptDecl> decls;
  for (const auto& c : doc.at("concepts")) {
    ConceptDecl d;
    if (c.is_string()) {
      d.id = c.get<std::string>();
    } else if (c.is_object()) {
      d.id = c.value("id", std::string{});
      if (c.contains("parent") && !c.at("parent").is_null())
        d.parent = c.at("parent").get<std::string>();
    } else {
      throw ParseError(where + ": concept entries must be strings or objects");
    }
    decls.push_back(std::move(d));
  }
  return decls;
}

std::vector<ServiceDecl> services_from_json(const ordered_json& doc,
                                            const std::string& where) {
  if (!doc.is_object() || !doc.contains("services"))
    throw ParseError(where + ": expected an object with a 'services' array");
  std::vector<ServiceDecl> decls;
  for (const auto& s : doc.at("services")) {
    if (!s.is_object()) throw ParseError(where + ": service entries must be objects");
    ServiceDecl d;
    d.id = s.value("id", std::string{});
    d.inputs = string_array(s.value("inputs", ordered_json::array()),
                            where + ": service inputs");
    d.outputs = string_array(s.value("outputs", ordered_json::array()),
                             where + ": service outputs");
    decls.push_back(std::move(d));
  }
  return decls;
}

RequestDecl request_from_json(const ordered_json& doc, const std::string& where) {
  if (!doc.is_object()) throw ParseError(where + ": expected a request object");
  RequestDecl r;
  r.provided = string_array(doc.value("provided", ordered_json::array()),
                            where + ": provided");
  r.wanted = string_array(doc.value("wanted", ordered_json::array()),
                          where + ": wanted");
  return r;
}

// First-occurrence dedup; resolves names against the taxonomy, deferring
// unknown ones to the caller's collection.
std::vector<ConceptId> intern_list(const Taxonomy& t,
                                   const std::vector<std::string>& names,
                                   const std::string& where,
                                   std::vector<std::string>& unresolved) {
  std::vector<ConceptId> out;
  std::unordered_set<ConceptId> seen;
  for (const auto& name : names) {
    auto id = t.find(name);
    if (!id) {
      unresolved.push_back(where + " references unknown concept '" + name + "'");
      continue;
    }
    if (seen.insert(*id).second) out.push_back(*id);
  }
  return out;
}

}  // namespace

BundleFormat bundle_format_from_string(const std::string& name) {
  if (name == "json") return BundleFormat::kJson;
  if (name == "wsc08") return BundleFormat::kWsc08;
  throw ValidationError("unknown bundle format '" + name + "'");
}

ProblemBundle make_bundle(const std::vector<ConceptDecl>& concepts,
                          const std::vector<ServiceDecl>& services,
                          const RequestDecl& request, BundleMeta meta) {
  ProblemBundle bundle;
  bundle.taxonomy = Taxonomy::build(concepts);
  bundle.meta = std::move(meta);

  std::vector<std::string> unresolved;
  std::unordered_set<std::string> ids;
  for (const auto& decl : services) {
    if (decl.id.empty()) throw ValidationError("service with empty id");
    if (decl.id == "s_o" || decl.id == "s_k")
      throw ValidationError("service id '" + decl.id + "' is reserved for dummies");
    if (!ids.insert(decl.id).second)
      throw ValidationError("duplicate service id '" + decl.id + "'");
    Service sv;
    sv.id = decl.id;
    sv.inputs = intern_list(bundle.taxonomy, decl.inputs,
                            "service '" + decl.id + "' input", unresolved);
    sv.outputs = intern_list(bundle.taxonomy, decl.outputs,
                             "service '" + decl.id + "' output", unresolved);
    bundle.services.push_back(std::move(sv));
  }

  bundle.request.provided =
      intern_list(bundle.taxonomy, request.provided, "request provided", unresolved);
  bundle.request.wanted =
      intern_list(bundle.taxonomy, request.wanted, "request wanted", unresolved);

  if (!unresolved.empty()) {
    std::string msg = "unresolved concept references:";
    for (const auto& u : unresolved) msg += "\n  " + u;
    throw ValidationError(msg);
  }
  if (bundle.request.wanted.empty())
    throw ValidationError("request with no wanted concepts");
  return bundle;
}

ProblemBundle bundle_from_json(const ordered_json& doc, const std::string& source) {
  if (!doc.is_object()) throw ParseError(source + ": expected a bundle object");
  if (!doc.contains("taxonomy") || !doc.contains("repository") ||
      !doc.contains("request"))
    throw ParseError(source +
                     ": bundle needs 'taxonomy', 'repository' and 'request'");

  BundleMeta meta;
  meta.source = source;
  if (doc.contains("metadata")) {
    const auto& m = doc.at("metadata");
    meta.name = m.value("name", std::string{});
    if (m.contains("seed")) meta.seed = m.at("seed").get<std::uint64_t>();
    if (m.contains("planted"))
      meta.planted = string_array(m.at("planted"), source + ": metadata planted");
  }

  return make_bundle(concepts_from_json(doc.at("taxonomy"), source),
                     services_from_json(doc.at("repository"), source),
                     request_from_json(doc.at("request"), source), std::move(meta));
}

ProblemBundle load_bundle(const std::string& path) {
  return bundle_from_json(read_json_file(path), path);
}

ProblemBundle load_bundle_parts(const std::string& taxonomy_path,
                                const std::string& repo_path,
                                const std::string& request_path,
                                BundleFormat format) {
  BundleMeta meta;
  meta.source = taxonomy_path + "," + repo_path + "," + request_path;
  if (format == BundleFormat::kJson) {
    return make_bundle(
        concepts_from_json(read_json_file(taxonomy_path), taxonomy_path),
        services_from_json(read_json_file(repo_path), repo_path),
        request_from_json(read_json_file(request_path), request_path),
        std::move(meta));
  }
  return make_bundle(parse_wsc08_taxonomy(taxonomy_path),
                     parse_wsc08_services(repo_path),
                     parse_wsc08_request(request_path), std::move(meta));
}

ordered_json bundle_to_json(const ProblemBundle& bundle) {
  ordered_json doc;
  ordered_json meta = ordered_json::object();
  if (!bundle.meta.name.empty()) meta["name"] = bundle.meta.name;
  if (!bundle.meta.source.empty()) meta["source"] = bundle.meta.source;
  if (bundle.meta.seed) meta["seed"] = *bundle.meta.seed;
  if (!bundle.meta.planted.empty()) meta["planted"] = bundle.meta.planted;
  if (!meta.empty()) doc["metadata"] = std::move(meta);

  ordered_json concepts = ordered_json::array();
  for (ConceptId c = 0; c < bundle.taxonomy.size(); ++c) {
    ordered_json entry;
    entry["id"] = bundle.taxonomy.name(c);
    if (auto p = bundle.taxonomy.parent(c)) entry["parent"] = bundle.taxonomy.name(*p);
    concepts.push_back(std::move(entry));
  }
  doc["taxonomy"] = ordered_json{{"concepts", std::move(concepts)}};

  auto names_of = [&](const std::vector<ConceptId>& ids) {
    ordered_json arr = ordered_json::array();
    for (ConceptId c : ids) arr.push_back(bundle.taxonomy.name(c));
    return arr;
  };

  ordered_json services = ordered_json::array();
  for (const Service& sv : bundle.services) {
    ordered_json entry;
    entry["id"] = sv.id;
    entry["inputs"] = names_of(sv.inputs);
    entry["outputs"] = names_of(sv.outputs);
    services.push_back(std::move(entry));
  }
  doc["repository"] = ordered_json{{"services", std::move(services)}};

  doc["request"] = ordered_json{{"provided", names_of(bundle.request.provided)},
                                {"wanted", names_of(bundle.request.wanted)}};
  return doc;
}

void save_bundle(const ProblemBundle& bundle, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << bundle_to_json(bundle).dump(2) << "\n";
}

}  // namespace wsc
