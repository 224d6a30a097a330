#include "wsc/wsc08.hpp"

#include <algorithm>
#include <cctype>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "wsc/errors.hpp"

namespace wsc {

namespace {

namespace pt = boost::property_tree;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

pt::ptree read_xml_file(const std::string& path) {
  pt::ptree tree;
  try {
    pt::read_xml(path, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(path + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  return tree;
}

// Elements carry their identifier as a name or id attribute.
std::string name_attr(const pt::ptree& node) {
  if (auto attrs = node.get_child_optional("<xmlattr>")) {
    if (auto v = attrs->get_optional<std::string>("name")) return *v;
    if (auto v = attrs->get_optional<std::string>("id")) return *v;
  }
  return {};
}

std::optional<std::string> parent_attr(const pt::ptree& node) {
  if (auto attrs = node.get_child_optional("<xmlattr>")) {
    for (const char* key : {"parent", "superclass", "isSubclassOf"})
      if (auto v = attrs->get_optional<std::string>(key)) return *v;
  }
  return std::nullopt;
}

void collect_concepts(const pt::ptree& node, const std::string& tag,
                      const std::optional<std::string>& enclosing,
                      std::vector<ConceptDecl>& out) {
  const std::string kind = lower(tag);
  std::optional<std::string> next_parent = enclosing;
  if (kind == "concept" || kind == "instance") {
    const std::string id = name_attr(node);
    if (!id.empty()) {
      ConceptDecl decl;
      decl.id = id;
      if (auto flat = parent_attr(node))
        decl.parent = *flat;
      else
        decl.parent = enclosing;
      if (decl.parent && decl.parent->empty()) decl.parent.reset();
      out.push_back(decl);
      next_parent = id;
    }
  }
  for (const auto& [child_tag, child] : node) {
    if (child_tag == "<xmlattr>") continue;
    collect_concepts(child, child_tag, next_parent, out);
  }
}

// Name-carrying leaves anywhere below a parameter container.
void collect_params(const pt::ptree& node, std::vector<std::string>& out) {
  const std::string id = name_attr(node);
  if (!id.empty()) out.push_back(id);
  for (const auto& [tag, child] : node) {
    if (tag == "<xmlattr>") continue;
    collect_params(child, out);
  }
}

bool tag_in(const std::string& tag, std::initializer_list<const char*> names) {
  const std::string low = lower(tag);
  return std::any_of(names.begin(), names.end(),
                     [&](const char* n) { return low == n; });
}

void collect_services(const pt::ptree& node, const std::string& tag,
                      std::vector<ServiceDecl>& out) {
  if (tag_in(tag, {"service"})) {
    ServiceDecl decl;
    decl.id = name_attr(node);
    for (const auto& [child_tag, child] : node) {
      if (tag_in(child_tag, {"inputs", "in", "input"}))
        collect_params(child, decl.inputs);
      else if (tag_in(child_tag, {"outputs", "out", "output"}))
        collect_params(child, decl.outputs);
    }
    out.push_back(std::move(decl));
    return;
  }
  for (const auto& [child_tag, child] : node) {
    if (child_tag == "<xmlattr>") continue;
    collect_services(child, child_tag, out);
  }
}

void collect_request(const pt::ptree& node, const std::string& tag, RequestDecl& out) {
  if (tag_in(tag, {"provided", "given", "inputs", "in"})) {
    collect_params(node, out.provided);
    return;
  }
  if (tag_in(tag, {"wanted", "goal", "outputs", "out"})) {
    collect_params(node, out.wanted);
    return;
  }
  for (const auto& [child_tag, child] : node) {
    if (child_tag == "<xmlattr>") continue;
    collect_request(child, child_tag, out);
  }
}

}  // namespace

std::vector<ConceptDecl> parse_wsc08_taxonomy(const std::string& path) {
  const pt::ptree tree = read_xml_file(path);
  std::vector<ConceptDecl> decls;
  for (const auto& [tag, child] : tree) collect_concepts(child, tag, std::nullopt, decls);
  if (decls.empty()) throw ParseError(path + ": no concept elements found");
  return decls;
}

std::vector<ServiceDecl> parse_wsc08_services(const std::string& path) {
  const pt::ptree tree = read_xml_file(path);
  std::vector<ServiceDecl> decls;
  for (const auto& [tag, child] : tree) collect_services(child, tag, decls);
  if (decls.empty()) throw ParseError(path + ": no service elements found");
  return decls;
}

RequestDecl parse_wsc08_request(const std::string& path) {
  const pt::ptree tree = read_xml_file(path);
  RequestDecl decl;
  for (const auto& [tag, child] : tree) collect_request(child, tag, decl);
  if (decl.wanted.empty())
    throw ParseError(path + ": no wanted concepts found in request document");
  return decl;
}

}  // namespace wsc
