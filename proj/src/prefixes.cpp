#include "rdfview/prefixes.hpp"

#include <cctype>
#include <mutex>

namespace rdfview {
namespace {

std::map<std::string, std::string>& table() {
  static std::map<std::string, std::string> t = {
      {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
      {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
      {"owl", "http://www.w3.org/2002/07/owl#"},
      {"xsd", "http://www.w3.org/2001/XMLSchema#"},
      {"foaf", "http://xmlns.com/foaf/0.1/"},
      {"mo", "http://purl.org/ontology/mo/"},
      {"dc", "http://purl.org/dc/elements/1.1/"},
      {"event", "http://purl.org/NET/c4dm/event.owl#"},
      {"eve", "http://purl.org/NET/c4dm/event.owl#"},
      {"bio", "http://purl.org/vocab/bio/0.1/"},
      {"ng", "http://networkedgraphs.org/ng#"},
      {"dat", "http://example.org/dat/"},
      {"def", "http://definedViews/"},
      {"dbtune", "http://dbtune.org/"},
  };
  return t;
}

std::mutex& table_mu() {
  static std::mutex m;
  return m;
}

bool pn_local_ok(std::string_view local) {
  if (local.empty()) return false;
  for (char c : local) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

}  // namespace

const std::map<std::string, std::string>& default_prefixes() { return table(); }

void set_default_prefix(const std::string& name, const std::string& iri) {
  std::lock_guard lock(table_mu());
  table()[name] = iri;
}

std::optional<std::string> default_prefix_iri(const std::string& name) {
  const auto& t = table();
  auto it = t.find(name);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> compact_iri(std::string_view iri) {
  std::string_view best_local;
  const std::string* best_name = nullptr;
  for (const auto& [name, ns] : table()) {
    if (name == "eve") continue;  // input-only alias of event:
    if (iri.size() > ns.size() && iri.substr(0, ns.size()) == ns) {
      std::string_view local = iri.substr(ns.size());
      if (pn_local_ok(local) && (best_name == nullptr || local.size() < best_local.size())) {
        best_name = &name;
        best_local = local;
      }
    }
  }
  if (!best_name) return std::nullopt;
  return *best_name + ":" + std::string(best_local);
}

namespace vocab {
namespace {
Term t(const char* iri) { return Term::iri(iri); }
}  // namespace

Term rdf_type() { return t("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"); }
Term rdfs_subClassOf() { return t("http://www.w3.org/2000/01/rdf-schema#subClassOf"); }
Term rdfs_subPropertyOf() { return t("http://www.w3.org/2000/01/rdf-schema#subPropertyOf"); }
Term rdfs_domain() { return t("http://www.w3.org/2000/01/rdf-schema#domain"); }
Term rdfs_range() { return t("http://www.w3.org/2000/01/rdf-schema#range"); }
Term rdf_Property() { return t("http://www.w3.org/1999/02/22-rdf-syntax-ns#Property"); }
Term rdfs_Class() { return t("http://www.w3.org/2000/01/rdf-schema#Class"); }
Term owl_Class() { return t("http://www.w3.org/2002/07/owl#Class"); }
Term owl_ObjectProperty() { return t("http://www.w3.org/2002/07/owl#ObjectProperty"); }
Term owl_DatatypeProperty() { return t("http://www.w3.org/2002/07/owl#DatatypeProperty"); }
Term owl_InverseFunctionalProperty() { return t("http://www.w3.org/2002/07/owl#InverseFunctionalProperty"); }
Term owl_TransitiveProperty() { return t("http://www.w3.org/2002/07/owl#TransitiveProperty"); }
Term owl_SymmetricProperty() { return t("http://www.w3.org/2002/07/owl#SymmetricProperty"); }
Term ng_definedBy() { return t("http://networkedgraphs.org/ng#definedBy"); }
Term ng_query() { return t("http://networkedgraphs.org/ng#query"); }
Term xsd_integer() { return t("http://www.w3.org/2001/XMLSchema#integer"); }
}  // namespace vocab

}  // namespace rdfview
