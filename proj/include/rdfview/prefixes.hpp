#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "rdfview/term.hpp"

namespace rdfview {

// Engine-wide default prefix table. Query and TriG prologues extend or
// shadow it; the CLI can override entries from the environment.
const std::map<std::string, std::string>& default_prefixes();
void set_default_prefix(const std::string& name, const std::string& iri);
std::optional<std::string> default_prefix_iri(const std::string& name);

// "pfx:local" under the default table when the IRI splits cleanly on a
// registered namespace; otherwise std::nullopt.
std::optional<std::string> compact_iri(std::string_view iri);

// Well-known terms used by the engine itself.
namespace vocab {
Term rdf_type();
Term rdfs_subClassOf();
Term rdfs_subPropertyOf();
Term rdfs_domain();
Term rdfs_range();
Term rdf_Property();
Term rdfs_Class();
Term owl_Class();
Term owl_ObjectProperty();
Term owl_DatatypeProperty();
Term owl_InverseFunctionalProperty();
Term owl_TransitiveProperty();
Term owl_SymmetricProperty();
Term ng_definedBy();
Term ng_query();
Term xsd_integer();
}  // namespace vocab

}  // namespace rdfview
