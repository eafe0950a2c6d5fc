#pragma once

#include <set>
#include <string>
#include <utility>

#include "rdfview/dataset.hpp"
#include "rdfview/graph.hpp"

namespace rdfview {

struct TermPairOrder {
  bool operator()(const std::pair<Term, Term>& a, const std::pair<Term, Term>& b) const {
    TermOrder o;
    if (!(a.first == b.first)) return o(a.first, b.first);
    return o(a.second, b.second);
  }
};

// How a dataset uses its vocabulary: which classes are instantiated, how
// their instances relate, and where the ontology's class hierarchy places
// them. Suitable for rendering as a diagram.
struct SchemaSummary {
  std::set<Term, TermOrder> used_classes;     // classes with instances in the data
  std::set<Term, TermOrder> context_classes;  // hierarchy neighbours not themselves used
  Graph predicate_edges;                      // (class, predicate, class) between instances' classes
  std::set<std::pair<Term, Term>, TermPairOrder> subclass_edges;      // (sub, super)
  std::set<std::pair<Term, Term>, TermPairOrder> literal_predicates;  // (predicate, class):
  // predicates leaving instances of the class whose objects have no type
  // (literals and untyped IRIs)
};

// RDFS skeleton of an OWL ontology: subjects typed owl:Class become
// rdfs:Class instances; subjects typed with any of the five property kinds
// (object, datatype, inverse-functional, transitive, symmetric) become
// rdf:Property instances; subClassOf, subPropertyOf, domain, and range
// statements pass through unchanged. Nothing else is derived.
Graph extract_rdfs_from_owl(const Graph& ontology);

// Summarize how `d` (all of its graphs merged) uses its vocabulary.
// `ontology` supplies the class-hierarchy context — typically
// extract_rdfs_from_owl output — consulted one subclass hop out from the
// used classes. context_classes excludes classes already used.
SchemaSummary build_summary(const Dataset& d, const Graph& ontology);

// Deterministic DOT rendering: used classes are light grey boxes, context
// classes dark grey; predicate edges solid and labeled, subclass edges
// dashed; literal predicates become italic lines inside their class's box.
// Nodes and edges are emitted in term order, so equal summaries yield
// byte-identical documents.
std::string to_dot(const SchemaSummary& s);

}  // namespace rdfview
