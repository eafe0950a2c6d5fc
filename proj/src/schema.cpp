#include "rdfview/schema.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "rdfview/prefixes.hpp"

namespace rdfview {

namespace {

const Term kAny;  // match wildcard

std::string display(Term t) {
  if (t.is_iri()) {
    if (auto c = compact_iri(t.text())) return *c;
    return t.text();
  }
  if (t.is_blank()) return "_:" + t.text();
  return "\"" + t.text() + "\"";  // literal shown quoted so it cannot alias an IRI
}

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string html_text(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Graph extract_rdfs_from_owl(const Graph& ontology) {
  const Term ty = vocab::rdf_type();
  Graph::Builder b;
  for (const Triple& t : ontology.match(kAny, ty, vocab::owl_Class()))
    b.add(t.s, ty, vocab::rdfs_Class());
  for (Term kind : {vocab::owl_DatatypeProperty(), vocab::owl_ObjectProperty(),
                    vocab::owl_InverseFunctionalProperty(), vocab::owl_TransitiveProperty(),
                    vocab::owl_SymmetricProperty()})
    for (const Triple& t : ontology.match(kAny, ty, kind)) b.add(t.s, ty, vocab::rdf_Property());
  for (Term p : {vocab::rdfs_subClassOf(), vocab::rdfs_subPropertyOf(), vocab::rdfs_domain(),
                 vocab::rdfs_range()})
    for (const Triple& t : ontology.match(kAny, p, kAny)) b.add(t.s, t.p, t.o);
  return b.build();
}

SchemaSummary build_summary(const Dataset& d, const Graph& ontology) {
  const Term ty = vocab::rdf_type();
  const Term sc = vocab::rdfs_subClassOf();

  Graph data = d.default_graph;
  for (const auto& [_, g] : d.named) data = data.union_with(g);
  Graph dm = data.union_with(ontology);

  SchemaSummary s;
  for (const Triple& t : data.match(kAny, ty, kAny)) s.used_classes.insert(t.o);

  Graph::Builder p1;
  for (const Triple& t : data.triples()) {
    auto subject_types = data.match(t.s, ty, kAny);
    if (subject_types.empty()) continue;
    auto object_types = data.match(t.o, ty, kAny);
    if (object_types.empty()) {
      for (const Triple& a : subject_types) s.literal_predicates.emplace(t.p, a.o);
    } else {
      for (const Triple& a : subject_types)
        for (const Triple& b : object_types) p1.add(a.o, t.p, b.o);
    }
  }
  s.predicate_edges = p1.build();

  std::set<Term, TermOrder> context;
  for (const Triple& t : dm.match(kAny, ty, kAny)) {
    for (const Triple& e : dm.match(t.o, sc, kAny)) {  // superclasses of a used class
      context.insert(e.o);
      s.subclass_edges.emplace(e.s, e.o);
    }
    for (const Triple& e : dm.match(kAny, sc, t.o)) {  // subclasses of a used class
      context.insert(e.s);
      s.subclass_edges.emplace(e.s, e.o);
    }
  }
  for (Term c : context)
    if (!s.used_classes.count(c)) s.context_classes.insert(c);
  return s;
}

std::string to_dot(const SchemaSummary& s) {
  std::map<Term, std::vector<Term>, TermOrder> extras;
  for (const auto& [p, c] : s.literal_predicates) extras[c].push_back(p);

  std::ostringstream out;
  out << "digraph schema {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, style=filled, fillcolor=lightgrey];\n";
  for (Term c : s.used_classes) {
    std::string name = display(c);
    out << "  " << dot_id(name);
    auto it = extras.find(c);
    if (it != extras.end()) {
      out << " [label=<" << html_text(name);
      for (Term p : it->second) out << "<BR/><I>" << html_text(display(p)) << "</I>";
      out << ">]";
    }
    out << ";\n";
  }
  for (Term c : s.context_classes) out << "  " << dot_id(display(c)) << " [fillcolor=darkgrey];\n";
  for (const Triple& e : s.predicate_edges.triples())
    out << "  " << dot_id(display(e.s)) << " -> " << dot_id(display(e.o))
        << " [label=" << dot_id(display(e.p)) << "];\n";
  for (const auto& [sub, super] : s.subclass_edges)
    out << "  " << dot_id(display(sub)) << " -> " << dot_id(display(super)) << " [style=dashed];\n";
  out << "}\n";
  return out.str();
}

}  // namespace rdfview
