#pragma once

#include <stdexcept>

#include "rdfview/term.hpp"

namespace rdfview {

// One RDF statement. Positional typing is enforced at construction:
// subject is an IRI or blank node, predicate an IRI, object any term.
struct Triple {
  Term s, p, o;

  Triple(Term subject, Term predicate, Term object) : s(subject), p(predicate), o(object) {
    if (!(s.is_iri() || s.is_blank()))
      throw std::invalid_argument("triple subject must be an IRI or blank node");
    if (!p.is_iri()) throw std::invalid_argument("triple predicate must be an IRI");
    if (!o.valid()) throw std::invalid_argument("triple object must be a term");
  }

  bool operator==(const Triple&) const = default;

  // Process-local order on interned ids (stable within a run).
  bool operator<(const Triple& t) const {
    if (s.id() != t.s.id()) return s.id() < t.s.id();
    if (p.id() != t.p.id()) return p.id() < t.p.id();
    return o.id() < t.o.id();
  }

  std::string to_ntriples() const {
    return s.to_ntriples() + " " + p.to_ntriples() + " " + o.to_ntriples() + " .";
  }
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::size_t h = t.s.id();
    h = h * 1000003u ^ t.p.id();
    h = h * 1000003u ^ t.o.id();
    return h;
  }
};

}  // namespace rdfview
