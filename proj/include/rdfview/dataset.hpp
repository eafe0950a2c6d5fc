#pragma once

#include <map>

#include "rdfview/graph.hpp"

namespace rdfview {

// A default graph plus named graphs keyed by IRI. Named-graph iteration is
// ordered by the term total order, so traversal is deterministic.
struct Dataset {
  Graph default_graph;
  std::map<Term, Graph, TermOrder> named;

  bool has_named(Term name) const { return named.find(name) != named.end(); }

  std::size_t total_triples() const {
    std::size_t n = default_graph.size();
    for (const auto& [_, g] : named) n += g.size();
    return n;
  }
};

}  // namespace rdfview
