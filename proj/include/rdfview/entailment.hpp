#pragma once

#include <map>
#include <shared_mutex>
#include <utility>

#include "rdfview/graph.hpp"

namespace rdfview {

// Materialized forward-chaining closure of a graph under the minimal RDFS
// fragment (subPropertyOf, subClassOf, domain, range, type). Rules, applied
// to a fixpoint:
//
//   (A subPropertyOf B), (B subPropertyOf C)  ->  (A subPropertyOf C)
//   (A subPropertyOf B), (X A Y)              ->  (X B Y)
//   (A subClassOf B),    (B subClassOf C)     ->  (A subClassOf C)
//   (A subClassOf B),    (X type A)           ->  (X type B)
//   (A domain C),        (X A Y)              ->  (X type C)
//   (A range D),         (X A Y)              ->  (Y type D)
//
// Only consequences of these six rules are added; there are no unconditional
// axioms (no blanket reflexive subClassOf/subPropertyOf facts). Conclusions
// that would be ill-formed triples (literal subject or predicate) are
// skipped. The result always contains the input graph.
Graph rho_closure(const Graph& g);

// Memoizes rho_closure keyed on graph storage identity. Holds a reference to
// each source graph so cached keys cannot dangle or be recycled.
class ClosureCache {
 public:
  Graph closed(const Graph& g);
  void clear();

 private:
  std::shared_mutex mu_;
  std::map<const void*, std::pair<Graph, Graph>> cache_;  // key graph, closure
};

}  // namespace rdfview
