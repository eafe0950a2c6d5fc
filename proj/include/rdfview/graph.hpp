#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "rdfview/triple.hpp"

namespace rdfview {

// Immutable set of triples with three permutation indexes (SPO, POS, OSP).
// Copies share storage; every mutation-like operation returns a new Graph,
// so snapshots can be read concurrently without locking.
class Graph {
 public:
  struct Data;  // defined in graph.cpp

  Graph();

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool contains(const Triple& t) const;
  // True when the graph holds no blank nodes.
  bool ground() const;

  // All triples in subject-major index order.
  std::span<const Triple> triples() const;

  // Single-pattern lookup; invalid Terms are wildcards. Every shape maps to
  // a contiguous slice of one index, so the result is a span.
  std::span<const Triple> match(Term s, Term p, Term o) const;
  std::size_t count_matches(Term s, Term p, Term o) const { return match(s, p, o).size(); }

  // Set union. Blank-node labels are taken at face value; callers that need
  // label disjointness standardize apart first.
  Graph union_with(const Graph& other) const;

  // Isomorphic copy whose blank nodes are relabeled "<prefix><n>" in first-
  // appearance order.
  Graph standardized_apart(std::string_view prefix) const;

  // Set equality on exact triples (blank-node labels significant).
  bool operator==(const Graph& other) const;

  // Identity of the underlying immutable snapshot; equal for copies sharing
  // storage. Suitable as a memoization key while the Graph stays alive.
  const void* identity() const { return data_.get(); }

  class Builder {
   public:
    void add(const Triple& t) { buf_.push_back(t); }
    void add(Term s, Term p, Term o) { buf_.emplace_back(s, p, o); }
    void add_all(const Graph& g);
    std::size_t pending() const { return buf_.size(); }
    Graph build();

   private:
    std::vector<Triple> buf_;
  };

 private:
  explicit Graph(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

// Relabels blank nodes to a content-derived canonical form (iterated
// signature hashing). Isomorphic graphs with non-pathological symmetry map
// to equal graphs.
Graph canonicalize_blank_nodes(const Graph& g);

// Graph equality up to blank-node renaming. Exact for graphs whose blank
// nodes are distinguishable by iterated signatures; falls back to
// permutation search when eight or fewer blank labels are involved.
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace rdfview
