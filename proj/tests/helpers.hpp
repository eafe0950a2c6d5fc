#pragma once

#include <random>
#include <string>
#include <vector>

#include "rdfview/graph.hpp"

namespace testutil {

using rdfview::Graph;
using rdfview::Term;
using rdfview::Triple;

// Small closed vocabulary so random graphs join and collide often.
inline Term rand_iri(std::mt19937_64& rng, int pool = 12) {
  return Term::iri("http://example.org/t/n" +
                   std::to_string(std::uniform_int_distribution<int>(0, pool - 1)(rng)));
}

inline Term rand_pred(std::mt19937_64& rng, int pool = 5) {
  return Term::iri("http://example.org/t/p" +
                   std::to_string(std::uniform_int_distribution<int>(0, pool - 1)(rng)));
}

inline Term rand_literal(std::mt19937_64& rng) {
  return Term::literal("v" + std::to_string(std::uniform_int_distribution<int>(0, 9)(rng)));
}

inline Term rand_blank(std::mt19937_64& rng, int pool = 4) {
  return Term::blank("b" + std::to_string(std::uniform_int_distribution<int>(0, pool - 1)(rng)));
}

inline Term rand_subject(std::mt19937_64& rng, bool blanks = false) {
  if (blanks && std::uniform_int_distribution<int>(0, 3)(rng) == 0) return rand_blank(rng);
  return rand_iri(rng);
}

inline Term rand_object(std::mt19937_64& rng, bool blanks = false) {
  int k = std::uniform_int_distribution<int>(0, 3)(rng);
  if (k == 0) return rand_literal(rng);
  if (k == 1 && blanks) return rand_blank(rng);
  return rand_iri(rng);
}

inline Graph rand_graph(std::mt19937_64& rng, int max_triples, bool blanks = false) {
  Graph::Builder b;
  int n = std::uniform_int_distribution<int>(0, max_triples)(rng);
  for (int i = 0; i < n; ++i) {
    b.add(rand_subject(rng, blanks), rand_pred(rng), rand_object(rng, blanks));
  }
  return b.build();
}

}  // namespace testutil
