#include "rdfview/entailment.hpp"

#include <mutex>
#include <vector>

#include "rdfview/prefixes.hpp"

namespace rdfview {

namespace {

bool can_subject(const Term& t) { return t.is_iri() || t.is_blank(); }
bool can_predicate(const Term& t) { return t.is_iri(); }

// One semi-naive round: conclusions whose premises touch `delta`, the triples
// added in the previous round (first round: delta == full). Candidates
// already in `full` are dropped; duplicates within the round are fine, the
// builder dedupes.
void derive_round(const Graph& full, const Graph& delta, std::vector<Triple>& out) {
  const Term none;
  const Term sp = vocab::rdfs_subPropertyOf();
  const Term sc = vocab::rdfs_subClassOf();
  const Term ty = vocab::rdf_type();
  const Term dom = vocab::rdfs_domain();
  const Term rng = vocab::rdfs_range();

  auto emit = [&](Term s, Term p, Term o) {
    if (!can_subject(s) || !can_predicate(p)) return;
    Triple t{s, p, o};
    if (!full.contains(t)) out.push_back(t);
  };

  bool first = full.identity() == delta.identity();

  for (const Triple& e : delta.match(none, sp, none)) {
    // (A sp B), (B sp C) -> (A sp C): new edge as left premise...
    for (const Triple& f : full.match(e.o, sp, none)) emit(e.s, sp, f.o);
    // ...and as right premise.
    if (!first)
      for (const Triple& f : full.match(none, sp, e.s)) emit(f.s, sp, e.o);
    // (A sp B), (X A Y) -> (X B Y): new subproperty edge over old uses.
    if (can_predicate(e.s))
      for (const Triple& u : full.match(none, e.s, none)) emit(u.s, e.o, u.o);
  }

  for (const Triple& e : delta.match(none, sc, none)) {
    // (A sc B), (B sc C) -> (A sc C), both premise positions.
    for (const Triple& f : full.match(e.o, sc, none)) emit(e.s, sc, f.o);
    if (!first)
      for (const Triple& f : full.match(none, sc, e.s)) emit(f.s, sc, e.o);
    // (A sc B), (X type A) -> (X type B): new subclass edge over old types.
    for (const Triple& u : full.match(none, ty, e.s)) emit(u.s, ty, e.o);
  }

  // New domain/range declarations over old uses of the property.
  for (const Triple& e : delta.match(none, dom, none))
    if (can_predicate(e.s))
      for (const Triple& u : full.match(none, e.s, none)) emit(u.s, ty, e.o);
  for (const Triple& e : delta.match(none, rng, none))
    if (can_predicate(e.s))
      for (const Triple& u : full.match(none, e.s, none)) emit(u.o, ty, e.o);

  if (first) return;  // the loops above already paired delta with everything

  // New instance triples under old schema: subproperty propagation,
  // domain/range typing, and type lifting keyed per delta triple.
  for (const Triple& u : delta.triples()) {
    for (const Triple& e : full.match(u.p, sp, none)) emit(u.s, e.o, u.o);
    for (const Triple& e : full.match(u.p, dom, none)) emit(u.s, ty, e.o);
    for (const Triple& e : full.match(u.p, rng, none)) emit(u.o, ty, e.o);
    if (u.p == ty)
      for (const Triple& e : full.match(u.o, sc, none)) emit(u.s, ty, e.o);
  }
}

}  // namespace

Graph rho_closure(const Graph& g) {
  Graph full = g;
  Graph delta = g;
  bool first = true;
  for (;;) {
    std::vector<Triple> cand;
    derive_round(full, first ? full : delta, cand);
    first = false;
    if (cand.empty()) return full;
    Graph::Builder b;
    for (const Triple& t : cand) b.add(t);
    delta = b.build();
    full = full.union_with(delta);
  }
}

Graph ClosureCache::closed(const Graph& g) {
  {
    std::shared_lock lk(mu_);
    auto it = cache_.find(g.identity());
    if (it != cache_.end()) return it->second.second;
  }
  Graph c = rho_closure(g);
  std::unique_lock lk(mu_);
  return cache_.emplace(g.identity(), std::make_pair(g, c)).first->second.second;
}

void ClosureCache::clear() {
  std::unique_lock lk(mu_);
  cache_.clear();
}

}  // namespace rdfview
