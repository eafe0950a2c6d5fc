#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "rdfview/dataset.hpp"
#include "rdfview/errors.hpp"
#include "rdfview/eval.hpp"
#include "rdfview/trig.hpp"

namespace rdfview {

// A named graph defined by a stored CONSTRUCT query instead of stored
// triples. Resolving the name evaluates the query; the result is the
// graph's extent.
struct ViewDef {
  Term name;                // IRI the view answers to
  Query query;              // CONSTRUCT form
  std::string source_text;  // query text as registered, for persistence
};

// Extracts view definitions from a TriG document following the convention
//   <name> { <name> ng:definedBy "CONSTRUCT ..."^^ng:query . }
// Blocks without an ng:definedBy statement are ignored (plain data). A
// block with one is validated: exactly one such statement, subject equal to
// the block name, object a literal typed ng:query that parses as a
// CONSTRUCT query. Violations raise ViewError.
std::vector<ViewDef> parse_view_defs(const TrigDocument& doc);

class ViewRegistry;

// Per-query graph resolver over a registry snapshot: serves view extents by
// name (evaluating them on demand, memoized for the query's duration) and
// falls back to `fallback` for other names. The snapshot is taken when the
// source is created; later registry mutations do not affect it. `base` must
// outlive the source.
class ViewSource : public GraphSource {
 public:
  ~ViewSource() override;
  ViewSource(ViewSource&&) noexcept;
  ViewSource& operator=(ViewSource&&) noexcept;

  std::optional<Graph> resolve(const Term& iri) override;

 private:
  friend class ViewRegistry;
  struct Impl;
  explicit ViewSource(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

// Named stored CONSTRUCT queries with dependency tracking, optional
// materialization, and fixpoint evaluation of recursive definitions.
//
// Dependencies: view v depends on u when v's query references u in FROM,
// FROM NAMED, or GRAPH position (constants only; GRAPH ?var ranges over
// loaded named graphs, never views). Cycles are allowed while they stay
// monotone: a strongly connected component is rejected at registration when
// a member applies negation (an OPTIONAL subtree filtered through !BOUND)
// to a pattern over a cycle member, or when a member's template mints blank
// nodes (fresh labels per evaluation would unbound the fixpoint).
//
// Resolution evaluates dependency components bottom-up; a cyclic component
// runs a least fixpoint: all member extents start empty and all queries are
// re-evaluated until no extent grows. Extents never shrink across
// iterations (checked; a shrink means non-monotone recursion escaped the
// registration check and raises ViewError).
//
// A view's FROM / FROM NAMED / GRAPH references resolve against the
// repository dataset it is registered over, not against the calling query's
// dataset: views are self-contained.
//
// Concurrency: mutations (register/drop/materialize/invalidate) are
// exclusive; resolutions run concurrently against the snapshot taken at
// their start.
class ViewRegistry {
 public:
  ViewRegistry();
  ~ViewRegistry();
  ViewRegistry(const ViewRegistry&) = delete;
  ViewRegistry& operator=(const ViewRegistry&) = delete;

  // Throws ViewError: duplicate name, non-CONSTRUCT query, or a rejected
  // (non-stratified / blank-minting) cycle. A rejected registration leaves
  // the registry unchanged.
  void register_view(ViewDef def);
  // Throws ViewError when the name is unknown. Downstream extents go stale.
  void drop_view(const Term& name);

  bool has_view(const Term& name) const;
  std::optional<ViewDef> find(const Term& name) const;
  std::vector<Term> names() const;  // ascending term order
  std::size_t size() const;

  // Extent of `name`: the fresh materialized extent when present, otherwise
  // the virtual evaluation. Throws ViewError for unknown names.
  Graph resolve(const Term& name, const Dataset& base, GraphSource* fallback,
                const EvalOptions& opts) const;

  // Stores resolve(name) as the extent and marks it fresh. Re-registration
  // of any upstream view, dropping one, or invalidate_all() marks it stale;
  // stale extents are never served.
  void materialize(const Term& name, const Dataset& base, GraphSource* fallback,
                   const EvalOptions& opts);
  bool materialized_fresh(const Term& name) const;
  // Base data changed: every stored extent is stale.
  void invalidate_all();

  // Snapshot-backed resolver for evaluating one query.
  ViewSource source(const Dataset& base, GraphSource* fallback, const EvalOptions& opts) const;

  // Deterministic TriG serialization of all definitions (ng:definedBy
  // convention); load_trig(parse_trig(to_trig())) reproduces the registry.
  std::string to_trig() const;
  // Registers every definition in the document, in name order.
  void load_trig(const TrigDocument& doc);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rdfview
