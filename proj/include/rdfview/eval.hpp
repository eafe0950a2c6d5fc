#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "rdfview/dataset.hpp"
#include "rdfview/errors.hpp"
#include "rdfview/solution.hpp"
#include "rdfview/syntax.hpp"

namespace rdfview {

// Resolves graph names that are not plain loaded graphs (view extents).
// Loaded graphs shadow sources: lookups consult the dataset first.
class GraphSource {
 public:
  virtual ~GraphSource() = default;
  // The graph named `iri`, or nullopt when this source does not know it.
  virtual std::optional<Graph> resolve(const Term& iri) = 0;
};

struct EvalOptions {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  // Applied to the background graph after FROM-clause merges (entailment
  // closure under the active regime). Unset means no closure.
  std::function<Graph(const Graph&)> close_background;
  // Prefix for blank nodes minted by CONSTRUCT templates. Callers that store
  // several CONSTRUCT results side by side pick distinct prefixes so minted
  // labels never collide.
  std::string blank_prefix = "b";
};

struct QueryResult {
  QueryForm form = QueryForm::Select;
  SolutionSet rows;   // Select
  Graph graph;        // Construct
  bool truth = false; // Ask
};

// Three-valued filter outcome. Type errors and unbound variables inside
// operators other than BOUND yield Error, which FILTER treats as false.
enum class Truth { False, True, Error };

Truth eval_filter_expr(const ExprPtr& e, const std::vector<Var>& vars,
                       std::span<const Term> row);

// Expression as a value (ORDER BY keys): nullopt on error or unbound.
std::optional<Term> eval_value_expr(const ExprPtr& e, const std::vector<Var>& vars,
                                    std::span<const Term> row);

// Evaluates a graph pattern with `ds.default_graph` active and `ds.named`
// as the named-graph map, flattening any product structure. Test- and
// view-facing entry point.
SolutionSet eval_pattern_flat(const PatternPtr& p, const Dataset& ds, GraphSource* source,
                              const EvalOptions& opts);

// Full query evaluation over `base` extended by the query's dataset
// clauses: FROM targets merge (standardized apart) into the background
// graph, FROM NAMED targets are added as named graphs, inline-view clauses
// are evaluated first. FROM/FROM NAMED IRIs resolve to loaded graphs first,
// then through `source`; an unresolvable target raises EvalError.
QueryResult eval_query(const Query& q, const Dataset& base, GraphSource* source,
                       const EvalOptions& opts);

// Substitutes each mapping into the template. Template blank nodes get
// fresh labels per mapping ("b<template-blank-ordinal>_<row>"); mappings
// leaving a template variable unbound or producing an ill-typed triple
// contribute nothing for that template triple. The result is a set.
Graph construct_instantiate(const std::vector<TriplePattern>& tpl, const SolutionSet& s,
                            const std::string& blank_prefix = "b");

}  // namespace rdfview
