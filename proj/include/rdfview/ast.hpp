#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rdfview/term.hpp"

namespace rdfview {

struct Var {
  std::string name;  // without the '?' / '$' sigil
  bool operator==(const Var&) const = default;
  bool operator<(const Var& o) const { return name < o.name; }
};

using TermOrVar = std::variant<Term, Var>;

inline bool is_var(const TermOrVar& tv) { return std::holds_alternative<Var>(tv); }
inline const Var* as_var(const TermOrVar& tv) { return std::get_if<Var>(&tv); }
inline const Term* as_term(const TermOrVar& tv) { return std::get_if<Term>(&tv); }

struct TriplePattern {
  TermOrVar s, p, o;
  bool operator==(const TriplePattern&) const = default;
};

// ---------------------------------------------------------------------------
// Filter expressions (three-valued semantics live in the evaluator).

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class Cmp { Eq, Ne, Lt, Gt, Le, Ge };

struct Expr {
  struct VarRef { Var var; };
  struct Constant { Term value; };
  struct Compare { Cmp op; ExprPtr lhs, rhs; };
  struct And { ExprPtr lhs, rhs; };
  struct Or { ExprPtr lhs, rhs; };
  struct Not { ExprPtr inner; };
  struct Bound { Var var; };
  struct IsIri { ExprPtr inner; };
  struct Str { ExprPtr inner; };
  struct Regex { ExprPtr text; std::string pattern; std::string flags; };

  using Node = std::variant<VarRef, Constant, Compare, And, Or, Not, Bound, IsIri, Str, Regex>;
  Node node;
};

template <typename N>
ExprPtr make_expr(N&& n) {
  return std::make_shared<Expr>(Expr{Expr::Node(std::forward<N>(n))});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// Graph patterns.

struct GraphPattern;
using PatternPtr = std::shared_ptr<const GraphPattern>;

struct GraphPattern {
  struct Bgp { std::vector<TriplePattern> patterns; };
  struct Group { std::vector<PatternPtr> elements; };
  struct Optional { PatternPtr inner; };
  struct Union { PatternPtr left, right; };
  struct GraphAt { TermOrVar graph; PatternPtr inner; };
  struct Filtered { PatternPtr inner; ExprPtr condition; };

  using Node = std::variant<Bgp, Group, Optional, Union, GraphAt, Filtered>;
  Node node;
};

template <typename N>
PatternPtr make_pattern(N&& n) {
  return std::make_shared<GraphPattern>(GraphPattern{GraphPattern::Node(std::forward<N>(n))});
}

bool pattern_equal(const PatternPtr& a, const PatternPtr& b);

// Pattern variables in first-appearance order (triple patterns and GRAPH
// variables; filter-only variables are not bindable and are excluded).
std::vector<Var> pattern_vars(const PatternPtr& p);

// ---------------------------------------------------------------------------
// Queries.

enum class QueryForm { Select, Construct, Ask };

struct Prologue {
  std::optional<std::string> base;
  std::vector<std::pair<std::string, std::string>> prefixes;  // declaration order
  bool operator==(const Prologue&) const = default;
};

struct Query;
using QueryPtr = std::shared_ptr<const Query>;

struct DatasetClause {
  enum class Kind {
    From,             // FROM <iri>
    FromNamed,        // FROM NAMED <iri>
    FromInline,       // FROM ( CONSTRUCT ... )
    FromNamedInline,  // FROM NAMED <iri> [ CONSTRUCT ... ]
  };
  Kind kind;
  Term graph;            // unset for FromInline
  QueryPtr inline_query;  // set for the two inline kinds
};

bool dataset_clause_equal(const DatasetClause& a, const DatasetClause& b);

struct OrderKey {
  ExprPtr expr;
  bool descending = false;
};

struct Query {
  Prologue prologue;
  QueryForm form = QueryForm::Select;

  bool distinct = false;      // SELECT
  bool select_star = false;   // SELECT
  std::vector<Var> projection;

  std::vector<TriplePattern> construct_template;  // CONSTRUCT

  std::vector<DatasetClause> dataset;
  PatternPtr where;  // always set (possibly an empty Group)

  std::vector<OrderKey> order_by;
  std::optional<uint64_t> limit;
  std::optional<uint64_t> offset;
};

bool query_equal(const Query& a, const Query& b);

// Variables the query's WHERE pattern can bind, first-appearance order.
std::vector<Var> query_pattern_vars(const Query& q);

}  // namespace rdfview
