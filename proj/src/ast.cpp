#include "rdfview/ast.hpp"

#include <set>

namespace rdfview {

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  using E = Expr;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const T& nb = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, E::VarRef>) {
          return na.var == nb.var;
        } else if constexpr (std::is_same_v<T, E::Constant>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<T, E::Compare>) {
          return na.op == nb.op && expr_equal(na.lhs, nb.lhs) && expr_equal(na.rhs, nb.rhs);
        } else if constexpr (std::is_same_v<T, E::And> || std::is_same_v<T, E::Or>) {
          return expr_equal(na.lhs, nb.lhs) && expr_equal(na.rhs, nb.rhs);
        } else if constexpr (std::is_same_v<T, E::Not> || std::is_same_v<T, E::IsIri> ||
                             std::is_same_v<T, E::Str>) {
          return expr_equal(na.inner, nb.inner);
        } else if constexpr (std::is_same_v<T, E::Bound>) {
          return na.var == nb.var;
        } else if constexpr (std::is_same_v<T, E::Regex>) {
          return expr_equal(na.text, nb.text) && na.pattern == nb.pattern && na.flags == nb.flags;
        }
      },
      a->node);
}

bool pattern_equal(const PatternPtr& a, const PatternPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  using G = GraphPattern;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const T& nb = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, G::Bgp>) {
          return na.patterns == nb.patterns;
        } else if constexpr (std::is_same_v<T, G::Group>) {
          if (na.elements.size() != nb.elements.size()) return false;
          for (std::size_t i = 0; i < na.elements.size(); ++i) {
            if (!pattern_equal(na.elements[i], nb.elements[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, G::Optional>) {
          return pattern_equal(na.inner, nb.inner);
        } else if constexpr (std::is_same_v<T, G::Union>) {
          return pattern_equal(na.left, nb.left) && pattern_equal(na.right, nb.right);
        } else if constexpr (std::is_same_v<T, G::GraphAt>) {
          return na.graph == nb.graph && pattern_equal(na.inner, nb.inner);
        } else if constexpr (std::is_same_v<T, G::Filtered>) {
          return pattern_equal(na.inner, nb.inner) && expr_equal(na.condition, nb.condition);
        }
      },
      a->node);
}

namespace {

void add_var(const TermOrVar& tv, std::vector<Var>& out, std::set<std::string>& seen) {
  if (const Var* v = as_var(tv); v && seen.insert(v->name).second) out.push_back(*v);
}

void collect_vars(const PatternPtr& p, std::vector<Var>& out, std::set<std::string>& seen) {
  if (!p) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        using G = GraphPattern;
        if constexpr (std::is_same_v<T, G::Bgp>) {
          for (const TriplePattern& tp : n.patterns) {
            add_var(tp.s, out, seen);
            add_var(tp.p, out, seen);
            add_var(tp.o, out, seen);
          }
        } else if constexpr (std::is_same_v<T, G::Group>) {
          for (const auto& e : n.elements) collect_vars(e, out, seen);
        } else if constexpr (std::is_same_v<T, G::Optional>) {
          collect_vars(n.inner, out, seen);
        } else if constexpr (std::is_same_v<T, G::Union>) {
          collect_vars(n.left, out, seen);
          collect_vars(n.right, out, seen);
        } else if constexpr (std::is_same_v<T, G::GraphAt>) {
          add_var(n.graph, out, seen);
          collect_vars(n.inner, out, seen);
        } else if constexpr (std::is_same_v<T, G::Filtered>) {
          collect_vars(n.inner, out, seen);
        }
      },
      p->node);
}

}  // namespace

std::vector<Var> pattern_vars(const PatternPtr& p) {
  std::vector<Var> out;
  std::set<std::string> seen;
  collect_vars(p, out, seen);
  return out;
}

std::vector<Var> query_pattern_vars(const Query& q) { return pattern_vars(q.where); }

bool dataset_clause_equal(const DatasetClause& a, const DatasetClause& b) {
  if (a.kind != b.kind || a.graph != b.graph) return false;
  if (!a.inline_query != !b.inline_query) return false;
  if (a.inline_query && !query_equal(*a.inline_query, *b.inline_query)) return false;
  return true;
}

bool query_equal(const Query& a, const Query& b) {
  if (a.prologue != b.prologue) return false;
  if (a.form != b.form || a.distinct != b.distinct || a.select_star != b.select_star)
    return false;
  if (a.projection != b.projection) return false;
  if (a.construct_template != b.construct_template) return false;
  if (a.dataset.size() != b.dataset.size()) return false;
  for (std::size_t i = 0; i < a.dataset.size(); ++i) {
    if (!dataset_clause_equal(a.dataset[i], b.dataset[i])) return false;
  }
  if (!pattern_equal(a.where, b.where)) return false;
  if (a.order_by.size() != b.order_by.size()) return false;
  for (std::size_t i = 0; i < a.order_by.size(); ++i) {
    if (a.order_by[i].descending != b.order_by[i].descending) return false;
    if (!expr_equal(a.order_by[i].expr, b.order_by[i].expr)) return false;
  }
  return a.limit == b.limit && a.offset == b.offset;
}

}  // namespace rdfview
