#include <sstream>

#include "rdfview/syntax.hpp"

namespace rdfview {
namespace {

std::string tv_text(const TermOrVar& tv) {
  if (const Var* v = as_var(tv)) return "?" + v->name;
  return as_term(tv)->to_ntriples();
}

std::string expr_text(const ExprPtr& e);

std::string cmp_text(Cmp op) {
  switch (op) {
    case Cmp::Eq: return "=";
    case Cmp::Ne: return "!=";
    case Cmp::Lt: return "<";
    case Cmp::Gt: return ">";
    case Cmp::Le: return "<=";
    case Cmp::Ge: return ">=";
  }
  return "=";
}

std::string expr_text(const ExprPtr& e) {
  using E = Expr;
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, E::VarRef>) {
          return "?" + n.var.name;
        } else if constexpr (std::is_same_v<T, E::Constant>) {
          return n.value.to_ntriples();
        } else if constexpr (std::is_same_v<T, E::Compare>) {
          return "(" + expr_text(n.lhs) + " " + cmp_text(n.op) + " " + expr_text(n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, E::And>) {
          return "(" + expr_text(n.lhs) + " && " + expr_text(n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, E::Or>) {
          return "(" + expr_text(n.lhs) + " || " + expr_text(n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, E::Not>) {
          return "(!" + expr_text(n.inner) + ")";
        } else if constexpr (std::is_same_v<T, E::Bound>) {
          return "BOUND(?" + n.var.name + ")";
        } else if constexpr (std::is_same_v<T, E::IsIri>) {
          return "isIRI(" + expr_text(n.inner) + ")";
        } else if constexpr (std::is_same_v<T, E::Str>) {
          return "STR(" + expr_text(n.inner) + ")";
        } else if constexpr (std::is_same_v<T, E::Regex>) {
          std::string out = "REGEX(" + expr_text(n.text) + ", \"" +
                            escape_string_literal(n.pattern) + "\"";
          if (!n.flags.empty()) out += ", \"" + escape_string_literal(n.flags) + "\"";
          return out + ")";
        }
      },
      e->node);
}

void indent_to(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void print_triples(std::ostream& os, const std::vector<TriplePattern>& tps, int depth) {
  for (const TriplePattern& tp : tps) {
    indent_to(os, depth);
    os << tv_text(tp.s) << " " << tv_text(tp.p) << " " << tv_text(tp.o) << " .\n";
  }
}

void print_group_body(std::ostream& os, const PatternPtr& p, int depth);

void print_braced(std::ostream& os, const PatternPtr& p, int depth) {
  os << "{\n";
  print_group_body(os, p, depth + 1);
  indent_to(os, depth);
  os << "}";
}

void print_union(std::ostream& os, const GraphPattern::Union& u, int depth) {
  if (const auto* lu = std::get_if<GraphPattern::Union>(&u.left->node)) {
    print_union(os, *lu, depth);
  } else {
    print_braced(os, u.left, depth);
  }
  os << " UNION ";
  print_braced(os, u.right, depth);
}

void print_element(std::ostream& os, const PatternPtr& p, int depth) {
  using G = GraphPattern;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        indent_to(os, depth);
        if constexpr (std::is_same_v<T, G::Bgp> || std::is_same_v<T, G::Group> ||
                      std::is_same_v<T, G::Filtered>) {
          print_braced(os, p, depth);
          os << "\n";
        } else if constexpr (std::is_same_v<T, G::Optional>) {
          os << "OPTIONAL ";
          print_braced(os, n.inner, depth);
          os << "\n";
        } else if constexpr (std::is_same_v<T, G::Union>) {
          print_union(os, n, depth);
          os << "\n";
        } else if constexpr (std::is_same_v<T, G::GraphAt>) {
          os << "GRAPH " << tv_text(n.graph) << " ";
          print_braced(os, n.inner, depth);
          os << "\n";
        }
      },
      p->node);
}

void print_group_body(std::ostream& os, const PatternPtr& p, int depth) {
  using G = GraphPattern;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, G::Bgp>) {
          print_triples(os, n.patterns, depth);
        } else if constexpr (std::is_same_v<T, G::Group>) {
          for (const PatternPtr& e : n.elements) print_element(os, e, depth);
        } else if constexpr (std::is_same_v<T, G::Filtered>) {
          print_group_body(os, n.inner, depth);
          indent_to(os, depth);
          os << "FILTER (" << expr_text(n.condition) << ")\n";
        } else {
          print_element(os, p, depth);
        }
      },
      p->node);
}

}  // namespace

std::string serialize_query(const Query& q) {
  std::ostringstream os;
  if (q.prologue.base) os << "BASE <" << *q.prologue.base << ">\n";
  for (const auto& [name, iri] : q.prologue.prefixes) {
    os << "PREFIX " << name << ": <" << iri << ">\n";
  }
  switch (q.form) {
    case QueryForm::Select: {
      os << "SELECT";
      if (q.distinct) os << " DISTINCT";
      if (q.select_star) {
        os << " *";
      } else {
        for (const Var& v : q.projection) os << " ?" << v.name;
      }
      os << "\n";
      break;
    }
    case QueryForm::Construct: {
      os << "CONSTRUCT {\n";
      print_triples(os, q.construct_template, 1);
      os << "}\n";
      break;
    }
    case QueryForm::Ask:
      os << "ASK\n";
      break;
  }
  for (const DatasetClause& dc : q.dataset) {
    switch (dc.kind) {
      case DatasetClause::Kind::From:
        os << "FROM " << dc.graph.to_ntriples() << "\n";
        break;
      case DatasetClause::Kind::FromNamed:
        os << "FROM NAMED " << dc.graph.to_ntriples() << "\n";
        break;
      case DatasetClause::Kind::FromInline:
        os << "FROM (\n" << serialize_query(*dc.inline_query) << ")\n";
        break;
      case DatasetClause::Kind::FromNamedInline:
        os << "FROM NAMED " << dc.graph.to_ntriples() << " [\n"
           << serialize_query(*dc.inline_query) << "]\n";
        break;
    }
  }
  os << "WHERE ";
  print_braced(os, q.where, 0);
  os << "\n";
  if (!q.order_by.empty()) {
    os << "ORDER BY";
    for (const OrderKey& k : q.order_by) {
      const auto* vr = std::get_if<Expr::VarRef>(&k.expr->node);
      if (vr && !k.descending) {
        os << " ?" << vr->var.name;
      } else {
        os << (k.descending ? " DESC(" : " ASC(") << expr_text(k.expr) << ")";
      }
    }
    os << "\n";
  }
  if (q.limit) os << "LIMIT " << *q.limit << "\n";
  if (q.offset) os << "OFFSET " << *q.offset << "\n";
  return os.str();
}

}  // namespace rdfview
