#pragma once

// Reference evaluator used to cross-check the engine on small inputs. It is
// written directly from the algebra definitions: per-pattern triple scans,
// nested-loop compatible-merge joins, and its own three-valued filter
// logic. No indexes, no factored products, no code shared with the engine
// evaluation path.

#include <algorithm>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "rdfview/ast.hpp"
#include "rdfview/dataset.hpp"

namespace oracle {

using rdfview::Dataset;
using rdfview::Graph;
using rdfview::Term;
using rdfview::Triple;
using rdfview::Var;

using Mapping = std::map<std::string, Term>;
using Rows = std::vector<Mapping>;

inline bool compatible(const Mapping& a, const Mapping& b) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it != b.end() && !(it->second == v)) return false;
  }
  return true;
}

inline Mapping merge(const Mapping& a, const Mapping& b) {
  Mapping m = a;
  m.insert(b.begin(), b.end());
  return m;
}

inline Rows join(const Rows& a, const Rows& b) {
  Rows out;
  for (const Mapping& x : a)
    for (const Mapping& y : b)
      if (compatible(x, y)) out.push_back(merge(x, y));
  return out;
}

// Unifies one triple pattern against one concrete triple.
inline std::optional<Mapping> unify(const rdfview::TriplePattern& p, const Triple& t) {
  Mapping m;
  auto pos = [&](const rdfview::TermOrVar& tv, Term val) {
    if (const Term* c = rdfview::as_term(tv)) return *c == val;
    const Var& v = *rdfview::as_var(tv);
    auto it = m.find(v.name);
    if (it != m.end()) return it->second == val;
    m.emplace(v.name, val);
    return true;
  };
  if (!pos(p.s, t.s)) return std::nullopt;
  if (!pos(p.p, t.p)) return std::nullopt;
  if (!pos(p.o, t.o)) return std::nullopt;
  return m;
}

inline Rows match_bgp(const Graph& g, const std::vector<rdfview::TriplePattern>& pats) {
  Rows acc = {Mapping{}};
  for (const auto& p : pats) {
    Rows cand;
    for (const Triple& t : g.triples()) {
      if (auto m = unify(p, t)) cand.push_back(*m);
    }
    acc = join(acc, cand);
  }
  return acc;
}

// Three-valued expression logic, re-derived for independence.
enum class T3 { F, T, E };

inline std::optional<long long> as_int(const Term& t) {
  if (!t.is_literal()) return std::nullopt;
  const std::string& s = t.text();
  std::size_t i = (s.size() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  if (i >= s.size()) return std::nullopt;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!isdigit(static_cast<unsigned char>(s[k]))) return std::nullopt;
  try {
    return std::stoll(s);
  } catch (...) {
    return std::nullopt;
  }
}

inline T3 truth(const rdfview::ExprPtr& e, const Mapping& m);

inline std::optional<Term> value(const rdfview::ExprPtr& e, const Mapping& m) {
  using E = rdfview::Expr;
  if (const auto* v = std::get_if<E::VarRef>(&e->node)) {
    auto it = m.find(v->var.name);
    if (it == m.end()) return std::nullopt;
    return it->second;
  }
  if (const auto* c = std::get_if<E::Constant>(&e->node)) return c->value;
  if (const auto* s = std::get_if<E::Str>(&e->node)) {
    auto v = value(s->inner, m);
    if (!v || v->is_blank()) return std::nullopt;
    return Term::literal(v->text());
  }
  switch (truth(e, m)) {
    case T3::T: return Term::literal("true");
    case T3::F: return Term::literal("false");
    case T3::E: return std::nullopt;
  }
  return std::nullopt;
}

inline T3 truth(const rdfview::ExprPtr& e, const Mapping& m) {
  using E = rdfview::Expr;
  using rdfview::Cmp;
  if (const auto* c = std::get_if<E::Compare>(&e->node)) {
    auto a = value(c->lhs, m), b = value(c->rhs, m);
    if (!a || !b) return T3::E;
    if (c->op == Cmp::Eq || c->op == Cmp::Ne) {
      bool eq = (*a == *b);
      if (!eq && a->is_literal() && b->is_literal()) {
        auto ia = as_int(*a), ib = as_int(*b);
        if (ia && ib) eq = *ia == *ib;
      }
      return (c->op == Cmp::Eq ? eq : !eq) ? T3::T : T3::F;
    }
    if (!a->is_literal() || !b->is_literal()) return T3::E;
    int cmp;
    auto ia = as_int(*a), ib = as_int(*b);
    if (ia && ib)
      cmp = *ia < *ib ? -1 : (*ia > *ib ? 1 : 0);
    else
      cmp = a->text() < b->text() ? -1 : (b->text() < a->text() ? 1 : 0);
    bool r = false;
    if (c->op == Cmp::Lt) r = cmp < 0;
    if (c->op == Cmp::Gt) r = cmp > 0;
    if (c->op == Cmp::Le) r = cmp <= 0;
    if (c->op == Cmp::Ge) r = cmp >= 0;
    return r ? T3::T : T3::F;
  }
  if (const auto* a = std::get_if<E::And>(&e->node)) {
    T3 l = truth(a->lhs, m), r = truth(a->rhs, m);
    if (l == T3::F || r == T3::F) return T3::F;
    if (l == T3::E || r == T3::E) return T3::E;
    return T3::T;
  }
  if (const auto* o = std::get_if<E::Or>(&e->node)) {
    T3 l = truth(o->lhs, m), r = truth(o->rhs, m);
    if (l == T3::T || r == T3::T) return T3::T;
    if (l == T3::E || r == T3::E) return T3::E;
    return T3::F;
  }
  if (const auto* n = std::get_if<E::Not>(&e->node)) {
    T3 i = truth(n->inner, m);
    if (i == T3::E) return T3::E;
    return i == T3::T ? T3::F : T3::T;
  }
  if (const auto* b = std::get_if<E::Bound>(&e->node))
    return m.count(b->var.name) ? T3::T : T3::F;
  if (const auto* i = std::get_if<E::IsIri>(&e->node)) {
    auto v = value(i->inner, m);
    if (!v) return T3::E;
    return v->is_iri() ? T3::T : T3::F;
  }
  if (const auto* r = std::get_if<E::Regex>(&e->node)) {
    auto v = value(r->text, m);
    if (!v || !v->is_literal()) return T3::E;
    auto flags = std::regex::ECMAScript;
    if (r->flags.find('i') != std::string::npos) flags |= std::regex::icase;
    try {
      return std::regex_search(v->text(), std::regex(r->pattern, flags)) ? T3::T : T3::F;
    } catch (...) {
      return T3::E;
    }
  }
  // VarRef / Constant / Str in boolean position: effective boolean value.
  auto v = value(e, m);
  if (!v || !v->is_literal()) return T3::E;
  const std::string& s = v->text();
  if (s == "true") return T3::T;
  if (s == "false" || s.empty()) return T3::F;
  if (auto n = as_int(*v)) return *n != 0 ? T3::T : T3::F;
  return T3::E;
}

inline Rows left_join(const Rows& a, const Rows& b, const std::vector<rdfview::ExprPtr>& conds) {
  Rows out;
  for (const Mapping& m1 : a) {
    bool any = false;
    for (const Mapping& m2 : b) {
      if (!compatible(m1, m2)) continue;
      Mapping mm = merge(m1, m2);
      bool pass = true;
      for (const auto& c : conds) pass = pass && truth(c, mm) == T3::T;
      if (pass) {
        out.push_back(mm);
        any = true;
      }
    }
    if (!any) out.push_back(m1);
  }
  return out;
}

inline Rows eval(const rdfview::PatternPtr& p, const Dataset& ds, const Graph& active) {
  using G = rdfview::GraphPattern;
  if (const auto* b = std::get_if<G::Bgp>(&p->node)) return match_bgp(active, b->patterns);
  if (const auto* g = std::get_if<G::Group>(&p->node)) {
    Rows acc = {Mapping{}};
    for (const auto& e : g->elements) {
      if (const auto* opt = std::get_if<G::Optional>(&e->node)) {
        std::vector<rdfview::ExprPtr> conds;
        rdfview::PatternPtr body = opt->inner;
        while (const auto* f = std::get_if<G::Filtered>(&body->node)) {
          conds.push_back(f->condition);
          body = f->inner;
        }
        acc = left_join(acc, eval(body, ds, active), conds);
      } else {
        acc = join(acc, eval(e, ds, active));
      }
    }
    return acc;
  }
  if (const auto* o = std::get_if<G::Optional>(&p->node)) {
    std::vector<rdfview::ExprPtr> conds;
    rdfview::PatternPtr body = o->inner;
    while (const auto* f = std::get_if<G::Filtered>(&body->node)) {
      conds.push_back(f->condition);
      body = f->inner;
    }
    return left_join({Mapping{}}, eval(body, ds, active), conds);
  }
  if (const auto* u = std::get_if<G::Union>(&p->node)) {
    Rows l = eval(u->left, ds, active);
    Rows r = eval(u->right, ds, active);
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  if (const auto* g = std::get_if<G::GraphAt>(&p->node)) {
    if (const Term* t = rdfview::as_term(g->graph)) {
      auto it = ds.named.find(*t);
      Graph target = it == ds.named.end() ? Graph{} : it->second;
      return eval(g->inner, ds, target);
    }
    const Var& v = *rdfview::as_var(g->graph);
    Rows out;
    for (const auto& [name, graph] : ds.named) {
      for (const Mapping& m : eval(g->inner, ds, graph)) {
        auto it = m.find(v.name);
        if (it != m.end()) {
          if (it->second == name) out.push_back(m);
        } else {
          Mapping mm = m;
          mm.emplace(v.name, name);
          out.push_back(mm);
        }
      }
    }
    return out;
  }
  const auto* f = std::get_if<G::Filtered>(&p->node);
  Rows inner = eval(f->inner, ds, active);
  Rows out;
  for (const Mapping& m : inner)
    if (truth(f->condition, m) == T3::T) out.push_back(m);
  return out;
}

// Normal form for multiset comparison: each mapping as a sorted
// (name, term-id) vector, rows sorted.
using NormRows = std::vector<std::vector<std::pair<std::string, uint32_t>>>;

inline NormRows normalize(const Rows& rows) {
  NormRows out;
  out.reserve(rows.size());
  for (const Mapping& m : rows) {
    std::vector<std::pair<std::string, uint32_t>> r;
    for (const auto& [k, v] : m) r.emplace_back(k, v.id());
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
