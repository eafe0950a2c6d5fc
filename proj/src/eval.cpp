#include "rdfview/eval.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>
#include <unordered_set>

namespace rdfview {
namespace {

// ---------------------------------------------------------------------------
// Small utilities.

void add_unique(std::vector<Var>& vars, const Var& v) {
  if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
}

void expr_vars(const ExprPtr& e, std::vector<Var>& out) {
  using E = Expr;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, E::VarRef>) {
          add_unique(out, n.var);
        } else if constexpr (std::is_same_v<T, E::Bound>) {
          add_unique(out, n.var);
        } else if constexpr (std::is_same_v<T, E::Compare> || std::is_same_v<T, E::And> ||
                             std::is_same_v<T, E::Or>) {
          expr_vars(n.lhs, out);
          expr_vars(n.rhs, out);
        } else if constexpr (std::is_same_v<T, E::Not> || std::is_same_v<T, E::IsIri> ||
                             std::is_same_v<T, E::Str>) {
          expr_vars(n.inner, out);
        } else if constexpr (std::is_same_v<T, E::Regex>) {
          expr_vars(n.text, out);
        }
      },
      e->node);
}

void append_id(std::string& key, Term t) {
  uint32_t id = t.id();
  key.append(reinterpret_cast<const char*>(&id), sizeof(id));
}

bool column_fully_bound(const SolutionSet& s, std::size_t c) {
  for (std::size_t r = 0; r < s.nrows; ++r)
    if (!s.at(r, c).valid()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Flat solution-set operators.

// Reindexes `s` onto `vars` (missing variables become unbound columns).
SolutionSet project_to(const SolutionSet& s, const std::vector<Var>& vars) {
  SolutionSet out;
  out.vars = vars;
  std::vector<std::optional<std::size_t>> cols;
  cols.reserve(vars.size());
  for (const Var& v : vars) cols.push_back(s.col(v));
  out.data.reserve(s.nrows * vars.size());
  for (std::size_t r = 0; r < s.nrows; ++r) {
    for (const auto& c : cols) out.data.push_back(c ? s.at(r, *c) : Term{});
  }
  out.nrows = s.nrows;
  return out;
}

// Multiset union; the result's variable list is a's followed by b's extras.
SolutionSet concat_union(const SolutionSet& a, const SolutionSet& b, const Deadline& dl) {
  SolutionSet out;
  out.vars = a.vars;
  for (const Var& v : b.vars) add_unique(out.vars, v);
  out = project_to(a, out.vars);
  SolutionSet bb = project_to(b, out.vars);
  dl.check();
  out.data.insert(out.data.end(), bb.data.begin(), bb.data.end());
  out.nrows += bb.nrows;
  return out;
}

struct SharedCols {
  std::vector<std::size_t> in_a, in_b;  // parallel
  std::vector<std::size_t> b_extra;     // b columns not in a
};

SharedCols shared_columns(const SolutionSet& a, const SolutionSet& b) {
  SharedCols sc;
  for (std::size_t bi = 0; bi < b.vars.size(); ++bi) {
    if (auto ai = a.col(b.vars[bi])) {
      sc.in_a.push_back(*ai);
      sc.in_b.push_back(bi);
    } else {
      sc.b_extra.push_back(bi);
    }
  }
  return sc;
}

bool compatible(std::span<const Term> ra, std::span<const Term> rb, const SharedCols& sc) {
  for (std::size_t k = 0; k < sc.in_a.size(); ++k) {
    Term va = ra[sc.in_a[k]], vb = rb[sc.in_b[k]];
    if (va.valid() && vb.valid() && va != vb) return false;
  }
  return true;
}

// Output row for a compatible pair: a's columns (falling back to b's value
// where a is unbound on a shared variable) followed by b's extras.
void emit_merged(SolutionSet& out, std::span<const Term> ra, std::span<const Term> rb,
                 const SharedCols& sc, std::vector<Term>& scratch) {
  scratch.assign(ra.begin(), ra.end());
  for (std::size_t k = 0; k < sc.in_a.size(); ++k) {
    if (!scratch[sc.in_a[k]].valid()) scratch[sc.in_a[k]] = rb[sc.in_b[k]];
  }
  for (std::size_t bi : sc.b_extra) scratch.push_back(rb[bi]);
  out.push_row(scratch);
}

SolutionSet join_flat(const SolutionSet& a, const SolutionSet& b, const Deadline& dl) {
  SharedCols sc = shared_columns(a, b);
  SolutionSet out;
  out.vars = a.vars;
  for (std::size_t bi : sc.b_extra) out.vars.push_back(b.vars[bi]);
  if (a.empty() || b.empty()) return out;

  std::vector<Term> scratch;
  bool clean = !sc.in_a.empty();
  for (std::size_t c : sc.in_a) clean = clean && column_fully_bound(a, c);
  for (std::size_t c : sc.in_b) clean = clean && column_fully_bound(b, c);

  if (clean) {
    // Hash join keyed on the shared columns, building on the smaller side.
    bool build_a = a.nrows < b.nrows;
    const SolutionSet& bs = build_a ? a : b;
    const std::vector<std::size_t>& bkey = build_a ? sc.in_a : sc.in_b;
    const std::vector<std::size_t>& pkey = build_a ? sc.in_b : sc.in_a;
    std::unordered_map<std::string, std::vector<std::size_t>> index;
    index.reserve(bs.nrows * 2);
    std::string key;
    for (std::size_t r = 0; r < bs.nrows; ++r) {
      key.clear();
      for (std::size_t c : bkey) append_id(key, bs.at(r, c));
      index[key].push_back(r);
    }
    const SolutionSet& ps = build_a ? b : a;
    for (std::size_t r = 0; r < ps.nrows; ++r) {
      key.clear();
      for (std::size_t c : pkey) append_id(key, ps.at(r, c));
      auto it = index.find(key);
      if (it == index.end()) continue;
      for (std::size_t m : it->second) {
        dl.check();
        std::size_t ra = build_a ? m : r, rb = build_a ? r : m;
        emit_merged(out, a.row(ra), b.row(rb), sc, scratch);
      }
    }
  } else {
    for (std::size_t ra = 0; ra < a.nrows; ++ra) {
      for (std::size_t rb = 0; rb < b.nrows; ++rb) {
        dl.check();
        if (compatible(a.row(ra), b.row(rb), sc)) emit_merged(out, a.row(ra), b.row(rb), sc, scratch);
      }
    }
  }
  return out;
}

// SPARQL left join: each left row extended by the compatible right rows
// that satisfy all `conds`; rows with no such extension pass through
// unextended.
SolutionSet left_join_flat(const SolutionSet& a, const SolutionSet& b,
                           const std::vector<ExprPtr>& conds, const Deadline& dl) {
  SharedCols sc = shared_columns(a, b);
  SolutionSet out;
  out.vars = a.vars;
  for (std::size_t bi : sc.b_extra) out.vars.push_back(b.vars[bi]);

  bool clean = !sc.in_a.empty() && !b.empty();
  for (std::size_t c : sc.in_a) clean = clean && column_fully_bound(a, c);
  for (std::size_t c : sc.in_b) clean = clean && column_fully_bound(b, c);
  std::unordered_map<std::string, std::vector<std::size_t>> index;
  std::string key;
  if (clean) {
    index.reserve(b.nrows * 2);
    for (std::size_t r = 0; r < b.nrows; ++r) {
      key.clear();
      for (std::size_t c : sc.in_b) append_id(key, b.at(r, c));
      index[key].push_back(r);
    }
  }

  std::vector<Term> scratch;
  std::vector<std::size_t> all_b;
  if (!clean) {
    all_b.resize(b.nrows);
    for (std::size_t r = 0; r < b.nrows; ++r) all_b[r] = r;
  }
  for (std::size_t ra = 0; ra < a.nrows; ++ra) {
    const std::vector<std::size_t>* candidates = &all_b;
    if (clean) {
      key.clear();
      for (std::size_t c : sc.in_a) append_id(key, a.at(ra, c));
      auto it = index.find(key);
      static const std::vector<std::size_t> kEmpty;
      candidates = it == index.end() ? &kEmpty : &it->second;
    }
    bool matched = false;
    for (std::size_t rb : *candidates) {
      dl.check();
      if (!compatible(a.row(ra), b.row(rb), sc)) continue;
      scratch.assign(a.row(ra).begin(), a.row(ra).end());
      for (std::size_t k = 0; k < sc.in_a.size(); ++k) {
        if (!scratch[sc.in_a[k]].valid()) scratch[sc.in_a[k]] = b.at(rb, sc.in_b[k]);
      }
      for (std::size_t bi : sc.b_extra) scratch.push_back(b.at(rb, bi));
      bool pass = true;
      for (const ExprPtr& c : conds) {
        if (eval_filter_expr(c, out.vars, scratch) != Truth::True) {
          pass = false;
          break;
        }
      }
      if (pass) {
        out.push_row(scratch);
        matched = true;
      }
    }
    if (!matched) {
      scratch.assign(a.row(ra).begin(), a.row(ra).end());
      scratch.resize(out.vars.size(), Term{});
      out.push_row(scratch);
    }
  }
  return out;
}

SolutionSet filter_flat(const SolutionSet& s, const ExprPtr& cond, const Deadline& dl) {
  SolutionSet out;
  out.vars = s.vars;
  for (std::size_t r = 0; r < s.nrows; ++r) {
    dl.check();
    if (eval_filter_expr(cond, s.vars, s.row(r)) == Truth::True) out.push_row(s.row(r));
  }
  return out;
}

SolutionSet distinct_flat(const SolutionSet& s, const Deadline& dl) {
  SolutionSet out;
  out.vars = s.vars;
  std::unordered_set<std::string> seen;
  seen.reserve(s.nrows * 2);
  std::string key;
  for (std::size_t r = 0; r < s.nrows; ++r) {
    dl.check();
    key.clear();
    for (Term t : s.row(r)) append_id(key, t);
    if (seen.insert(key).second) out.push_row(s.row(r));
  }
  return out;
}

SolutionSet order_flat(const SolutionSet& s, const std::vector<OrderKey>& keys,
                       const Deadline& dl) {
  // Precompute the key terms per row, then stable-sort row indices.
  std::vector<Term> keyvals(s.nrows * keys.size());
  for (std::size_t r = 0; r < s.nrows; ++r) {
    dl.check();
    for (std::size_t k = 0; k < keys.size(); ++k) {
      auto v = eval_value_expr(keys[k].expr, s.vars, s.row(r));
      keyvals[r * keys.size() + k] = v ? *v : Term{};
    }
  }
  std::vector<std::size_t> idx(s.nrows);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    for (std::size_t k = 0; k < keys.size(); ++k) {
      int c = compare_terms_output(keyvals[x * keys.size() + k], keyvals[y * keys.size() + k]);
      if (c != 0) return keys[k].descending ? c > 0 : c < 0;
    }
    return false;
  });
  SolutionSet out;
  out.vars = s.vars;
  out.data.reserve(s.data.size());
  for (std::size_t i : idx) out.push_row(s.row(i));
  return out;
}

void slice_flat(SolutionSet& s, uint64_t offset, std::optional<uint64_t> limit) {
  std::size_t begin = std::min<std::size_t>(offset, s.nrows);
  std::size_t end = s.nrows;
  if (limit) end = std::min<std::size_t>(begin + *limit, end);
  SolutionSet out;
  out.vars = s.vars;
  for (std::size_t r = begin; r < end; ++r) out.push_row(s.row(r));
  s = std::move(out);
}

// ---------------------------------------------------------------------------
// Basic graph patterns: connected components evaluate independently and
// become separate product factors, so a variable-disjoint BGP never
// enumerates its cross product here.

struct PatternVarCols {
  // Per position: column index, or npos when the position is a constant.
  static constexpr std::size_t kConst = static_cast<std::size_t>(-1);
  std::size_t s, p, o;
};

SolutionSet eval_bgp_component(const Graph& g, const std::vector<const TriplePattern*>& pats,
                               const Deadline& dl) {
  SolutionSet out;
  for (const TriplePattern* tp : pats) {
    for (const TermOrVar* pos : {&tp->s, &tp->p, &tp->o}) {
      if (const Var* v = as_var(*pos)) add_unique(out.vars, *v);
    }
  }
  auto col_of = [&](const TermOrVar& tv) -> std::size_t {
    if (const Var* v = as_var(tv)) {
      for (std::size_t i = 0; i < out.vars.size(); ++i)
        if (out.vars[i] == *v) return i;
    }
    return PatternVarCols::kConst;
  };
  std::vector<PatternVarCols> cols;
  std::vector<std::size_t> base_count;
  cols.reserve(pats.size());
  for (const TriplePattern* tp : pats) {
    cols.push_back({col_of(tp->s), col_of(tp->p), col_of(tp->o)});
    const auto& c = cols.back();
    Term qs = c.s == PatternVarCols::kConst ? *as_term(tp->s) : Term{};
    Term qp = c.p == PatternVarCols::kConst ? *as_term(tp->p) : Term{};
    Term qo = c.o == PatternVarCols::kConst ? *as_term(tp->o) : Term{};
    base_count.push_back(g.count_matches(qs, qp, qo));
  }

  // Static greedy order: prefer patterns with more constant-or-bound
  // positions, then smaller constants-only candidate counts.
  std::vector<std::size_t> order;
  std::vector<bool> used(pats.size(), false);
  std::vector<bool> boundcol(out.vars.size(), false);
  for (std::size_t step = 0; step < pats.size(); ++step) {
    std::size_t best = pats.size();
    long best_bound = -1;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < pats.size(); ++i) {
      if (used[i]) continue;
      long nbound = 0;
      for (std::size_t c : {cols[i].s, cols[i].p, cols[i].o}) {
        if (c == PatternVarCols::kConst || boundcol[c]) ++nbound;
      }
      if (best == pats.size() || nbound > best_bound ||
          (nbound == best_bound && base_count[i] < best_count)) {
        best = i;
        best_bound = nbound;
        best_count = base_count[i];
      }
    }
    order.push_back(best);
    used[best] = true;
    for (std::size_t c : {cols[best].s, cols[best].p, cols[best].o}) {
      if (c != PatternVarCols::kConst) boundcol[c] = true;
    }
  }

  std::vector<Term> row(out.vars.size());
  auto dfs = [&](auto&& self, std::size_t k) -> void {
    if (k == order.size()) {
      out.push_row(row);
      return;
    }
    const TriplePattern& tp = *pats[order[k]];
    const PatternVarCols& c = cols[order[k]];
    auto probe = [&](std::size_t col, const TermOrVar& tv) {
      return col == PatternVarCols::kConst ? *as_term(tv) : row[col];
    };
    Term qs = probe(c.s, tp.s), qp = probe(c.p, tp.p), qo = probe(c.o, tp.o);
    for (const Triple& t : g.match(qs, qp, qo)) {
      dl.check();
      std::size_t undo[3];
      int nundo = 0;
      bool ok = true;
      const std::size_t pcols[3] = {c.s, c.p, c.o};
      const Term vals[3] = {t.s, t.p, t.o};
      for (int i = 0; i < 3 && ok; ++i) {
        std::size_t cc = pcols[i];
        if (cc == PatternVarCols::kConst) continue;
        if (row[cc].valid()) {
          ok = row[cc] == vals[i];
        } else {
          row[cc] = vals[i];
          undo[nundo++] = cc;
        }
      }
      if (ok) self(self, k + 1);
      while (nundo > 0) row[undo[--nundo]] = Term{};
    }
  };
  dfs(dfs, 0);
  return out;
}

Solutions eval_bgp(const Graph& g, const std::vector<TriplePattern>& pats, const Deadline& dl) {
  if (pats.empty()) return Solutions::unit();

  // Union-find over patterns sharing a variable.
  std::vector<std::size_t> parent(pats.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::unordered_map<std::string, std::size_t> var_owner;
  for (std::size_t i = 0; i < pats.size(); ++i) {
    for (const TermOrVar* pos : {&pats[i].s, &pats[i].p, &pats[i].o}) {
      if (const Var* v = as_var(*pos)) {
        auto [it, fresh] = var_owner.emplace(v->name, i);
        if (!fresh) parent[find(i)] = find(it->second);
      }
    }
  }
  std::unordered_map<std::size_t, std::vector<const TriplePattern*>> comps;
  std::vector<std::size_t> comp_order;
  for (std::size_t i = 0; i < pats.size(); ++i) {
    std::size_t root = find(i);
    if (comps.find(root) == comps.end()) comp_order.push_back(root);
    comps[root].push_back(&pats[i]);
  }
  Solutions result;
  for (std::size_t root : comp_order) {
    result.factors.push_back(eval_bgp_component(g, comps[root], dl));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Pattern evaluation.

struct Ctx {
  const Dataset* ds;
  Graph active;
  GraphSource* source;
  Deadline dl;
};

Graph resolve_named(const Ctx& ctx, const Term& iri) {
  auto it = ctx.ds->named.find(iri);
  if (it != ctx.ds->named.end()) return it->second;
  if (ctx.source) {
    if (auto g = ctx.source->resolve(iri)) return *g;
  }
  return Graph{};  // unknown graph: empty result, not an error
}

Solutions eval_pattern(const PatternPtr& p, Ctx& ctx);

// Splits Filtered wrappers off an OPTIONAL body so the conditions can be
// evaluated over the joined row (they may reference left-side variables).
PatternPtr peel_filters(const PatternPtr& p, std::vector<ExprPtr>& conds) {
  PatternPtr cur = p;
  while (const auto* f = std::get_if<GraphPattern::Filtered>(&cur->node)) {
    conds.push_back(f->condition);
    cur = f->inner;
  }
  return cur;
}

// Adds `f` to the factor list, joining it with every factor it shares a
// variable with (transitively).
void merge_factor(std::vector<SolutionSet>& acc, SolutionSet f, const Deadline& dl) {
  for (;;) {
    std::size_t hit = acc.size();
    for (std::size_t i = 0; i < acc.size() && hit == acc.size(); ++i) {
      for (const Var& v : f.vars) {
        if (acc[i].col(v)) {
          hit = i;
          break;
        }
      }
    }
    if (hit == acc.size()) break;
    SolutionSet left = std::move(acc[hit]);
    acc.erase(acc.begin() + hit);
    f = join_flat(left, f, dl);
  }
  acc.push_back(std::move(f));
}

Solutions eval_optional(const Solutions& acc, const GraphPattern::Optional& opt, Ctx& ctx) {
  std::vector<ExprPtr> conds;
  PatternPtr body = peel_filters(opt.inner, conds);
  Solutions right = eval_pattern(body, ctx);
  SolutionSet l = acc.flatten(ctx.dl);
  SolutionSet r = right.flatten(ctx.dl);
  return Solutions::of(left_join_flat(l, r, conds, ctx.dl));
}

Solutions eval_pattern(const PatternPtr& p, Ctx& ctx) {
  using G = GraphPattern;
  return std::visit(
      [&](const auto& n) -> Solutions {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, G::Bgp>) {
          return eval_bgp(ctx.active, n.patterns, ctx.dl);
        } else if constexpr (std::is_same_v<T, G::Group>) {
          Solutions acc = Solutions::unit();
          for (const PatternPtr& e : n.elements) {
            if (const auto* opt = std::get_if<G::Optional>(&e->node)) {
              acc = eval_optional(acc, *opt, ctx);
            } else {
              Solutions s = eval_pattern(e, ctx);
              for (SolutionSet& f : s.factors) merge_factor(acc.factors, std::move(f), ctx.dl);
            }
          }
          return acc;
        } else if constexpr (std::is_same_v<T, G::Optional>) {
          return eval_optional(Solutions::unit(), n, ctx);
        } else if constexpr (std::is_same_v<T, G::Union>) {
          SolutionSet l = eval_pattern(n.left, ctx).flatten(ctx.dl);
          SolutionSet r = eval_pattern(n.right, ctx).flatten(ctx.dl);
          return Solutions::of(concat_union(l, r, ctx.dl));
        } else if constexpr (std::is_same_v<T, G::GraphAt>) {
          if (const Term* t = as_term(n.graph)) {
            Ctx sub{ctx.ds, resolve_named(ctx, *t), ctx.source, ctx.dl};
            return eval_pattern(n.inner, sub);
          }
          const Var& gv = *as_var(n.graph);
          SolutionSet acc = SolutionSet::none({gv});
          for (const auto& [name, graph] : ctx.ds->named) {
            Ctx sub{ctx.ds, graph, ctx.source, ctx.dl};
            SolutionSet s = eval_pattern(n.inner, sub).flatten(ctx.dl);
            SolutionSet tag;
            tag.vars = {gv};
            Term nm = name;
            tag.push_row(std::span<const Term>(&nm, 1));
            acc = concat_union(acc, join_flat(s, tag, ctx.dl), ctx.dl);
          }
          return Solutions::of(std::move(acc));
        } else if constexpr (std::is_same_v<T, G::Filtered>) {
          Solutions inner = eval_pattern(n.inner, ctx);
          std::vector<Var> cvars;
          expr_vars(n.condition, cvars);
          if (cvars.empty()) {
            Truth t = eval_filter_expr(n.condition, {}, {});
            if (t == Truth::True) return inner;
            return Solutions::of(SolutionSet::none(inner.all_vars()));
          }
          for (SolutionSet& f : inner.factors) {
            bool covers = true;
            for (const Var& v : cvars) covers = covers && f.col(v).has_value();
            if (covers) {
              f = filter_flat(f, n.condition, ctx.dl);
              return inner;
            }
          }
          return Solutions::of(filter_flat(inner.flatten(ctx.dl), n.condition, ctx.dl));
        }
      },
      p->node);
}

// ---------------------------------------------------------------------------
// CONSTRUCT instantiation.

bool well_typed(Term s, Term p, Term o) {
  return s.valid() && (s.is_iri() || s.is_blank()) && p.is_iri() && o.valid();
}

// Product-aware instantiation: each template triple enumerates only the
// factors its variables live in; the other factors merely gate emptiness.
Graph construct_product(const std::vector<TriplePattern>& tpl, const Solutions& sols,
                        const Deadline& dl, const std::string& blank_prefix) {
  if (sols.empty_result()) return Graph{};

  bool has_blank = false;
  for (const TriplePattern& t : tpl) {
    for (const TermOrVar* pos : {&t.s, &t.p, &t.o}) {
      if (const Term* c = as_term(*pos); c && c->is_blank()) has_blank = true;
    }
  }
  if (has_blank || sols.factors.size() <= 1) {
    return construct_instantiate(tpl, sols.flatten(dl), blank_prefix);
  }

  Graph::Builder b;
  for (const TriplePattern& t : tpl) {
    // Factor index per position (kConst for constants); a variable bound in
    // no factor is unbound everywhere, so the triple never instantiates.
    std::vector<std::size_t> covering;
    bool dead = false;
    auto factor_of = [&](const TermOrVar& tv) -> std::optional<std::size_t> {
      if (const Var* v = as_var(tv)) {
        for (std::size_t f = 0; f < sols.factors.size(); ++f) {
          if (sols.factors[f].col(*v)) return f;
        }
        dead = true;
      }
      return std::nullopt;
    };
    std::optional<std::size_t> fs = factor_of(t.s), fp = factor_of(t.p), fo = factor_of(t.o);
    if (dead) continue;
    for (auto f : {fs, fp, fo}) {
      if (f && std::find(covering.begin(), covering.end(), *f) == covering.end())
        covering.push_back(*f);
    }
    auto value_at = [&](const TermOrVar& tv, const std::optional<std::size_t>& f,
                        const std::vector<std::size_t>& idx) -> Term {
      if (const Term* c = as_term(tv)) return *c;
      const Var& v = *as_var(tv);
      std::size_t fi = *f;
      std::size_t pos = std::find(covering.begin(), covering.end(), fi) - covering.begin();
      const SolutionSet& fact = sols.factors[fi];
      return fact.at(idx[pos], *fact.col(v));
    };
    if (covering.empty()) {
      Term s = *as_term(t.s), p = *as_term(t.p), o = *as_term(t.o);
      if (well_typed(s, p, o)) b.add(s, p, o);
      continue;
    }
    std::vector<std::size_t> idx(covering.size(), 0);
    for (;;) {
      dl.check();
      Term s = value_at(t.s, fs, idx);
      Term p = value_at(t.p, fp, idx);
      Term o = value_at(t.o, fo, idx);
      if (well_typed(s, p, o)) b.add(s, p, o);
      std::size_t k = covering.size();
      bool done = false;
      while (k > 0) {
        --k;
        if (++idx[k] < sols.factors[covering[k]].nrows) break;
        idx[k] = 0;
        if (k == 0) done = true;
      }
      if (done) break;
    }
  }
  return b.build();
}

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points.

Graph construct_instantiate(const std::vector<TriplePattern>& tpl, const SolutionSet& s,
                            const std::string& blank_prefix) {
  // Distinct template blank labels, in template order, get stable ordinals.
  std::vector<std::string> blank_labels;
  for (const TriplePattern& t : tpl) {
    for (const TermOrVar* pos : {&t.s, &t.p, &t.o}) {
      if (const Term* c = as_term(*pos); c && c->is_blank()) {
        if (std::find(blank_labels.begin(), blank_labels.end(), c->text()) == blank_labels.end())
          blank_labels.push_back(c->text());
      }
    }
  }
  auto blank_ordinal = [&](const std::string& label) {
    return std::find(blank_labels.begin(), blank_labels.end(), label) - blank_labels.begin();
  };

  Graph::Builder b;
  for (std::size_t r = 0; r < s.nrows; ++r) {
    auto row = s.row(r);
    for (const TriplePattern& t : tpl) {
      auto subst = [&](const TermOrVar& tv) -> Term {
        if (const Var* v = as_var(tv)) {
          if (auto c = s.col(*v)) return row[*c];
          return Term{};
        }
        const Term& c = *as_term(tv);
        if (c.is_blank())
          return Term::blank(blank_prefix + std::to_string(blank_ordinal(c.text())) + "_" +
                             std::to_string(r));
        return c;
      };
      Term ts = subst(t.s), tp = subst(t.p), to = subst(t.o);
      if (well_typed(ts, tp, to)) b.add(ts, tp, to);
    }
  }
  return b.build();
}

SolutionSet eval_pattern_flat(const PatternPtr& p, const Dataset& ds, GraphSource* source,
                              const EvalOptions& opts) {
  Deadline dl = opts.deadline ? Deadline(*opts.deadline) : Deadline();
  Ctx ctx{&ds, ds.default_graph, source, dl};
  return eval_pattern(p, ctx).flatten(dl);
}

QueryResult eval_query(const Query& q, const Dataset& base, GraphSource* source,
                       const EvalOptions& opts) {
  Deadline dl = opts.deadline ? Deadline(*opts.deadline) : Deadline();

  Dataset work;
  work.default_graph = base.default_graph;
  work.named = base.named;

  auto resolve_clause = [&](const Term& iri, const char* what) -> Graph {
    auto it = base.named.find(iri);
    if (it != base.named.end()) return it->second;
    if (source) {
      if (auto g = source->resolve(iri)) return *g;
    }
    throw EvalError(std::string("cannot resolve ") + what + " graph <" + iri.text() + ">");
  };

  std::vector<Graph> merges;
  for (const DatasetClause& c : q.dataset) {
    switch (c.kind) {
      case DatasetClause::Kind::From:
        merges.push_back(resolve_clause(c.graph, "FROM"));
        break;
      case DatasetClause::Kind::FromNamed:
        if (work.named.find(c.graph) == work.named.end())
          work.named[c.graph] = resolve_clause(c.graph, "FROM NAMED");
        break;
      case DatasetClause::Kind::FromInline:
        merges.push_back(eval_query(*c.inline_query, base, source, opts).graph);
        break;
      case DatasetClause::Kind::FromNamedInline:
        // An inline definition overrides any loaded graph of the same name.
        work.named[c.graph] = eval_query(*c.inline_query, base, source, opts).graph;
        break;
    }
  }
  if (!merges.empty()) {
    // All merged documents are standardized apart, the background included,
    // so blank labels never collide across sources.
    Graph bg = work.default_graph.standardized_apart("d0_");
    for (std::size_t i = 0; i < merges.size(); ++i) {
      bg = bg.union_with(merges[i].standardized_apart("d" + std::to_string(i + 1) + "_"));
    }
    if (opts.close_background) bg = opts.close_background(bg);
    work.default_graph = bg;
  }

  Ctx ctx{&work, work.default_graph, source, dl};
  Solutions sols = eval_pattern(q.where, ctx);

  QueryResult res;
  res.form = q.form;
  switch (q.form) {
    case QueryForm::Ask:
      res.truth = !sols.empty_result();
      break;
    case QueryForm::Construct: {
      if (!q.order_by.empty() || q.limit || q.offset) {
        SolutionSet flat = sols.flatten(dl);
        if (!q.order_by.empty()) flat = order_flat(flat, q.order_by, dl);
        slice_flat(flat, q.offset.value_or(0), q.limit);
        res.graph = construct_instantiate(q.construct_template, flat, opts.blank_prefix);
      } else {
        res.graph = construct_product(q.construct_template, sols, dl, opts.blank_prefix);
      }
      break;
    }
    case QueryForm::Select: {
      SolutionSet flat = sols.flatten(dl);
      if (!q.order_by.empty()) flat = order_flat(flat, q.order_by, dl);
      std::vector<Var> proj = q.select_star ? query_pattern_vars(q) : q.projection;
      flat = project_to(flat, proj);
      if (q.distinct) flat = distinct_flat(flat, dl);
      slice_flat(flat, q.offset.value_or(0), q.limit);
      res.rows = std::move(flat);
      break;
    }
  }
  return res;
}

}  // namespace rdfview
