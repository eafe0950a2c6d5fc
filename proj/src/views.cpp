#include "rdfview/views.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <vector>

#include "rdfview/prefixes.hpp"
#include "rdfview/syntax.hpp"

namespace rdfview {

namespace {

// ---------------------------------------------------------------------------
// Reference extraction from a view's query.

struct RefInfo {
  std::vector<Term> refs;       // every FROM / FROM NAMED / GRAPH constant
  std::vector<Term> negatable;  // refs that sit inside an OPTIONAL subtree
  bool has_not_bound = false;   // some filter negates a BOUND test
  bool template_blanks = false;
};

void add_unique(std::vector<Term>& v, Term t) {
  if (std::find(v.begin(), v.end(), t) == v.end()) v.push_back(t);
}

bool expr_has_bound(const ExprPtr& e) {
  if (!e) return false;
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Bound>) return true;
        else if constexpr (std::is_same_v<T, Expr::Compare>)
          return expr_has_bound(n.lhs) || expr_has_bound(n.rhs);
        else if constexpr (std::is_same_v<T, Expr::And> || std::is_same_v<T, Expr::Or>)
          return expr_has_bound(n.lhs) || expr_has_bound(n.rhs);
        else if constexpr (std::is_same_v<T, Expr::Not>) return expr_has_bound(n.inner);
        else if constexpr (std::is_same_v<T, Expr::IsIri> || std::is_same_v<T, Expr::Str>)
          return expr_has_bound(n.inner);
        else if constexpr (std::is_same_v<T, Expr::Regex>) return expr_has_bound(n.text);
        else return false;
      },
      e->node);
}

// A BOUND test under a negation anywhere in the expression.
bool expr_has_neg_bound(const ExprPtr& e) {
  if (!e) return false;
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Not>)
          return expr_has_bound(n.inner) || expr_has_neg_bound(n.inner);
        else if constexpr (std::is_same_v<T, Expr::Compare>)
          return expr_has_neg_bound(n.lhs) || expr_has_neg_bound(n.rhs);
        else if constexpr (std::is_same_v<T, Expr::And> || std::is_same_v<T, Expr::Or>)
          return expr_has_neg_bound(n.lhs) || expr_has_neg_bound(n.rhs);
        else if constexpr (std::is_same_v<T, Expr::IsIri> || std::is_same_v<T, Expr::Str>)
          return expr_has_neg_bound(n.inner);
        else if constexpr (std::is_same_v<T, Expr::Regex>)
          return expr_has_neg_bound(n.text);
        else
          return false;
      },
      e->node);
}

void walk_pattern(const PatternPtr& p, bool under_opt, RefInfo& out) {
  if (!p) return;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, GraphPattern::Group>) {
          for (const PatternPtr& el : n.elements) walk_pattern(el, under_opt, out);
        } else if constexpr (std::is_same_v<T, GraphPattern::Optional>) {
          walk_pattern(n.inner, true, out);
        } else if constexpr (std::is_same_v<T, GraphPattern::Union>) {
          walk_pattern(n.left, under_opt, out);
          walk_pattern(n.right, under_opt, out);
        } else if constexpr (std::is_same_v<T, GraphPattern::GraphAt>) {
          if (const Term* g = as_term(n.graph)) {
            add_unique(out.refs, *g);
            if (under_opt) add_unique(out.negatable, *g);
          }
          walk_pattern(n.inner, under_opt, out);
        } else if constexpr (std::is_same_v<T, GraphPattern::Filtered>) {
          out.has_not_bound = out.has_not_bound || expr_has_neg_bound(n.condition);
          walk_pattern(n.inner, under_opt, out);
        }
      },
      p->node);
}

RefInfo collect_refs(const Query& q) {
  RefInfo out;
  std::vector<Term> local;  // names the query itself installs inline
  for (const DatasetClause& c : q.dataset) {
    switch (c.kind) {
      case DatasetClause::Kind::From:
      case DatasetClause::Kind::FromNamed:
        add_unique(out.refs, c.graph);
        break;
      case DatasetClause::Kind::FromNamedInline:
        add_unique(local, c.graph);
        [[fallthrough]];
      case DatasetClause::Kind::FromInline: {
        RefInfo sub = collect_refs(*c.inline_query);
        for (Term t : sub.refs) add_unique(out.refs, t);
        for (Term t : sub.negatable) add_unique(out.negatable, t);
        break;
      }
    }
  }
  walk_pattern(q.where, false, out);
  // A name installed by FROM NAMED [CONSTRUCT ...] shadows any view of the
  // same name within this query, so it is not a dependency.
  auto strip = [&](std::vector<Term>& v) {
    std::erase_if(v, [&](Term t) { return std::find(local.begin(), local.end(), t) != local.end(); });
  };
  strip(out.refs);
  strip(out.negatable);
  for (const TriplePattern& t : q.construct_template)
    for (const TermOrVar* pos : {&t.s, &t.p, &t.o})
      if (const Term* c = as_term(*pos); c && c->is_blank()) out.template_blanks = true;
  return out;
}

// ---------------------------------------------------------------------------
// Snapshot + demand-driven resolver.

struct VSnap {
  ViewDef def;
  std::vector<Term> refs;
  std::optional<Graph> fresh_extent;
  int ordinal = 0;  // position in name order; keys the blank-node prefix
};

struct Snapshot {
  std::map<Term, VSnap, TermOrder> views;
};

struct ResolverCore : GraphSource {
  Snapshot snap;
  const Dataset* base = nullptr;
  GraphSource* fallback = nullptr;
  EvalOptions opts;

  std::vector<Term> order;  // node id -> name
  std::map<Term, int, TermOrder> index;
  std::vector<std::vector<int>> adj;
  std::vector<int> comp;
  std::vector<std::vector<int>> comp_members;
  std::vector<char> comp_busy;
  std::map<Term, Graph, TermOrder> done;

  ResolverCore(Snapshot s, const Dataset& b, GraphSource* fb, const EvalOptions& o)
      : snap(std::move(s)), base(&b), fallback(fb), opts(o) {
    build_sccs();
  }

  void build_sccs() {
    for (const auto& [name, v] : snap.views) {
      index.emplace(name, static_cast<int>(order.size()));
      order.push_back(name);
    }
    int n = static_cast<int>(order.size());
    adj.assign(n, {});
    for (int i = 0; i < n; ++i)
      for (Term r : snap.views.at(order[i]).refs)
        if (auto it = index.find(r); it != index.end()) adj[i].push_back(it->second);

    comp.assign(n, -1);
    std::vector<int> low(n), num(n, -1), stack;
    std::vector<char> on(n, 0);
    int counter = 0;
    std::function<void(int)> dfs = [&](int v) {
      num[v] = low[v] = counter++;
      stack.push_back(v);
      on[v] = 1;
      for (int w : adj[v]) {
        if (num[w] == -1) {
          dfs(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      }
      if (low[v] == num[v]) {
        int c = static_cast<int>(comp_members.size());
        comp_members.emplace_back();
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = c;
          comp_members[c].push_back(w);
          if (w == v) break;
        }
        std::sort(comp_members[c].begin(), comp_members[c].end());
      }
    };
    for (int i = 0; i < n; ++i)
      if (num[i] == -1) dfs(i);
    comp_busy.assign(comp_members.size(), 0);
  }

  bool self_loop(int i) const {
    return std::find(adj[i].begin(), adj[i].end(), i) != adj[i].end();
  }

  std::optional<Graph> resolve(const Term& iri) override {
    auto it = snap.views.find(iri);
    if (it == snap.views.end()) return fallback ? fallback->resolve(iri) : std::nullopt;
    return extent(iri);
  }

  Graph eval_def(const VSnap& v) {
    EvalOptions o = opts;
    o.blank_prefix = "v" + std::to_string(v.ordinal) + "b";
    return eval_query(v.def.query, *base, this, o).graph;
  }

  Graph extent(const Term& name) {
    if (auto it = done.find(name); it != done.end()) return it->second;
    const VSnap& v = snap.views.at(name);
    if (v.fresh_extent) return done.emplace(name, *v.fresh_extent).first->second;
    eval_component(comp[index.at(name)]);
    return done.at(name);
  }

  void eval_component(int c) {
    if (comp_busy[c]) throw ViewError("view dependency cycle escaped stratification");
    comp_busy[c] = 1;
    const std::vector<int>& members = comp_members[c];
    bool cyclic = members.size() > 1 || self_loop(members[0]);

    if (!cyclic) {
      const Term& n = order[members[0]];
      if (done.find(n) == done.end()) done.emplace(n, eval_def(snap.views.at(n)));
      comp_busy[c] = 0;
      return;
    }

    // Least fixpoint: members start empty (fresh materialized members keep
    // their pinned extents) and are re-evaluated until no extent grows.
    std::vector<int> active;
    for (int i : members) {
      const Term& n = order[i];
      if (done.find(n) != done.end()) continue;
      const VSnap& v = snap.views.at(n);
      if (v.fresh_extent) {
        done.emplace(n, *v.fresh_extent);
        continue;
      }
      done.emplace(n, Graph{});
      active.push_back(i);
    }
    for (;;) {
      bool grew = false;
      for (int i : active) {
        const Term& n = order[i];
        Graph next = eval_def(snap.views.at(n));
        const Graph& prev = done.at(n);
        for (const Triple& t : prev.triples())
          if (!next.contains(t))
            throw ViewError("non-monotone recursion in view fixpoint: " + n.text());
        if (next.size() != prev.size()) grew = true;
        done.insert_or_assign(n, std::move(next));
      }
      if (!grew || active.empty()) break;
    }
    comp_busy[c] = 0;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// ViewSource.

struct ViewSource::Impl {
  ResolverCore core;
};

ViewSource::ViewSource(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
ViewSource::~ViewSource() = default;
ViewSource::ViewSource(ViewSource&&) noexcept = default;
ViewSource& ViewSource::operator=(ViewSource&&) noexcept = default;

std::optional<Graph> ViewSource::resolve(const Term& iri) { return impl_->core.resolve(iri); }

// ---------------------------------------------------------------------------
// Registry.

struct ViewRegistry::Impl {
  struct Entry {
    ViewDef def;
    RefInfo info;
    std::optional<Graph> extent;
    bool fresh = false;
  };

  mutable std::shared_mutex mu;
  std::map<Term, Entry, TermOrder> views;

  // Callers hold the lock.
  Snapshot snapshot() const {
    Snapshot s;
    int ord = 0;
    for (const auto& [name, e] : views) {
      VSnap v;
      v.def = e.def;
      v.refs = e.info.refs;
      if (e.fresh && e.extent) v.fresh_extent = e.extent;
      v.ordinal = ord++;
      s.views.emplace(name, std::move(v));
    }
    return s;
  }

  // Rejects cyclic components that negate over a member or mint template
  // blanks. Callers hold the lock; `views` already contains the candidate.
  void check_stratified() const {
    std::vector<Term> order;
    std::map<Term, int, TermOrder> index;
    for (const auto& [name, e] : views) {
      index.emplace(name, static_cast<int>(order.size()));
      order.push_back(name);
    }
    int n = static_cast<int>(order.size());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
      for (Term r : views.at(order[i]).info.refs)
        if (auto it = index.find(r); it != index.end()) adj[i].push_back(it->second);

    std::vector<int> comp(n, -1), low(n), num(n, -1), stack;
    std::vector<char> on(n, 0);
    std::vector<std::vector<int>> members;
    int counter = 0;
    std::function<void(int)> dfs = [&](int v) {
      num[v] = low[v] = counter++;
      stack.push_back(v);
      on[v] = 1;
      for (int w : adj[v]) {
        if (num[w] == -1) {
          dfs(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      }
      if (low[v] == num[v]) {
        int c = static_cast<int>(members.size());
        members.emplace_back();
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = c;
          members[c].push_back(w);
          if (w == v) break;
        }
      }
    };
    for (int i = 0; i < n; ++i)
      if (num[i] == -1) dfs(i);

    for (const std::vector<int>& m : members) {
      bool cyclic = m.size() > 1;
      if (!cyclic) {
        int i = m[0];
        cyclic = std::find(adj[i].begin(), adj[i].end(), i) != adj[i].end();
      }
      if (!cyclic) continue;

      std::vector<Term> cycle_names;
      for (int i : m) cycle_names.push_back(order[i]);
      std::sort(cycle_names.begin(), cycle_names.end(), TermOrder{});
      auto cycle_text = [&] {
        std::string s;
        for (const Term& t : cycle_names) {
          if (!s.empty()) s += ", ";
          s += "<" + t.text() + ">";
        }
        return s;
      };

      for (int i : m) {
        const Entry& e = views.at(order[i]);
        if (e.info.template_blanks)
          throw ViewError("recursive view <" + order[i].text() +
                          "> mints blank nodes in its template; cycle: " + cycle_text());
        if (!e.info.has_not_bound) continue;
        for (Term u : e.info.negatable)
          if (auto it = index.find(u); it != index.end() && comp[it->second] == comp[i])
            throw ViewError("non-stratified recursion (negation over a cycle member) through " +
                            cycle_text());
      }
    }
  }

  // Marks stale every view that can reach `target` through references.
  // Callers hold the lock.
  void invalidate_reaching(Term target) {
    // Reverse edges: from a referenced name to its referrers.
    std::map<Term, std::vector<Term>, TermOrder> rev;
    for (const auto& [name, e] : views)
      for (Term r : e.info.refs) rev[r].push_back(name);
    std::vector<Term> work{target};
    std::set<Term, TermOrder> seen{target};
    while (!work.empty()) {
      Term cur = work.back();
      work.pop_back();
      if (auto it = views.find(cur); it != views.end()) it->second.fresh = false;
      for (Term up : rev[cur])
        if (seen.insert(up).second) work.push_back(up);
    }
  }
};

ViewRegistry::ViewRegistry() : impl_(std::make_unique<Impl>()) {}
ViewRegistry::~ViewRegistry() = default;

void ViewRegistry::register_view(ViewDef def) {
  if (!def.name.is_iri()) throw ViewError("view name must be an IRI");
  if (def.query.form != QueryForm::Construct)
    throw ViewError("view <" + def.name.text() + "> must be defined by a CONSTRUCT query");
  std::unique_lock lk(impl_->mu);
  if (impl_->views.find(def.name) != impl_->views.end())
    throw ViewError("view already defined: <" + def.name.text() + ">");
  Impl::Entry e;
  e.info = collect_refs(def.query);
  e.def = std::move(def);
  Term name = e.def.name;
  impl_->views.emplace(name, std::move(e));
  try {
    impl_->check_stratified();
  } catch (...) {
    impl_->views.erase(name);
    throw;
  }
  impl_->invalidate_reaching(name);
}

void ViewRegistry::drop_view(const Term& name) {
  std::unique_lock lk(impl_->mu);
  auto it = impl_->views.find(name);
  if (it == impl_->views.end()) throw ViewError("unknown view: <" + name.text() + ">");
  impl_->views.erase(it);
  impl_->invalidate_reaching(name);
}

bool ViewRegistry::has_view(const Term& name) const {
  std::shared_lock lk(impl_->mu);
  return impl_->views.find(name) != impl_->views.end();
}

std::optional<ViewDef> ViewRegistry::find(const Term& name) const {
  std::shared_lock lk(impl_->mu);
  auto it = impl_->views.find(name);
  if (it == impl_->views.end()) return std::nullopt;
  return it->second.def;
}

std::vector<Term> ViewRegistry::names() const {
  std::shared_lock lk(impl_->mu);
  std::vector<Term> out;
  for (const auto& [name, _] : impl_->views) out.push_back(name);
  return out;
}

std::size_t ViewRegistry::size() const {
  std::shared_lock lk(impl_->mu);
  return impl_->views.size();
}

Graph ViewRegistry::resolve(const Term& name, const Dataset& base, GraphSource* fallback,
                            const EvalOptions& opts) const {
  Snapshot snap;
  {
    std::shared_lock lk(impl_->mu);
    if (impl_->views.find(name) == impl_->views.end())
      throw ViewError("unknown view: <" + name.text() + ">");
    snap = impl_->snapshot();
  }
  ResolverCore core(std::move(snap), base, fallback, opts);
  return core.extent(name);
}

void ViewRegistry::materialize(const Term& name, const Dataset& base, GraphSource* fallback,
                               const EvalOptions& opts) {
  std::unique_lock lk(impl_->mu);
  auto it = impl_->views.find(name);
  if (it == impl_->views.end()) throw ViewError("unknown view: <" + name.text() + ">");
  ResolverCore core(impl_->snapshot(), base, fallback, opts);
  Graph g = core.extent(name);
  it->second.extent = std::move(g);
  it->second.fresh = true;
}

bool ViewRegistry::materialized_fresh(const Term& name) const {
  std::shared_lock lk(impl_->mu);
  auto it = impl_->views.find(name);
  return it != impl_->views.end() && it->second.fresh;
}

void ViewRegistry::invalidate_all() {
  std::unique_lock lk(impl_->mu);
  for (auto& [_, e] : impl_->views) e.fresh = false;
}

ViewSource ViewRegistry::source(const Dataset& base, GraphSource* fallback,
                                const EvalOptions& opts) const {
  Snapshot snap;
  {
    std::shared_lock lk(impl_->mu);
    snap = impl_->snapshot();
  }
  auto impl = std::unique_ptr<ViewSource::Impl>(
      new ViewSource::Impl{ResolverCore(std::move(snap), base, fallback, opts)});
  return ViewSource(std::move(impl));
}

std::string ViewRegistry::to_trig() const {
  std::shared_lock lk(impl_->mu);
  std::string out;
  const std::string defined_by = vocab::ng_definedBy().text();
  const std::string query_dt = vocab::ng_query().text();
  for (const auto& [name, e] : impl_->views) {
    out += "<" + name.text() + "> {\n";
    out += "<" + name.text() + "> <" + defined_by + "> \"" +
           escape_string_literal(e.def.source_text) + "\"^^<" + query_dt + "> .\n";
    out += "}\n";
  }
  return out;
}

void ViewRegistry::load_trig(const TrigDocument& doc) {
  for (ViewDef& d : parse_view_defs(doc)) register_view(std::move(d));
}

std::vector<ViewDef> parse_view_defs(const TrigDocument& doc) {
  std::vector<ViewDef> out;
  for (const auto& [name, g] : doc.dataset.named) {
    auto span = g.match(Term{}, vocab::ng_definedBy(), Term{});
    if (span.empty()) continue;
    if (span.size() > 1)
      throw ViewError("view block <" + name.text() + "> has multiple ng:definedBy statements");
    const Triple& t = span[0];
    if (!(t.s == name))
      throw ViewError("ng:definedBy subject must be the graph name in block <" + name.text() +
                      ">");
    if (!t.o.is_literal() || !(t.o.datatype() == vocab::ng_query()))
      throw ViewError("view definition in block <" + name.text() +
                      "> must be a string literal typed ng:query");
    Query q;
    try {
      q = parse_query(t.o.text());
    } catch (const ParseError& pe) {
      throw ViewError("view <" + name.text() + ">: " + pe.what());
    }
    if (q.form != QueryForm::Construct)
      throw ViewError("view <" + name.text() + "> must be defined by a CONSTRUCT query");
    out.push_back(ViewDef{name, std::move(q), t.o.text()});
  }
  return out;
}

}  // namespace rdfview
