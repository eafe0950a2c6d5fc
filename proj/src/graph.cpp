#include "rdfview/graph.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>

namespace rdfview {

struct Graph::Data {
  std::vector<Triple> spo, pos, osp;  // each sorted by its permutation key
  bool ground = true;
};

namespace {

using Key = std::array<uint32_t, 3>;

Key spo_key(const Triple& t) { return {t.s.id(), t.p.id(), t.o.id()}; }
Key pos_key(const Triple& t) { return {t.p.id(), t.o.id(), t.s.id()}; }
Key osp_key(const Triple& t) { return {t.o.id(), t.s.id(), t.p.id()}; }

template <typename KeyFn>
void sort_index(std::vector<Triple>& v, KeyFn key) {
  std::sort(v.begin(), v.end(),
            [&](const Triple& a, const Triple& b) { return key(a) < key(b); });
}

template <typename KeyFn>
std::span<const Triple> prefix_range(const std::vector<Triple>& idx, KeyFn key,
                                     const Key& probe, int prefix) {
  auto below = [&](const Triple& t, const Key& q) {
    Key k = key(t);
    for (int i = 0; i < prefix; ++i) {
      if (k[i] != q[i]) return k[i] < q[i];
    }
    return false;
  };
  auto above = [&](const Key& q, const Triple& t) {
    Key k = key(t);
    for (int i = 0; i < prefix; ++i) {
      if (k[i] != q[i]) return q[i] < k[i];
    }
    return false;
  };
  auto lo = std::lower_bound(idx.begin(), idx.end(), probe, below);
  auto hi = std::upper_bound(lo, idx.end(), probe, above);
  return {idx.data() + (lo - idx.begin()), static_cast<std::size_t>(hi - lo)};
}

const std::shared_ptr<const Graph::Data>& empty_data() {
  static const std::shared_ptr<const Graph::Data> d = std::make_shared<Graph::Data>();
  return d;
}

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t stable_term_sig(Term t) {
  // Content hash (not id hash) so signatures ignore interning order.
  return mix64(std::hash<std::string>()(t.to_ntriples()));
}

}  // namespace

Graph::Graph() : data_(empty_data()) {}

std::size_t Graph::size() const { return data_->spo.size(); }

bool Graph::ground() const { return data_->ground; }

std::span<const Triple> Graph::triples() const {
  return {data_->spo.data(), data_->spo.size()};
}

bool Graph::contains(const Triple& t) const {
  Key probe = spo_key(t);
  return !prefix_range(data_->spo, spo_key, probe, 3).empty();
}

std::span<const Triple> Graph::match(Term s, Term p, Term o) const {
  const Data& d = *data_;
  const bool bs = s.valid(), bp = p.valid(), bo = o.valid();
  if (bs && bp && bo) return prefix_range(d.spo, spo_key, {s.id(), p.id(), o.id()}, 3);
  if (bs && bp) return prefix_range(d.spo, spo_key, {s.id(), p.id(), 0}, 2);
  if (bs && bo) return prefix_range(d.osp, osp_key, {o.id(), s.id(), 0}, 2);
  if (bs) return prefix_range(d.spo, spo_key, {s.id(), 0, 0}, 1);
  if (bp && bo) return prefix_range(d.pos, pos_key, {p.id(), o.id(), 0}, 2);
  if (bp) return prefix_range(d.pos, pos_key, {p.id(), 0, 0}, 1);
  if (bo) return prefix_range(d.osp, osp_key, {o.id(), 0, 0}, 1);
  return {d.spo.data(), d.spo.size()};
}

void Graph::Builder::add_all(const Graph& g) {
  auto ts = g.triples();
  buf_.insert(buf_.end(), ts.begin(), ts.end());
}

Graph Graph::Builder::build() {
  auto d = std::make_shared<Data>();
  d->spo = std::move(buf_);
  buf_.clear();
  sort_index(d->spo, spo_key);
  d->spo.erase(std::unique(d->spo.begin(), d->spo.end()), d->spo.end());
  d->spo.shrink_to_fit();
  d->pos = d->spo;
  sort_index(d->pos, pos_key);
  d->osp = d->spo;
  sort_index(d->osp, osp_key);
  d->ground = std::none_of(d->spo.begin(), d->spo.end(), [](const Triple& t) {
    return t.s.is_blank() || t.o.is_blank();
  });
  return Graph(std::move(d));
}

Graph Graph::union_with(const Graph& other) const {
  if (other.empty()) return *this;
  if (empty()) return other;
  Builder b;
  b.add_all(*this);
  b.add_all(other);
  return b.build();
}

Graph Graph::standardized_apart(std::string_view prefix) const {
  if (ground()) return *this;
  std::unordered_map<uint32_t, Term> renamed;
  auto fresh = [&](Term t) {
    auto it = renamed.find(t.id());
    if (it != renamed.end()) return it->second;
    Term nb = Term::blank(std::string(prefix) + std::to_string(renamed.size()));
    renamed.emplace(t.id(), nb);
    return nb;
  };
  Builder b;
  for (const Triple& t : triples()) {
    Term s = t.s.is_blank() ? fresh(t.s) : t.s;
    Term o = t.o.is_blank() ? fresh(t.o) : t.o;
    b.add(s, t.p, o);
  }
  return b.build();
}

bool Graph::operator==(const Graph& other) const {
  if (data_ == other.data_) return true;
  return data_->spo == other.data_->spo;
}

Graph canonicalize_blank_nodes(const Graph& g) {
  if (g.ground()) return g;
  std::unordered_map<uint32_t, uint64_t> color;
  for (const Triple& t : g.triples()) {
    if (t.s.is_blank()) color.emplace(t.s.id(), 1);
    if (t.o.is_blank()) color.emplace(t.o.id(), 1);
  }
  auto sig = [&](Term t) {
    return t.is_blank() ? color.at(t.id()) : stable_term_sig(t);
  };
  std::size_t rounds = 2;
  for (std::size_t n = color.size(); n > 1; n /= 2) ++rounds;
  rounds = std::min<std::size_t>(rounds, 8);
  for (std::size_t r = 0; r < rounds; ++r) {
    std::unordered_map<uint32_t, std::vector<uint64_t>> obs;
    for (const Triple& t : g.triples()) {
      uint64_t hp = stable_term_sig(t.p);
      if (t.s.is_blank())
        obs[t.s.id()].push_back(mix64(1 ^ mix64(hp) ^ mix64(sig(t.o) * 3)));
      if (t.o.is_blank())
        obs[t.o.id()].push_back(mix64(2 ^ mix64(hp) ^ mix64(sig(t.s) * 3)));
    }
    std::unordered_map<uint32_t, uint64_t> next;
    for (auto& [id, v] : obs) {
      std::sort(v.begin(), v.end());
      uint64_t h = color.at(id);
      for (uint64_t x : v) h = mix64(h ^ x);
      next[id] = h;
    }
    color = std::move(next);
  }
  // Deterministic rename: by refined color, original label breaking ties.
  std::unordered_map<uint32_t, std::string> labels;
  for (const Triple& t : g.triples()) {
    if (t.s.is_blank()) labels.emplace(t.s.id(), t.s.text());
    if (t.o.is_blank()) labels.emplace(t.o.id(), t.o.text());
  }
  std::vector<std::pair<std::pair<uint64_t, std::string>, uint32_t>> order;
  order.reserve(color.size());
  for (auto& [id, c] : color) order.push_back({{c, labels.at(id)}, id});
  std::sort(order.begin(), order.end());
  std::unordered_map<uint32_t, Term> rename;
  for (std::size_t i = 0; i < order.size(); ++i) {
    rename.emplace(order[i].second, Term::blank("c" + std::to_string(i)));
  }
  Graph::Builder b;
  for (const Triple& t : g.triples()) {
    Term s = t.s.is_blank() ? rename.at(t.s.id()) : t.s;
    Term o = t.o.is_blank() ? rename.at(t.o.id()) : t.o;
    b.add(s, t.p, o);
  }
  return b.build();
}

namespace {

std::vector<Term> blank_terms(const Graph& g) {
  std::map<std::string, Term> seen;
  for (const Triple& t : g.triples()) {
    if (t.s.is_blank()) seen.emplace(t.s.text(), t.s);
    if (t.o.is_blank()) seen.emplace(t.o.text(), t.o);
  }
  std::vector<Term> out;
  out.reserve(seen.size());
  for (auto& [_, t] : seen) out.push_back(t);
  return out;
}

bool isomorphic_brute(const Graph& a, const Graph& b) {
  std::vector<Term> ba = blank_terms(a), bb = blank_terms(b);
  if (ba.size() != bb.size()) return false;
  std::vector<std::size_t> perm(bb.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    std::unordered_map<uint32_t, Term> map;
    for (std::size_t i = 0; i < ba.size(); ++i) map.emplace(ba[i].id(), bb[perm[i]]);
    bool ok = true;
    for (const Triple& t : a.triples()) {
      Term s = t.s.is_blank() ? map.at(t.s.id()) : t.s;
      Term o = t.o.is_blank() ? map.at(t.o.id()) : t.o;
      if (!b.contains(Triple(s, t.p, o))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
  if (a == b) return true;
  if (a.size() != b.size()) return false;
  if (a.ground() || b.ground()) return a.ground() == b.ground() && a == b;
  if (canonicalize_blank_nodes(a) == canonicalize_blank_nodes(b)) return true;
  std::vector<Term> ba = blank_terms(a);
  if (ba.size() <= 8 && blank_terms(b).size() <= 8) return isomorphic_brute(a, b);
  return false;
}

}  // namespace rdfview
