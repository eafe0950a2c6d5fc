#include "rdfview/solution.hpp"

#include <algorithm>
#include <charconv>

namespace rdfview {

std::optional<long long> integer_lexical(const Term& t) {
  if (!t.is_literal()) return std::nullopt;
  const std::string& s = t.text();
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  if (b == e) return std::nullopt;
  long long v = 0;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) return std::nullopt;
  return v;
}

int compare_terms_output(Term a, Term b) {
  auto cls = [](Term t) {
    if (!t.valid()) return 0;
    switch (t.kind()) {
      case TermKind::Blank: return 1;
      case TermKind::Iri: return 2;
      case TermKind::Literal: return 3;
    }
    return 0;
  };
  int ca = cls(a), cb = cls(b);
  if (ca != cb) return ca < cb ? -1 : 1;
  if (ca == 0 || a == b) return 0;
  if (ca == 3) {
    auto ia = integer_lexical(a), ib = integer_lexical(b);
    if (ia && ib && *ia != *ib) return *ia < *ib ? -1 : 1;
  }
  int c = a.text().compare(b.text());
  if (c != 0) return c < 0 ? -1 : 1;
  if (ca != 3) return 0;
  Term da = a.datatype(), db = b.datatype();
  if (da != db) {
    if (!da.valid() || !db.valid()) return da.valid() ? 1 : -1;
    c = da.text().compare(db.text());
    if (c != 0) return c < 0 ? -1 : 1;
  }
  c = a.language().compare(b.language());
  return c == 0 ? 0 : (c < 0 ? -1 : 1);
}

bool same_multiset(const SolutionSet& a, const SolutionSet& b) {
  if (a.nrows != b.nrows) return false;

  // Shared column order: a's vars, then b's extras.
  std::vector<Var> vars = a.vars;
  for (const Var& v : b.vars) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  auto normalize = [&](const SolutionSet& s) {
    std::vector<std::vector<uint32_t>> rows;
    rows.reserve(s.nrows);
    std::vector<std::optional<std::size_t>> cols;
    for (const Var& v : vars) cols.push_back(s.col(v));
    for (std::size_t r = 0; r < s.nrows; ++r) {
      std::vector<uint32_t> row;
      row.reserve(vars.size());
      for (auto& c : cols) row.push_back(c ? s.at(r, *c).id() : Term{}.id());
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  };
  return normalize(a) == normalize(b);
}

std::vector<Var> Solutions::all_vars() const {
  std::vector<Var> out;
  for (const auto& f : factors) out.insert(out.end(), f.vars.begin(), f.vars.end());
  return out;
}

SolutionSet Solutions::flatten(const Deadline& dl) const {
  if (factors.empty()) return SolutionSet::unit();
  if (factors.size() == 1) return factors[0];

  SolutionSet out;
  out.vars = all_vars();
  if (empty_result()) return out;

  std::size_t width = out.vars.size();
  std::vector<std::size_t> idx(factors.size(), 0);
  std::vector<Term> row(width);
  for (;;) {
    dl.check();
    std::size_t off = 0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      auto r = factors[f].row(idx[f]);
      std::copy(r.begin(), r.end(), row.begin() + off);
      off += r.size();
    }
    out.push_row(row);
    // Odometer increment, last factor fastest.
    std::size_t f = factors.size();
    while (f > 0) {
      --f;
      if (++idx[f] < factors[f].nrows) break;
      idx[f] = 0;
      if (f == 0) return out;
    }
  }
}

}  // namespace rdfview
