#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rdfview/ast.hpp"
#include "rdfview/errors.hpp"
#include "rdfview/term.hpp"

namespace rdfview {

// Cooperative cancellation token. check() is amortized-cheap and throws
// EvalTimeout once the wall-clock deadline passes.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::steady_clock::time_point when) : when_(when) {}

  void check() const {
    if (!when_) return;
    if ((++tick_ & 0x3ff) != 0) return;
    if (std::chrono::steady_clock::now() > *when_) throw EvalTimeout();
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> when_;
  mutable uint32_t tick_ = 0;
};

// Multiset of solution mappings over a fixed variable list. Rows are stored
// flat and row-major; an invalid Term marks an unbound slot. The row count
// is explicit so zero-width sets (ASK-style results) can still carry a
// multiplicity.
struct SolutionSet {
  std::vector<Var> vars;
  std::vector<Term> data;
  std::size_t nrows = 0;

  std::size_t width() const { return vars.size(); }
  std::size_t size() const { return nrows; }
  bool empty() const { return nrows == 0; }

  std::span<const Term> row(std::size_t i) const {
    return std::span<const Term>(data.data() + i * width(), width());
  }
  Term at(std::size_t r, std::size_t c) const { return data[r * width() + c]; }

  // Column index of `v`, or nullopt when the variable is not present.
  std::optional<std::size_t> col(const Var& v) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == v) return i;
    return std::nullopt;
  }

  void push_row(std::span<const Term> r) {
    data.insert(data.end(), r.begin(), r.end());
    ++nrows;
  }

  // One all-unbound solution over no variables (the join identity).
  static SolutionSet unit() {
    SolutionSet s;
    s.nrows = 1;
    return s;
  }
  static SolutionSet none(std::vector<Var> vars) {
    SolutionSet s;
    s.vars = std::move(vars);
    return s;
  }
};

// True when the two sets hold the same multiset of mappings. Columns are
// aligned by variable name; a variable missing on one side is treated as an
// all-unbound column.
bool same_multiset(const SolutionSet& a, const SolutionSet& b);

// Evaluation result kept as a product of variable-disjoint factors; the
// represented multiset is the cartesian product of all factors. No factors
// at all is the unit (one empty mapping); any factor with zero rows makes
// the product empty. Keeping variable-disjoint subresults unexpanded lets
// CONSTRUCT instantiate cartesian-shaped queries without enumerating the
// cross product.
struct Solutions {
  std::vector<SolutionSet> factors;

  bool empty_result() const {
    for (const auto& f : factors)
      if (f.empty()) return true;
    return false;
  }

  std::vector<Var> all_vars() const;

  // Expands the product into one flat set. Deadline-checked per row.
  SolutionSet flatten(const Deadline& dl) const;

  static Solutions of(SolutionSet s) {
    Solutions r;
    r.factors.push_back(std::move(s));
    return r;
  }
  static Solutions unit() { return Solutions{}; }
};

// Deterministic term order for result output: unbound < blank < IRI <
// literal; literals compare numerically when both lexical forms are
// integers, else by lexical form, datatype, language.
int compare_terms_output(Term a, Term b);

// Lexical form parsed as a (bounded) integer, when the whole text is one.
std::optional<long long> integer_lexical(const Term& t);

}  // namespace rdfview
