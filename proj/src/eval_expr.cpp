#include <map>
#include <mutex>
#include <regex>

#include "rdfview/eval.hpp"
#include "rdfview/prefixes.hpp"

namespace rdfview {
namespace {

// Compiled-pattern cache: REGEX re-runs per row, and std::regex construction
// dominates matching for the short anchored patterns queries use.
const std::regex& cached_regex(const std::string& pattern, const std::string& flags) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::string>, std::regex> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(pattern, flags);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto syntax = std::regex::ECMAScript;
    if (flags.find('i') != std::string::npos) syntax |= std::regex::icase;
    it = cache.emplace(key, std::regex(pattern, syntax)).first;
  }
  return it->second;
}

Term lookup(const Var& v, const std::vector<Var>& vars, std::span<const Term> row) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == v) return row[i];
  return Term{};
}

// Effective boolean value of a term (used when a bare value appears in
// boolean position).
Truth ebv(const Term& t) {
  if (!t.is_literal()) return Truth::Error;
  const std::string& s = t.text();
  if (s == "true") return Truth::True;
  if (s == "false" || s.empty()) return Truth::False;
  if (auto n = integer_lexical(t)) return *n != 0 ? Truth::True : Truth::False;
  return Truth::Error;
}

Truth truth_of(const ExprPtr& e, const std::vector<Var>& vars, std::span<const Term> row);

std::optional<Term> value_of(const ExprPtr& e, const std::vector<Var>& vars,
                             std::span<const Term> row) {
  using E = Expr;
  if (const auto* v = std::get_if<E::VarRef>(&e->node)) {
    Term t = lookup(v->var, vars, row);
    if (!t.valid()) return std::nullopt;
    return t;
  }
  if (const auto* c = std::get_if<E::Constant>(&e->node)) return c->value;
  if (const auto* s = std::get_if<E::Str>(&e->node)) {
    auto inner = value_of(s->inner, vars, row);
    if (!inner || inner->is_blank()) return std::nullopt;
    return Term::literal(inner->text());
  }
  // Boolean-valued node used as a value.
  switch (truth_of(e, vars, row)) {
    case Truth::True: return Term::literal("true");
    case Truth::False: return Term::literal("false");
    case Truth::Error: return std::nullopt;
  }
  return std::nullopt;
}

// Equality on RDF terms for FILTER "=": identical terms are equal; literals
// additionally compare numerically when both lexical forms are integers.
// Everything else (kind mismatch included) compares unequal rather than
// erroring, which keeps != usable for IRI tests.
bool terms_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a.is_literal() && b.is_literal()) {
    auto ia = integer_lexical(a), ib = integer_lexical(b);
    if (ia && ib) return *ia == *ib;
  }
  return false;
}

Truth compare_terms(Cmp op, const Term& a, const Term& b) {
  if (op == Cmp::Eq) return terms_equal(a, b) ? Truth::True : Truth::False;
  if (op == Cmp::Ne) return terms_equal(a, b) ? Truth::False : Truth::True;
  // Order comparisons are defined on literals only: numerically when both
  // lexical forms are integers, else bytewise on the lexical form.
  if (!a.is_literal() || !b.is_literal()) return Truth::Error;
  int c;
  auto ia = integer_lexical(a), ib = integer_lexical(b);
  if (ia && ib) {
    c = (*ia < *ib) ? -1 : (*ia > *ib ? 1 : 0);
  } else {
    int r = a.text().compare(b.text());
    c = r < 0 ? -1 : (r > 0 ? 1 : 0);
  }
  bool res = false;
  switch (op) {
    case Cmp::Lt: res = c < 0; break;
    case Cmp::Gt: res = c > 0; break;
    case Cmp::Le: res = c <= 0; break;
    case Cmp::Ge: res = c >= 0; break;
    default: break;
  }
  return res ? Truth::True : Truth::False;
}

Truth truth_of(const ExprPtr& e, const std::vector<Var>& vars, std::span<const Term> row) {
  using E = Expr;
  return std::visit(
      [&](const auto& n) -> Truth {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, E::Compare>) {
          auto a = value_of(n.lhs, vars, row);
          auto b = value_of(n.rhs, vars, row);
          if (!a || !b) return Truth::Error;
          return compare_terms(n.op, *a, *b);
        } else if constexpr (std::is_same_v<T, E::And>) {
          Truth l = truth_of(n.lhs, vars, row);
          Truth r = truth_of(n.rhs, vars, row);
          if (l == Truth::False || r == Truth::False) return Truth::False;
          if (l == Truth::Error || r == Truth::Error) return Truth::Error;
          return Truth::True;
        } else if constexpr (std::is_same_v<T, E::Or>) {
          Truth l = truth_of(n.lhs, vars, row);
          Truth r = truth_of(n.rhs, vars, row);
          if (l == Truth::True || r == Truth::True) return Truth::True;
          if (l == Truth::Error || r == Truth::Error) return Truth::Error;
          return Truth::False;
        } else if constexpr (std::is_same_v<T, E::Not>) {
          switch (truth_of(n.inner, vars, row)) {
            case Truth::True: return Truth::False;
            case Truth::False: return Truth::True;
            case Truth::Error: return Truth::Error;
          }
          return Truth::Error;
        } else if constexpr (std::is_same_v<T, E::Bound>) {
          return lookup(n.var, vars, row).valid() ? Truth::True : Truth::False;
        } else if constexpr (std::is_same_v<T, E::IsIri>) {
          auto v = value_of(n.inner, vars, row);
          if (!v) return Truth::Error;
          return v->is_iri() ? Truth::True : Truth::False;
        } else if constexpr (std::is_same_v<T, E::Regex>) {
          auto v = value_of(n.text, vars, row);
          if (!v || !v->is_literal()) return Truth::Error;
          try {
            return std::regex_search(v->text(), cached_regex(n.pattern, n.flags))
                       ? Truth::True
                       : Truth::False;
          } catch (const std::regex_error&) {
            return Truth::Error;
          }
        } else {
          // VarRef / Constant / Str in boolean position.
          auto v = value_of(e, vars, row);
          if (!v) return Truth::Error;
          return ebv(*v);
        }
      },
      e->node);
}

}  // namespace

Truth eval_filter_expr(const ExprPtr& e, const std::vector<Var>& vars,
                       std::span<const Term> row) {
  return truth_of(e, vars, row);
}

std::optional<Term> eval_value_expr(const ExprPtr& e, const std::vector<Var>& vars,
                                    std::span<const Term> row) {
  return value_of(e, vars, row);
}

}  // namespace rdfview
