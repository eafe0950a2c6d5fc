#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace rdfview {

enum class TermKind : uint8_t { Iri, Blank, Literal };

// Interned RDF term. Construction goes through the factory functions, which
// dictionary-encode the term in a process-wide append-only table; equality
// and hashing are O(1) id comparisons. A default-constructed Term is the
// "invalid" sentinel used for unbound solution slots and match wildcards.
class Term {
 public:
  Term() = default;

  // Throws std::invalid_argument on an empty IRI or one containing
  // whitespace or angle brackets.
  static Term iri(std::string_view value);
  // Throws std::invalid_argument on an empty or whitespace-bearing label.
  static Term blank(std::string_view label);
  static Term literal(std::string_view lexical);
  // `datatype` must be an IRI term. A literal carries at most one of
  // datatype and language tag, which the two factory signatures enforce.
  static Term literal(std::string_view lexical, Term datatype);
  static Term literal_lang(std::string_view lexical, std::string_view lang);

  bool valid() const { return id_ != kInvalid; }
  TermKind kind() const;
  bool is_iri() const { return valid() && kind() == TermKind::Iri; }
  bool is_blank() const { return valid() && kind() == TermKind::Blank; }
  bool is_literal() const { return valid() && kind() == TermKind::Literal; }

  // IRI string, blank-node label, or literal lexical form.
  const std::string& text() const;
  // Datatype IRI term; invalid Term when absent or not a literal.
  Term datatype() const;
  // Language tag; empty when absent.
  const std::string& language() const;

  uint32_t id() const { return id_; }
  // Rebuilds a term handle from a previously obtained id.
  static Term from_id(uint32_t id) { return Term(id); }

  bool operator==(const Term&) const = default;

  // Total term order used for deterministic output: IRI < blank < literal;
  // within a kind by text, then datatype, then language. Invalid sorts
  // before everything.
  static int compare(Term a, Term b);

  // N-Triples surface form ("<iri>", "_:label", or a quoted literal).
  std::string to_ntriples() const;

 private:
  static constexpr uint32_t kInvalid = 0xffffffffu;
  friend struct TermHash;
  explicit Term(uint32_t id) : id_(id) {}
  uint32_t id_ = kInvalid;
};

struct TermHash {
  std::size_t operator()(Term t) const { return std::hash<uint32_t>()(t.id_); }
};

// Orders terms by Term::compare; usable as a map comparator for
// deterministic iteration.
struct TermOrder {
  bool operator()(Term a, Term b) const { return Term::compare(a, b) < 0; }
};

// Escapes a string for use inside a double-quoted N-Triples/query literal:
// backslash, quote, and control characters become backslash escapes.
std::string escape_string_literal(std::string_view s);

}  // namespace rdfview
