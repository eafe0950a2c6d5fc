#include "rdfview/term.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace rdfview {
namespace {

struct TermData {
  TermKind kind;
  std::string text;
  uint32_t datatype = 0xffffffffu;
  std::string lang;
};

// Process-wide dictionary. Append-only: entries are created under the
// mutex and never move afterwards (deque gives stable references), so id
// lookups need no lock once the id has been published.
struct Pool {
  std::shared_mutex mu;
  std::deque<TermData> table;
  std::unordered_map<std::string, uint32_t> index;

  uint32_t intern(TermKind kind, std::string_view text, uint32_t datatype,
                  std::string_view lang) {
    std::string key;
    key.reserve(text.size() + lang.size() + 8);
    key.push_back(static_cast<char>(kind));
    key.append(std::to_string(datatype));
    key.push_back('\x01');
    key.append(lang);
    key.push_back('\x02');
    key.append(text);
    {
      std::shared_lock lock(mu);
      auto it = index.find(key);
      if (it != index.end()) return it->second;
    }
    std::unique_lock lock(mu);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(table.size());
    table.push_back(TermData{kind, std::string(text), datatype, std::string(lang)});
    index.emplace(std::move(key), id);
    return id;
  }

  const TermData& at(uint32_t id) const { return table[id]; }
};

Pool& pool() {
  static Pool* p = new Pool();  // leaked intentionally: terms outlive statics
  return *p;
}

bool has_whitespace(std::string_view s) {
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return true;
  }
  return false;
}

const std::string& empty_string() {
  static const std::string s;
  return s;
}

}  // namespace

Term Term::iri(std::string_view value) {
  if (value.empty()) throw std::invalid_argument("IRI must be non-empty");
  if (has_whitespace(value) || value.find_first_of("<>") != std::string_view::npos) {
    throw std::invalid_argument("IRI contains whitespace or angle bracket: " +
                                std::string(value));
  }
  return Term(pool().intern(TermKind::Iri, value, kInvalid, {}));
}

Term Term::blank(std::string_view label) {
  if (label.empty()) throw std::invalid_argument("blank node label must be non-empty");
  if (has_whitespace(label)) {
    throw std::invalid_argument("blank node label contains whitespace: " +
                                std::string(label));
  }
  return Term(pool().intern(TermKind::Blank, label, kInvalid, {}));
}

Term Term::literal(std::string_view lexical) {
  return Term(pool().intern(TermKind::Literal, lexical, kInvalid, {}));
}

Term Term::literal(std::string_view lexical, Term datatype) {
  if (!datatype.is_iri()) throw std::invalid_argument("literal datatype must be an IRI");
  return Term(pool().intern(TermKind::Literal, lexical, datatype.id(), {}));
}

Term Term::literal_lang(std::string_view lexical, std::string_view lang) {
  if (lang.empty()) throw std::invalid_argument("language tag must be non-empty");
  if (has_whitespace(lang)) throw std::invalid_argument("language tag contains whitespace");
  return Term(pool().intern(TermKind::Literal, lexical, kInvalid, lang));
}

TermKind Term::kind() const { return pool().at(id_).kind; }

const std::string& Term::text() const {
  if (!valid()) return empty_string();
  return pool().at(id_).text;
}

Term Term::datatype() const {
  if (!valid()) return Term();
  uint32_t dt = pool().at(id_).datatype;
  return dt == kInvalid ? Term() : Term(dt);
}

const std::string& Term::language() const {
  if (!valid()) return empty_string();
  return pool().at(id_).lang;
}

int Term::compare(Term a, Term b) {
  if (a == b) return 0;
  if (!a.valid()) return -1;
  if (!b.valid()) return 1;
  const TermData& da = pool().at(a.id_);
  const TermData& db = pool().at(b.id_);
  if (da.kind != db.kind) return da.kind < db.kind ? -1 : 1;
  if (int c = da.text.compare(db.text); c != 0) return c < 0 ? -1 : 1;
  if (da.datatype != db.datatype) {
    if (da.datatype == kInvalid) return -1;
    if (db.datatype == kInvalid) return 1;
    return compare(Term(da.datatype), Term(db.datatype));
  }
  int c = da.lang.compare(db.lang);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::string escape_string_literal(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  static const char* hex = "0123456789ABCDEF";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20) {
          out += "\\u00";
          out += hex[c >> 4];
          out += hex[c & 0xf];
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string Term::to_ntriples() const {
  if (!valid()) return "<<invalid>>";
  const TermData& d = pool().at(id_);
  switch (d.kind) {
    case TermKind::Iri:
      return "<" + d.text + ">";
    case TermKind::Blank:
      return "_:" + d.text;
    case TermKind::Literal: {
      std::string out = "\"" + escape_string_literal(d.text) + "\"";
      if (d.datatype != kInvalid) {
        out += "^^<" + pool().at(d.datatype).text + ">";
      } else if (!d.lang.empty()) {
        out += "@" + d.lang;
      }
      return out;
    }
  }
  return {};
}

}  // namespace rdfview
