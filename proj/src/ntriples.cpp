#include "rdfview/ntriples.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace rdfview {
namespace {

void utf8_encode(uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

struct LineScanner {
  const char* p;
  const char* end;
  std::size_t line;

  bool done() const { return p >= end; }
  char peek() const { return p < end ? *p : '\0'; }

  void skip_space() {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line); }

  uint32_t hex_escape(int digits) {
    uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (p >= end || !std::isxdigit(static_cast<unsigned char>(*p)))
        fail("bad \\u escape");
      cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(*p))
                          ? static_cast<uint32_t>(*p - '0')
                          : static_cast<uint32_t>(std::tolower(*p) - 'a' + 10));
      ++p;
    }
    return cp;
  }

  std::string scan_iri() {
    ++p;  // consume '<'
    std::string out;
    while (p < end && *p != '>') {
      if (*p == '\n' || *p == '\r') fail("unterminated IRI");
      if (*p == '\\') {
        ++p;
        if (p >= end) fail("unterminated IRI escape");
        if (*p == 'u') {
          ++p;
          utf8_encode(hex_escape(4), out);
        } else if (*p == 'U') {
          ++p;
          utf8_encode(hex_escape(8), out);
        } else {
          fail(std::string("bad IRI escape \\") + *p);
        }
      } else {
        out += *p++;
      }
    }
    if (p >= end) fail("unterminated IRI");
    ++p;  // consume '>'
    return out;
  }

  std::string scan_quoted() {
    ++p;  // consume '"'
    std::string out;
    while (p < end && *p != '"') {
      if (*p == '\n' || *p == '\r') fail("unterminated string literal");
      if (*p == '\\') {
        ++p;
        if (p >= end) fail("unterminated string escape");
        switch (*p) {
          case 't': out += '\t'; ++p; break;
          case 'b': out += '\b'; ++p; break;
          case 'n': out += '\n'; ++p; break;
          case 'r': out += '\r'; ++p; break;
          case 'f': out += '\f'; ++p; break;
          case '"': out += '"'; ++p; break;
          case '\'': out += '\''; ++p; break;
          case '\\': out += '\\'; ++p; break;
          case 'u': ++p; utf8_encode(hex_escape(4), out); break;
          case 'U': ++p; utf8_encode(hex_escape(8), out); break;
          default: fail(std::string("bad string escape \\") + *p);
        }
      } else {
        out += *p++;
      }
    }
    if (p >= end) fail("unterminated string literal");
    ++p;  // consume closing '"'
    return out;
  }

  Term scan_term(bool subject_position) {
    skip_space();
    if (done()) fail("unexpected end of statement");
    char c = peek();
    if (c == '<') return Term::iri(scan_iri());
    if (c == '_') {
      ++p;
      if (p >= end || *p != ':') fail("expected ':' after '_' in blank node");
      ++p;
      std::string label;
      while (p < end && (std::isalnum(static_cast<unsigned char>(*p)) || *p == '_' || *p == '-')) {
        label += *p++;
      }
      if (label.empty()) fail("empty blank node label");
      return Term::blank(label);
    }
    if (c == '"') {
      if (subject_position) fail("literal not allowed in subject position");
      std::string lex = scan_quoted();
      if (p + 1 < end && p[0] == '^' && p[1] == '^') {
        p += 2;
        skip_space();
        if (done() || peek() != '<') fail("expected datatype IRI after '^^'");
        return Term::literal(lex, Term::iri(scan_iri()));
      }
      if (p < end && *p == '@') {
        ++p;
        std::string lang;
        while (p < end && (std::isalnum(static_cast<unsigned char>(*p)) || *p == '-')) {
          lang += *p++;
        }
        if (lang.empty()) fail("empty language tag");
        return Term::literal_lang(lex, lang);
      }
      return Term::literal(lex);
    }
    fail(std::string("expected term, found '") + c + "'");
  }
};

}  // namespace

Graph parse_ntriples(std::string_view text) {
  Graph::Builder b;
  const char* p = text.data();
  const char* const end = p + text.size();
  std::size_t line = 0;
  while (p < end) {
    ++line;
    const char* eol = static_cast<const char*>(memchr(p, '\n', end - p));
    const char* line_end = eol ? eol : end;
    if (line_end > p && line_end[-1] == '\r') --line_end;
    LineScanner sc{p, line_end, line};
    p = eol ? eol + 1 : end;

    sc.skip_space();
    if (sc.done() || sc.peek() == '#') continue;
    Term s = sc.scan_term(/*subject_position=*/true);
    if (s.is_literal()) sc.fail("literal not allowed in subject position");
    Term pred = sc.scan_term(false);
    if (!pred.is_iri()) sc.fail("predicate must be an IRI");
    Term o = sc.scan_term(false);
    sc.skip_space();
    if (sc.done() || sc.peek() != '.') sc.fail("expected '.' terminating statement");
    ++sc.p;
    sc.skip_space();
    if (!sc.done() && sc.peek() != '#') sc.fail("trailing characters after statement");
    b.add(s, pred, o);
  }
  return b.build();
}

namespace {

// Sorting 3 string-compared keys per triple is slow at millions of triples;
// rank the distinct terms once and sort on dense integer ranks instead.
std::vector<Triple> order_for_output(const Graph& g) {
  std::vector<uint32_t> ids;
  ids.reserve(g.size() * 3);
  for (const Triple& t : g.triples()) {
    ids.push_back(t.s.id());
    ids.push_back(t.p.id());
    ids.push_back(t.o.id());
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<uint32_t> sorted_ids = ids;
  std::sort(sorted_ids.begin(), sorted_ids.end(), [](uint32_t a, uint32_t b) {
    return Term::compare(Term::from_id(a), Term::from_id(b)) < 0;
  });
  std::unordered_map<uint32_t, uint32_t> rank;
  rank.reserve(sorted_ids.size() * 2);
  for (uint32_t i = 0; i < sorted_ids.size(); ++i) rank.emplace(sorted_ids[i], i);
  auto ts = g.triples();
  std::vector<Triple> out(ts.begin(), ts.end());
  std::sort(out.begin(), out.end(), [&](const Triple& a, const Triple& b) {
    auto ka = std::array<uint32_t, 3>{rank.at(a.s.id()), rank.at(a.p.id()), rank.at(a.o.id())};
    auto kb = std::array<uint32_t, 3>{rank.at(b.s.id()), rank.at(b.p.id()), rank.at(b.o.id())};
    return ka < kb;
  });
  return out;
}

}  // namespace

void serialize_ntriples(const Graph& g, std::ostream& out) {
  for (const Triple& t : order_for_output(g)) out << t.to_ntriples() << "\n";
}

std::string serialize_ntriples(const Graph& g) {
  std::ostringstream os;
  serialize_ntriples(g, os);
  return os.str();
}

}  // namespace rdfview
