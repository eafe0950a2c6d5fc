#include "rdfview/trig.hpp"

#include <cctype>
#include <map>

#include "lexer.hpp"
#include "rdfview/prefixes.hpp"

namespace rdfview {
namespace {

using lex::is_keyword;
using lex::Lexer;
using lex::Tok;
using lex::Token;

class TrigParser {
 public:
  explicit TrigParser(std::string_view text) : text_(text), lx_(text) {
    for (const auto& [k, v] : default_prefixes()) prefixes_[k] = v;
  }

  TrigDocument parse() {
    Graph::Builder default_builder;
    for (;;) {
      const Token& t = lx_.peek();
      if (t.kind == Tok::End) break;
      if (t.kind == Tok::AtWord || is_keyword(t, "PREFIX") || is_keyword(t, "BASE")) {
        parse_directive();
        continue;
      }
      if (t.kind == Tok::LBrace) {  // unnamed block feeds the default graph
        lx_.next();
        parse_statements_until_rbrace(default_builder);
        continue;
      }
      if (t.kind == Tok::Iri || t.kind == Tok::PName || t.kind == Tok::BlankLabel) {
        Token first = lx_.next();
        Term subject_or_name = term_from(first);
        if (lx_.peek().kind == Tok::LBrace && first.kind != Tok::BlankLabel) {
          parse_named_block(subject_or_name);
        } else {
          parse_statement_rest(subject_or_name, default_builder);
        }
        continue;
      }
      if (t.kind == Tok::String || t.kind == Tok::Integer)
        lx_.fail("literal not allowed in subject position", t);
      if (t.kind == Tok::Variable) lx_.fail("variable not allowed in data", t);
      lx_.fail("unexpected token at top level of TriG document", t);
    }
    doc_.dataset.default_graph = default_builder.build();
    return std::move(doc_);
  }

 private:
  std::string_view text_;
  Lexer lx_;
  std::map<std::string, std::string> prefixes_;
  TrigDocument doc_;

  void parse_directive() {
    Token t = lx_.next();
    bool at_style = t.kind == Tok::AtWord;
    std::string word = t.kind == Tok::AtWord ? lower(t.text) : lower(t.text);
    if (word == "prefix") {
      Token pn = lx_.next();
      if (pn.kind != Tok::PName || !pn.local.empty())
        lx_.fail("expected prefix name ending in ':'", pn);
      Token iri = lx_.next();
      if (iri.kind != Tok::Iri) lx_.fail("expected namespace IRI", iri);
      prefixes_[pn.prefix] = iri.text;
      doc_.prefixes.emplace_back(pn.prefix, iri.text);
      if (lx_.peek().kind == Tok::Dot) lx_.next();
      else if (at_style) lx_.fail("expected '.' after @prefix", lx_.peek());
    } else if (word == "base") {
      Token iri = lx_.next();
      if (iri.kind != Tok::Iri) lx_.fail("expected base IRI", iri);
      base_ = iri.text;
      if (lx_.peek().kind == Tok::Dot) lx_.next();
    } else {
      lx_.fail("unknown directive '" + t.text + "'", t);
    }
  }

  static std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  bool has_scheme(std::string_view iri) const {
    if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
      char c = iri[i];
      if (c == ':') return true;
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.'))
        return false;
    }
    return false;
  }

  Term term_from(const Token& t) {
    if (t.kind == Tok::Iri) {
      std::string iri = t.text;
      if (!has_scheme(iri)) {
        if (base_.empty()) lx_.fail("relative IRI <" + iri + "> without @base", t);
        iri = base_ + iri;  // simple concatenation subset
      }
      return Term::iri(iri);
    }
    if (t.kind == Tok::PName) {
      auto it = prefixes_.find(t.prefix);
      if (it == prefixes_.end()) lx_.fail("unknown prefix '" + t.prefix + ":'", t);
      return Term::iri(it->second + t.local);
    }
    if (t.kind == Tok::BlankLabel) return Term::blank(t.text);
    lx_.fail("expected IRI or blank node", t);
  }

  Term object_term() {
    Token t = lx_.next();
    if (t.kind == Tok::Iri || t.kind == Tok::PName || t.kind == Tok::BlankLabel)
      return term_from(t);
    if (t.kind == Tok::Integer) return Term::literal(t.text);
    if (t.kind == Tok::String) return finish_literal(t);
    if (t.kind == Tok::Variable) lx_.fail("variable not allowed in data", t);
    lx_.fail("expected term", t);
  }

  Term finish_literal(const Token& str) {
    const Token& n = lx_.peek();
    if (n.kind == Tok::DCaret) {
      lx_.next();
      Token dt = lx_.next();
      if (dt.kind != Tok::Iri && dt.kind != Tok::PName)
        lx_.fail("expected datatype IRI after '^^'", dt);
      return Term::literal(str.text, term_from(dt));
    }
    if (n.kind == Tok::AtWord && n.offset == str.end_offset) {
      Token lang = lx_.next();
      return Term::literal_lang(str.text, lang.text);
    }
    return Term::literal(str.text);
  }

  Term predicate_term() {
    Token t = lx_.next();
    if (t.kind == Tok::Ident && (t.text == "a" || t.text == "A"))
      return Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    if (t.kind == Tok::Iri || t.kind == Tok::PName) return term_from(t);
    if (t.kind == Tok::Variable) lx_.fail("variable not allowed in data", t);
    lx_.fail("expected predicate", t);
  }

  // Subject already consumed; parses predicate-object lists and the
  // terminating '.' (optional right before '}').
  void parse_statement_rest(Term subject, Graph::Builder& out) {
    for (;;) {
      Term pred = predicate_term();
      for (;;) {
        Term obj = object_term();
        out.add(subject, pred, obj);
        if (lx_.peek().kind == Tok::Comma) {
          lx_.next();
          continue;
        }
        break;
      }
      if (lx_.peek().kind == Tok::Semicolon) {
        lx_.next();
        while (lx_.peek().kind == Tok::Semicolon) lx_.next();
        const Token& n = lx_.peek();
        if (n.kind == Tok::Dot || n.kind == Tok::RBrace || n.kind == Tok::End) break;
        continue;
      }
      break;
    }
    if (lx_.peek().kind == Tok::Dot) {
      lx_.next();
    } else if (lx_.peek().kind != Tok::RBrace && lx_.peek().kind != Tok::End) {
      lx_.fail("expected '.' terminating statement", lx_.peek());
    }
  }

  void parse_statements_until_rbrace(Graph::Builder& out) {
    // Opening '{' already at head.
    Token open = lx_.next();
    if (open.kind != Tok::LBrace) lx_.fail("expected '{'", open);
    for (;;) {
      const Token& t = lx_.peek();
      if (t.kind == Tok::RBrace) {
        Token rb = lx_.next();
        last_rbrace_offset_ = rb.offset;
        return;
      }
      if (t.kind == Tok::End) lx_.fail("unterminated graph block", t);
      if (t.kind == Tok::String || t.kind == Tok::Integer)
        lx_.fail("literal not allowed in subject position", t);
      Token first = lx_.next();
      Term subject = term_from(first);
      parse_statement_rest(subject, out);
    }
  }

  void parse_named_block(Term name) {
    const Token& open = lx_.peek();
    std::size_t raw_begin = open.end_offset;
    Graph::Builder b;
    parse_statements_until_rbrace(b);
    // The '}' token was just consumed; recover its offset from the lexer's
    // progress by scanning back over the raw text.
    std::size_t raw_end = last_rbrace_offset_;
    Graph g = b.build();
    doc_.blocks.push_back(TrigBlock{
        name, g, std::string(text_.substr(raw_begin, raw_end - raw_begin))});
    Graph& slot = doc_.dataset.named[name];
    slot = slot.union_with(g);
  }

  std::string base_;
  std::size_t last_rbrace_offset_ = 0;
};

}  // namespace

TrigDocument parse_trig(std::string_view text) {
  TrigParser p(text);
  return p.parse();
}

}  // namespace rdfview
