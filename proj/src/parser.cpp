#include <cctype>
#include <map>

#include "lexer.hpp"
#include "rdfview/prefixes.hpp"
#include "rdfview/syntax.hpp"

namespace rdfview {
namespace {

using lex::is_keyword;
using lex::Lexer;
using lex::Tok;
using lex::Token;

bool has_scheme(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    char c = iri[i];
    if (c == ':') return true;
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.'))
      return false;
  }
  return false;
}

// Minimal RFC 3986 reference resolution (no dot-segment normalization;
// covers fragment-, authority-, absolute-path- and relative-path forms).
std::string merge_iri(const std::string& base, const std::string& rel) {
  if (rel.empty()) return base;
  if (rel[0] == '#') {
    std::size_t h = base.find('#');
    return (h == std::string::npos ? base : base.substr(0, h)) + rel;
  }
  std::size_t scheme_end = base.find(':');
  if (rel.size() >= 2 && rel[0] == '/' && rel[1] == '/') {
    return base.substr(0, scheme_end + 1) + rel;
  }
  std::size_t auth = base.find("://");
  if (rel[0] == '/') {
    if (auth == std::string::npos) return base.substr(0, scheme_end + 1) + rel;
    std::size_t root = base.find('/', auth + 3);
    return (root == std::string::npos ? base : base.substr(0, root)) + rel;
  }
  std::size_t path_start = auth == std::string::npos ? scheme_end + 1 : auth + 3;
  std::size_t last_slash = base.rfind('/');
  if (last_slash == std::string::npos || last_slash < path_start) return base + "/" + rel;
  return base.substr(0, last_slash + 1) + rel;
}

enum class Pos { Subject, Predicate, Object };

class QueryParser {
 public:
  QueryParser(std::string_view text, const PrefixBindings& extra) : lx_(text) {
    for (const auto& [k, v] : default_prefixes()) prefixes_[k] = v;
    for (const auto& [k, v] : extra) prefixes_[k] = v;
  }

  Query parse_top() {
    parse_prologue();
    Query q = parse_body();
    q.prologue = declared_;
    const Token& end = lx_.peek();
    if (end.kind != Tok::End) lx_.fail("unexpected input after query", end);
    return q;
  }

 private:
  Lexer lx_;
  std::map<std::string, std::string> prefixes_;
  std::optional<std::string> base_;
  Prologue declared_;

  Token expect(Tok k, const char* what) {
    Token t = lx_.next();
    if (t.kind != k) lx_.fail(std::string("expected ") + what, t);
    return t;
  }

  std::string resolve_iri(const std::string& raw, const Token& at) {
    std::string out = raw;
    if (!has_scheme(out)) {
      if (!base_) lx_.fail("relative IRI <" + raw + "> without BASE", at);
      out = merge_iri(*base_, raw);
      if (!has_scheme(out)) lx_.fail("IRI <" + out + "> is not absolute", at);
    }
    return out;
  }

  Term pname_term(const Token& t) {
    auto it = prefixes_.find(t.prefix);
    if (it == prefixes_.end()) lx_.fail("unknown prefix '" + t.prefix + ":'", t);
    return Term::iri(it->second + t.local);
  }

  Term iri_like_term(const Token& t) {
    if (t.kind == Tok::Iri) return Term::iri(resolve_iri(t.text, t));
    return pname_term(t);
  }

  void parse_prologue() {
    for (;;) {
      const Token& t = lx_.peek();
      if (is_keyword(t, "PREFIX")) {
        lx_.next();
        prefix_decl(false);
      } else if (t.kind == Tok::AtWord && lowercase(t.text) == "prefix") {
        lx_.next();
        prefix_decl(true);
      } else if (is_keyword(t, "BASE")) {
        lx_.next();
        base_decl(false);
      } else if (t.kind == Tok::AtWord && lowercase(t.text) == "base") {
        lx_.next();
        base_decl(true);
      } else {
        return;
      }
    }
  }

  static std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  void prefix_decl(bool at_style) {
    Token pn = expect(Tok::PName, "prefix name ending in ':'");
    if (!pn.local.empty()) lx_.fail("prefix declaration must end at ':'", pn);
    Token iri = expect(Tok::Iri, "namespace IRI");
    std::string abs = resolve_iri(iri.text, iri);
    prefixes_[pn.prefix] = abs;
    declared_.prefixes.emplace_back(pn.prefix, abs);
    if (at_style && lx_.peek().kind == Tok::Dot) lx_.next();
  }

  void base_decl(bool at_style) {
    Token iri = expect(Tok::Iri, "base IRI");
    if (!has_scheme(iri.text)) lx_.fail("BASE IRI must be absolute", iri);
    base_ = iri.text;
    declared_.base = iri.text;
    if (at_style && lx_.peek().kind == Tok::Dot) lx_.next();
  }

  Query parse_body() {
    Token t = lx_.next();
    Query q;
    if (is_keyword(t, "SELECT")) {
      q.form = QueryForm::Select;
      if (is_keyword(lx_.peek(), "DISTINCT")) {
        lx_.next();
        q.distinct = true;
      }
      if (lx_.peek().kind == Tok::Star) {
        lx_.next();
        q.select_star = true;
      } else {
        while (lx_.peek().kind == Tok::Variable) q.projection.push_back(Var{lx_.next().text});
        if (q.projection.empty())
          lx_.fail("SELECT requires '*' or at least one variable", lx_.peek());
      }
    } else if (is_keyword(t, "CONSTRUCT")) {
      q.form = QueryForm::Construct;
      expect(Tok::LBrace, "'{' starting CONSTRUCT template");
      if (lx_.peek().kind != Tok::RBrace) parse_triples_into(q.construct_template);
      expect(Tok::RBrace, "'}' ending CONSTRUCT template");
    } else if (is_keyword(t, "ASK")) {
      q.form = QueryForm::Ask;
    } else if (is_keyword(t, "DESCRIBE")) {
      lx_.fail("unsupported query form: DESCRIBE", t);
    } else {
      lx_.fail("expected SELECT, CONSTRUCT or ASK", t);
    }

    parse_dataset_clauses(q);
    if (is_keyword(lx_.peek(), "WHERE")) lx_.next();
    q.where = parse_group();
    parse_modifiers(q);
    return q;
  }

  void parse_dataset_clauses(Query& q) {
    while (is_keyword(lx_.peek(), "FROM")) {
      lx_.next();
      DatasetClause dc;
      const Token& t = lx_.peek();
      if (is_keyword(t, "NAMED")) {
        lx_.next();
        Token g = lx_.next();
        if (g.kind != Tok::Iri && g.kind != Tok::PName)
          lx_.fail("expected graph IRI after FROM NAMED", g);
        dc.graph = iri_like_term(g);
        if (lx_.peek().kind == Tok::LBracket) {
          Token open = lx_.next();
          Query sub = parse_body();
          if (sub.form != QueryForm::Construct)
            lx_.fail("inline view must be a CONSTRUCT query", open);
          expect(Tok::RBracket, "']' closing inline view");
          dc.kind = DatasetClause::Kind::FromNamedInline;
          dc.inline_query = std::make_shared<Query>(std::move(sub));
        } else {
          dc.kind = DatasetClause::Kind::FromNamed;
        }
      } else if (t.kind == Tok::LParen) {
        Token open = lx_.next();
        Query sub = parse_body();
        if (sub.form != QueryForm::Construct)
          lx_.fail("inline view must be a CONSTRUCT query", open);
        expect(Tok::RParen, "')' closing inline view");
        dc.kind = DatasetClause::Kind::FromInline;
        dc.inline_query = std::make_shared<Query>(std::move(sub));
      } else if (t.kind == Tok::Iri || t.kind == Tok::PName) {
        Token g = lx_.next();
        dc.kind = DatasetClause::Kind::From;
        dc.graph = iri_like_term(g);
      } else {
        lx_.fail("expected graph IRI or inline view after FROM", t);
      }
      q.dataset.push_back(std::move(dc));
    }
  }

  PatternPtr parse_group() {
    expect(Tok::LBrace, "'{' starting group");
    std::vector<PatternPtr> elements;
    std::vector<ExprPtr> filters;
    for (;;) {
      while (lx_.peek().kind == Tok::Dot) lx_.next();
      const Token& t = lx_.peek();
      if (t.kind == Tok::RBrace) {
        lx_.next();
        break;
      }
      if (t.kind == Tok::End) lx_.fail("unterminated group", t);
      if (is_keyword(t, "FILTER")) {
        lx_.next();
        filters.push_back(parse_constraint());
        continue;
      }
      if (is_keyword(t, "OPTIONAL")) {
        lx_.next();
        elements.push_back(make_pattern(GraphPattern::Optional{parse_group()}));
        continue;
      }
      if (is_keyword(t, "GRAPH")) {
        lx_.next();
        TermOrVar g = parse_var_or_iri();
        elements.push_back(make_pattern(GraphPattern::GraphAt{std::move(g), parse_group()}));
        continue;
      }
      if (t.kind == Tok::LBrace) {
        PatternPtr g = parse_group();
        while (is_keyword(lx_.peek(), "UNION")) {
          lx_.next();
          g = make_pattern(GraphPattern::Union{g, parse_group()});
        }
        elements.push_back(std::move(g));
        continue;
      }
      if (t.kind == Tok::Iri || t.kind == Tok::PName || t.kind == Tok::BlankLabel ||
          t.kind == Tok::Variable) {
        std::vector<TriplePattern> tps;
        parse_triples_into(tps);
        elements.push_back(make_pattern(GraphPattern::Bgp{std::move(tps)}));
        continue;
      }
      if (t.kind == Tok::String || t.kind == Tok::Integer)
        lx_.fail("literal not allowed in subject position", t);
      lx_.fail("unexpected token in graph pattern", t);
    }
    PatternPtr base;
    if (elements.size() == 1 ) {
      base = elements[0];
    } else {
      base = make_pattern(GraphPattern::Group{std::move(elements)});
    }
    for (const ExprPtr& f : filters) {
      base = make_pattern(GraphPattern::Filtered{base, f});
    }
    return base;
  }

  TermOrVar parse_var_or_iri() {
    Token t = lx_.next();
    if (t.kind == Tok::Variable) return Var{t.text};
    if (t.kind == Tok::Iri || t.kind == Tok::PName) return iri_like_term(t);
    lx_.fail("expected variable or IRI", t);
  }

  bool starts_verb(const Token& t) const {
    return t.kind == Tok::Variable || t.kind == Tok::Iri || t.kind == Tok::PName ||
           (t.kind == Tok::Ident && (t.text == "a" || t.text == "A"));
  }

  TermOrVar parse_verb() {
    Token t = lx_.next();
    if (t.kind == Tok::Ident && (t.text == "a" || t.text == "A"))
      return Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    if (t.kind == Tok::Variable) return Var{t.text};
    if (t.kind == Tok::Iri || t.kind == Tok::PName) return iri_like_term(t);
    lx_.fail("expected predicate", t);
  }

  TermOrVar parse_term_or_var(Pos pos) {
    Token t = lx_.next();
    switch (t.kind) {
      case Tok::Variable:
        return Var{t.text};
      case Tok::Iri:
      case Tok::PName:
        return iri_like_term(t);
      case Tok::BlankLabel:
        return Term::blank(t.text);
      case Tok::Integer:
        if (pos == Pos::Subject) lx_.fail("literal not allowed in subject position", t);
        return Term::literal(t.text, vocab::xsd_integer());
      case Tok::String: {
        if (pos == Pos::Subject) lx_.fail("literal not allowed in subject position", t);
        return finish_literal(t);
      }
      default:
        lx_.fail("expected term", t);
    }
  }

  Term finish_literal(const Token& str) {
    const Token& n = lx_.peek();
    if (n.kind == Tok::DCaret) {
      lx_.next();
      Token dt = lx_.next();
      if (dt.kind != Tok::Iri && dt.kind != Tok::PName)
        lx_.fail("expected datatype IRI after '^^'", dt);
      return Term::literal(str.text, iri_like_term(dt));
    }
    // A language tag must touch the closing quote; '@prefix' on the next
    // line must not be mistaken for one.
    if (n.kind == Tok::AtWord && n.offset == str.end_offset) {
      Token lang = lx_.next();
      return Term::literal_lang(str.text, lang.text);
    }
    return Term::literal(str.text);
  }

  void parse_triples_into(std::vector<TriplePattern>& out) {
    for (;;) {
      TermOrVar subject = parse_term_or_var(Pos::Subject);
      for (;;) {  // predicate-object lists
        TermOrVar pred = parse_verb();
        for (;;) {  // object list
          TermOrVar obj = parse_term_or_var(Pos::Object);
          out.push_back(TriplePattern{subject, pred, obj});
          if (lx_.peek().kind == Tok::Comma) {
            lx_.next();
            continue;
          }
          break;
        }
        if (lx_.peek().kind == Tok::Semicolon) {
          lx_.next();
          while (lx_.peek().kind == Tok::Semicolon) lx_.next();
          if (starts_verb(lx_.peek())) continue;
        }
        break;
      }
      if (lx_.peek().kind != Tok::Dot) break;
      lx_.next();
      const Token& n = lx_.peek();
      bool next_subject = n.kind == Tok::Iri || n.kind == Tok::PName ||
                          n.kind == Tok::BlankLabel || n.kind == Tok::Variable;
      if (!next_subject) break;
      // Keywords like FILTER are Idents and stop the block naturally.
    }
  }

  ExprPtr parse_constraint() {
    const Token& t = lx_.peek();
    if (t.kind == Tok::LParen) {
      lx_.next();
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')' closing FILTER expression");
      return e;
    }
    if (t.kind == Tok::Ident || t.kind == Tok::Bang) return parse_primary();
    lx_.fail("expected '(' or builtin call after FILTER", t);
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr l = parse_and();
    while (lx_.peek().kind == Tok::OrOr) {
      lx_.next();
      l = make_expr(Expr::Or{l, parse_and()});
    }
    return l;
  }

  ExprPtr parse_and() {
    ExprPtr l = parse_rel();
    while (lx_.peek().kind == Tok::AndAnd) {
      lx_.next();
      l = make_expr(Expr::And{l, parse_rel()});
    }
    return l;
  }

  ExprPtr parse_rel() {
    ExprPtr l = parse_primary();
    Cmp op;
    switch (lx_.peek().kind) {
      case Tok::Eq: op = Cmp::Eq; break;
      case Tok::Ne: op = Cmp::Ne; break;
      case Tok::Lt: op = Cmp::Lt; break;
      case Tok::Le: op = Cmp::Le; break;
      case Tok::Gt: op = Cmp::Gt; break;
      case Tok::Ge: op = Cmp::Ge; break;
      default: return l;
    }
    lx_.next();
    return make_expr(Expr::Compare{op, l, parse_primary()});
  }

  ExprPtr parse_primary() {
    Token t = lx_.next();
    switch (t.kind) {
      case Tok::Bang:
        return make_expr(Expr::Not{parse_primary()});
      case Tok::LParen: {
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Variable:
        return make_expr(Expr::VarRef{Var{t.text}});
      case Tok::String:
        return make_expr(Expr::Constant{finish_literal(t)});
      case Tok::Integer:
        return make_expr(Expr::Constant{Term::literal(t.text, vocab::xsd_integer())});
      case Tok::Iri:
      case Tok::PName:
        return make_expr(Expr::Constant{iri_like_term(t)});
      case Tok::Ident:
        return parse_builtin(t);
      default:
        lx_.fail("expected expression", t);
    }
  }

  ExprPtr parse_builtin(const Token& name) {
    if (is_keyword(name, "BOUND")) {
      expect(Tok::LParen, "'(' after BOUND");
      Token v = expect(Tok::Variable, "variable in BOUND()");
      expect(Tok::RParen, "')'");
      return make_expr(Expr::Bound{Var{v.text}});
    }
    if (is_keyword(name, "ISIRI") || is_keyword(name, "ISURI")) {
      expect(Tok::LParen, "'('");
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return make_expr(Expr::IsIri{e});
    }
    if (is_keyword(name, "STR")) {
      expect(Tok::LParen, "'('");
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return make_expr(Expr::Str{e});
    }
    if (is_keyword(name, "REGEX")) {
      expect(Tok::LParen, "'(' after REGEX");
      ExprPtr text = parse_expr();
      expect(Tok::Comma, "',' before REGEX pattern");
      Token pat = expect(Tok::String, "string REGEX pattern");
      std::string flags;
      if (lx_.peek().kind == Tok::Comma) {
        lx_.next();
        Token f = expect(Tok::String, "string REGEX flags");
        flags = f.text;
      }
      expect(Tok::RParen, "')' closing REGEX");
      if (!flags.empty() && flags != "i")
        lx_.fail("unsupported REGEX flags '" + flags + "' (only \"i\")", name);
      return make_expr(Expr::Regex{text, pat.text, flags});
    }
    lx_.fail("unknown function '" + name.text + "'", name);
  }

  void parse_modifiers(Query& q) {
    for (;;) {
      const Token& t = lx_.peek();
      if (is_keyword(t, "ORDER")) {
        lx_.next();
        Token by = lx_.next();
        if (!is_keyword(by, "BY")) lx_.fail("expected BY after ORDER", by);
        bool any = false;
        for (;;) {
          const Token& k = lx_.peek();
          if (k.kind == Tok::Variable) {
            Token v = lx_.next();
            q.order_by.push_back(OrderKey{make_expr(Expr::VarRef{Var{v.text}}), false});
          } else if (is_keyword(k, "ASC") || is_keyword(k, "DESC")) {
            bool desc = is_keyword(k, "DESC");
            lx_.next();
            expect(Tok::LParen, "'(' after ASC/DESC");
            ExprPtr e = parse_expr();
            expect(Tok::RParen, "')'");
            q.order_by.push_back(OrderKey{e, desc});
          } else if (k.kind == Tok::LParen) {
            lx_.next();
            ExprPtr e = parse_expr();
            expect(Tok::RParen, "')'");
            q.order_by.push_back(OrderKey{e, false});
          } else {
            break;
          }
          any = true;
        }
        if (!any) lx_.fail("ORDER BY requires at least one key", lx_.peek());
      } else if (is_keyword(t, "LIMIT")) {
        lx_.next();
        Token n = expect(Tok::Integer, "integer after LIMIT");
        if (n.text[0] == '-') lx_.fail("LIMIT must be non-negative", n);
        q.limit = std::stoull(n.text);
      } else if (is_keyword(t, "OFFSET")) {
        lx_.next();
        Token n = expect(Tok::Integer, "integer after OFFSET");
        if (n.text[0] == '-') lx_.fail("OFFSET must be non-negative", n);
        q.offset = std::stoull(n.text);
      } else {
        break;
      }
    }
  }
};

}  // namespace

Query parse_query(std::string_view text) { return parse_query(text, {}); }

Query parse_query(std::string_view text, const PrefixBindings& extra_prefixes) {
  QueryParser p(text, extra_prefixes);
  return p.parse_top();
}

}  // namespace rdfview
