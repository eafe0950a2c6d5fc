#include "lexer.hpp"

#include <cctype>

namespace rdfview::lex {
namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

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

constexpr std::string_view kLeftCurly = "\xe2\x80\x9c";   // U+201C
constexpr std::string_view kRightCurly = "\xe2\x80\x9d";  // U+201D

}  // namespace

Lexer::Lexer(std::string_view text) : text_(text) {}

void Lexer::advance() {
  if (pos_ >= text_.size()) return;
  if (text_[pos_] == '\n') {
    ++line_;
    col_ = 1;
  } else {
    ++col_;
  }
  ++pos_;
}

void Lexer::fail_here(const std::string& msg) const { throw ParseError(msg, line_, col_); }

void Lexer::fail(const std::string& msg, const Token& at) const {
  throw ParseError(msg, at.line, at.col);
}

bool is_keyword(const Token& t, std::string_view kw) {
  if (t.kind != Tok::Ident || t.text.size() != kw.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(t.text[i])) !=
        std::toupper(static_cast<unsigned char>(kw[i])))
      return false;
  }
  return true;
}

const Token& Lexer::peek(std::size_t ahead) {
  while (lookahead_.size() <= ahead) lookahead_.push_back(scan());
  return lookahead_[ahead];
}

Token Lexer::next() {
  if (lookahead_.empty()) return scan();
  Token t = std::move(lookahead_.front());
  lookahead_.pop_front();
  return t;
}

void Lexer::skip_space_and_comments() {
  for (;;) {
    char c = cur();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance();
    } else if (c == '#') {
      while (cur() != '\0' && cur() != '\n') advance();
    } else {
      return;
    }
  }
}

uint32_t Lexer::scan_hex(int digits) {
  uint32_t cp = 0;
  for (int i = 0; i < digits; ++i) {
    char c = cur();
    if (!std::isxdigit(static_cast<unsigned char>(c))) fail_here("bad \\u escape");
    cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(c))
                        ? static_cast<uint32_t>(c - '0')
                        : static_cast<uint32_t>(std::tolower(c) - 'a' + 10));
    advance();
  }
  return cp;
}

// `open_len` characters of the opening delimiter are already consumed.
std::string Lexer::scan_string_body(std::size_t open_len, std::string_view terminator) {
  (void)open_len;
  std::string out;
  for (;;) {
    if (pos_ >= text_.size()) fail_here("unterminated string literal");
    if (text_.compare(pos_, terminator.size(), terminator) == 0) {
      for (std::size_t i = 0; i < terminator.size(); ++i) advance();
      return out;
    }
    char c = cur();
    if (c == '\\') {
      advance();
      char e = cur();
      switch (e) {
        case 't': out += '\t'; advance(); break;
        case 'b': out += '\b'; advance(); break;
        case 'n': out += '\n'; advance(); break;
        case 'r': out += '\r'; advance(); break;
        case 'f': out += '\f'; advance(); break;
        case '"': out += '"'; advance(); break;
        case '\'': out += '\''; advance(); break;
        case '\\': out += '\\'; advance(); break;
        case 'u': advance(); utf8_encode(scan_hex(4), out); break;
        case 'U': advance(); utf8_encode(scan_hex(8), out); break;
        default: fail_here(std::string("bad string escape \\") + e);
      }
    } else {
      out += c;
      advance();
    }
  }
}

Token Lexer::scan() {
  Token t = scan_impl();
  t.end_offset = pos_;
  return t;
}

Token Lexer::scan_impl() {
  skip_space_and_comments();
  Token t;
  t.line = line_;
  t.col = col_;
  t.offset = pos_;
  char c = cur();
  if (c == '\0') {
    t.kind = Tok::End;
    return t;
  }

  auto single = [&](Tok k) {
    advance();
    t.kind = k;
    return t;
  };

  switch (c) {
    case '{': return single(Tok::LBrace);
    case '}': return single(Tok::RBrace);
    case '(': return single(Tok::LParen);
    case ')': return single(Tok::RParen);
    case '[': return single(Tok::LBracket);
    case ']': return single(Tok::RBracket);
    case '.': return single(Tok::Dot);
    case ';': return single(Tok::Semicolon);
    case ',': return single(Tok::Comma);
    case '*': return single(Tok::Star);
    case '=': return single(Tok::Eq);
    default: break;
  }

  if (c == '<') {
    // IRIREF if a '>' closes it before any whitespace or quote; otherwise a
    // comparison operator.
    std::size_t i = pos_ + 1;
    bool iri = false;
    while (i < text_.size()) {
      char d = text_[i];
      if (d == '>') {
        iri = true;
        break;
      }
      if (d == ' ' || d == '\t' || d == '\n' || d == '\r' || d == '"' || d == '<' ||
          d == '{' || d == '}')
        break;
      ++i;
    }
    if (iri) {
      advance();  // '<'
      std::string body;
      while (cur() != '>') {
        if (cur() == '\\') {
          advance();
          char e = cur();
          if (e == 'u') {
            advance();
            utf8_encode(scan_hex(4), body);
          } else if (e == 'U') {
            advance();
            utf8_encode(scan_hex(8), body);
          } else {
            fail_here(std::string("bad IRI escape \\") + e);
          }
        } else {
          body += cur();
          advance();
        }
      }
      advance();  // '>'
      t.kind = Tok::Iri;
      t.text = std::move(body);
      return t;
    }
    advance();
    if (cur() == '=') {
      advance();
      t.kind = Tok::Le;
    } else {
      t.kind = Tok::Lt;
    }
    return t;
  }

  if (c == '>') {
    advance();
    if (cur() == '=') {
      advance();
      t.kind = Tok::Ge;
    } else {
      t.kind = Tok::Gt;
    }
    return t;
  }

  if (c == '!') {
    advance();
    if (cur() == '=') {
      advance();
      t.kind = Tok::Ne;
    } else {
      t.kind = Tok::Bang;
    }
    return t;
  }

  if (c == '&') {
    advance();
    if (cur() != '&') fail_here("expected '&&'");
    advance();
    t.kind = Tok::AndAnd;
    return t;
  }

  if (c == '|') {
    advance();
    if (cur() != '|') fail_here("expected '||'");
    advance();
    t.kind = Tok::OrOr;
    return t;
  }

  if (c == '^') {
    advance();
    if (cur() != '^') fail_here("expected '^^'");
    advance();
    t.kind = Tok::DCaret;
    return t;
  }

  if (c == '"') {
    advance();
    t.kind = Tok::String;
    t.text = scan_string_body(1, "\"");
    return t;
  }
  if (c == '`' && at(pos_ + 1) == '`') {
    advance();
    advance();
    t.kind = Tok::String;
    t.text = scan_string_body(2, "''");
    return t;
  }
  if (text_.compare(pos_, kLeftCurly.size(), kLeftCurly) == 0) {
    for (std::size_t i = 0; i < kLeftCurly.size(); ++i) advance();
    t.kind = Tok::String;
    t.text = scan_string_body(3, kRightCurly);
    return t;
  }

  if (c == '?' || c == '$') {
    advance();
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_') {
      name += cur();
      advance();
    }
    if (name.empty()) fail_here("empty variable name");
    t.kind = Tok::Variable;
    t.text = std::move(name);
    return t;
  }

  if (c == '@') {
    advance();
    std::string word;
    while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '-') {
      word += cur();
      advance();
    }
    if (word.empty()) fail_here("expected word after '@'");
    t.kind = Tok::AtWord;
    t.text = std::move(word);
    return t;
  }

  if (c == '_') {
    if (at(pos_ + 1) == ':') {
      advance();
      advance();
      std::string label;
      while (ident_char(cur())) {
        label += cur();
        advance();
      }
      if (label.empty()) fail_here("empty blank node label");
      t.kind = Tok::BlankLabel;
      t.text = std::move(label);
      return t;
    }
    // fall through to ident
  }

  if (std::isdigit(static_cast<unsigned char>(c)) ||
      ((c == '-' || c == '+') && std::isdigit(static_cast<unsigned char>(at(pos_ + 1))))) {
    std::string num;
    num += c;
    advance();
    while (std::isdigit(static_cast<unsigned char>(cur()))) {
      num += cur();
      advance();
    }
    t.kind = Tok::Integer;
    t.text = std::move(num);
    return t;
  }

  if (ident_start(c)) {
    std::string word;
    while (ident_char(cur())) {
      word += cur();
      advance();
    }
    if (cur() == ':') {
      advance();
      std::string local;
      while (ident_char(cur())) {
        local += cur();
        advance();
      }
      t.kind = Tok::PName;
      t.prefix = std::move(word);
      t.local = std::move(local);
      return t;
    }
    t.kind = Tok::Ident;
    t.text = std::move(word);
    return t;
  }

  if (c == ':') {  // default-prefix PName ":local"
    advance();
    std::string local;
    while (ident_char(cur())) {
      local += cur();
      advance();
    }
    t.kind = Tok::PName;
    t.prefix = "";
    t.local = std::move(local);
    return t;
  }

  fail_here(std::string("unexpected character '") + c + "'");
}

}  // namespace rdfview::lex
