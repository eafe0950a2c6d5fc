#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <string_view>

#include "rdfview/errors.hpp"

namespace rdfview::lex {

enum class Tok {
  End,
  Iri,         // <...> (unescaped body in text)
  PName,       // prefix:local (prefix/local fields)
  BlankLabel,  // _:label
  Variable,    // ?x or $x (name in text)
  String,      // quoted literal body, any supported quote style
  Integer,     // [+-]?digits
  Ident,       // bareword (keywords, 'a', builtin names)
  AtWord,      // @word (language tag or @prefix/@base keyword)
  LBrace, RBrace, LParen, RParen, LBracket, RBracket,
  Dot, Semicolon, Comma, Star,
  Eq, Ne, Lt, Le, Gt, Ge, Bang, AndAnd, OrOr, DCaret,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::string prefix;  // PName only
  std::string local;   // PName only
  std::size_t line = 0, col = 0;
  std::size_t offset = 0;      // byte offset of the first character
  std::size_t end_offset = 0;  // byte offset one past the last character
};

// Tokenizer for the query language and the TriG subset. Accepts ASCII
// double quotes, Unicode curly quotes, and ``...'' pairs as string
// delimiters so verbatim listing text parses unchanged.
class Lexer {
 public:
  explicit Lexer(std::string_view text);

  const Token& peek(std::size_t ahead = 0);
  Token next();
  [[noreturn]] void fail(const std::string& msg, const Token& at) const;

 private:
  Token scan();
  Token scan_impl();
  void skip_space_and_comments();
  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }
  void advance();
  [[noreturn]] void fail_here(const std::string& msg) const;
  std::string scan_string_body(std::size_t open_len, std::string_view terminator);
  uint32_t scan_hex(int digits);

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1, col_ = 1;
  std::deque<Token> lookahead_;
};

// Case-insensitive keyword test for Ident tokens.
bool is_keyword(const Token& t, std::string_view kw);

}  // namespace rdfview::lex
