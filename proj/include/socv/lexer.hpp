#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socv/ast.hpp"
#include "socv/source.hpp"

namespace socv {

enum class TokenKind {
  Ident,
  IntLit,
  StringLit,
  // keywords
  KwModule,
  KwInstance,
  KwCallee,
  KwType,
  KwEnum,
  KwFn,
  KwMut,
  KwLet,
  KwIf,
  KwElse,
  KwAny,
  KwAssume,
  KwAssert,
  KwPrintf,
  KwDownto,
  KwTrue,
  KwFalse,
  // punctuation
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Lt,
  Gt,
  Le,
  Ge,
  EqEq,
  NotEq,
  Assign,
  ColonAssign,
  Semi,
  Colon,
  ColonColon,
  Comma,
  Dot,
  DotDot,
  Arrow,
  Plus,
  Minus,
  Star,
  Bang,
  AndAnd,
  OrOr,
  Eof,
};

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string lexeme;
  SourceSpan span;
  // IntLit only
  BigInt value;
  std::optional<std::uint32_t> width;
  // StringLit only: decoded contents
  std::string text;
};

// Human-readable token kind for diagnostics ("`{`", "identifier", ...).
std::string describe(TokenKind k);

// Throws CompileError on the first lexical error.
std::vector<Token> tokenize(std::string_view source,
                            std::shared_ptr<const std::string> file = nullptr);

}  // namespace socv
