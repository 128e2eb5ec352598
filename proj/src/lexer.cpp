#include "socv/lexer.hpp"

#include <fmt/format.h>

#include <cctype>
#include <unordered_map>

namespace socv {

namespace {

const std::unordered_map<std::string_view, TokenKind>& keywords() {
  static const std::unordered_map<std::string_view, TokenKind> kw = {
      {"module", TokenKind::KwModule}, {"instance", TokenKind::KwInstance},
      {"callee", TokenKind::KwCallee}, {"type", TokenKind::KwType},
      {"enum", TokenKind::KwEnum},     {"fn", TokenKind::KwFn},
      {"mut", TokenKind::KwMut},       {"let", TokenKind::KwLet},
      {"if", TokenKind::KwIf},         {"else", TokenKind::KwElse},
      {"any", TokenKind::KwAny},       {"assume", TokenKind::KwAssume},
      {"assert", TokenKind::KwAssert}, {"printf", TokenKind::KwPrintf},
      {"downto", TokenKind::KwDownto}, {"true", TokenKind::KwTrue},
      {"false", TokenKind::KwFalse},
  };
  return kw;
}

class Lexer {
 public:
  Lexer(std::string_view src, std::shared_ptr<const std::string> file)
      : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t = next();
      bool eof = t.kind == TokenKind::Eof;
      out.push_back(std::move(t));
      if (eof) break;
    }
    return out;
  }

 private:
  std::string_view src_;
  std::shared_ptr<const std::string> file_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;

  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  SourceSpan here() const {
    SourceSpan s;
    s.file = file_;
    s.line = s.end_line = line_;
    s.col = s.end_col = col_;
    return s;
  }

  [[noreturn]] void fail(SourceSpan span, std::string msg) const {
    throw CompileError({Diagnostic{std::move(span), std::move(msg)}});
  }

  void skip_trivia() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        SourceSpan start = here();
        advance();
        advance();
        for (;;) {
          if (at_end()) fail(start, "unterminated block comment");
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            break;
          }
          advance();
        }
      } else {
        break;
      }
    }
  }

  Token finish(Token t, const SourceSpan& start, std::size_t begin) {
    t.span = start;
    t.span.end_line = line_;
    t.span.end_col = col_;
    t.lexeme = std::string(src_.substr(begin, pos_ - begin));
    return t;
  }

  Token next() {
    SourceSpan start = here();
    std::size_t begin = pos_;
    Token t;
    if (at_end()) {
      t.kind = TokenKind::Eof;
      return finish(std::move(t), start, begin);
    }
    char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      std::string_view word = src_.substr(begin, pos_ - begin);
      auto it = keywords().find(word);
      t.kind = it == keywords().end() ? TokenKind::Ident : it->second;
      return finish(std::move(t), start, begin);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number(start, begin);
    if (c == '"') return string(start, begin);

    advance();
    auto two = [&](char second, TokenKind yes, TokenKind no) {
      if (peek() == second) {
        advance();
        return yes;
      }
      return no;
    };
    switch (c) {
      case '{': t.kind = TokenKind::LBrace; break;
      case '}': t.kind = TokenKind::RBrace; break;
      case '(': t.kind = TokenKind::LParen; break;
      case ')': t.kind = TokenKind::RParen; break;
      case '[': t.kind = TokenKind::LBracket; break;
      case ']': t.kind = TokenKind::RBracket; break;
      case ';': t.kind = TokenKind::Semi; break;
      case ',': t.kind = TokenKind::Comma; break;
      case '+': t.kind = TokenKind::Plus; break;
      case '*': t.kind = TokenKind::Star; break;
      case '<': t.kind = two('=', TokenKind::Le, TokenKind::Lt); break;
      case '>': t.kind = two('=', TokenKind::Ge, TokenKind::Gt); break;
      case '=': t.kind = two('=', TokenKind::EqEq, TokenKind::Assign); break;
      case '!': t.kind = two('=', TokenKind::NotEq, TokenKind::Bang); break;
      case '-': t.kind = two('>', TokenKind::Arrow, TokenKind::Minus); break;
      case '.': t.kind = two('.', TokenKind::DotDot, TokenKind::Dot); break;
      case ':':
        if (peek() == '=') {
          advance();
          t.kind = TokenKind::ColonAssign;
        } else {
          t.kind = two(':', TokenKind::ColonColon, TokenKind::Colon);
        }
        break;
      case '&':
        if (peek() != '&') fail(start, "unexpected character '&' (did you mean '&&'?)");
        advance();
        t.kind = TokenKind::AndAnd;
        break;
      case '|':
        if (peek() != '|') fail(start, "unexpected character '|' (did you mean '||'?)");
        advance();
        t.kind = TokenKind::OrOr;
        break;
      default:
        fail(start, fmt::format("unexpected character '{}'", c));
    }
    return finish(std::move(t), start, begin);
  }

  Token number(const SourceSpan& start, std::size_t begin) {
    Token t;
    t.kind = TokenKind::IntLit;
    unsigned base = 10;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      base = 16;
      advance();
      advance();
    }
    BigInt value = 0;
    bool any_digit = false;
    for (;;) {
      char c = peek();
      if (c == '_') {
        advance();
        continue;
      }
      int d = -1;
      if (std::isdigit(static_cast<unsigned char>(c))) {
        d = c - '0';
      } else if (base == 16 && std::isxdigit(static_cast<unsigned char>(c))) {
        d = std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
      }
      if (d < 0) break;
      advance();
      value = value * base + d;
      any_digit = true;
    }
    if (!any_digit) fail(start, "integer literal has no digits");
    if (peek() == 'u' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      advance();
      std::uint64_t w = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        w = w * 10 + static_cast<std::uint64_t>(advance() - '0');
        if (w > 65536) fail(start, "integer literal width is too large");
      }
      if (w == 0) fail(start, "integer literal width must be at least 1");
      if (value >> static_cast<unsigned>(w) != 0)
        fail(start, fmt::format("integer literal does not fit in {} bits", w));
      t.width = static_cast<std::uint32_t>(w);
    }
    if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      fail(here(), fmt::format("unexpected character '{}' in integer literal", peek()));
    t.value = value;
    return finish(std::move(t), start, begin);
  }

  Token string(const SourceSpan& start, std::size_t begin) {
    Token t;
    t.kind = TokenKind::StringLit;
    advance();  // opening quote
    for (;;) {
      if (at_end() || peek() == '\n') fail(start, "unterminated string literal");
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail(start, "unterminated string literal");
        char e = advance();
        switch (e) {
          case 'n': t.text += '\n'; break;
          case 't': t.text += '\t'; break;
          case '\\': t.text += '\\'; break;
          case '"': t.text += '"'; break;
          default: fail(start, fmt::format("unknown escape sequence '\\{}'", e));
        }
      } else {
        t.text += c;
      }
    }
    return finish(std::move(t), start, begin);
  }
};

}  // namespace

std::string describe(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::IntLit: return "integer literal";
    case TokenKind::StringLit: return "string literal";
    case TokenKind::KwModule: return "`module`";
    case TokenKind::KwInstance: return "`instance`";
    case TokenKind::KwCallee: return "`callee`";
    case TokenKind::KwType: return "`type`";
    case TokenKind::KwEnum: return "`enum`";
    case TokenKind::KwFn: return "`fn`";
    case TokenKind::KwMut: return "`mut`";
    case TokenKind::KwLet: return "`let`";
    case TokenKind::KwIf: return "`if`";
    case TokenKind::KwElse: return "`else`";
    case TokenKind::KwAny: return "`any`";
    case TokenKind::KwAssume: return "`assume`";
    case TokenKind::KwAssert: return "`assert`";
    case TokenKind::KwPrintf: return "`printf`";
    case TokenKind::KwDownto: return "`downto`";
    case TokenKind::KwTrue: return "`true`";
    case TokenKind::KwFalse: return "`false`";
    case TokenKind::LBrace: return "`{`";
    case TokenKind::RBrace: return "`}`";
    case TokenKind::LParen: return "`(`";
    case TokenKind::RParen: return "`)`";
    case TokenKind::LBracket: return "`[`";
    case TokenKind::RBracket: return "`]`";
    case TokenKind::Lt: return "`<`";
    case TokenKind::Gt: return "`>`";
    case TokenKind::Le: return "`<=`";
    case TokenKind::Ge: return "`>=`";
    case TokenKind::EqEq: return "`==`";
    case TokenKind::NotEq: return "`!=`";
    case TokenKind::Assign: return "`=`";
    case TokenKind::ColonAssign: return "`:=`";
    case TokenKind::Semi: return "`;`";
    case TokenKind::Colon: return "`:`";
    case TokenKind::ColonColon: return "`::`";
    case TokenKind::Comma: return "`,`";
    case TokenKind::Dot: return "`.`";
    case TokenKind::DotDot: return "`..`";
    case TokenKind::Arrow: return "`->`";
    case TokenKind::Plus: return "`+`";
    case TokenKind::Minus: return "`-`";
    case TokenKind::Star: return "`*`";
    case TokenKind::Bang: return "`!`";
    case TokenKind::AndAnd: return "`&&`";
    case TokenKind::OrOr: return "`||`";
    case TokenKind::Eof: return "end of file";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source, std::shared_ptr<const std::string> file) {
  return Lexer(source, std::move(file)).run();
}

}  // namespace socv
