#include "socv/parser.hpp"

#include <fmt/format.h>

#include <fstream>
#include <set>
#include <sstream>

namespace socv {

namespace {

bool is_builtin_name(const std::string& s) {
  return s == "zero_extend" || s == "truncate" || s == "to_int" || s == "from_int";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, Program& prog) : toks_(std::move(tokens)), prog_(prog) {}

  void program() {
    while (!at(TokenKind::Eof)) {
      if (at(TokenKind::KwType)) {
        alias_decl();
      } else if (at(TokenKind::KwEnum)) {
        enum_decl();
      } else if (at(TokenKind::KwModule)) {
        module_decl();
      } else {
        expected({TokenKind::KwType, TokenKind::KwEnum, TokenKind::KwModule});
      }
    }
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program& prog_;

  const Token& cur() const { return toks_[pos_]; }
  const Token& look(std::size_t n) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at(TokenKind k) const { return cur().kind == k; }
  bool at_ident(std::string_view s) const { return at(TokenKind::Ident) && cur().lexeme == s; }

  Token take() {
    Token t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool accept(TokenKind k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  [[noreturn]] void expected(std::initializer_list<TokenKind> kinds) const {
    std::set<std::string> names;
    for (auto k : kinds) names.insert(describe(k));
    std::string list;
    for (const auto& n : names) {
      if (!list.empty()) list += ", ";
      list += n;
    }
    throw CompileError({Diagnostic{
        cur().span, fmt::format("syntax error: expected {} but found {}", list,
                                cur().kind == TokenKind::Eof ? "end of file"
                                                             : "`" + cur().lexeme + "`")}});
  }

  [[noreturn]] void error(const SourceSpan& span, std::string msg) const {
    throw CompileError({Diagnostic{span, std::move(msg)}});
  }

  Token expect(TokenKind k) {
    if (!at(k)) expected({k});
    return take();
  }

  std::string ident() { return expect(TokenKind::Ident).lexeme; }

  SourceSpan span_from(const SourceSpan& start) const {
    const SourceSpan& end = toks_[pos_ == 0 ? 0 : pos_ - 1].span;
    SourceSpan s = start;
    s.end_line = end.end_line;
    s.end_col = end.end_col;
    return s;
  }

  ExprPtr make(ExprNode node, SourceSpan span) {
    auto e = std::make_unique<Expr>();
    e->node = std::move(node);
    e->span = std::move(span);
    e->id = prog_.next_expr_id++;
    return e;
  }

  std::uint64_t small_int(const char* what) {
    Token t = expect(TokenKind::IntLit);
    if (t.width) error(t.span, fmt::format("{} must be an unsuffixed integer", what));
    if (t.value > BigInt(std::numeric_limits<std::uint32_t>::max()))
      error(t.span, fmt::format("{} is too large", what));
    return static_cast<std::uint64_t>(t.value);
  }

  // ---- declarations -------------------------------------------------------

  void alias_decl() {
    SourceSpan start = take().span;
    TypeAliasDecl d;
    d.name = ident();
    expect(TokenKind::Assign);
    d.type = type();
    expect(TokenKind::Semi);
    d.span = span_from(start);
    prog_.aliases.push_back(std::move(d));
  }

  void enum_decl() {
    SourceSpan start = take().span;
    EnumDecl d;
    d.name = ident();
    expect(TokenKind::LBrace);
    while (!at(TokenKind::RBrace)) {
      d.variants.push_back(ident());
      if (!accept(TokenKind::Comma)) break;
    }
    expect(TokenKind::RBrace);
    accept(TokenKind::Semi);
    d.span = span_from(start);
    prog_.enums.push_back(std::move(d));
  }

  void module_decl() {
    SourceSpan start = take().span;
    ModuleDecl m;
    m.name = ident();
    expect(TokenKind::LBrace);
    while (!at(TokenKind::RBrace)) {
      if (at(TokenKind::KwInstance)) {
        m.instances.push_back(instance_decl());
      } else if (at(TokenKind::KwCallee)) {
        SourceSpan s = take().span;
        CalleeDecl c;
        c.name = ident();
        expect(TokenKind::Colon);
        c.module_name = ident();
        expect(TokenKind::Semi);
        c.span = span_from(s);
        m.callees.push_back(std::move(c));
      } else if (at(TokenKind::KwFn) || at(TokenKind::KwMut)) {
        m.fns.push_back(fn_decl());
      } else if (at(TokenKind::Ident)) {
        m.wirings.push_back(wiring_decl());
      } else {
        expected({TokenKind::KwInstance, TokenKind::KwCallee, TokenKind::KwFn, TokenKind::KwMut,
                  TokenKind::Ident, TokenKind::RBrace});
      }
    }
    expect(TokenKind::RBrace);
    m.span = span_from(start);
    prog_.modules.push_back(std::move(m));
  }

  InstanceDecl instance_decl() {
    SourceSpan start = take().span;
    InstanceDecl d;
    d.name = ident();
    expect(TokenKind::Colon);
    if (at_ident("State") && look(1).kind == TokenKind::Lt) {
      take();
      take();
      d.kind = InstanceDecl::Kind::State;
      d.value_type = type();
      expect(TokenKind::Gt);
      expect(TokenKind::LParen);
      d.init = expr();
      expect(TokenKind::RParen);
    } else if (at_ident("Array") && look(1).kind == TokenKind::Lt) {
      take();
      take();
      d.kind = InstanceDecl::Kind::Array;
      d.key_type = type();
      expect(TokenKind::Comma);
      d.value_type = type();
      expect(TokenKind::Gt);
      if (accept(TokenKind::LParen)) {
        d.init = expr();
        expect(TokenKind::RParen);
      }
    } else {
      d.kind = InstanceDecl::Kind::Module;
      d.module_name = ident();
    }
    expect(TokenKind::Semi);
    d.span = span_from(start);
    return d;
  }

  WiringDecl wiring_decl() {
    SourceSpan start = cur().span;
    WiringDecl w;
    w.source.push_back(ident());
    while (accept(TokenKind::Dot)) w.source.push_back(ident());
    expect(TokenKind::Arrow);
    w.target.push_back(ident());
    while (accept(TokenKind::Dot)) w.target.push_back(ident());
    expect(TokenKind::Semi);
    w.span = span_from(start);
    return w;
  }

  FnDecl fn_decl() {
    SourceSpan start = cur().span;
    FnDecl f;
    f.is_mut = accept(TokenKind::KwMut);
    expect(TokenKind::KwFn);
    f.name = ident();
    expect(TokenKind::LParen);
    while (!at(TokenKind::RParen)) {
      Param p;
      SourceSpan ps = cur().span;
      p.name = ident();
      expect(TokenKind::Colon);
      p.type = type();
      p.span = span_from(ps);
      f.params.push_back(std::move(p));
      if (!accept(TokenKind::Comma)) break;
    }
    expect(TokenKind::RParen);
    if (accept(TokenKind::Arrow)) {
      f.ret = type();
    } else {
      f.ret = TypeExpr::unit();
    }
    if (!at(TokenKind::LBrace)) expected({TokenKind::LBrace, TokenKind::Arrow});
    f.body = block();
    f.span = span_from(start);
    return f;
  }

  // ---- types --------------------------------------------------------------

  TypePtr with_span(TypePtr t, const SourceSpan& start) {
    TypeExpr copy = *t;
    copy.span = span_from(start);
    return std::make_shared<const TypeExpr>(std::move(copy));
  }

  TypePtr type() {
    SourceSpan start = cur().span;
    if (accept(TokenKind::LParen)) {
      expect(TokenKind::RParen);
      return with_span(TypeExpr::unit(), start);
    }
    if (accept(TokenKind::LBracket)) {
      TypePtr elem = type();
      expect(TokenKind::Semi);
      std::uint64_t n = small_int("vector length");
      expect(TokenKind::RBracket);
      return with_span(TypeExpr::vector(std::move(elem), n), start);
    }
    if (accept(TokenKind::LBrace)) {
      std::vector<RecordField> fields;
      std::set<std::string> seen;
      while (!at(TokenKind::RBrace)) {
        Token name = expect(TokenKind::Ident);
        if (!seen.insert(name.lexeme).second)
          error(name.span, fmt::format("duplicate record field `{}`", name.lexeme));
        expect(TokenKind::Colon);
        fields.push_back({name.lexeme, type()});
        if (!accept(TokenKind::Comma)) break;
      }
      expect(TokenKind::RBrace);
      return with_span(TypeExpr::record(std::move(fields)), start);
    }
    Token name = expect(TokenKind::Ident);
    if (name.lexeme == "Bool") return with_span(TypeExpr::boolean(), start);
    if (name.lexeme == "Int") return with_span(TypeExpr::integer(), start);
    if (name.lexeme == "BitInt") {
      expect(TokenKind::LParen);
      Token w = expect(TokenKind::IntLit);
      if (w.width || w.value == 0 || w.value > 65536)
        error(w.span, "BitInt width must be an unsuffixed integer between 1 and 65536");
      expect(TokenKind::RParen);
      return with_span(TypeExpr::bits(static_cast<std::uint32_t>(w.value)), start);
    }
    return with_span(TypeExpr::alias(name.lexeme), start);
  }

  // ---- expressions --------------------------------------------------------

  ExprPtr block() {
    SourceSpan start = expect(TokenKind::LBrace).span;
    BlockExpr b;
    while (!at(TokenKind::RBrace)) {
      if (at(TokenKind::KwLet)) {
        SourceSpan ls = take().span;
        LetExpr let;
        let.name = ident();
        if (accept(TokenKind::Colon)) let.annotation = type();
        expect(TokenKind::Assign);
        let.init = expr();
        expect(TokenKind::Semi);
        b.stmts.push_back(make(std::move(let), span_from(ls)));
        continue;
      }
      ExprPtr e = expr();
      if (accept(TokenKind::Semi)) {
        b.stmts.push_back(std::move(e));
      } else if (at(TokenKind::RBrace)) {
        b.tail = std::move(e);
      } else if (e->as<IfExpr>() || e->as<BlockExpr>()) {
        b.stmts.push_back(std::move(e));
      } else {
        expected({TokenKind::Semi, TokenKind::RBrace});
      }
    }
    expect(TokenKind::RBrace);
    return make(std::move(b), span_from(start));
  }

  ExprPtr expr() { return or_expr(); }

  ExprPtr binary(ExprPtr lhs, BinaryOp op, ExprPtr rhs) {
    SourceSpan s = SourceSpan::cover(lhs->span, rhs->span);
    return make(BinaryExpr{op, std::move(lhs), std::move(rhs)}, s);
  }

  ExprPtr or_expr() {
    ExprPtr e = and_expr();
    while (accept(TokenKind::OrOr)) e = binary(std::move(e), BinaryOp::Or, and_expr());
    return e;
  }

  ExprPtr and_expr() {
    ExprPtr e = eq_expr();
    while (accept(TokenKind::AndAnd)) e = binary(std::move(e), BinaryOp::And, eq_expr());
    return e;
  }

  ExprPtr eq_expr() {
    ExprPtr e = cmp_expr();
    for (;;) {
      if (accept(TokenKind::EqEq)) {
        e = binary(std::move(e), BinaryOp::Eq, cmp_expr());
      } else if (accept(TokenKind::NotEq)) {
        e = binary(std::move(e), BinaryOp::Ne, cmp_expr());
      } else {
        return e;
      }
    }
  }

  ExprPtr cmp_expr() {
    ExprPtr e = add_expr();
    for (;;) {
      BinaryOp op;
      if (at(TokenKind::Lt)) {
        op = BinaryOp::Lt;
      } else if (at(TokenKind::Le)) {
        op = BinaryOp::Le;
      } else if (at(TokenKind::Gt)) {
        op = BinaryOp::Gt;
      } else if (at(TokenKind::Ge)) {
        op = BinaryOp::Ge;
      } else {
        return e;
      }
      take();
      e = binary(std::move(e), op, add_expr());
    }
  }

  ExprPtr add_expr() {
    ExprPtr e = mul_expr();
    for (;;) {
      if (accept(TokenKind::Plus)) {
        e = binary(std::move(e), BinaryOp::Add, mul_expr());
      } else if (accept(TokenKind::Minus)) {
        e = binary(std::move(e), BinaryOp::Sub, mul_expr());
      } else {
        return e;
      }
    }
  }

  ExprPtr mul_expr() {
    ExprPtr e = unary_expr();
    while (accept(TokenKind::Star)) e = binary(std::move(e), BinaryOp::Mul, unary_expr());
    return e;
  }

  ExprPtr unary_expr() {
    SourceSpan start = cur().span;
    if (accept(TokenKind::Bang)) {
      ExprPtr operand = unary_expr();
      return make(UnaryExpr{UnaryOp::Not, std::move(operand)}, span_from(start));
    }
    if (accept(TokenKind::Minus)) {
      ExprPtr operand = unary_expr();
      return make(UnaryExpr{UnaryOp::Neg, std::move(operand)}, span_from(start));
    }
    return postfix_expr();
  }

  ExprPtr postfix_expr() {
    SourceSpan start = cur().span;
    ExprPtr e = primary();
    for (;;) {
      if (at(TokenKind::Dot)) {
        take();
        Token f = expect(TokenKind::Ident);
        if (at(TokenKind::LParen))
          error(f.span, fmt::format("`{}` is called on a value; only instances have functions",
                                    f.lexeme));
        e = make(FieldAccess{std::move(e), f.lexeme, 0}, span_from(start));
      } else if (at(TokenKind::LBracket)) {
        take();
        ExprPtr idx = expr();
        if (accept(TokenKind::KwDownto)) {
          // Both bounds must be literal bit positions.
          auto* hi_lit = idx->as<IntLit>();
          if (!hi_lit || hi_lit->width) error(idx->span, "slice bounds must be unsuffixed integers");
          std::uint64_t lo = small_int("slice bound");
          expect(TokenKind::RBracket);
          if (hi_lit->value > BigInt(std::numeric_limits<std::uint32_t>::max()))
            error(idx->span, "slice bound is too large");
          auto hi = static_cast<std::uint32_t>(hi_lit->value);
          if (hi < lo) error(span_from(start), "slice requires hi >= lo");
          e = make(SliceExpr{std::move(e), hi, static_cast<std::uint32_t>(lo)},
                   span_from(start));
        } else if (at(TokenKind::DotDot) || at(TokenKind::ColonAssign)) {
          bool slice = accept(TokenKind::DotDot);
          expect(TokenKind::ColonAssign);
          ExprPtr value = expr();
          expect(TokenKind::RBracket);
          e = make(UpdateExpr{std::move(e), std::move(idx), std::move(value), slice},
                   span_from(start));
        } else {
          expect(TokenKind::RBracket);
          e = make(IndexExpr{std::move(e), std::move(idx)}, span_from(start));
        }
      } else {
        return e;
      }
    }
  }

  std::vector<ExprPtr> call_args() {
    std::vector<ExprPtr> args;
    expect(TokenKind::LParen);
    while (!at(TokenKind::RParen)) {
      args.push_back(expr());
      if (!accept(TokenKind::Comma)) break;
    }
    expect(TokenKind::RParen);
    return args;
  }

  ExprPtr primary() {
    SourceSpan start = cur().span;
    switch (cur().kind) {
      case TokenKind::IntLit: {
        Token t = take();
        return make(IntLit{t.value, t.width}, t.span);
      }
      case TokenKind::KwTrue:
        take();
        return make(BoolLit{true}, start);
      case TokenKind::KwFalse:
        take();
        return make(BoolLit{false}, start);
      case TokenKind::LParen: {
        take();
        if (accept(TokenKind::RParen)) return make(UnitLit{}, span_from(start));
        ExprPtr inner = expr();
        expect(TokenKind::RParen);
        return inner;
      }
      case TokenKind::LBrace:
        if (look(1).kind == TokenKind::Ident && look(2).kind == TokenKind::Colon)
          return record_literal();
        return block();
      case TokenKind::LBracket:
        return vector_literal();
      case TokenKind::KwIf:
        return if_expr();
      case TokenKind::KwAny: {
        take();
        expect(TokenKind::Lt);
        TypePtr t = type();
        expect(TokenKind::Gt);
        return make(AnyExpr{std::move(t)}, span_from(start));
      }
      case TokenKind::KwAssume:
      case TokenKind::KwAssert: {
        bool is_assert = take().kind == TokenKind::KwAssert;
        expect(TokenKind::LParen);
        ExprPtr c = expr();
        expect(TokenKind::RParen);
        if (is_assert) return make(AssertExpr{std::move(c)}, span_from(start));
        return make(AssumeExpr{std::move(c)}, span_from(start));
      }
      case TokenKind::KwPrintf:
        return printf_expr();
      case TokenKind::Ident:
        return name_expr();
      default:
        expected({TokenKind::IntLit, TokenKind::KwTrue, TokenKind::KwFalse, TokenKind::LParen,
                  TokenKind::LBrace, TokenKind::LBracket, TokenKind::KwIf, TokenKind::KwAny,
                  TokenKind::KwAssume, TokenKind::KwAssert, TokenKind::KwPrintf,
                  TokenKind::Ident});
    }
  }

  ExprPtr record_literal() {
    SourceSpan start = expect(TokenKind::LBrace).span;
    RecordLit r;
    std::set<std::string> seen;
    while (!at(TokenKind::RBrace)) {
      Token name = expect(TokenKind::Ident);
      if (!seen.insert(name.lexeme).second)
        error(name.span, fmt::format("duplicate field `{}` in record literal", name.lexeme));
      expect(TokenKind::Colon);
      FieldInit fi;
      fi.name = name.lexeme;
      fi.value = expr();
      fi.span = span_from(name.span);
      r.fields.push_back(std::move(fi));
      if (!accept(TokenKind::Comma)) break;
    }
    expect(TokenKind::RBrace);
    return make(std::move(r), span_from(start));
  }

  ExprPtr vector_literal() {
    SourceSpan start = expect(TokenKind::LBracket).span;
    if (accept(TokenKind::RBracket)) return make(VectorLit{}, span_from(start));
    ExprPtr first = expr();
    if (accept(TokenKind::Semi)) {
      std::uint64_t n = small_int("vector length");
      expect(TokenKind::RBracket);
      return make(VectorRepeat{std::move(first), n}, span_from(start));
    }
    VectorLit v;
    v.elems.push_back(std::move(first));
    while (accept(TokenKind::Comma)) {
      if (at(TokenKind::RBracket)) break;
      v.elems.push_back(expr());
    }
    expect(TokenKind::RBracket);
    return make(std::move(v), span_from(start));
  }

  ExprPtr if_expr() {
    SourceSpan start = expect(TokenKind::KwIf).span;
    IfExpr n;
    n.cond = expr();
    if (!at(TokenKind::LBrace)) expected({TokenKind::LBrace});
    n.then_branch = block();
    if (accept(TokenKind::KwElse)) {
      if (at(TokenKind::KwIf)) {
        n.else_branch = if_expr();
      } else if (at(TokenKind::LBrace)) {
        n.else_branch = block();
      } else {
        expected({TokenKind::KwIf, TokenKind::LBrace});
      }
    }
    return make(std::move(n), span_from(start));
  }

  ExprPtr name_expr() {
    SourceSpan start = cur().span;
    Token first = take();
    if (is_builtin_name(first.lexeme) && (at(TokenKind::Lt) || at(TokenKind::LParen))) {
      BuiltinCall b;
      if (first.lexeme == "zero_extend") {
        b.fn = BuiltinFn::ZeroExtend;
      } else if (first.lexeme == "truncate") {
        b.fn = BuiltinFn::Truncate;
      } else if (first.lexeme == "from_int") {
        b.fn = BuiltinFn::FromInt;
      } else {
        b.fn = BuiltinFn::ToInt;
      }
      if (b.fn != BuiltinFn::ToInt) {
        expect(TokenKind::Lt);
        std::uint64_t w = small_int("target width");
        if (w == 0 || w > 65536) error(span_from(start), "target width must be between 1 and 65536");
        b.width = static_cast<std::uint32_t>(w);
        expect(TokenKind::Gt);
      }
      b.args = call_args();
      return make(std::move(b), span_from(start));
    }
    if (accept(TokenKind::ColonColon)) {
      std::string variant = ident();
      return make(EnumLit{first.lexeme, variant, 0}, span_from(start));
    }
    // Collect `a.b.c`; a following `(` makes it a call through that path.
    std::vector<Token> segs{first};
    std::size_t save = pos_;
    while (at(TokenKind::Dot) && look(1).kind == TokenKind::Ident) {
      take();
      segs.push_back(take());
    }
    if (at(TokenKind::LParen)) {
      CallExpr c;
      for (std::size_t i = 0; i + 1 < segs.size(); ++i) c.path.push_back(segs[i].lexeme);
      c.name = segs.back().lexeme;
      c.args = call_args();
      return make(std::move(c), span_from(start));
    }
    pos_ = save;
    return make(VarRef{first.lexeme}, first.span);
  }

  ExprPtr printf_expr() {
    SourceSpan start = expect(TokenKind::KwPrintf).span;
    expect(TokenKind::LParen);
    Token fmt_tok = expect(TokenKind::StringLit);
    expect(TokenKind::RParen);
    PrintfExpr p;
    const std::string& raw = fmt_tok.lexeme;
    p.format = raw.substr(1, raw.size() - 2);
    std::string text;
    std::size_t i = 1;
    const std::size_t end = raw.size() - 1;
    auto flush = [&] {
      if (!text.empty()) p.pieces.push_back(PrintfPiece{std::move(text), nullptr});
      text.clear();
    };
    while (i < end) {
      char c = raw[i];
      if (c == '\\') {
        char e = raw[i + 1];
        text += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        i += 2;
      } else if (c == '{' && i + 1 < end && raw[i + 1] == '{') {
        text += '{';
        i += 2;
      } else if (c == '}' && i + 1 < end && raw[i + 1] == '}') {
        text += '}';
        i += 2;
      } else if (c == '{') {
        std::size_t j = i + 1;
        int depth = 1;
        while (j < end && depth > 0) {
          if (raw[j] == '{') ++depth;
          if (raw[j] == '}') --depth;
          if (depth > 0) ++j;
        }
        if (j >= end) error(fmt_tok.span, "unterminated `{` in format string");
        flush();
        p.pieces.push_back(PrintfPiece{"", hole(raw.substr(i + 1, j - i - 1), fmt_tok.span, i + 1)});
        i = j + 1;
      } else if (c == '}') {
        error(fmt_tok.span, "unmatched `}` in format string (write `}}`)");
      } else {
        text += c;
        ++i;
      }
    }
    flush();
    return make(std::move(p), span_from(start));
  }

  // Parses the expression inside a format-string hole. Spans are shifted so
  // they point into the string literal.
  ExprPtr hole(const std::string& src, const SourceSpan& lit, std::size_t offset) {
    std::vector<Token> sub = tokenize(src, lit.file);
    for (auto& t : sub) {
      t.span.col += lit.col + static_cast<std::uint32_t>(offset) - 1;
      t.span.end_col += lit.col + static_cast<std::uint32_t>(offset) - 1;
      t.span.line = t.span.end_line = lit.line;
    }
    std::swap(sub, toks_);
    std::size_t saved = pos_;
    pos_ = 0;
    if (at(TokenKind::Eof)) error(lit, "empty `{}` in format string");
    ExprPtr e = expr();
    if (!at(TokenKind::Eof)) expected({TokenKind::RBrace});
    std::swap(sub, toks_);
    pos_ = saved;
    return e;
  }
};

}  // namespace

Program parse_program(std::vector<Token> tokens, std::shared_ptr<const std::string> file) {
  Program prog;
  prog.file = std::move(file);
  if (tokens.empty() || tokens.back().kind != TokenKind::Eof) {
    Token eof;
    eof.kind = TokenKind::Eof;
    if (!tokens.empty()) eof.span = tokens.back().span;
    tokens.push_back(std::move(eof));
  }
  Parser(std::move(tokens), prog).program();
  return prog;
}

Program parse_source(std::string_view source, std::string file_name) {
  auto file = std::make_shared<const std::string>(std::move(file_name));
  return parse_program(tokenize(source, file), file);
}

Program parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    SourceSpan s;
    s.file = std::make_shared<const std::string>(path);
    throw CompileError({Diagnostic{s, "cannot read file"}});
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_source(ss.str(), path);
}

}  // namespace socv
