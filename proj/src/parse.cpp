#include "lams/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace lams {

namespace {

enum class Tok : std::uint8_t {
  End,
  Ket0,
  Ket1,
  Ident,
  Int,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Plus,
  Minus,
  Star,
  Dot,
  Slash,
  Lambda,
  Colon,
  Caret,
  FatArrow,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

struct Lexer {
  explicit Lexer(const std::string& src) : src_(src) { scan(); }

  const std::vector<Token>& tokens() const { return toks_; }

 private:
  void scan() {
    size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k) {
        if (src_[i + k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '#') {
        while (i < src_.size() && src_[i] != '\n') advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      SourceSpan sp{i, i + 1, line, col};
      auto push = [&](Tok k, size_t len) {
        sp.end = i + len;
        toks_.push_back({k, src_.substr(i, len), sp});
        advance(len);
      };
      if (c == '|') {
        if (i + 2 < src_.size() && src_[i + 2] == '>' &&
            (src_[i + 1] == '0' || src_[i + 1] == '1')) {
          push(src_[i + 1] == '0' ? Tok::Ket0 : Tok::Ket1, 3);
          continue;
        }
        throw ParseError("malformed ket (expected |0> or |1>)", sp);
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t len = 1;
        while (i + len < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[i + len])))
          ++len;
        push(Tok::Int, len);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t len = 1;
        while (i + len < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i + len])) ||
                src_[i + len] == '_'))
          ++len;
        push(Tok::Ident, len);
        continue;
      }
      if (c == '=' && i + 1 < src_.size() && src_[i + 1] == '>') {
        push(Tok::FatArrow, 2);
        continue;
      }
      switch (c) {
        case '(': push(Tok::LParen, 1); continue;
        case ')': push(Tok::RParen, 1); continue;
        case '[': push(Tok::LBracket, 1); continue;
        case ']': push(Tok::RBracket, 1); continue;
        case '{': push(Tok::LBrace, 1); continue;
        case '}': push(Tok::RBrace, 1); continue;
        case '+': push(Tok::Plus, 1); continue;
        case '-': push(Tok::Minus, 1); continue;
        case '*': push(Tok::Star, 1); continue;
        case '.': push(Tok::Dot, 1); continue;
        case '/': push(Tok::Slash, 1); continue;
        case '\\': push(Tok::Lambda, 1); continue;
        case ':': push(Tok::Colon, 1); continue;
        case '^': push(Tok::Caret, 1); continue;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", sp);
      }
    }
    toks_.push_back({Tok::End, "", SourceSpan{i, i, line, col}});
  }

  const std::string& src_;
  std::vector<Token> toks_;
};

bool is_keyword(const std::string& s) {
  return s == "if" || s == "then" || s == "else" || s == "zero" || s == "head" ||
         s == "tail" || s == "upR" || s == "upL";
}

struct Parser {
  Parser(const std::string& src, RingId ring) : lex_(src), ring_(ring) {}

  TermPtr term_eof() {
    TermPtr t = term();
    expect_end();
    return t;
  }

  TypePtr type_eof() {
    TypePtr t = type();
    expect_end();
    return t;
  }

 private:
  const Token& peek(size_t k = 0) const {
    size_t j = pos_ + k;
    const auto& ts = lex_.tokens();
    return j < ts.size() ? ts[j] : ts.back();
  }
  const Token& next() { return lex_.tokens()[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(const char* s) const {
    return peek().kind == Tok::Ident && peek().text == s;
  }
  bool eat(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!eat(k))
      throw ParseError(std::string("expected ") + what, peek().span, {what});
  }
  void expect_end() {
    if (!at(Tok::End))
      throw ParseError("unexpected trailing input", peek().span, {"end of input"});
  }

  // ---- terms ------------------------------------------------------------

  TermPtr term() {  // sum level; '-' desugars to + (-1).u
    TermPtr first = scale_level();
    if (!at(Tok::Plus) && !at(Tok::Minus)) return first;
    std::vector<TermPtr> parts{first};
    while (true) {
      if (eat(Tok::Plus)) {
        parts.push_back(scale_level());
      } else if (eat(Tok::Minus)) {
        parts.push_back(
            Term::scale(-Scalar::one(ring_), scale_level()));
      } else {
        break;
      }
    }
    return Term::sum(std::move(parts));
  }

  TermPtr scale_level() {
    if (at(Tok::Lambda)) return lambda();
    size_t save = pos_;
    try {
      Scalar s = scalar_expr();
      if (eat(Tok::Dot)) return Term::scale(s, scale_level());
    } catch (const ParseError&) {
      // not a scalar prefix; fall through to a product
    }
    pos_ = save;
    return product();
  }

  TermPtr lambda() {
    expect(Tok::Lambda, "\\");
    if (!at(Tok::Ident) || is_keyword(peek().text))
      throw ParseError("expected variable name", peek().span, {"identifier"});
    std::string name = next().text;
    expect(Tok::Colon, ":");
    TypePtr annot = type();
    expect(Tok::Dot, ".");
    return Term::lam(std::move(name), std::move(annot), term());
  }

  TermPtr product() {  // right-associated
    TermPtr l = application();
    if (eat(Tok::Star)) return Term::times(std::move(l), product());
    return l;
  }

  TermPtr application() {  // juxtaposition, left-associated
    TermPtr t = prefix();
    while (starts_atom()) t = Term::app(std::move(t), prefix());
    return t;
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ket0:
      case Tok::Ket1:
      case Tok::LParen:
        return true;
      case Tok::Ident:
        return peek().text != "then" && peek().text != "else";
      default:
        return false;
    }
  }

  TermPtr prefix() {
    if (peek().kind == Tok::Ident) {
      const std::string& s = peek().text;
      if (s == "head") { next(); return Term::head(prefix()); }
      if (s == "tail") { next(); return Term::tail(prefix()); }
      if (s == "upR") { next(); return Term::cast_r(prefix()); }
      if (s == "upL") { next(); return Term::cast_l(prefix()); }
    }
    return atom();
  }

  TermPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ket0: next(); return Term::ket0();
      case Tok::Ket1: next(); return Term::ket1();
      case Tok::LParen: {
        next();
        TermPtr inner = term();
        expect(Tok::RParen, ")");
        return inner;
      }
      case Tok::Ident: {
        if (t.text == "zero") {
          next();
          expect(Tok::LBracket, "[");
          TypePtr a = type();
          expect(Tok::RBracket, "]");
          return Term::zero_vec(std::move(a));
        }
        if (t.text == "if") return if_form();
        if (is_keyword(t.text) || t.text == "then" || t.text == "else")
          throw ParseError("unexpected keyword '" + t.text + "'", t.span);
        next();
        return Term::var(t.text);
      }
      default:
        throw ParseError("expected a term", t.span,
                         {"|0>", "|1>", "identifier", "(", "\\", "if", "zero"});
    }
  }

  // `if { t } else { r }` is the conditional as a function; the sugar
  // `if b then t else r` stands for its application to b.
  TermPtr if_form() {
    next();  // 'if'
    if (eat(Tok::LBrace)) {
      TermPtr then_b = term();
      expect(Tok::RBrace, "}");
      if (!at_ident("else"))
        throw ParseError("expected 'else'", peek().span, {"else"});
      next();
      expect(Tok::LBrace, "{");
      TermPtr else_b = term();
      expect(Tok::RBrace, "}");
      return Term::ite(std::move(then_b), std::move(else_b));
    }
    TermPtr cond = term();
    if (!at_ident("then"))
      throw ParseError("expected 'then'", peek().span, {"then"});
    next();
    TermPtr then_b = term();
    if (!at_ident("else"))
      throw ParseError("expected 'else'", peek().span, {"else"});
    next();
    TermPtr else_b = term();
    return Term::app(Term::ite(std::move(then_b), std::move(else_b)),
                     std::move(cond));
  }

  // ---- scalar literals ----------------------------------------------------

  Scalar scalar_expr() {
    Scalar acc = scalar_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      // A following scale like "1 + 2 . t" must not swallow the summand, so
      // only continue if the next factor still looks scalar-ish.
      bool minus = peek().kind == Tok::Minus;
      size_t save = pos_;
      next();
      Scalar rhs;
      try {
        rhs = scalar_term();
      } catch (const ParseError&) {
        pos_ = save;
        break;
      }
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Scalar scalar_term() {
    Scalar acc = scalar_factor();
    while (at(Tok::Star)) {
      size_t save = pos_;
      next();
      Scalar rhs;
      try {
        rhs = scalar_factor();
      } catch (const ParseError&) {
        pos_ = save;
        break;
      }
      acc = acc * rhs;
    }
    return acc;
  }

  Scalar scalar_factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Minus:
        next();
        return -scalar_factor();
      case Tok::Int: {
        next();
        BigInt num(t.text);
        if (eat(Tok::Slash)) {
          if (!at(Tok::Int))
            throw ParseError("expected denominator", peek().span, {"integer"});
          BigInt den(next().text);
          if (den == 0) throw ParseError("zero denominator", t.span);
          if (ring_ == RingId::Z)
            throw ParseError("fractions are not in ring z", t.span);
          return Scalar::from_rational(ring_, BigRat(num, den));
        }
        return Scalar::from_rational(ring_, BigRat(num));
      }
      case Tok::Ident:
        if (t.text == "sqrt2") {
          if (ring_ != RingId::QSqrt2I)
            throw ParseError("sqrt2 is not in ring " +
                                 std::string(ring_name(ring_)),
                             t.span);
          next();
          return Scalar::sqrt2(ring_);
        }
        if (t.text == "i") {
          if (ring_ != RingId::QSqrt2I)
            throw ParseError("i is not in ring " + std::string(ring_name(ring_)),
                             t.span);
          next();
          return Scalar::i(ring_);
        }
        throw ParseError("expected a scalar", t.span);
      case Tok::LParen: {
        next();
        Scalar s = scalar_expr();
        expect(Tok::RParen, ")");
        return s;
      }
      default:
        throw ParseError("expected a scalar", t.span);
    }
  }

  // ---- types --------------------------------------------------------------

  TypePtr type() {  // arrow level, right-associative
    const Token& start = peek();
    TypePtr l = type_prod();
    if (eat(Tok::FatArrow)) {
      if (!is_qubit_type(l))
        throw ParseError("arrow domain must be a qubit type", start.span);
      return Type::arrow(std::move(l), type());
    }
    return l;
  }

  TypePtr type_prod() {  // 'x' separated, right-associated
    const Token& start = peek();
    TypePtr l = type_atom();
    if (at_ident("x")) {
      next();
      TypePtr r = type_prod();
      if (!is_qubit_type(l) || !is_qubit_type(r))
        throw ParseError("product components must be qubit types", start.span);
      return Type::prod(std::move(l), std::move(r));
    }
    return l;
  }

  TypePtr type_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      TypePtr inner = type();
      expect(Tok::RParen, ")");
      return inner;
    }
    if (t.kind == Tok::Ident && t.text == "B") {
      next();
      if (eat(Tok::Caret)) {
        if (!at(Tok::Int))
          throw ParseError("expected exponent", peek().span, {"integer"});
        const Token& n = next();
        long long w = std::stoll(n.text);
        if (w < 1) throw ParseError("B^n needs n >= 1", n.span);
        return Type::bools(static_cast<int>(w));
      }
      return Type::boolean();
    }
    if (t.kind == Tok::Ident && t.text == "S") {
      next();
      expect(Tok::LParen, "(");
      TypePtr inner = type();
      expect(Tok::RParen, ")");
      return Type::span(std::move(inner));
    }
    throw ParseError("expected a type", t.span, {"B", "S", "("});
  }

  Lexer lex_;
  RingId ring_;
  size_t pos_ = 0;
};

}  // namespace

TermPtr parse_term(const std::string& src, RingId ring) {
  return Parser(src, ring).term_eof();
}

TypePtr parse_type(const std::string& src) {
  return Parser(src, RingId::QSqrt2I).type_eof();
}

TermPtr parse_file(const std::string& path, RingId ring) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, SourceSpan{});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_term(ss.str(), ring);
}

}  // namespace lams
