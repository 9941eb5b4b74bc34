#include "lams/generate.hpp"
#include "lams/parse.hpp"
#include "lams/typecheck.hpp"

#include <doctest.h>

#include <filesystem>

using namespace lams;

TEST_CASE("atoms and sugar") {
  CHECK(parse_term("|0>")->kind() == Term::Kind::Ket0);
  CHECK(parse_term("|1>")->kind() == Term::Kind::Ket1);
  CHECK(parse_term("zero[B]")->kind() == Term::Kind::Zero);
  CHECK(type_eq(parse_term("zero[S(B) x B]")->zero_annot(),
                Type::prod(Type::span(Type::boolean()), Type::boolean())));
  // `if b then t else r` is the applied conditional
  TermPtr sugar = parse_term("if |1> then |0> else |1>");
  CHECK(sugar->kind() == Term::Kind::App);
  CHECK(sugar->child(0)->kind() == Term::Kind::Ite);
  CHECK(term_eq(sugar, parse_term("(if {|0>} else {|1>}) |1>")));
  // `t - u` is t + (-1).u
  TermPtr minus = parse_term("|0> - |1>");
  CHECK(term_eq(minus, parse_term("|0> + (-1) . |1>")));
}

TEST_CASE("precedence: sum, scale, product, application") {
  // scale binds tighter than + and looser than * and application
  TermPtr t = parse_term("1/2 . |0> + |1>");
  CHECK(t->kind() == Term::Kind::Sum);
  TermPtr s = parse_term("1/2 . |0> * |1>");
  CHECK(s->kind() == Term::Kind::Scale);
  CHECK(s->child(0)->kind() == Term::Kind::Times);
  // application is juxtaposition, left-associative
  TermPtr app = parse_term("(\\x:B. x) |0>");
  CHECK(app->kind() == Term::Kind::App);
  // products right-associate
  TermPtr p = parse_term("|0> * |1> * |0>");
  CHECK(p->child(1)->kind() == Term::Kind::Times);
  // nested scale
  TermPtr ns = parse_term("2 . 3 . |0>");
  CHECK(ns->kind() == Term::Kind::Scale);
  CHECK(ns->child(0)->kind() == Term::Kind::Scale);
}

TEST_CASE("the worked examples parse to the expected shapes") {
  TermPtr cnot = parse_term("(\\x:B. x * x) ((1/2)*sqrt2 . (|0> + |1>))");
  CHECK(cnot->kind() == Term::Kind::App);
  CHECK(cnot->child(0)->kind() == Term::Kind::Lam);
  CHECK(cnot->child(1)->kind() == Term::Kind::Scale);
  TermPtr cast = parse_term("upR (((1/2)*sqrt2 . (|0> + |1>)) * |0>)");
  CHECK(cast->kind() == Term::Kind::CastR);
  CHECK(cast->child(0)->kind() == Term::Kind::Times);
}

TEST_CASE("types") {
  CHECK(type_eq(parse_type("S(B)"), Type::span(Type::boolean())));
  CHECK(type_eq(parse_type("B => S(B)"),
                Type::arrow(Type::boolean(), Type::span(Type::boolean()))));
  CHECK(type_eq(parse_type("B^3"), Type::bools(3)));
  CHECK(type_eq(parse_type("B x B x B"), Type::bools(3)));
  // arrows right-associate
  CHECK(type_eq(parse_type("S(B) => S(B) => B"),
                Type::arrow(Type::span(Type::boolean()),
                            Type::arrow(Type::span(Type::boolean()),
                                        Type::boolean()))));
  CHECK_THROWS_AS(parse_type("(B => B) => B"), ParseError);
  CHECK_THROWS_AS(parse_type("(B => B) x B"), ParseError);
}

TEST_CASE("errors carry locations") {
  try {
    parse_term("|0> +");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span.line == 1);
    CHECK(e.span.col > 1);
  }
  try {
    parse_term("\n\n  |2>");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span.line == 3);
  }
  CHECK_THROWS_AS(parse_term("1/2 . |0>", RingId::Z), ParseError);
  CHECK_THROWS_AS(parse_term("sqrt2 . |0>", RingId::Q), ParseError);
  CHECK_THROWS_AS(parse_term("if |0> then |1>"), ParseError);
}

TEST_CASE("comments and whitespace") {
  TermPtr t = parse_term("# leading comment\n |0>  # trailing\n");
  CHECK(t->kind() == Term::Kind::Ket0);
}

TEST_CASE("round trip: parse after pretty is the identity") {
  GenConfig cfg;
  cfg.seed = 11;
  cfg.max_size = 12;
  TermGen gen(cfg);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = gen.next();
    TermPtr back = parse_term(pretty(t));
    CHECK(term_eq(t, back));
  }
}

TEST_CASE("every corpus file parses and type checks") {
  namespace fs = std::filesystem;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(LAMS_CORPUS_DIR)) {
    if (entry.path().extension() != ".lams") continue;
    ++seen;
    CAPTURE(entry.path().string());
    TermPtr t = parse_file(entry.path().string());
    CHECK_NOTHROW(synthesize({}, t));
    // parse after pretty also holds on the corpus
    CHECK(term_eq(t, parse_term(pretty(t))));
  }
  CHECK(seen >= 5);
}
