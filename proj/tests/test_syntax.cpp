#include "lams/syntax.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lams;

namespace {

const RingId R = RingId::QSqrt2I;

TermPtr k0() { return Term::ket0(); }
TermPtr k1() { return Term::ket1(); }
TermPtr sc(int n, TermPtr t) {
  return Term::scale(Scalar::from_int(R, n), std::move(t));
}

// Substitution without any canonicalization, for the oracle below.
TermPtr naive_subst(const TermPtr& t, const std::string& x, const TermPtr& r);

TermPtr rebuild(const TermPtr& t) {  // re-canonicalize bottom-up
  std::vector<TermPtr> kids;
  for (const auto& k : t->children()) kids.push_back(rebuild(k));
  switch (t->kind()) {
    case Term::Kind::Sum:
      return Term::sum(std::move(kids));
    case Term::Kind::Scale:
      return Term::scale(t->scalar(), kids[0]);
    case Term::Kind::Lam:
      return Term::lam(t->var_name(), t->lam_annot(), kids[0]);
    case Term::Kind::App:
      return Term::app(kids[0], kids[1]);
    case Term::Kind::Ite:
      return Term::ite(kids[0], kids[1]);
    case Term::Kind::Times:
      return Term::times(kids[0], kids[1]);
    case Term::Kind::Head:
      return Term::head(kids[0]);
    case Term::Kind::Tail:
      return Term::tail(kids[0]);
    case Term::Kind::CastR:
      return Term::cast_r(kids[0]);
    case Term::Kind::CastL:
      return Term::cast_l(kids[0]);
    default:
      return t;
  }
}

TermPtr naive_subst(const TermPtr& t, const std::string& x, const TermPtr& r) {
  if (t->kind() == Term::Kind::Var)
    return t->var_name() == x ? r : t;
  if (t->kind() == Term::Kind::Lam && t->var_name() == x) return t;
  if (t->children().empty()) return t;
  std::vector<TermPtr> kids;
  for (const auto& k : t->children()) kids.push_back(naive_subst(k, x, r));
  if (t->kind() == Term::Kind::Sum) return Term::sum(std::move(kids));
  switch (t->kind()) {
    case Term::Kind::Scale:
      return Term::scale(t->scalar(), kids[0]);
    case Term::Kind::Lam:
      return Term::lam(t->var_name(), t->lam_annot(), kids[0]);
    case Term::Kind::App:
      return Term::app(kids[0], kids[1]);
    case Term::Kind::Ite:
      return Term::ite(kids[0], kids[1]);
    case Term::Kind::Times:
      return Term::times(kids[0], kids[1]);
    case Term::Kind::Head:
      return Term::head(kids[0]);
    case Term::Kind::Tail:
      return Term::tail(kids[0]);
    case Term::Kind::CastR:
      return Term::cast_r(kids[0]);
    case Term::Kind::CastL:
      return Term::cast_l(kids[0]);
    default:
      return t;
  }
}

}  // namespace

TEST_CASE("types: basis and qubit classification") {
  CHECK(is_basis_type(Type::bools(3)));
  CHECK(basis_width(Type::bools(3)) == 3);
  CHECK(basis_width(Type::prod(Type::boolean(), Type::bools(2))) == 3);
  // a left-associated product is a qubit type but not B^n
  CHECK(basis_width(Type::prod(Type::bools(2), Type::boolean())) == 0);
  CHECK_FALSE(is_basis_type(Type::span(Type::boolean())));
  CHECK(is_qubit_type(Type::prod(Type::span(Type::boolean()), Type::boolean())));
  CHECK_FALSE(is_qubit_type(Type::arrow(Type::boolean(), Type::boolean())));
  CHECK(span_depth(Type::span(Type::span(Type::boolean()))) == 2);
  CHECK(type_eq(strip_spans(Type::span(Type::boolean())), Type::boolean()));
  CHECK_THROWS_AS(Type::arrow(Type::arrow(Type::boolean(), Type::boolean()),
                              Type::boolean()),
                  internal_error);
}

TEST_CASE("mk_sum canonicalizes modulo AC") {
  TermPtr t = sc(2, k0());
  TermPtr u = sc(3, k1());
  TermPtr v = k0();
  CHECK(term_eq(Term::sum({t}), t));  // singleton
  CHECK(term_eq(Term::sum({u, t}), Term::sum({t, u})));
  // flattening: t + (u + v) has three flat summands
  TermPtr nested = Term::sum({t, Term::sum({u, v})});
  CHECK(nested->kind() == Term::Kind::Sum);
  CHECK(nested->children().size() == 3);
  // any permutation/re-association is structurally equal
  TermPtr a = Term::sum({Term::sum({v, t}), u});
  TermPtr b = Term::sum({u, Term::sum({t, v})});
  CHECK(term_eq(a, b));
  CHECK(term_eq(a, nested));
  CHECK_THROWS_AS(Term::sum({}), internal_error);
  // duplicates survive as a multiset
  CHECK(Term::sum({t, t})->children().size() == 2);
}

TEST_CASE("unscaled basis summands sort before scaled copies") {
  TermPtr s = Term::sum({sc(-1, k0()), k0(), sc(3, k1()), sc(-2, k1())});
  REQUIRE(s->children().size() == 4);
  CHECK(term_eq(s->child(0), k0()));
  CHECK(s->child(1)->kind() == Term::Kind::Scale);
}

TEST_CASE("grammar classes: basis terms and values") {
  CHECK(is_basis_term(Term::times(k0(), k1())));
  CHECK(is_basis_term(Term::lam("x", Type::boolean(), Term::var("x"))));
  TermPtr sup = Term::scale(Scalar::from_rational(R, BigRat(1, 2)),
                            Term::sum({k0(), k1()}));
  CHECK(is_value(sup));
  CHECK_FALSE(is_basis_term(sup));
  TermPtr h = Term::head(Term::times(k0(), k1()));
  CHECK_FALSE(is_value(h));
  CHECK_FALSE(is_basis_term(h));
  CHECK(is_value(Term::zero_vec(Type::boolean())));
  CHECK(is_value(Term::times(sup, k0())));
  CHECK_FALSE(is_value(Term::app(Term::ite(k0(), k1()), k0())));
}

TEST_CASE("free variables and substitution") {
  TermPtr body = Term::times(Term::var("x"), Term::var("x"));
  CHECK(free_vars(body) == std::set<std::string>{"x"});
  CHECK(term_eq(substitute(body, "x", k0()), Term::times(k0(), k0())));
  CHECK(term_eq(substitute(Term::var("y"), "x", k1()), Term::var("y")));
  // binder shadowing stops substitution
  TermPtr lam = Term::lam("x", Type::boolean(), Term::var("x"));
  CHECK(term_eq(substitute(lam, "x", k0()), lam));
  CHECK(is_closed(lam));
  CHECK_FALSE(is_closed(body));
}

TEST_CASE("substitution commutes with canonicalization") {
  // alpha.x + beta.x with a substitution that changes the sort order
  TermPtr s = Term::sum({sc(2, Term::var("x")), Term::var("x"), sc(5, k1())});
  TermPtr r = Term::times(k0(), k1());
  TermPtr direct = substitute(s, "x", r);
  TermPtr oracle = rebuild(naive_subst(s, "x", r));
  CHECK(term_eq(direct, oracle));
  // and on a nested shape
  TermPtr t2 = Term::scale(Scalar::one(R), Term::sum({Term::var("x"), k0()}));
  CHECK(term_eq(substitute(t2, "x", k1()),
                rebuild(naive_subst(t2, "x", k1()))));
}

TEST_CASE("term order is a strict total order") {
  std::vector<TermPtr> pool{
      k0(), k1(), Term::var("a"), Term::var("b"), sc(2, k0()), sc(2, k1()),
      Term::sum({k0(), k1()}), Term::zero_vec(Type::boolean()),
      Term::times(k0(), k1()), Term::head(Term::times(k0(), k1()))};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      int ab = term_cmp(a, b), ba = term_cmp(b, a);
      CHECK(ab == -ba);
      if (ab == 0) CHECK(term_eq(a, b));
    }
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool)
        if (term_cmp(a, b) < 0 && term_cmp(b, c) < 0)
          CHECK(term_cmp(a, c) < 0);
}
