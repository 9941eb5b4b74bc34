#include "lams/scalar.hpp"

#include <doctest.h>

using namespace lams;

namespace {

// Independent componentwise oracle over machine rationals, for cross-checking
// the arbitrary-precision implementation on small values.
struct Frac {
  long long n = 0, d = 1;
  static long long gcd(long long a, long long b) {
    while (b) {
      long long t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }
  Frac norm() const {
    long long g = gcd(n, d);
    long long s = d < 0 ? -1 : 1;
    return {s * n / (g ? g : 1), s * d / (g ? g : 1)};
  }
  Frac operator+(Frac o) const { return Frac{n * o.d + o.n * d, d * o.d}.norm(); }
  Frac operator*(Frac o) const { return Frac{n * o.n, d * o.d}.norm(); }
  bool operator==(Frac o) const { return n == o.n && d == o.d; }
};

struct Quad {
  Frac a, b, c, d;  // a + b sqrt2 + c i + d sqrt2 i
  Quad operator+(const Quad& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  Quad operator*(const Quad& o) const {
    Frac two{2, 1}, neg{-1, 1};
    return {a * o.a + two * b * o.b + neg * (c * o.c) + neg * two * d * o.d,
            a * o.b + b * o.a + neg * (c * o.d) + neg * (d * o.c),
            a * o.c + c * o.a + two * b * o.d + two * d * o.b,
            a * o.d + d * o.a + b * o.c + c * o.b};
  }
};

Scalar lift(const Quad& q) {
  RingId r = RingId::QSqrt2I;
  Scalar s2 = Scalar::sqrt2(r), im = Scalar::i(r);
  auto rat = [&](Frac f) {
    return Scalar::from_rational(r, BigRat(f.n, f.d));
  };
  return rat(q.a) + rat(q.b) * s2 + rat(q.c) * im + rat(q.d) * s2 * im;
}

bool matches(const Scalar& s, const Quad& q) {
  return s == lift(q);
}

std::uint64_t rng_state = 99;
long long small() {
  rng_state = rng_state * 6364136223846793005ULL + 1442695040888963407ULL;
  return static_cast<long long>((rng_state >> 33) % 9) - 4;
}
Quad rand_quad() {
  auto f = [] {
    long long n = small();
    long long d = 1 + (small() + 4) % 3;
    return Frac{n, d}.norm();
  };
  return {f(), f(), f(), f()};
}

}  // namespace

TEST_CASE("field arithmetic basics") {
  RingId r = RingId::QSqrt2I;
  Scalar half = Scalar::from_rational(r, BigRat(1, 2));
  CHECK(half + half == Scalar::one(r));
  CHECK(Scalar::from_int(r, 3) + Scalar::zero(r) == Scalar::from_int(r, 3));

  Scalar inv_sqrt2 = half * Scalar::sqrt2(r);
  CHECK(inv_sqrt2 + inv_sqrt2 == Scalar::sqrt2(r));
  CHECK(inv_sqrt2 * inv_sqrt2 == half);

  CHECK(Scalar::i(r) * Scalar::i(r) == -Scalar::one(r));
  CHECK(Scalar::sqrt2(r) * Scalar::sqrt2(r) == Scalar::from_int(r, 2));
  // (1+i)(1-i) = 2
  Scalar one_plus_i = Scalar::one(r) + Scalar::i(r);
  Scalar one_minus_i = Scalar::one(r) + (-Scalar::i(r));
  CHECK(one_plus_i * one_minus_i == Scalar::from_int(r, 2));
  CHECK(-Scalar::one(r) == Scalar::from_int(r, -1));
}

TEST_CASE("componentwise oracle agrees on random values") {
  for (int i = 0; i < 500; ++i) {
    Quad x = rand_quad(), y = rand_quad();
    CHECK(matches(lift(x) + lift(y), x + y));
    CHECK(matches(lift(x) * lift(y), x * y));
  }
}

TEST_CASE("ring axioms on random triples") {
  for (int i = 0; i < 1000; ++i) {
    Scalar x = lift(rand_quad()), y = lift(rand_quad()), z = lift(rand_quad());
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x * y == y * x);
    CHECK(x + (-x) == Scalar::zero(RingId::QSqrt2I));
    CHECK(x * Scalar::one(RingId::QSqrt2I) == x);
  }
}

TEST_CASE("equality is canonical-form equality") {
  RingId r = RingId::QSqrt2I;
  Scalar a = Scalar::from_rational(r, BigRat(2, 4));
  Scalar b = Scalar::from_rational(r, BigRat(1, 2));
  CHECK(a == b);
  CHECK(a.compare(b) == 0);
  Scalar c = Scalar::from_rational(r, BigRat(-1, 2));
  CHECK(a.compare(c) > 0);
  CHECK(c.compare(a) < 0);
}

TEST_CASE("restricted rings reject foreign values") {
  CHECK_THROWS_AS(Scalar::sqrt2(RingId::Q), ring_error);
  CHECK_THROWS_AS(Scalar::i(RingId::Z), ring_error);
  CHECK_THROWS_AS(Scalar::from_rational(RingId::Z, BigRat(1, 2)), ring_error);
  CHECK_THROWS_AS(Scalar::one(RingId::Q) + Scalar::one(RingId::Z), ring_error);
  CHECK(Scalar::from_int(RingId::Z, 2) * Scalar::from_int(RingId::Z, -3) ==
        Scalar::from_int(RingId::Z, -6));
}

TEST_CASE("rendering") {
  RingId r = RingId::QSqrt2I;
  Scalar inv_sqrt2 = Scalar::from_rational(r, BigRat(1, 2)) * Scalar::sqrt2(r);
  CHECK(inv_sqrt2.pretty() == "(1/2)*sqrt2");
  CHECK(inv_sqrt2.display() == "1/2*sqrt2");
  CHECK(Scalar::from_int(r, -2).pretty() == "-2");
  CHECK((Scalar::one(r) + Scalar::i(r)).pretty() == "(1 + i)");
  CHECK((-inv_sqrt2).display() == "-1/2*sqrt2");
}
