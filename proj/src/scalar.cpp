#include "lams/scalar.hpp"

namespace lams {

const char* ring_name(RingId r) {
  switch (r) {
    case RingId::Q:
      return "q";
    case RingId::QSqrt2I:
      return "qsi";
    case RingId::Z:
      return "z";
  }
  return "?";
}

RingId ring_from_name(const std::string& name) {
  if (name == "q") return RingId::Q;
  if (name == "qsi") return RingId::QSqrt2I;
  if (name == "z") return RingId::Z;
  throw ring_error("unknown ring '" + name + "' (expected q, qsi or z)");
}

Scalar::Scalar(RingId ring, BigRat a, BigRat b, BigRat c, BigRat d)
    : ring_(ring),
      a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      d_(std::move(d)) {
  validate();
}

void Scalar::validate() const {
  switch (ring_) {
    case RingId::QSqrt2I:
      return;
    case RingId::Q:
      if (b_ != 0 || c_ != 0 || d_ != 0)
        throw ring_error("value outside ring q");
      return;
    case RingId::Z:
      if (b_ != 0 || c_ != 0 || d_ != 0)
        throw ring_error("value outside ring z");
      if (denominator(a_) != 1) throw ring_error("value outside ring z");
      return;
  }
}

Scalar Scalar::from_int(RingId ring, long long v) {
  return Scalar(ring, BigRat(v), BigRat(0), BigRat(0), BigRat(0));
}

Scalar Scalar::from_rational(RingId ring, const BigRat& q) {
  return Scalar(ring, q, BigRat(0), BigRat(0), BigRat(0));
}

Scalar Scalar::sqrt2(RingId ring) {
  if (ring != RingId::QSqrt2I) throw ring_error("sqrt2 is not in this ring");
  return Scalar(ring, BigRat(0), BigRat(1), BigRat(0), BigRat(0));
}

Scalar Scalar::i(RingId ring) {
  if (ring != RingId::QSqrt2I) throw ring_error("i is not in this ring");
  return Scalar(ring, BigRat(0), BigRat(0), BigRat(1), BigRat(0));
}

Scalar Scalar::operator+(const Scalar& rhs) const {
  if (ring_ != rhs.ring_) throw ring_error("scalars from different rings");
  return Scalar(ring_, BigRat(a_ + rhs.a_), BigRat(b_ + rhs.b_),
                BigRat(c_ + rhs.c_), BigRat(d_ + rhs.d_));
}

Scalar Scalar::operator-() const {
  return Scalar(ring_, BigRat(-a_), BigRat(-b_), BigRat(-c_), BigRat(-d_));
}

// Multiplication expands the basis products with sqrt2*sqrt2 = 2, i*i = -1,
// sqrt2*i = sqrt2i, sqrt2i*sqrt2i = -2.
Scalar Scalar::operator*(const Scalar& rhs) const {
  if (ring_ != rhs.ring_) throw ring_error("scalars from different rings");
  const BigRat &a = a_, &b = b_, &c = c_, &d = d_;
  const BigRat &e = rhs.a_, &f = rhs.b_, &g = rhs.c_, &h = rhs.d_;
  BigRat ra = a * e + 2 * b * f - c * g - 2 * d * h;
  BigRat rb = a * f + b * e - c * h - d * g;
  BigRat rc = a * g + c * e + 2 * b * h + 2 * d * f;
  BigRat rd = a * h + d * e + b * g + c * f;
  return Scalar(ring_, std::move(ra), std::move(rb), std::move(rc),
                std::move(rd));
}

int Scalar::compare(const Scalar& rhs) const {
  if (ring_ != rhs.ring_)
    return static_cast<int>(ring_) < static_cast<int>(rhs.ring_) ? -1 : 1;
  auto cmp = [](const BigRat& x, const BigRat& y) {
    return x < y ? -1 : (x == y ? 0 : 1);
  };
  if (int k = cmp(a_, rhs.a_)) return k;
  if (int k = cmp(b_, rhs.b_)) return k;
  if (int k = cmp(c_, rhs.c_)) return k;
  return cmp(d_, rhs.d_);
}

namespace {

std::string rat_str(const BigRat& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

// One product term of the literal grammar: coefficient times an optional
// symbol ("sqrt2", "i" or "sqrt2*i"). `parens` wraps fractional or negative
// coefficients so the result stays a valid scalar factor.
std::string part_str(const BigRat& coef, const char* sym, bool parens) {
  if (!sym[0]) return rat_str(coef);
  if (coef == 1) return sym;
  if (coef == -1) return std::string("-") + sym;
  std::string cs = rat_str(coef);
  if (parens && (denominator(coef) != 1 || coef < 0)) cs = "(" + cs + ")";
  return cs + "*" + sym;
}

std::string render(const BigRat& a, const BigRat& b, const BigRat& c,
                   const BigRat& d, bool parens, bool* multi) {
  std::string out;
  int parts = 0;
  auto add = [&](const BigRat& coef, const char* sym) {
    if (coef == 0) return;
    if (parts++) out += " + ";
    out += part_str(coef, sym, parens);
  };
  add(a, "");
  add(b, "sqrt2");
  add(c, "i");
  add(d, "sqrt2*i");
  if (parts == 0) out = "0";
  if (multi) *multi = parts > 1;
  return out;
}

}  // namespace

std::string Scalar::pretty() const {
  bool multi = false;
  std::string s = render(a_, b_, c_, d_, /*parens=*/true, &multi);
  return multi ? "(" + s + ")" : s;
}

std::string Scalar::display() const {
  return render(a_, b_, c_, d_, /*parens=*/false, nullptr);
}

}  // namespace lams
