#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lams {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Raised when scalars from different rings are combined, or when a literal
/// is not representable in the configured ring.
struct ring_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RingId : std::uint8_t {
  Q,        // rationals
  QSqrt2I,  // Q(sqrt 2, i), the default
  Z,        // integers
};

const char* ring_name(RingId r);
RingId ring_from_name(const std::string& name);  // "q" | "qsi" | "z"

/// Exact element of the configured commutative ring.
///
/// The representation is a + b*sqrt2 + c*i + d*sqrt2*i with arbitrary-precision
/// rational components kept canonical (lowest terms, positive denominator),
/// so structural equality coincides with ring equality. Rings Q and Z are the
/// sub-rings with b = c = d = 0 (and unit denominators for Z).
class Scalar {
 public:
  Scalar() : ring_(RingId::QSqrt2I) {}

  static Scalar zero(RingId ring) { return Scalar(ring); }
  static Scalar one(RingId ring) { return from_int(ring, 1); }
  static Scalar from_int(RingId ring, long long v);
  static Scalar from_rational(RingId ring, const BigRat& q);
  static Scalar sqrt2(RingId ring);  // ring_error unless ring is QSqrt2I
  static Scalar i(RingId ring);      // ring_error unless ring is QSqrt2I

  RingId ring() const { return ring_; }
  const BigRat& rational_part() const { return a_; }
  const BigRat& sqrt2_part() const { return b_; }
  const BigRat& i_part() const { return c_; }
  const BigRat& sqrt2_i_part() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 0; }

  Scalar operator+(const Scalar& rhs) const;
  Scalar operator*(const Scalar& rhs) const;
  Scalar operator-() const;
  Scalar operator-(const Scalar& rhs) const { return *this + (-rhs); }

  bool operator==(const Scalar& rhs) const {
    return ring_ == rhs.ring_ && a_ == rhs.a_ && b_ == rhs.b_ && c_ == rhs.c_ &&
           d_ == rhs.d_;
  }
  bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

  /// Total order on canonical forms (components compared lexicographically).
  /// Used by the term order; unrelated to any ring-theoretic order.
  int compare(const Scalar& rhs) const;

  /// Reparseable rendering per the scalar literal grammar, e.g. "(1/2)*sqrt2".
  /// Safe to prefix a scale: parse("<pretty> . t") round-trips.
  std::string pretty() const;

  /// Plain rendering for denotation output, e.g. "1/2*sqrt2".
  std::string display() const;

 private:
  explicit Scalar(RingId ring) : ring_(ring) {}
  Scalar(RingId ring, BigRat a, BigRat b, BigRat c, BigRat d);
  void validate() const;

  RingId ring_;
  BigRat a_, b_, c_, d_;
};

}  // namespace lams
