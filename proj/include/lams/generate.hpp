#pragma once

#include "lams/typecheck.hpp"

#include <optional>

namespace lams {

struct GenConfig {
  std::uint64_t seed = 1;
  int max_size = 10;                // AST node budget per term
  std::optional<TypePtr> target;    // goal type; empty picks from a pool
  RingId ring = RingId::QSqrt2I;
  int count = 100;                  // cases for property runs
  int max_qubits = 3;               // n in B^n goals
};

/// Deterministic stream of closed well-typed terms, built type-directed and
/// self-checked against the type checker. Application arguments are values
/// and call-by-name arguments sit exactly at the annotation's type, so every
/// generated term reduces to a value; all constructors appear with nonzero
/// probability.
class TermGen {
 public:
  explicit TermGen(GenConfig cfg);

  /// Next term at cfg.target, or at a pooled goal type.
  TermPtr next();
  /// Next term checked at `goal`.
  TermPtr next_at(const TypePtr& goal);

  /// A scalar from the configured pool (never zero).
  Scalar pick_scalar();
  /// A nonzero scalar with a known exact inverse, and that inverse.
  std::pair<Scalar, Scalar> pick_unit();

  std::uint64_t rand_below(std::uint64_t n);

 private:
  friend struct GenImpl;
  GenConfig cfg_;
  std::uint64_t state_;
};

}  // namespace lams
