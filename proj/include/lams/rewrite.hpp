#pragma once

#include "lams/typecheck.hpp"

#include <optional>
#include <vector>

namespace lams {

/// One identifier per rewrite rule, with the labels as printed (including the
/// cast_neut_r / cast_neut_l pair, whose printed labels attach "r" to the
/// upL rule and "l" to the upR rule).
enum class RuleId : std::uint8_t {
  // beta
  beta_b,
  beta_n,
  // linear distribution
  lin_r_plus,
  lin_r_scal,
  lin_r_zero,
  lin_l_plus,
  lin_l_scal,
  lin_l_zero,
  // conditional
  if_true,
  if_false,
  // lists
  head,
  tail,
  // vector space axioms
  neut,
  unit,
  zero_scal,
  zero,
  prod,
  dist_scal_sum,
  fact,
  fact1,
  fact2,
  // castings
  dist_sum_r,
  dist_sum_l,
  dist_scal_r,
  dist_scal_l,
  dist_zero_r,
  dist_zero_l,
  dist_cast_sum,
  dist_cast_scal,
  dist_cast_zero_r,
  cast_neut_zero_r,
  dist_cast_zero_l,
  cast_neut_zero_l,
  cast_neut_r,
  cast_neut_l,
};

const char* rule_name(RuleId r);

struct Step {
  RuleId rule;
  std::vector<int> path;  // child indices from the root to the redex
  TermPtr before;         // whole term
  TermPtr after;
};

struct Trace {
  TermPtr initial;
  std::vector<Step> steps;
  TermPtr final_term;
  bool normal = false;  // false only when the step budget ran out
};

struct Reduct {
  RuleId rule;
  std::vector<int> path;
  TermPtr after;
};

/// Budget exhausted before a normal form: indicates an engine bug, since all
/// well-typed closed terms are strongly normalizing.
struct normalization_budget_exceeded : std::runtime_error {
  explicit normalization_budget_exceeded(const Trace& partial)
      : std::runtime_error("step budget exceeded"), trace(partial) {}
  Trace trace;
};

class Rewriter {
 public:
  explicit Rewriter(RingId ring = RingId::QSqrt2I) : ring_(ring) {}

  /// One deterministic step, or nothing when t is normal. t must be closed
  /// and well-typed.
  std::optional<Step> step(const TermPtr& t) const;

  Trace normalize(const TermPtr& t, size_t max_steps = 10000) const;

  /// Every rule/position match under the contextual grammar, regardless of
  /// the deterministic strategy. For confluence exploration.
  std::vector<Reduct> all_reducts(const TermPtr& t) const;

  bool is_normal(const TermPtr& t) const { return !step(t).has_value(); }

 private:
  RingId ring_;
};

}  // namespace lams
