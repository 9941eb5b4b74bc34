#pragma once

#include "lams/generate.hpp"

#include <functional>

namespace lams {

struct PropertyFailure {
  int case_index = -1;
  std::string term;    // pretty-printed, shrunk counterexample
  std::string detail;  // what went wrong (step, rule, both denotations, ...)
};

struct PropertyReport {
  std::string name;
  std::uint64_t seed = 0;
  int cases = 0;
  std::vector<PropertyFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// subject_reduction, soundness_per_step, strong_normalization,
/// local_confluence, completeness_ground, substitution_lemma,
/// derivation_independence.
const std::vector<std::string>& property_names();

PropertyReport run_property(const std::string& name, const GenConfig& cfg);

std::vector<PropertyReport> run_all_properties(const GenConfig& cfg);

}  // namespace lams
