#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace charvar {

// One named quantity checked against a pinned bound.
struct Measurement {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=", ">=" or "=="
  double bound = 0.0;
  bool ok() const;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Measurement> measurements;
  double seconds = 0.0;
  double time_limit = 0.0;
  std::string failure;  // set when the run itself threw
  bool passed() const;
  // First measurement (or the exception, or the time limit) that failed; empty if none.
  std::string first_failure() const;
};

CriterionResult criterion_dimensions();
CriterionResult criterion_goldman_properties();
CriterionResult criterion_oracle_equivalence();
CriterionResult criterion_descent_and_conjugation();
CriterionResult criterion_abelian_intersection();
CriterionResult criterion_riemann_relations();
CriterionResult criterion_pullback();
CriterionResult criterion_closedness();
CriterionResult criterion_reducibility();

// All nine criteria in order, each timed separately.
std::vector<std::function<CriterionResult()>> acceptance_suite();

}  // namespace charvar
