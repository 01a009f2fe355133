#pragma once

#include <vector>

namespace mms {

// Small dense LP:  minimize c.x  subject to  A x {<=,=,>=} b,  x >= 0.
// Two-phase primal simplex with Bland's rule. Sized for the desk-scale
// programs here (a few hundred rows); not a general-purpose solver.
enum class Rel { le, eq, ge };

struct LpConstraint {
  std::vector<double> a;
  Rel rel = Rel::le;
  double b = 0.0;
};

struct LpResult {
  bool optimal = false;
  bool infeasible = false;
  double value = 0.0;
  std::vector<double> x;
};

LpResult solve_lp(const std::vector<double>& objective,
                  const std::vector<LpConstraint>& constraints);

}  // namespace mms
