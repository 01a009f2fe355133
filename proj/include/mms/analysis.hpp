#pragma once

#include <string>
#include <vector>

#include "mms/clustering.hpp"
#include "mms/metric_core.hpp"

namespace mms {

// Balls are closed throughout: B(x, r) = { y : d(x,y) <= r }. This makes
// f_delta a right-continuous step function whose breakpoints live in the
// distance set, so everything here is computed exactly by scanning them.

struct DoublingWitness {
  int x = -1;
  double r = 0.0;
  double ratio = 1.0;
};

struct DoublingReport {
  double C = 1.0;
  std::vector<DoublingWitness> per_radius;  // the attaining witnesses
};

// Minimal C with mu(B(x,2r)) <= C mu(B(x,r)) over all x and r; the ratio is
// piecewise constant with breakpoints at the distances and their halves.
DoublingReport doubling_constant(const MetricMeasureSpace& x);

// mu({ x : mu(B(x, eps)) <= delta })
double f_delta(const MetricMeasureSpace& x, double delta, double eps);

// inf { eps > 0 : f_delta(eps) <= eps }; 0 when f vanishes near 0.
double v_delta(const MetricMeasureSpace& x, double delta);

struct DoublingBoundReport {
  double delta = 0.0;        // weak sketch upper bound
  double sturm_upper = 0.0;  // strong sketch upper bound
  double rhs = 0.0;
  double doubling_c = 1.0;
  bool precondition_met = false;  // delta < 2^-5
  bool holds = false;             // delta <= sturm_upper < rhs
};

DoublingBoundReport doubling_bound_check(const MetricMeasureSpace& x, int k, double p,
                                         BruteBudget budget = {});

struct CoveringRadiusResult {
  double value = 0.0;
  bool exact = true;
  std::vector<int> centers;
};

// Minimal radius r such that k closed balls centered at points cover the
// space; exact ball-cover search when in budget, Gonzalez bound otherwise.
CoveringRadiusResult covering_radius(const FiniteMetricSpace& x, int k, BruteBudget budget = {});

struct AdmissibilityRow {
  int n = 0;
  int k = 0;
  std::string functional;  // "phi_ultrametric", "phi_bar", "phi_p"
  double shatter = 0.0;
  double cov_k = 0.0;
};

// Impossibility table on the block-grid family: clustering objectives that
// vanish as the grids refine while the k-covering radius stays >= 1/2.
std::vector<AdmissibilityRow> admissibility_report(const std::vector<int>& ns,
                                                   const std::vector<int>& ks, double p);

}  // namespace mms
