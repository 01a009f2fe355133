#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mms/metric_core.hpp"

namespace mms {

// Relation between two point sets whose projections are both surjective.
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;

  static Correspondence identity(int n);
  // graph(phi) u graph(psi)^T, deduplicated and sorted.
  static Correspondence from_maps(const std::vector<int>& phi, const std::vector<int>& psi);
};

void validate_correspondence(const Correspondence& r, int nx, int ny);

double distortion(const Correspondence& r, const FiniteMetricSpace& x,
                  const FiniteMetricSpace& y);

// Cross-distance block of a (pseudo)metric on the disjoint union X u Y that
// restricts to d_X and d_Y. Validation checks nonnegativity and every glued
// triangle inequality; zero cross entries are allowed (they arise for
// optimal couplings of isometric spaces).
class MetricCoupling {
 public:
  static MetricCoupling checked(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                std::vector<std::vector<double>> cross);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double cross(int i, int j) const { return c_[static_cast<std::size_t>(i) * ny_ + j]; }

 private:
  MetricCoupling(int nx, int ny, std::vector<double> c) : nx_(nx), ny_(ny), c_(std::move(c)) {}
  int nx_ = 0, ny_ = 0;
  std::vector<double> c_;
};

// d_R(x,y) = min over (x',y') in R of d_X(x,x') + d_Y(y,y') + dis(R)/2.
MetricCoupling canonical_coupling(const Correspondence& r, const FiniteMetricSpace& x,
                                  const FiniteMetricSpace& y);

// Hausdorff distance between X and Y inside the glued space.
double hausdorff_in_coupling(const MetricCoupling& d, const FiniteMetricSpace& x,
                             const FiniteMetricSpace& y);

// max of the implemented GH lower bounds (currently the diameter bound).
double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

struct GhResult {
  double value = 0.0;
  Correspondence witness;
  bool optimal = false;
  double lower = 0.0;  // certified interval when !optimal
  double upper = 0.0;
  std::uint64_t work = 0;  // nodes expanded or map pairs evaluated
};

struct GhBudget {
  std::uint64_t max_nodes = 200'000'000;  // DFS node expansions
  std::uint64_t max_pairs = 50'000'000;   // full map-pair enumeration
};

// Exact small-instance oracle. Minimizes distortion over pairs of maps
// (phi: X->Y, psi: Y->X) -- the minimum over such pairs attains the
// infimum over all correspondences -- via binary search on the candidate
// distortion values with a depth-first feasibility check. On budget
// exhaustion returns the best certified interval, flagged non-optimal.
GhResult gh_oracle(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                   GhBudget budget = {});

// Reference oracle: full enumeration of all map pairs. Feasible for
// m^n * n^m within the pair budget; used for cross-checks and the bench.
GhResult gh_oracle_map_pairs(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                             GhBudget budget = {}, Exec exec = Exec::parallel);

// Second cross-check: direct enumeration of all 2^(n*m) relations, n*m <= 12.
GhResult gh_oracle_subsets(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

}  // namespace mms
