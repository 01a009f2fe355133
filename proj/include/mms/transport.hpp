#pragma once

#include <vector>

#include "mms/correspondence.hpp"
#include "mms/metric_core.hpp"

namespace mms {

// Joint probability with prescribed marginals; the transport plan.
class MeasureCoupling {
 public:
  static MeasureCoupling checked(std::vector<std::vector<double>> plan,
                                 const std::vector<double>& mu_x,
                                 const std::vector<double>& mu_y);
  static MeasureCoupling product(const std::vector<double>& mu_x,
                                 const std::vector<double>& mu_y);
  // gamma(x, i) = mu_X(x) [x in B_i]; the model's masses must be the block
  // masses.
  static MeasureCoupling from_partition(const MetricMeasureSpace& x, const Partition& p,
                                        const std::vector<double>& mu_model);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double at(int i, int j) const { return p_[static_cast<std::size_t>(i) * ny_ + j]; }

  // Entries above the support threshold (descent-produced plans may carry
  // numerical dust; flow plans have exact zeros).
  std::vector<std::pair<int, int>> support(double threshold = 1e-12) const;

 private:
  MeasureCoupling(int nx, int ny, std::vector<double> p)
      : nx_(nx), ny_(ny), p_(std::move(p)) {}
  int nx_ = 0, ny_ = 0;
  std::vector<double> p_;
};

struct TransportResult {
  double value = 0.0;
  MeasureCoupling plan;
};

// Exact p-Wasserstein between two measures supported on subsets of the same
// space (zero entries mark points outside the support). Transportation
// simplex on the bipartite support graph; cost d_X^p, value reported as the
// p-th root.
TransportResult wasserstein_p(const FiniteMetricSpace& x, const std::vector<double>& mu_a,
                              const std::vector<double>& mu_b, double p);

// Bottleneck transport: binary search over the distinct cross distances with
// a max-flow feasibility check. The value is always a distance-matrix entry.
TransportResult wasserstein_inf(const FiniteMetricSpace& x, const std::vector<double>& mu_a,
                                const std::vector<double>& mu_b);

// p-distortion of a plan between two mm-spaces.
double dis_p(const MeasureCoupling& plan, const MetricMeasureSpace& x,
             const MetricMeasureSpace& y, double p);

// Certified upper bounds on the coupling-based GW distance: half the
// p-distortion of an explicitly constructed coupling.
double gw_upper_bound_product(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                              double p);
double gw_upper_bound_partition(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                                const Partition& part, double p);
double gw_upper_bound_custom(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                             const MeasureCoupling& plan, double p);

// A metric coupling together with a measure coupling over the same pair.
struct SturmPair {
  MetricCoupling d;
  MeasureCoupling plan;
};

double sturm_cost(const SturmPair& sp, double p);

struct SturmOnePointResult {
  double value = 0.0;
  std::vector<double> extension;  // d(x, *) per point
  double kkt_residual = 0.0;
};

// Minimal transport-to-one-point cost over all metric extensions d(., *):
// convex program over the polytope |t_x - t_y| <= d(x,y) <= t_x + t_y.
// p = 1 and p = inf are solved as linear programs; other p by projected
// gradient descent over the same polytope.
SturmOnePointResult sturm_one_point(const MetricMeasureSpace& x, double p);

}  // namespace mms
