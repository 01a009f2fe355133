#include "mms/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "mms/instances.hpp"
#include "mms/sketching.hpp"

namespace mms {

namespace {

double ball_mass(const MetricMeasureSpace& x, int center, double r) {
  double m = 0.0;
  for (int i = 0; i < x.size(); ++i)
    if (x.dist(center, i) <= r) m += x.mass(i);
  return m;
}

std::vector<double> distance_values(const FiniteMetricSpace& x) {
  std::vector<double> v{0.0};
  for (int i = 0; i < x.size(); ++i)
    for (int j = i + 1; j < x.size(); ++j) v.push_back(x.dist(i, j));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

DoublingReport doubling_constant(const MetricMeasureSpace& x) {
  std::vector<double> radii;
  for (double d : distance_values(x.space()))
    if (d > 0.0) {
      radii.push_back(d);
      radii.push_back(d / 2.0);
    }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  DoublingReport rep;
  for (int c = 0; c < x.size(); ++c)
    for (double r : radii) {
      const double ratio = ball_mass(x, c, 2.0 * r) / ball_mass(x, c, r);
      if (ratio > rep.C) {
        rep.C = ratio;
        rep.per_radius = {DoublingWitness{c, r, ratio}};
      } else if (ratio == rep.C && !rep.per_radius.empty() && rep.per_radius.size() < 8 &&
                 ratio > 1.0) {
        rep.per_radius.push_back(DoublingWitness{c, r, ratio});
      }
    }
  if (rep.per_radius.empty()) rep.per_radius = {DoublingWitness{0, 0.0, 1.0}};
  return rep;
}

double f_delta(const MetricMeasureSpace& x, double delta, double eps) {
  if (!(delta > 0.0 && delta < 1.0)) fail("BadArgument", "delta in (0,1) required");
  double total = 0.0;
  for (int i = 0; i < x.size(); ++i)
    if (ball_mass(x, i, eps) <= delta) total += x.mass(i);
  return total;
}

double v_delta(const MetricMeasureSpace& x, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) fail("BadArgument", "delta in (0,1) required");
  // f is a nonincreasing right-continuous step function with breakpoints at
  // the distance values; on each flat piece the feasibility eps >= f(eps)
  // first holds at max(piece start, f value).
  const std::vector<double> breaks = distance_values(x.space());
  double best = kInf;
  for (std::size_t b = 0; b < breaks.size(); ++b) {
    const double f = f_delta(x, delta, breaks[b]);
    const double candidate = std::max(breaks[b], f);
    const double piece_end = (b + 1 < breaks.size()) ? breaks[b + 1] : kInf;
    if (candidate < piece_end || (b + 1 == breaks.size()))
      best = std::min(best, candidate);
  }
  return best;
}

DoublingBoundReport doubling_bound_check(const MetricMeasureSpace& x, int k, double p,
                                         BruteBudget budget) {
  DoublingBoundReport rep;
  rep.delta = weak_sketch_upper(x, k, p, budget);
  rep.doubling_c = doubling_constant(x).C;
  rep.precondition_met = rep.delta < std::pow(2.0, -5.0) && rep.delta > 0.0;
  if (!rep.precondition_met) return rep;

  const GonzalezResult g = gonzalez(x.space(), k);
  rep.sturm_upper = sturm_upper_from_partition(x, g.partition, p).value;

  const double dm = diam(x.space(), Subset::full(x.size()));
  const double mx = 2.0 * dm + 45.0;
  const double logc = std::log2(std::max(rep.doubling_c, 1.0 + 1e-15));
  rep.rhs = std::pow(8.0 * dm * std::pow(rep.delta, 1.0 / (5.0 * logc)) +
                         std::pow(rep.delta, 1.0 / 5.0),
                     1.0 / p) *
            mx;
  rep.holds = rep.delta <= rep.sturm_upper && rep.sturm_upper < rep.rhs;
  return rep;
}

CoveringRadiusResult covering_radius(const FiniteMetricSpace& x, int k, BruteBudget budget) {
  const OptPResult r = opt_inf(x, k, budget);
  return {r.value, r.exact, r.centers};
}

std::vector<AdmissibilityRow> admissibility_report(const std::vector<int>& ns,
                                                   const std::vector<int>& ks, double p) {
  std::vector<AdmissibilityRow> rows;
  for (int n : ns)
    for (int k : ks) {
      const FiniteMetricSpace y = gen_ynk(n, k);
      const double cov = covering_radius(y, k).value;

      AdmissibilityRow ultra;
      ultra.n = n;
      ultra.k = k;
      ultra.functional = "phi_ultrametric";
      ultra.shatter = shatter_ultrametric_cut(y, k).cost;
      ultra.cov_k = cov;
      rows.push_back(ultra);

      if (k == 1) {
        // Part_1 = {whole space}: the complement-of-diameter objective
        // vanishes identically at k = 1.
        AdmissibilityRow bar;
        bar.n = n;
        bar.k = 1;
        bar.functional = "phi_bar";
        bar.shatter = 0.0;
        bar.cov_k = cov;
        rows.push_back(bar);
      }

      AdmissibilityRow mp;
      mp.n = n;
      mp.k = k;
      mp.functional = "phi_p";
      mp.shatter = shatter_contiguous(metric_transform_mp(y, p), k, /*circular=*/false).cost;
      mp.cov_k = cov;
      rows.push_back(mp);
    }
  return rows;
}

}  // namespace mms
