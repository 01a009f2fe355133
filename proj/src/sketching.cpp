#include "mms/sketching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mms {

namespace {

// Merge groups at pairwise distance zero and return the merged matrix rows.
// dist is a pseudometric on groups, so representatives are well defined.
struct Merged {
  std::vector<int> group_to_model;
  std::vector<int> representatives;
  bool degenerate = false;
};

Merged merge_zero_groups(const std::vector<std::vector<double>>& dist) {
  const int g = static_cast<int>(dist.size());
  Merged m;
  m.group_to_model.assign(static_cast<std::size_t>(g), -1);
  for (int i = 0; i < g; ++i) {
    if (m.group_to_model[static_cast<std::size_t>(i)] >= 0) continue;
    const int model = static_cast<int>(m.representatives.size());
    m.group_to_model[static_cast<std::size_t>(i)] = model;
    m.representatives.push_back(i);
    for (int j = i + 1; j < g; ++j)
      if (m.group_to_model[static_cast<std::size_t>(j)] < 0 &&
          dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0.0) {
        m.group_to_model[static_cast<std::size_t>(j)] = model;
        m.degenerate = true;
      }
  }
  return m;
}

}  // namespace

HausdorffMapResult hausdorff_map(const FiniteMetricSpace& x, const Partition& part) {
  const int k = part.k();
  std::vector<std::vector<double>> h(static_cast<std::size_t>(k),
                                     std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Subset a{part.block(i)}, b{part.block(j)};
      h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          h[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
              hausdorff_distance(x, a, b);
    }
  const Merged m = merge_zero_groups(h);
  const int km = static_cast<int>(m.representatives.size());
  std::vector<std::vector<double>> hm(static_cast<std::size_t>(km),
                                      std::vector<double>(static_cast<std::size_t>(km)));
  for (int i = 0; i < km; ++i)
    for (int j = 0; j < km; ++j)
      hm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          h[static_cast<std::size_t>(m.representatives[static_cast<std::size_t>(i)])]
           [static_cast<std::size_t>(m.representatives[static_cast<std::size_t>(j)])];
  return {FiniteMetricSpace::validate(hm), m.group_to_model, m.degenerate};
}

Partition voronoi_map(const FiniteMetricSpace& x, const FiniteMetricSpace& model,
                      const MetricCoupling& d) {
  if (d.nx() != x.size() || d.ny() != model.size())
    fail("BadCoupling", "coupling shape does not match the spaces");
  const int n = x.size(), k = model.size();
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double bestd = d.cross(i, 0);
    for (int j = 1; j < k; ++j)
      if (d.cross(i, j) < bestd) {
        bestd = d.cross(i, j);
        best = j;
      }
    blocks[static_cast<std::size_t>(best)].push_back(i);
  }
  for (int j = 0; j < k; ++j)
    if (blocks[static_cast<std::size_t>(j)].empty())
      fail("EmptyBlock", "model point " + std::to_string(j) + " captures no point of X");
  return Partition::checked(std::move(blocks), n);
}

double MetricSketchResult::reevaluate(const FiniteMetricSpace& x) const {
  if (cost_kind == SketchCostKind::half_distortion)
    return distortion(relation, x, model) / 2.0;
  double worst = 0.0;
  for (auto [i, j] : relation.pairs)
    worst = std::max(worst, x.dist(i, model_points[static_cast<std::size_t>(j)]));
  return worst;
}

namespace {

Correspondence graph_correspondence(const Partition& part, const std::vector<int>& block_to_model) {
  Correspondence r;
  for (int b = 0; b < part.k(); ++b)
    for (int i : part.block(b))
      r.pairs.emplace_back(i, block_to_model[static_cast<std::size_t>(b)]);
  std::sort(r.pairs.begin(), r.pairs.end());
  return r;
}

}  // namespace

MetricSketchResult sketch_from_optimal_partition(const FiniteMetricSpace& x,
                                                 const ClusteringResult& opt) {
  HausdorffMapResult h = hausdorff_map(x, opt.partition);
  Correspondence rel = graph_correspondence(opt.partition, h.block_to_model);
  MetricSketchResult res;
  res.relation = std::move(rel);
  res.upper = distortion(res.relation, x, h.model) / 2.0;
  res.lower = opt.cost / 2.0;
  res.model = std::move(h.model);
  res.cost_kind = SketchCostKind::half_distortion;
  res.method = "hausdorff-map(optimal-partition)";
  return res;
}

MetricSketchResult sketch_k_exact(const FiniteMetricSpace& x, int k, BruteBudget budget,
                                  Exec exec) {
  const ClusteringResult opt = shatter_bruteforce(x, k, budget, exec);
  return sketch_from_optimal_partition(x, opt);
}

MetricSketchResult sketch_k_2approx(const FiniteMetricSpace& x, int k) {
  const GonzalezResult g = gonzalez(x, k);
  HausdorffMapResult h = hausdorff_map(x, g.partition);
  Correspondence rel = graph_correspondence(g.partition, h.block_to_model);
  MetricSketchResult res;
  res.relation = std::move(rel);
  res.upper = distortion(res.relation, x, h.model) / 2.0;
  res.lower = g.cost / 4.0;  // gonzalez cost <= 2 * optimal clustering cost
  res.model = std::move(h.model);
  res.cost_kind = SketchCostKind::half_distortion;
  res.method = "hausdorff-map(gonzalez)";
  return res;
}

MetricSketchResult fps_sketch_4approx(const FiniteMetricSpace& x, int k, int seed_index) {
  const std::vector<int> centers = fps(x, k, seed_index);
  MetricSketchResult res;
  res.model = x.restrict_to(centers);
  res.model_points = centers;
  for (int i = 0; i < x.size(); ++i) {
    int best = 0;
    for (int c = 1; c < static_cast<int>(centers.size()); ++c)
      if (x.dist(i, centers[static_cast<std::size_t>(c)]) <
          x.dist(i, centers[static_cast<std::size_t>(best)]))
        best = c;
    res.relation.pairs.emplace_back(i, best);
  }
  std::sort(res.relation.pairs.begin(), res.relation.pairs.end());
  res.cost_kind = SketchCostKind::sup_distance;
  res.upper = res.reevaluate(x);  // = d_H(X, F_k)
  res.lower = res.upper / 4.0;
  res.method = "fps-subset";
  return res;
}

WassersteinMapResult wasserstein_map(const MetricMeasureSpace& x, const Partition& part,
                                     double p) {
  const int k = part.k();
  const int n = x.size();
  std::vector<std::vector<double>> block_measure(static_cast<std::size_t>(k),
                                                 std::vector<double>(static_cast<std::size_t>(n), 0.0));
  std::vector<double> block_mass(static_cast<std::size_t>(k), 0.0);
  for (int b = 0; b < k; ++b) {
    for (int i : part.block(b)) block_mass[static_cast<std::size_t>(b)] += x.mass(i);
    for (int i : part.block(b))
      block_measure[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)] =
          x.mass(i) / block_mass[static_cast<std::size_t>(b)];
  }
  std::vector<std::vector<double>> w(static_cast<std::size_t>(k),
                                     std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      const double v =
          is_inf(p) ? wasserstein_inf(x.space(), block_measure[static_cast<std::size_t>(i)],
                                      block_measure[static_cast<std::size_t>(j)])
                          .value
                    : wasserstein_p(x.space(), block_measure[static_cast<std::size_t>(i)],
                                    block_measure[static_cast<std::size_t>(j)], p)
                          .value;
      w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  const Merged m = merge_zero_groups(w);
  const int km = static_cast<int>(m.representatives.size());
  std::vector<std::vector<double>> wm(static_cast<std::size_t>(km),
                                      std::vector<double>(static_cast<std::size_t>(km)));
  std::vector<double> mass(static_cast<std::size_t>(km), 0.0);
  for (int b = 0; b < k; ++b)
    mass[static_cast<std::size_t>(m.group_to_model[static_cast<std::size_t>(b)])] +=
        block_mass[static_cast<std::size_t>(b)];
  for (int i = 0; i < km; ++i)
    for (int j = 0; j < km; ++j)
      wm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          w[static_cast<std::size_t>(m.representatives[static_cast<std::size_t>(i)])]
           [static_cast<std::size_t>(m.representatives[static_cast<std::size_t>(j)])];
  return {MetricMeasureSpace::validate(FiniteMetricSpace::validate(wm), std::move(mass)),
          m.group_to_model, m.degenerate};
}

SturmUpperResult sturm_upper_from_partition(const MetricMeasureSpace& x, const Partition& part,
                                            double p) {
  WassersteinMapResult model = wasserstein_map(x, part, p);
  if (model.degenerate)
    fail("DegenerateOutput", "blocks at Wasserstein distance zero cannot seed the coupling");
  const int n = x.size();
  const int k = part.k();

  // d(x, i) = W_p(delta_x, mu|B_i / mu(B_i)); closed form for a point mass.
  std::vector<double> block_mass(static_cast<std::size_t>(k), 0.0);
  for (int b = 0; b < k; ++b)
    for (int i : part.block(b)) block_mass[static_cast<std::size_t>(b)] += x.mass(i);
  std::vector<std::vector<double>> cross(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(k)));
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < k; ++b) {
      double v;
      if (is_inf(p)) {
        v = 0.0;
        for (int y : part.block(b)) v = std::max(v, x.dist(i, y));
      } else {
        double acc = 0.0;
        for (int y : part.block(b))
          acc += std::pow(x.dist(i, y), p) * x.mass(y) / block_mass[static_cast<std::size_t>(b)];
        v = (p == 1.0) ? acc : std::pow(acc, 1.0 / p);
      }
      cross[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] = v;
    }

  SturmUpperResult res{
      0.0,
      SturmPair{MetricCoupling::checked(x.space(), model.model.space(), std::move(cross)),
                MeasureCoupling::from_partition(x, part, model.model.masses())}};
  res.value = sturm_cost(res.witness, p);
  return res;
}

SturmSketchResult sketch_sturm_fp_approx(const MetricMeasureSpace& x, int k, double p, int t,
                                         double eps, BruteBudget budget) {
  const LocalSearchResult ls = local_search_tswap(x, k, p, t, eps);
  const Partition part = voronoi_partition(x.space(), ls.centers);
  SturmUpperResult su = sturm_upper_from_partition(x, part, p);
  WassersteinMapResult model = wasserstein_map(x, part, p);

  SturmSketchResult res{std::move(model.model), std::move(su.witness), su.value, 0.0, ""};
  // Lower bound: half the (p,p) clustering optimum, brute force when the
  // enumeration fits the budget, otherwise certified through the local
  // search factor.
  bool brute_ok = true;
  try {
    const ClusteringResult opt = shatter_bruteforce(x, k, Objective::phi(p, p), budget);
    res.lower = opt.cost / 2.0;
    res.method = "tswap-pipeline;lower=half-shatter(brute)";
  } catch (const Error& e) {
    if (e.code() != "BudgetExceeded") throw;
    brute_ok = false;
  }
  if (!brute_ok) {
    double f;
    if (p == 1.0)
      f = 3.0 + 2.0 / t + eps;
    else if (p == 2.0)
      f = 5.0 + 4.0 / t + eps;
    else
      f = (3.0 + 2.0 / t) * p + eps;
    res.lower = ls.value / f / 2.0;
    res.method = "tswap-pipeline;lower=local-search/f(p)";
  }
  return res;
}

double weak_sketch_upper(const MetricMeasureSpace& x, int k, double p, BruteBudget budget,
                         Exec exec) {
  const int n = x.size();
  if (k >= n) return 0.0;
  std::vector<Partition> candidates;
  candidates.push_back(gonzalez(x.space(), k).partition);
  try {
    candidates.push_back(shatter_bruteforce(x, k, Objective::phi(p, kInf), budget, exec).partition);
  } catch (const Error& e) {
    if (e.code() != "BudgetExceeded") throw;
  }
  double best = kInf;
  for (const Partition& part : candidates) {
    const WassersteinMapResult model = wasserstein_map(x, part, p);
    if (model.degenerate) continue;
    best = std::min(best, gw_upper_bound_partition(x, model.model, part, p));
  }
  return best;
}

}  // namespace mms
