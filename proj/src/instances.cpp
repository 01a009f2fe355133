#include "mms/instances.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace mms {

namespace {

constexpr double kPi = 3.14159265358979323846;

FiniteMetricSpace from_points_1d(const std::vector<double>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          std::abs(pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]);
  return FiniteMetricSpace::validate(d);
}

FiniteMetricSpace from_points_2d(const std::vector<std::pair<double, double>>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double dx = pts[static_cast<std::size_t>(i)].first - pts[static_cast<std::size_t>(j)].first;
      const double dy = pts[static_cast<std::size_t>(i)].second - pts[static_cast<std::size_t>(j)].second;
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::sqrt(dx * dx + dy * dy);
    }
  return FiniteMetricSpace::validate(d);
}

}  // namespace

MetricMeasureSpace gen_delta(int m) {
  if (m < 1) fail("BadArgument", "m >= 1 required");
  std::vector<std::vector<double>> d(static_cast<std::size_t>(m),
                                     std::vector<double>(static_cast<std::size_t>(m), 1.0));
  for (int i = 0; i < m; ++i) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
  return MetricMeasureSpace::uniform(FiniteMetricSpace::validate(d));
}

MetricMeasureSpace gen_circle(int n) {
  if (n < 3) fail("BadArgument", "n >= 3 required");
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  const double step = 2.0 * kPi / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int gap = std::min(std::abs(i - j), n - std::abs(i - j));
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = step * gap;
    }
  return MetricMeasureSpace::uniform(FiniteMetricSpace::validate(d));
}

MetricMeasureSpace gen_grid(int n) {
  if (n < 2) fail("BadArgument", "n >= 2 required");
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
  return MetricMeasureSpace::uniform(from_points_1d(pts));
}

FiniteMetricSpace gen_sphere_sample(int dim, int n, std::uint64_t seed) {
  if (dim < 2) fail("BadArgument", "dim >= 2 required");
  if (n < 2) fail("BadArgument", "n >= 2 required");
  std::mt19937_64 rng(seed);
  // Explicit Box-Muller on 53-bit uniforms; std::normal_distribution is
  // implementation-defined and would break cross-platform reproducibility.
  auto uniform01 = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  auto normal = [&]() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(dim)));
  for (auto& v : pts) {
    double norm2 = 0.0;
    for (double& c : v) {
      c = normal();
      norm2 += c * c;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : v) c *= inv;
  }
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (int c = 0; c < dim; ++c)
        dot += pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] *
               pts[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      dot = std::clamp(dot, -1.0, 1.0);
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = std::acos(dot);
    }
  return FiniteMetricSpace::validate(d);
}

FiniteMetricSpace gen_ynk(int n, int k) {
  if (n < 1 || k < 1) fail("BadArgument", "n, k >= 1 required");
  std::vector<double> pts;
  for (int b = 0; b < k; ++b)
    for (int i = 0; i <= n; ++i)
      pts.push_back(2.0 * b + static_cast<double>(i) / n);
  return from_points_1d(pts);
}

CounterexamplePair gen_tree_counterexample(int m) {
  if (m < 1) fail("BadArgument", "m >= 1 required");
  // Branch points of the glued trees: per copy, three branches carrying an
  // inner point at distance 1 from the root and an outer point at distance 2.
  const int nx = 6 * m;
  auto root_dist = [](int local) { return local % 2 == 0 ? 1.0 : 2.0; };
  auto branch_of = [](int local) { return local / 2; };
  std::vector<std::vector<double>> dx(static_cast<std::size_t>(nx),
                                      std::vector<double>(static_cast<std::size_t>(nx), 0.0));
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < nx; ++b) {
      if (a == b) continue;
      const int ca = a / 6, cb = b / 6;
      const int la = a % 6, lb = b % 6;
      double d;
      if (ca == cb && branch_of(la) == branch_of(lb))
        d = std::abs(root_dist(la) - root_dist(lb));
      else
        d = root_dist(la) + root_dist(lb);
      dx[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = d;
    }
  const int ny = 3 * m;
  std::vector<std::vector<double>> dy(static_cast<std::size_t>(ny),
                                      std::vector<double>(static_cast<std::size_t>(ny), 3.0));
  for (int a = 0; a < ny; ++a) dy[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = 0.0;
  return {FiniteMetricSpace::validate(dx), FiniteMetricSpace::validate(dy)};
}

CounterexamplePair gen_euclidean_counterexample(int m) {
  if (m < 1) fail("BadArgument", "m >= 1 required");
  const double s3 = std::sqrt(3.0);
  const std::vector<std::pair<double, double>> base_x = {
      {0.0, 1.0}, {0.0, 2.0}, {-s3 / 2.0, -0.5}, {-s3, -1.0}, {s3 / 2.0, -0.5}, {s3, -1.0}};
  const std::vector<std::pair<double, double>> base_y = {
      {0.0, 1.5}, {-3.0 * s3 / 4.0, -0.75}, {3.0 * s3 / 4.0, -0.75}};
  // Copies are translated well past the base diameter so cross-copy
  // distances never interfere with the within-copy table.
  const double shift = 100.0;
  std::vector<std::pair<double, double>> px, py;
  for (int c = 0; c < m; ++c) {
    for (auto [a, b] : base_x) px.emplace_back(a + shift * c, b);
    for (auto [a, b] : base_y) py.emplace_back(a + shift * c, b);
  }
  return {from_points_2d(px), from_points_2d(py)};
}

void SetCoverInstance::check() const {
  if (universe < 1) fail("BadInstance", "universe must be nonempty");
  if (subsets.empty()) fail("BadInstance", "need at least one subset");
  std::vector<char> covered(static_cast<std::size_t>(universe), 0);
  for (const auto& s : subsets) {
    if (s.empty()) fail("BadInstance", "all subsets must be nonempty");
    for (int e : s) {
      if (e < 0 || e >= universe) fail("BadInstance", "element out of range");
      covered[static_cast<std::size_t>(e)] = 1;
    }
  }
  for (int e = 0; e < universe; ++e)
    if (!covered[static_cast<std::size_t>(e)]) fail("BadInstance", "union does not cover the universe");
}

FiniteMetricSpace setcover_to_graph(const SetCoverInstance& inst) {
  inst.check();
  const int n = inst.universe;
  const int m = static_cast<int>(inst.subsets.size());
  const int v = n + m + 2;  // elements, subsets, r, r'
  const int r = n + m, rp = n + m + 1;
  std::vector<std::vector<double>> d(static_cast<std::size_t>(v),
                                     std::vector<double>(static_cast<std::size_t>(v), kInf));
  auto edge = [&d](int a, int b) {
    d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
        d[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1.0;
  };
  for (int i = 0; i < v; ++i) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
  edge(r, rp);
  for (int j = 0; j < m; ++j) edge(r, n + j);
  for (int j = 0; j < m; ++j)
    for (int e : inst.subsets[static_cast<std::size_t>(j)]) edge(e, n + j);
  for (int mid = 0; mid < v; ++mid)
    for (int a = 0; a < v; ++a)
      for (int b = 0; b < v; ++b) {
        const double via = d[static_cast<std::size_t>(a)][static_cast<std::size_t>(mid)] +
                           d[static_cast<std::size_t>(mid)][static_cast<std::size_t>(b)];
        if (via < d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
          d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = via;
      }
  std::vector<std::string> labels;
  for (int e = 0; e < n; ++e) labels.push_back("u" + std::to_string(e));
  for (int j = 0; j < m; ++j) labels.push_back("S" + std::to_string(j));
  labels.push_back("r");
  labels.push_back("r'");
  return FiniteMetricSpace::validate(d, std::move(labels));
}

bool setcover_brute_has_cover(const SetCoverInstance& inst) {
  inst.check();
  const int m = static_cast<int>(inst.subsets.size());
  if (m > 20) fail("BudgetExceeded", "cover brute force capped at 20 subsets");
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<int>(__builtin_popcount(mask)) > inst.k) continue;
    std::vector<char> covered(static_cast<std::size_t>(inst.universe), 0);
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j))
        for (int e : inst.subsets[static_cast<std::size_t>(j)])
          covered[static_cast<std::size_t>(e)] = 1;
    if (std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; })) return true;
  }
  return false;
}

namespace {

// Decision form of the gadget clustering: at most q blocks, every block
// connected along unit edges, metric diameter at most bound. Connectivity
// is part of the contract: dropping it admits spurious partitions (three
// two-element subsets over a three-element universe already split into two
// diameter-2 blocks with no size-1 cover).
bool connected_partition_decision(const FiniteMetricSpace& g, int q, double bound) {
  const int n = g.size();
  std::vector<int> assign(static_cast<std::size_t>(n), -1);
  auto adjacent = [&g](int a, int b) { return g.dist(a, b) == 1.0; };

  auto blocks_connected = [&](int used) {
    for (int b = 0; b < used; ++b) {
      std::vector<int> members;
      for (int i = 0; i < n; ++i)
        if (assign[static_cast<std::size_t>(i)] == b) members.push_back(i);
      std::vector<char> seen(members.size(), 0);
      std::vector<std::size_t> stack{0};
      seen[0] = 1;
      std::size_t reached = 1;
      while (!stack.empty()) {
        const std::size_t a = stack.back();
        stack.pop_back();
        for (std::size_t c = 0; c < members.size(); ++c)
          if (!seen[c] && adjacent(members[a], members[c])) {
            seen[c] = 1;
            ++reached;
            stack.push_back(c);
          }
      }
      if (reached != members.size()) return false;
    }
    return true;
  };

  std::function<bool(int, int)> dfs = [&](int depth, int used) -> bool {
    if (depth == n) return blocks_connected(used);
    const int lim = std::min(used, q - 1);
    for (int b = 0; b <= lim; ++b) {
      bool ok = true;
      for (int i = 0; i < depth && ok; ++i)
        if (assign[static_cast<std::size_t>(i)] == b && g.dist(depth, i) > bound) ok = false;
      if (!ok) continue;
      assign[static_cast<std::size_t>(depth)] = b;
      if (dfs(depth + 1, std::max(used, b + 1))) return true;
    }
    assign[static_cast<std::size_t>(depth)] = -1;
    return false;
  };
  return dfs(0, 0);
}

}  // namespace

bool reduction_equivalence_check(const SetCoverInstance& inst, BruteBudget budget) {
  (void)budget;
  const bool cover_side = setcover_brute_has_cover(inst);
  const FiniteMetricSpace g = setcover_to_graph(inst);
  if (g.size() > 16) fail("BudgetExceeded", "equivalence check capped at 16 gadget vertices");
  const bool cluster_side = connected_partition_decision(g, inst.k + 1, 2.0);
  return cover_side == cluster_side;
}

FiniteMetricSpace random_metric_space(int n, std::mt19937_64& rng) {
  if (n < 1) fail("BadArgument", "n >= 1 required");
  std::uniform_real_distribution<double> u(1.0, 2.0);
  std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = u(rng);
  return FiniteMetricSpace::validate(d);
}

MetricMeasureSpace random_mm_space(int n, std::mt19937_64& rng) {
  FiniteMetricSpace space = random_metric_space(n, rng);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> mass(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& m : mass) {
    m = u(rng);
    sum += m;
  }
  for (double& m : mass) m /= sum;
  return MetricMeasureSpace::validate(std::move(space), std::move(mass));
}

SetCoverInstance random_setcover_instance(int max_universe, int max_subsets,
                                          std::mt19937_64& rng) {
  SetCoverInstance inst;
  inst.universe = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_universe));
  const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_subsets));
  inst.subsets.resize(static_cast<std::size_t>(m));
  for (auto& s : inst.subsets) {
    for (int e = 0; e < inst.universe; ++e)
      if (rng() % 2 == 0) s.push_back(e);
    if (s.empty()) s.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(inst.universe)));
  }
  // Make sure the union covers: add missing elements to the last subset.
  std::vector<char> covered(static_cast<std::size_t>(inst.universe), 0);
  for (const auto& s : inst.subsets)
    for (int e : s) covered[static_cast<std::size_t>(e)] = 1;
  for (int e = 0; e < inst.universe; ++e)
    if (!covered[static_cast<std::size_t>(e)]) inst.subsets.back().push_back(e);
  for (auto& s : inst.subsets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  inst.k = 1 + static_cast<int>(rng() % 3);
  return inst;
}

}  // namespace mms
