#include "mms/metric_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mms {

namespace {

std::string idx3(int i, int j, int k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%d,%d,%d)", i, j, k);
  return buf;
}

// Returns (i,j,k) of the worst triangle violation beyond tol, or i=-1.
// The all-triples scan is the hot loop for large generated instances.
struct TriangleHit {
  int i = -1, j = -1, k = -1;
  double excess = 0.0;
};

TriangleHit triangle_scan(int n, const std::vector<double>& d, double tol, Exec exec) {
  TriangleHit best;
  if (exec == Exec::parallel) {
    std::vector<TriangleHit> local(static_cast<std::size_t>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (int i = 0; i < n; ++i) {
      TriangleHit h;
      const double* di = d.data() + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) {
        const double* dj = d.data() + static_cast<std::size_t>(j) * n;
        const double dij = di[j];
        for (int k = 0; k < n; ++k) {
          const double excess = di[k] - (dij + dj[k]);
          if (excess > tol && excess > h.excess) h = {i, j, k, excess};
        }
      }
      local[static_cast<std::size_t>(i)] = h;
    }
    for (const auto& h : local)
      if (h.i >= 0 && (best.i < 0 || h.excess > best.excess)) best = h;
    return best;
  }
  for (int i = 0; i < n; ++i) {
    const double* di = d.data() + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* dj = d.data() + static_cast<std::size_t>(j) * n;
      const double dij = di[j];
      for (int k = 0; k < n; ++k) {
        const double excess = di[k] - (dij + dj[k]);
        if (excess > tol && excess > best.excess) best = {i, j, k, excess};
      }
    }
  }
  return best;
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(int n, std::vector<double> d,
                                     std::vector<std::string> labels)
    : n_(n), d_(std::move(d)), labels_(std::move(labels)) {
  for (double v : d_) max_dist_ = std::max(max_dist_, v);
}

FiniteMetricSpace FiniteMetricSpace::validate(const std::vector<std::vector<double>>& matrix,
                                              std::vector<std::string> labels, Exec exec) {
  const int n = static_cast<int>(matrix.size());
  if (n < 1) fail("EmptyMatrix", "need n >= 1");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != n) fail("NotSquare", "matrix must be n x n");

  std::vector<double> d(static_cast<std::size_t>(n) * n);
  double maxv = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!(v == v)) fail("NegativeDistance", "NaN entry");
      d[static_cast<std::size_t>(i) * n + j] = v;
      maxv = std::max(maxv, v);
    }

  for (int i = 0; i < n; ++i) {
    if (d[static_cast<std::size_t>(i) * n + i] != 0.0)
      fail("NonzeroDiagonal", "d[" + std::to_string(i) + "][" + std::to_string(i) + "] != 0");
    for (int j = 0; j < n; ++j) {
      const double v = d[static_cast<std::size_t>(i) * n + j];
      if (v < 0.0) fail("NegativeDistance", "d[" + std::to_string(i) + "][" + std::to_string(j) + "] < 0");
      if (v != d[static_cast<std::size_t>(j) * n + i])
        fail("AsymmetricMatrix", "d[" + std::to_string(i) + "][" + std::to_string(j) + "] != transpose");
      if (i != j && v == 0.0)
        fail("ZeroOffDiagonal", "d[" + std::to_string(i) + "][" + std::to_string(j) + "] = 0 for distinct points");
    }
  }

  const TriangleHit hit = triangle_scan(n, d, kTriangleTol * std::max(maxv, 1e-300), exec);
  if (hit.i >= 0)
    fail("TriangleViolation", idx3(hit.i, hit.j, hit.k) + " excess " + std::to_string(hit.excess));

  if (labels.empty()) {
    labels.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = std::to_string(i);
  } else if (static_cast<int>(labels.size()) != n) {
    fail("BadLabels", "label count != n");
  }
  return FiniteMetricSpace(n, std::move(d), std::move(labels));
}

FiniteMetricSpace FiniteMetricSpace::restrict_to(const std::vector<int>& indices) const {
  const int m = static_cast<int>(indices.size());
  if (m < 1) fail("EmptySubset", "restriction needs at least one index");
  std::vector<double> d(static_cast<std::size_t>(m) * m);
  std::vector<std::string> lab(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    lab[static_cast<std::size_t>(a)] = labels_[static_cast<std::size_t>(indices[a])];
    for (int b = 0; b < m; ++b)
      d[static_cast<std::size_t>(a) * m + b] = dist(indices[a], indices[b]);
  }
  return FiniteMetricSpace(m, std::move(d), std::move(lab));
}

MetricMeasureSpace MetricMeasureSpace::validate(FiniteMetricSpace space, std::vector<double> mass) {
  const int n = space.size();
  if (static_cast<int>(mass.size()) != n) fail("BadMeasure", "mass vector size != n");
  double sum = 0.0;
  for (double m : mass) {
    if (!(m > 0.0)) fail("MeasureNotFullSupport", "every point needs positive mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > kMassTol)
    fail("MeasureNotProbability", "masses sum to " + std::to_string(sum));
  return MetricMeasureSpace(std::move(space), std::move(mass));
}

MetricMeasureSpace MetricMeasureSpace::uniform(FiniteMetricSpace space) {
  const int n = space.size();
  std::vector<double> mass(static_cast<std::size_t>(n), 1.0 / n);
  // Force the sum to land within tolerance even for awkward n.
  return MetricMeasureSpace(std::move(space), std::move(mass));
}

Subset Subset::checked(std::vector<int> idx, int n) {
  if (idx.empty()) fail("EmptySubset", "subset must be nonempty");
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.front() < 0 || idx.back() >= n) fail("IndexOutOfRange", "subset index outside [0,n)");
  return Subset{std::move(idx)};
}

Subset Subset::full(int n) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  return Subset{std::move(idx)};
}

Partition Partition::checked(std::vector<std::vector<int>> blocks, int n) {
  if (blocks.empty()) fail("EmptyPartition", "need at least one block");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int count = 0;
  for (auto& b : blocks) {
    if (b.empty()) fail("EmptyBlock", "partition blocks must be nonempty");
    std::sort(b.begin(), b.end());
    for (int i : b) {
      if (i < 0 || i >= n) fail("IndexOutOfRange", "block index outside [0,n)");
      if (seen[static_cast<std::size_t>(i)]) fail("OverlappingBlocks", "point " + std::to_string(i) + " in two blocks");
      seen[static_cast<std::size_t>(i)] = 1;
      ++count;
    }
  }
  if (count != n) fail("IncompletePartition", "blocks do not cover all points");
  return Partition(std::move(blocks), n);
}

Partition Partition::from_assignment(const std::vector<int>& assign, int k) {
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
  for (int i = 0; i < static_cast<int>(assign.size()); ++i) {
    const int b = assign[static_cast<std::size_t>(i)];
    if (b < 0 || b >= k) fail("IndexOutOfRange", "assignment value outside [0,k)");
    blocks[static_cast<std::size_t>(b)].push_back(i);
  }
  return checked(std::move(blocks), static_cast<int>(assign.size()));
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) blocks[static_cast<std::size_t>(i)] = {i};
  return Partition(std::move(blocks), n);
}

std::vector<int> Partition::assignment() const {
  std::vector<int> a(static_cast<std::size_t>(n_), -1);
  for (int b = 0; b < k(); ++b)
    for (int i : blocks_[static_cast<std::size_t>(b)]) a[static_cast<std::size_t>(i)] = b;
  return a;
}

double diam(const FiniteMetricSpace& x, const Subset& b) {
  double best = 0.0;
  for (std::size_t a = 0; a < b.indices.size(); ++a)
    for (std::size_t c = a + 1; c < b.indices.size(); ++c)
      best = std::max(best, x.dist(b.indices[a], b.indices[c]));
  return best;
}

double diam_p(const MetricMeasureSpace& x, const Subset& b, double p, Exec exec) {
  if (is_inf(p)) return diam(x.space(), b);
  const auto& idx = b.indices;
  const long long bn = static_cast<long long>(idx.size());
  double mu = 0.0;
  for (int i : idx) mu += x.mass(i);
  std::vector<double> row(static_cast<std::size_t>(bn), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
#endif
  for (long long a = 0; a < bn; ++a) {
    const int i = idx[static_cast<std::size_t>(a)];
    double s = 0.0;
    if (p == 1.0) {
      for (int j : idx) s += x.dist(i, j) * x.mass(j);
    } else if (p == 2.0) {
      for (int j : idx) {
        const double d = x.dist(i, j);
        s += d * d * x.mass(j);
      }
    } else {
      for (int j : idx) s += std::pow(x.dist(i, j), p) * x.mass(j);
    }
    row[static_cast<std::size_t>(a)] = s * x.mass(i);
  }
  double acc = 0.0;
  for (double s : row) acc += s;
  acc /= mu * mu;
  return p == 1.0 ? acc : (p == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / p));
}

RadResult rad_p(const MetricMeasureSpace& x, const Subset& b, double p) {
  RadResult best{kInf, -1};
  double mu = 0.0;
  for (int i : b.indices) mu += x.mass(i);
  for (int a : b.indices) {
    double v;
    if (is_inf(p)) {
      v = 0.0;
      for (int i : b.indices) v = std::max(v, x.dist(a, i));
    } else {
      double acc = 0.0;
      for (int i : b.indices) acc += std::pow(x.dist(a, i), p) * x.mass(i);
      v = std::pow(acc / mu, 1.0 / p);
    }
    if (v < best.value) best = {v, a};
  }
  return best;
}

double hausdorff_distance(const FiniteMetricSpace& x, const Subset& a, const Subset& b) {
  auto directed = [&x](const Subset& from, const Subset& to) {
    double worst = 0.0;
    for (int i : from.indices) {
      double nearest = kInf;
      for (int j : to.indices) nearest = std::min(nearest, x.dist(i, j));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

Partition voronoi_partition(const FiniteMetricSpace& x, const std::vector<int>& centers) {
  if (centers.empty()) fail("EmptyCenters", "need at least one center");
  std::set<int> uniq(centers.begin(), centers.end());
  if (uniq.size() != centers.size()) fail("DuplicateCenters", "center list has repeats");
  const int n = x.size();
  const int k = static_cast<int>(centers.size());
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double bestd = x.dist(i, centers[0]);
    for (int c = 1; c < k; ++c) {
      const double d = x.dist(i, centers[static_cast<std::size_t>(c)]);
      if (d < bestd) {  // strict: ties stay with the earliest center
        bestd = d;
        best = c;
      }
    }
    blocks[static_cast<std::size_t>(best)].push_back(i);
  }
  return Partition::checked(std::move(blocks), n);
}

}  // namespace mms
