#include "mms/correspondence.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mms {

Correspondence Correspondence::identity(int n) {
  Correspondence r;
  r.pairs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r.pairs.emplace_back(i, i);
  return r;
}

Correspondence Correspondence::from_maps(const std::vector<int>& phi,
                                         const std::vector<int>& psi) {
  Correspondence r;
  for (int i = 0; i < static_cast<int>(phi.size()); ++i)
    r.pairs.emplace_back(i, phi[static_cast<std::size_t>(i)]);
  for (int j = 0; j < static_cast<int>(psi.size()); ++j)
    r.pairs.emplace_back(psi[static_cast<std::size_t>(j)], j);
  std::sort(r.pairs.begin(), r.pairs.end());
  r.pairs.erase(std::unique(r.pairs.begin(), r.pairs.end()), r.pairs.end());
  return r;
}

void validate_correspondence(const Correspondence& r, int nx, int ny) {
  std::vector<char> px(static_cast<std::size_t>(nx), 0), py(static_cast<std::size_t>(ny), 0);
  for (auto [i, j] : r.pairs) {
    if (i < 0 || i >= nx || j < 0 || j >= ny)
      fail("InvalidCorrespondence", "pair index out of range");
    px[static_cast<std::size_t>(i)] = 1;
    py[static_cast<std::size_t>(j)] = 1;
  }
  for (int i = 0; i < nx; ++i)
    if (!px[static_cast<std::size_t>(i)])
      fail("InvalidCorrespondence", "projection misses X point " + std::to_string(i));
  for (int j = 0; j < ny; ++j)
    if (!py[static_cast<std::size_t>(j)])
      fail("InvalidCorrespondence", "projection misses Y point " + std::to_string(j));
}

double distortion(const Correspondence& r, const FiniteMetricSpace& x,
                  const FiniteMetricSpace& y) {
  validate_correspondence(r, x.size(), y.size());
  double worst = 0.0;
  for (std::size_t a = 0; a < r.pairs.size(); ++a)
    for (std::size_t b = a; b < r.pairs.size(); ++b) {
      const auto [xi, yi] = r.pairs[a];
      const auto [xj, yj] = r.pairs[b];
      worst = std::max(worst, std::abs(x.dist(xi, xj) - y.dist(yi, yj)));
    }
  return worst;
}

MetricCoupling MetricCoupling::checked(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                       std::vector<std::vector<double>> cross) {
  const int n = x.size(), m = y.size();
  if (static_cast<int>(cross.size()) != n) fail("BadCoupling", "cross must be n x m");
  std::vector<double> c(static_cast<std::size_t>(n) * m);
  double maxv = std::max(x.max_dist(), y.max_dist());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(cross[static_cast<std::size_t>(i)].size()) != m)
      fail("BadCoupling", "cross must be n x m");
    for (int j = 0; j < m; ++j) {
      const double v = cross[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!(v >= 0.0)) fail("BadCoupling", "negative or NaN cross distance");
      c[static_cast<std::size_t>(i) * m + j] = v;
      maxv = std::max(maxv, v);
    }
  }
  const double tol = kTriangleTol * std::max(maxv, 1e-300);
  auto cr = [&](int i, int j) { return c[static_cast<std::size_t>(i) * m + j]; };
  // Glued triangle inequalities; same-side triples already hold.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      for (int i2 = 0; i2 < n; ++i2)
        if (cr(i, j) > x.dist(i, i2) + cr(i2, j) + tol)
          fail("BadCoupling", "triangle violation through X");
      for (int j2 = 0; j2 < m; ++j2)
        if (cr(i, j) > cr(i, j2) + y.dist(j2, j) + tol)
          fail("BadCoupling", "triangle violation through Y");
      // X-X distances through Y and vice versa.
      for (int i2 = 0; i2 < n; ++i2)
        if (x.dist(i, i2) > cr(i, j) + cr(i2, j) + tol)
          fail("BadCoupling", "X pair not dominated by detour through Y");
      for (int j2 = 0; j2 < m; ++j2)
        if (y.dist(j, j2) > cr(i, j) + cr(i, j2) + tol)
          fail("BadCoupling", "Y pair not dominated by detour through X");
    }
  return MetricCoupling(n, m, std::move(c));
}

MetricCoupling canonical_coupling(const Correspondence& r, const FiniteMetricSpace& x,
                                  const FiniteMetricSpace& y) {
  const double half_dis = distortion(r, x, y) / 2.0;
  const int n = x.size(), m = y.size();
  std::vector<std::vector<double>> cross(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(m)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      double best = kInf;
      for (auto [xi, yj] : r.pairs)
        best = std::min(best, x.dist(i, xi) + y.dist(j, yj));
      cross[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = best + half_dis;
    }
  return MetricCoupling::checked(x, y, std::move(cross));
}

double hausdorff_in_coupling(const MetricCoupling& d, const FiniteMetricSpace& x,
                             const FiniteMetricSpace& y) {
  const int n = x.size(), m = y.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double nearest = kInf;
    for (int j = 0; j < m; ++j) nearest = std::min(nearest, d.cross(i, j));
    worst = std::max(worst, nearest);
  }
  for (int j = 0; j < m; ++j) {
    double nearest = kInf;
    for (int i = 0; i < n; ++i) nearest = std::min(nearest, d.cross(i, j));
    worst = std::max(worst, nearest);
  }
  return worst;
}

double gh_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  return std::abs(x.max_dist() - y.max_dist()) / 2.0;
}

namespace {

// Depth-first check for a correspondence with distortion <= delta.
// Assigns phi over X with pairwise pruning, then psi over Y with pairwise
// and cross pruning. Lexicographic order makes the first witness
// deterministic. Exact float comparisons throughout.
struct GhSearch {
  const FiniteMetricSpace& x;
  const FiniteMetricSpace& y;
  double delta;
  std::uint64_t nodes_left;
  bool budget_hit = false;
  std::vector<int> phi, psi;

  GhSearch(const FiniteMetricSpace& x_, const FiniteMetricSpace& y_, double d,
           std::uint64_t budget)
      : x(x_), y(y_), delta(d), nodes_left(budget) {
    phi.assign(static_cast<std::size_t>(x.size()), -1);
    psi.assign(static_cast<std::size_t>(y.size()), -1);
  }

  bool tick() {
    if (nodes_left == 0) {
      budget_hit = true;
      return false;
    }
    --nodes_left;
    return true;
  }

  bool search_psi(int j) {
    if (j == y.size()) return true;
    for (int t = 0; t < x.size(); ++t) {
      if (!tick()) return false;
      bool ok = true;
      for (int j2 = 0; j2 < j && ok; ++j2)
        if (std::abs(y.dist(j, j2) - x.dist(t, psi[static_cast<std::size_t>(j2)])) > delta)
          ok = false;
      for (int i = 0; i < x.size() && ok; ++i)
        if (std::abs(x.dist(i, t) - y.dist(phi[static_cast<std::size_t>(i)], j)) > delta)
          ok = false;
      if (!ok) continue;
      psi[static_cast<std::size_t>(j)] = t;
      if (search_psi(j + 1)) return true;
      if (budget_hit) return false;
    }
    return false;
  }

  bool search_phi(int i) {
    if (i == x.size()) return search_psi(0);
    for (int t = 0; t < y.size(); ++t) {
      if (!tick()) return false;
      bool ok = true;
      for (int i2 = 0; i2 < i && ok; ++i2)
        if (std::abs(x.dist(i, i2) - y.dist(t, phi[static_cast<std::size_t>(i2)])) > delta)
          ok = false;
      if (!ok) continue;
      phi[static_cast<std::size_t>(i)] = t;
      if (search_phi(i + 1)) return true;
      if (budget_hit) return false;
    }
    return false;
  }
};

std::vector<double> distortion_candidates(const FiniteMetricSpace& x,
                                          const FiniteMetricSpace& y) {
  std::vector<double> vx{0.0}, vy{0.0};
  for (int i = 0; i < x.size(); ++i)
    for (int j = i + 1; j < x.size(); ++j) vx.push_back(x.dist(i, j));
  for (int i = 0; i < y.size(); ++i)
    for (int j = i + 1; j < y.size(); ++j) vy.push_back(y.dist(i, j));
  std::sort(vx.begin(), vx.end());
  vx.erase(std::unique(vx.begin(), vx.end()), vx.end());
  std::sort(vy.begin(), vy.end());
  vy.erase(std::unique(vy.begin(), vy.end()), vy.end());
  std::vector<double> cand;
  cand.reserve(vx.size() * vy.size());
  for (double a : vx)
    for (double b : vy) cand.push_back(std::abs(a - b));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  return cand;
}

}  // namespace

GhResult gh_oracle(const FiniteMetricSpace& x, const FiniteMetricSpace& y, GhBudget budget) {
  const std::vector<double> cand = distortion_candidates(x, y);
  const double dis_lower = 2.0 * gh_lower_bound(x, y);

  // Everything below the diameter bound is infeasible; the largest candidate
  // is always feasible (the full relation X x Y witnesses it).
  std::size_t lo = static_cast<std::size_t>(
      std::lower_bound(cand.begin(), cand.end(), dis_lower) - cand.begin());
  std::size_t hi = cand.size() - 1;

  GhResult res;
  std::uint64_t nodes_used = 0;
  std::vector<int> best_phi, best_psi;
  bool have_witness = false;
  double feasible_at = cand[hi];
  double infeasible_below = lo > 0 ? cand[lo - 1] : -1.0;

  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    GhSearch s(x, y, cand[mid], budget.max_nodes - nodes_used);
    const bool ok = s.search_phi(0);
    nodes_used += (budget.max_nodes - nodes_used) - s.nodes_left;
    if (s.budget_hit) {
      res.optimal = false;
      res.lower = (infeasible_below >= 0 ? cand[lo] : 0.0) / 2.0;
      res.upper = feasible_at / 2.0;
      res.value = res.upper;
      if (have_witness) res.witness = Correspondence::from_maps(best_phi, best_psi);
      res.work = nodes_used;
      return res;
    }
    if (ok) {
      hi = mid;
      feasible_at = cand[mid];
      best_phi = s.phi;
      best_psi = s.psi;
      have_witness = true;
    } else {
      infeasible_below = cand[mid];
      lo = mid + 1;
    }
  }

  if (!have_witness || feasible_at != cand[lo]) {
    GhSearch s(x, y, cand[lo], budget.max_nodes - nodes_used);
    const bool ok = s.search_phi(0);
    nodes_used += (budget.max_nodes - nodes_used) - s.nodes_left;
    if (!ok || s.budget_hit) {
      // cand.back() is always feasible, so this only happens on budget.
      res.optimal = false;
      res.lower = cand[lo] / 2.0;
      res.upper = feasible_at / 2.0;
      res.value = res.upper;
      if (have_witness) res.witness = Correspondence::from_maps(best_phi, best_psi);
      res.work = nodes_used;
      return res;
    }
    best_phi = s.phi;
    best_psi = s.psi;
  }

  res.value = cand[lo] / 2.0;
  res.lower = res.upper = res.value;
  res.optimal = true;
  res.witness = Correspondence::from_maps(best_phi, best_psi);
  res.work = nodes_used;
  return res;
}

GhResult gh_oracle_map_pairs(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                             GhBudget budget, Exec exec) {
  const int n = x.size(), m = y.size();
  double total_phi = std::pow(static_cast<double>(m), n);
  double total_psi = std::pow(static_cast<double>(n), m);
  if (total_phi * total_psi > static_cast<double>(budget.max_pairs))
    fail("BudgetExceeded", "map-pair enumeration too large; raise max_pairs or use gh_oracle");
  const std::uint64_t nphi = static_cast<std::uint64_t>(total_phi);
  const std::uint64_t npsi = static_cast<std::uint64_t>(total_psi);

  auto decode = [](std::uint64_t code, int len, int base, std::vector<int>& out) {
    out.resize(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
      out[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint64_t>(base));
      code /= static_cast<std::uint64_t>(base);
    }
  };

  // Distortion of graph(phi) u graph(psi)^T decomposes into the phi part,
  // the psi part, and the cross part.
  std::vector<double> dis_phi(nphi), dis_psi(npsi);
  {
    std::vector<int> map;
    for (std::uint64_t c = 0; c < nphi; ++c) {
      decode(c, n, m, map);
      double w = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          w = std::max(w, std::abs(x.dist(i, j) -
                                   y.dist(map[static_cast<std::size_t>(i)],
                                          map[static_cast<std::size_t>(j)])));
      dis_phi[static_cast<std::size_t>(c)] = w;
    }
    for (std::uint64_t c = 0; c < npsi; ++c) {
      decode(c, m, n, map);
      double w = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          w = std::max(w, std::abs(y.dist(i, j) -
                                   x.dist(map[static_cast<std::size_t>(i)],
                                          map[static_cast<std::size_t>(j)])));
      dis_psi[static_cast<std::size_t>(c)] = w;
    }
  }

  struct Best {
    double value = kInf;
    std::uint64_t phi_code = 0, psi_code = 0;
  };
  const int threads = (exec == Exec::parallel) ? hardware_threads() : 1;
  std::vector<Best> best_per(static_cast<std::size_t>(std::max(threads, 1)));

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads) if (exec == Exec::parallel)
#endif
  for (long long pc = 0; pc < static_cast<long long>(nphi); ++pc) {
    std::vector<int> phi, psi;
    decode(static_cast<std::uint64_t>(pc), n, m, phi);
#ifdef _OPENMP
    Best& local = best_per[static_cast<std::size_t>(omp_in_parallel() ? omp_get_thread_num() : 0)];
#else
    Best& local = best_per[0];
#endif
    for (std::uint64_t sc = 0; sc < npsi; ++sc) {
      double w = std::max(dis_phi[static_cast<std::size_t>(pc)],
                          dis_psi[static_cast<std::size_t>(sc)]);
      if (w >= local.value) continue;
      decode(sc, m, n, psi);
      for (int i = 0; i < n && w < local.value; ++i)
        for (int j = 0; j < m; ++j) {
          const double v = std::abs(x.dist(i, psi[static_cast<std::size_t>(j)]) -
                                    y.dist(phi[static_cast<std::size_t>(i)], j));
          if (v > w) {
            w = v;
            if (w >= local.value) break;
          }
        }
      if (w < local.value ||
          (w == local.value && (static_cast<std::uint64_t>(pc) < local.phi_code ||
                                (static_cast<std::uint64_t>(pc) == local.phi_code &&
                                 sc < local.psi_code)))) {
        local = {w, static_cast<std::uint64_t>(pc), sc};
      }
    }
  }

  Best best;
  for (const Best& b : best_per)
    if (b.value < best.value ||
        (b.value == best.value && (b.phi_code < best.phi_code ||
                                   (b.phi_code == best.phi_code && b.psi_code < best.psi_code))))
      best = b;

  std::vector<int> phi, psi;
  decode(best.phi_code, n, m, phi);
  decode(best.psi_code, m, n, psi);
  GhResult res;
  res.value = best.value / 2.0;
  res.lower = res.upper = res.value;
  res.optimal = true;
  res.witness = Correspondence::from_maps(phi, psi);
  res.work = nphi * npsi;
  return res;
}

GhResult gh_oracle_subsets(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  const int n = x.size(), m = y.size();
  const int cells = n * m;
  if (cells > 12) fail("BudgetExceeded", "subset oracle limited to n*m <= 12");
  GhResult res;
  res.value = kInf;
  std::vector<std::pair<int, int>> pairs;
  for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
    std::uint32_t px = 0, py = 0;
    pairs.clear();
    for (int c = 0; c < cells; ++c)
      if (mask & (1u << c)) {
        const int i = c / m, j = c % m;
        pairs.emplace_back(i, j);
        px |= 1u << i;
        py |= 1u << j;
      }
    if (px != (1u << n) - 1 || py != (1u << m) - 1) continue;
    double w = 0.0;
    for (std::size_t a = 0; a < pairs.size(); ++a)
      for (std::size_t b = a; b < pairs.size(); ++b)
        w = std::max(w, std::abs(x.dist(pairs[a].first, pairs[b].first) -
                                 y.dist(pairs[a].second, pairs[b].second)));
    if (w / 2.0 < res.value) {
      res.value = w / 2.0;
      res.witness.pairs = pairs;
    }
    ++res.work;
  }
  res.lower = res.upper = res.value;
  res.optimal = true;
  return res;
}

}  // namespace mms
