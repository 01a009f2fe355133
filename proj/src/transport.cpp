#include "mms/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "mms/lp.hpp"

namespace mms {

namespace {

double power_cost(double d, double p) {
  if (p == 1.0) return d;
  if (p == 2.0) return d * d;
  return std::pow(d, p);
}

double power_root(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return std::sqrt(v);
  return std::pow(v, 1.0 / p);
}

// Transportation simplex on the dense bipartite graph. Supplies and demands
// must balance; Bland's rule on entering and leaving arcs guards against
// cycling on degenerate pivots.
struct TransportSimplex {
  int ns, nd;
  const std::vector<double>& supply;
  const std::vector<double>& demand;
  const std::vector<double>& cost;  // ns x nd row-major

  struct Arc {
    int i, j;
    double flow;
  };
  std::vector<Arc> basis;
  std::vector<std::vector<int>> adj;  // node -> basis arc ids; sinks offset by ns
  std::vector<double> u, v;

  TransportSimplex(const std::vector<double>& s, const std::vector<double>& d,
                   const std::vector<double>& c)
      : ns(static_cast<int>(s.size())), nd(static_cast<int>(d.size())), supply(s), demand(d),
        cost(c) {}

  double c_at(int i, int j) const { return cost[static_cast<std::size_t>(i) * nd + j]; }

  void northwest_start() {
    std::vector<double> a = supply, b = demand;
    int i = 0, j = 0;
    while (true) {
      const double f = std::min(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]);
      basis.push_back({i, j, f});
      a[static_cast<std::size_t>(i)] -= f;
      b[static_cast<std::size_t>(j)] -= f;
      if (i == ns - 1 && j == nd - 1) break;
      if (i < ns - 1 && (a[static_cast<std::size_t>(i)] <= b[static_cast<std::size_t>(j)] || j == nd - 1))
        ++i;
      else
        ++j;
    }
  }

  void rebuild_tree() {
    adj.assign(static_cast<std::size_t>(ns + nd), {});
    for (int id = 0; id < static_cast<int>(basis.size()); ++id) {
      adj[static_cast<std::size_t>(basis[static_cast<std::size_t>(id)].i)].push_back(id);
      adj[static_cast<std::size_t>(ns + basis[static_cast<std::size_t>(id)].j)].push_back(id);
    }
    u.assign(static_cast<std::size_t>(ns), 0.0);
    v.assign(static_cast<std::size_t>(nd), 0.0);
    std::vector<char> seen(static_cast<std::size_t>(ns + nd), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      const int node = q.front();
      q.pop_front();
      for (int id : adj[static_cast<std::size_t>(node)]) {
        const Arc& arc = basis[static_cast<std::size_t>(id)];
        const int other = (node < ns) ? ns + arc.j : arc.i;
        if (seen[static_cast<std::size_t>(other)]) continue;
        seen[static_cast<std::size_t>(other)] = 1;
        if (other >= ns)
          v[static_cast<std::size_t>(arc.j)] = c_at(arc.i, arc.j) - u[static_cast<std::size_t>(arc.i)];
        else
          u[static_cast<std::size_t>(arc.i)] = c_at(arc.i, arc.j) - v[static_cast<std::size_t>(arc.j)];
        q.push_back(other);
      }
    }
  }

  // Path of basis arc ids between two tree nodes.
  std::vector<int> tree_path(int from, int to) const {
    std::vector<int> parent_arc(static_cast<std::size_t>(ns + nd), -1);
    std::vector<int> parent(static_cast<std::size_t>(ns + nd), -1);
    std::vector<char> seen(static_cast<std::size_t>(ns + nd), 0);
    std::deque<int> q{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!q.empty()) {
      const int node = q.front();
      q.pop_front();
      if (node == to) break;
      for (int id : adj[static_cast<std::size_t>(node)]) {
        const Arc& arc = basis[static_cast<std::size_t>(id)];
        const int other = (node < ns) ? ns + arc.j : arc.i;
        if (seen[static_cast<std::size_t>(other)]) continue;
        seen[static_cast<std::size_t>(other)] = 1;
        parent[static_cast<std::size_t>(other)] = node;
        parent_arc[static_cast<std::size_t>(other)] = id;
        q.push_back(other);
      }
    }
    std::vector<int> path;
    for (int node = to; node != from; node = parent[static_cast<std::size_t>(node)])
      path.push_back(parent_arc[static_cast<std::size_t>(node)]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  void solve() {
    northwest_start();
    rebuild_tree();
    double scale = 1.0;
    for (double c : cost) scale = std::max(scale, std::abs(c));
    const double eps = 1e-12 * scale;
    const long long max_pivots = 2000LL * (ns + 1) * (nd + 1);
    for (long long iter = 0; iter < max_pivots; ++iter) {
      int ei = -1, ej = -1;
      for (int i = 0; i < ns && ei < 0; ++i)
        for (int j = 0; j < nd; ++j) {
          if (c_at(i, j) - u[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)] < -eps) {
            ei = i;
            ej = j;
            break;
          }
        }
      if (ei < 0) return;  // optimal

      // Entering arc (ei, ej) closes a unique cycle with the tree path from
      // sink ej back to source ei; signs alternate starting with + on the
      // entering arc.
      const std::vector<int> path = tree_path(ns + ej, ei);
      double theta = kInf;
      int leave_pos = -1;
      for (int pos = 0; pos < static_cast<int>(path.size()); ++pos) {
        if (pos % 2 == 0) {  // -theta arcs
          const double f = basis[static_cast<std::size_t>(path[static_cast<std::size_t>(pos)])].flow;
          if (f < theta - 1e-18 ||
              (std::abs(f - theta) <= 1e-18 && leave_pos >= 0 &&
               path[static_cast<std::size_t>(pos)] <
                   path[static_cast<std::size_t>(leave_pos)])) {
            theta = f;
            leave_pos = pos;
          }
        }
      }
      for (int pos = 0; pos < static_cast<int>(path.size()); ++pos) {
        Arc& arc = basis[static_cast<std::size_t>(path[static_cast<std::size_t>(pos)])];
        arc.flow += (pos % 2 == 0) ? -theta : theta;
      }
      Arc& leaving = basis[static_cast<std::size_t>(path[static_cast<std::size_t>(leave_pos)])];
      leaving = {ei, ej, theta};
      rebuild_tree();
    }
    fail("SolverStall", "transportation simplex exceeded pivot limit");
  }

  double total_cost() const {
    double t = 0.0;
    for (const Arc& a : basis) t += a.flow * c_at(a.i, a.j);
    return t;
  }
};

std::vector<int> support_of(const std::vector<double>& mu) {
  std::vector<int> s;
  for (int i = 0; i < static_cast<int>(mu.size()); ++i)
    if (mu[static_cast<std::size_t>(i)] > 0.0) s.push_back(i);
  return s;
}

void check_marginal(const std::vector<double>& mu, int n, const char* which) {
  if (static_cast<int>(mu.size()) != n) fail("InfeasibleMarginals", std::string(which) + " has wrong length");
  double sum = 0.0;
  for (double m : mu) {
    if (m < 0.0) fail("InfeasibleMarginals", std::string(which) + " has a negative mass");
    sum += m;
  }
  if (std::abs(sum - 1.0) > kMassTol)
    fail("InfeasibleMarginals", std::string(which) + " sums to " + std::to_string(sum));
}

}  // namespace

MeasureCoupling MeasureCoupling::checked(std::vector<std::vector<double>> plan,
                                         const std::vector<double>& mu_x,
                                         const std::vector<double>& mu_y) {
  const int n = static_cast<int>(mu_x.size());
  const int m = static_cast<int>(mu_y.size());
  if (static_cast<int>(plan.size()) != n) fail("BadPlan", "plan must be n x m");
  std::vector<double> p(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(plan[static_cast<std::size_t>(i)].size()) != m)
      fail("BadPlan", "plan must be n x m");
    for (int j = 0; j < m; ++j) {
      const double v = plan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!(v >= 0.0)) fail("BadPlan", "negative or NaN plan entry");
      p[static_cast<std::size_t>(i) * m + j] = v;
    }
  }
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) row += p[static_cast<std::size_t>(i) * m + j];
    if (std::abs(row - mu_x[static_cast<std::size_t>(i)]) > kMassTol)
      fail("BadPlan", "row sum " + std::to_string(i) + " differs from first marginal");
  }
  for (int j = 0; j < m; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += p[static_cast<std::size_t>(i) * m + j];
    if (std::abs(col - mu_y[static_cast<std::size_t>(j)]) > kMassTol)
      fail("BadPlan", "column sum " + std::to_string(j) + " differs from second marginal");
  }
  return MeasureCoupling(n, m, std::move(p));
}

MeasureCoupling MeasureCoupling::product(const std::vector<double>& mu_x,
                                         const std::vector<double>& mu_y) {
  const int n = static_cast<int>(mu_x.size());
  const int m = static_cast<int>(mu_y.size());
  std::vector<double> p(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      p[static_cast<std::size_t>(i) * m + j] =
          mu_x[static_cast<std::size_t>(i)] * mu_y[static_cast<std::size_t>(j)];
  return MeasureCoupling(n, m, std::move(p));
}

MeasureCoupling MeasureCoupling::from_partition(const MetricMeasureSpace& x, const Partition& part,
                                                const std::vector<double>& mu_model) {
  const int n = x.size();
  const int k = part.k();
  if (static_cast<int>(mu_model.size()) != k) fail("BadPlan", "model measure size != k");
  std::vector<double> p(static_cast<std::size_t>(n) * k, 0.0);
  for (int b = 0; b < k; ++b) {
    double block_mass = 0.0;
    for (int i : part.block(b)) {
      p[static_cast<std::size_t>(i) * k + b] = x.mass(i);
      block_mass += x.mass(i);
    }
    if (std::abs(block_mass - mu_model[static_cast<std::size_t>(b)]) > kMassTol)
      fail("BadPlan", "model masses are not the block masses");
  }
  return MeasureCoupling(n, k, std::move(p));
}

std::vector<std::pair<int, int>> MeasureCoupling::support(double threshold) const {
  std::vector<std::pair<int, int>> s;
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j)
      if (at(i, j) > threshold) s.emplace_back(i, j);
  return s;
}

TransportResult wasserstein_p(const FiniteMetricSpace& x, const std::vector<double>& mu_a,
                              const std::vector<double>& mu_b, double p) {
  if (!(p >= 1.0) || is_inf(p)) fail("BadExponent", "wasserstein_p needs 1 <= p < inf");
  const int n = x.size();
  check_marginal(mu_a, n, "first marginal");
  check_marginal(mu_b, n, "second marginal");

  const std::vector<int> sa = support_of(mu_a);
  const std::vector<int> sb = support_of(mu_b);
  std::vector<double> supply, demand;
  for (int i : sa) supply.push_back(mu_a[static_cast<std::size_t>(i)]);
  for (int j : sb) demand.push_back(mu_b[static_cast<std::size_t>(j)]);
  // Absorb the sub-tolerance imbalance into the last demand.
  const double diff = std::accumulate(supply.begin(), supply.end(), 0.0) -
                      std::accumulate(demand.begin(), demand.end(), 0.0);
  demand.back() += diff;

  std::vector<double> cost(supply.size() * demand.size());
  for (std::size_t a = 0; a < sa.size(); ++a)
    for (std::size_t b = 0; b < sb.size(); ++b)
      cost[a * sb.size() + b] =
          power_cost(x.dist(sa[a], sb[b]), p);

  TransportSimplex ts(supply, demand, cost);
  ts.solve();

  std::vector<std::vector<double>> plan(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (const auto& arc : ts.basis)
    if (arc.flow > 0.0)
      plan[static_cast<std::size_t>(sa[static_cast<std::size_t>(arc.i)])]
          [static_cast<std::size_t>(sb[static_cast<std::size_t>(arc.j)])] += arc.flow;
  return {power_root(ts.total_cost(), p), MeasureCoupling::checked(std::move(plan), mu_a, mu_b)};
}

namespace {

// Max-flow feasibility: can all mass travel along pairs with d <= delta?
// Returns the flow matrix if feasible.
bool bottleneck_feasible(const FiniteMetricSpace& x, const std::vector<int>& sa,
                         const std::vector<int>& sb, const std::vector<double>& supply,
                         const std::vector<double>& demand, double delta,
                         std::vector<double>* flow_out) {
  const int ns = static_cast<int>(sa.size());
  const int nd = static_cast<int>(sb.size());
  // Nodes: 0 = source, 1..ns supplies, ns+1..ns+nd demands, ns+nd+1 sink.
  const int S = 0, T = ns + nd + 1;
  const int nodes = T + 1;
  std::vector<std::vector<double>> cap(static_cast<std::size_t>(nodes),
                                       std::vector<double>(static_cast<std::size_t>(nodes), 0.0));
  for (int i = 0; i < ns; ++i) cap[static_cast<std::size_t>(S)][static_cast<std::size_t>(1 + i)] = supply[static_cast<std::size_t>(i)];
  for (int j = 0; j < nd; ++j) cap[static_cast<std::size_t>(ns + 1 + j)][static_cast<std::size_t>(T)] = demand[static_cast<std::size_t>(j)];
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nd; ++j)
      if (x.dist(sa[static_cast<std::size_t>(i)], sb[static_cast<std::size_t>(j)]) <= delta)
        cap[static_cast<std::size_t>(1 + i)][static_cast<std::size_t>(ns + 1 + j)] = 2.0;  // effectively unbounded

  double total = std::accumulate(supply.begin(), supply.end(), 0.0);
  double flowed = 0.0;
  while (true) {  // Edmonds-Karp
    std::vector<int> parent(static_cast<std::size_t>(nodes), -1);
    parent[static_cast<std::size_t>(S)] = S;
    std::deque<int> q{S};
    while (!q.empty() && parent[static_cast<std::size_t>(T)] < 0) {
      const int nde = q.front();
      q.pop_front();
      for (int to = 0; to < nodes; ++to)
        if (parent[static_cast<std::size_t>(to)] < 0 &&
            cap[static_cast<std::size_t>(nde)][static_cast<std::size_t>(to)] > 1e-15) {
          parent[static_cast<std::size_t>(to)] = nde;
          q.push_back(to);
        }
    }
    if (parent[static_cast<std::size_t>(T)] < 0) break;
    double aug = kInf;
    for (int nd2 = T; nd2 != S; nd2 = parent[static_cast<std::size_t>(nd2)])
      aug = std::min(aug, cap[static_cast<std::size_t>(parent[static_cast<std::size_t>(nd2)])]
                              [static_cast<std::size_t>(nd2)]);
    for (int nd2 = T; nd2 != S; nd2 = parent[static_cast<std::size_t>(nd2)]) {
      const int pr = parent[static_cast<std::size_t>(nd2)];
      cap[static_cast<std::size_t>(pr)][static_cast<std::size_t>(nd2)] -= aug;
      cap[static_cast<std::size_t>(nd2)][static_cast<std::size_t>(pr)] += aug;
    }
    flowed += aug;
  }
  if (flowed < total - 1e-9) return false;
  if (flow_out) {
    flow_out->assign(static_cast<std::size_t>(ns) * nd, 0.0);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < nd; ++j) {
        const double used = cap[static_cast<std::size_t>(ns + 1 + j)][static_cast<std::size_t>(1 + i)];
        if (used > 0.0) (*flow_out)[static_cast<std::size_t>(i) * nd + j] = used;
      }
  }
  return true;
}

}  // namespace

TransportResult wasserstein_inf(const FiniteMetricSpace& x, const std::vector<double>& mu_a,
                                const std::vector<double>& mu_b) {
  const int n = x.size();
  check_marginal(mu_a, n, "first marginal");
  check_marginal(mu_b, n, "second marginal");
  const std::vector<int> sa = support_of(mu_a);
  const std::vector<int> sb = support_of(mu_b);
  std::vector<double> supply, demand;
  for (int i : sa) supply.push_back(mu_a[static_cast<std::size_t>(i)]);
  for (int j : sb) demand.push_back(mu_b[static_cast<std::size_t>(j)]);
  const double diff = std::accumulate(supply.begin(), supply.end(), 0.0) -
                      std::accumulate(demand.begin(), demand.end(), 0.0);
  demand.back() += diff;

  std::vector<double> cand;
  for (int i : sa)
    for (int j : sb) cand.push_back(x.dist(i, j));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (bottleneck_feasible(x, sa, sb, supply, demand, cand[mid], nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }
  std::vector<double> flow;
  if (!bottleneck_feasible(x, sa, sb, supply, demand, cand[lo], &flow))
    fail("SolverStall", "bottleneck feasibility lost at optimum");

  std::vector<std::vector<double>> plan(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (std::size_t i = 0; i < sa.size(); ++i)
    for (std::size_t j = 0; j < sb.size(); ++j)
      plan[static_cast<std::size_t>(sa[i])][static_cast<std::size_t>(sb[j])] =
          flow[i * sb.size() + j];
  return {cand[lo], MeasureCoupling::checked(std::move(plan), mu_a, mu_b)};
}

double dis_p(const MeasureCoupling& plan, const MetricMeasureSpace& x,
             const MetricMeasureSpace& y, double p) {
  const auto supp = plan.support(is_inf(p) ? 1e-12 : 0.0);
  if (is_inf(p)) {
    double worst = 0.0;
    for (const auto& [i, j] : supp)
      for (const auto& [i2, j2] : supp)
        worst = std::max(worst, std::abs(x.dist(i, i2) - y.dist(j, j2)));
    return worst;
  }
  std::vector<double> terms;
  terms.reserve(supp.size() * supp.size());
  for (const auto& [i, j] : supp) {
    const double w = plan.at(i, j);
    for (const auto& [i2, j2] : supp)
      terms.push_back(w * plan.at(i2, j2) *
                      power_cost(std::abs(x.dist(i, i2) - y.dist(j, j2)), p));
  }
  return power_root(chunked_sum(terms), p);
}

double gw_upper_bound_product(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                              double p) {
  return dis_p(MeasureCoupling::product(x.masses(), y.masses()), x, y, p) / 2.0;
}

double gw_upper_bound_partition(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                                const Partition& part, double p) {
  if (part.k() != y.size()) fail("BadPlan", "partition block count must match model size");
  return dis_p(MeasureCoupling::from_partition(x, part, y.masses()), x, y, p) / 2.0;
}

double gw_upper_bound_custom(const MetricMeasureSpace& x, const MetricMeasureSpace& y,
                             const MeasureCoupling& plan, double p) {
  return dis_p(plan, x, y, p) / 2.0;
}

double sturm_cost(const SturmPair& sp, double p) {
  if (sp.d.nx() != sp.plan.nx() || sp.d.ny() != sp.plan.ny())
    fail("BadPlan", "metric and measure couplings have mismatched shapes");
  if (is_inf(p)) {
    double worst = 0.0;
    for (const auto& [i, j] : sp.plan.support(1e-12))
      worst = std::max(worst, sp.d.cross(i, j));
    return worst;
  }
  std::vector<double> terms;
  for (int i = 0; i < sp.plan.nx(); ++i)
    for (int j = 0; j < sp.plan.ny(); ++j) {
      const double w = sp.plan.at(i, j);
      if (w > 0.0) terms.push_back(w * power_cost(sp.d.cross(i, j), p));
    }
  return power_root(chunked_sum(terms), p);
}

namespace {

// Projection machinery for the extension polytope
//   |t_a - t_b| <= d(a,b) <= t_a + t_b,  t >= 0.
struct Halfspace {
  int a, b;        // variable indices, b = -1 for single-variable rows
  double ca, cb;   // coefficients
  double rhs;      // ca t_a + cb t_b <= rhs
  double norm2;
};

std::vector<Halfspace> extension_constraints(const FiniteMetricSpace& x) {
  std::vector<Halfspace> hs;
  const int n = x.size();
  for (int a = 0; a < n; ++a) hs.push_back({a, -1, -1.0, 0.0, 0.0, 1.0});
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double d = x.dist(a, b);
      hs.push_back({a, b, 1.0, -1.0, d, 2.0});
      hs.push_back({a, b, -1.0, 1.0, d, 2.0});
      hs.push_back({a, b, -1.0, -1.0, -d, 2.0});
    }
  return hs;
}

// Dykstra's alternating projections onto the halfspace intersection.
void project_onto_polytope(std::vector<double>& t, const std::vector<Halfspace>& hs,
                           std::vector<double>& mu) {
  const int max_sweeps = 2000;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double moved = 0.0;
    for (std::size_t c = 0; c < hs.size(); ++c) {
      const Halfspace& h = hs[c];
      const double m = mu[c];
      double dot = h.ca * (t[static_cast<std::size_t>(h.a)] + m * h.ca);
      if (h.b >= 0) dot += h.cb * (t[static_cast<std::size_t>(h.b)] + m * h.cb);
      const double viol = dot - h.rhs;
      const double step = viol > 0.0 ? viol / h.norm2 : 0.0;
      const double delta = m - step;
      if (delta != 0.0) {
        t[static_cast<std::size_t>(h.a)] += delta * h.ca;
        if (h.b >= 0) t[static_cast<std::size_t>(h.b)] += delta * h.cb;
        moved = std::max(moved, std::abs(delta));
      }
      mu[c] = step;
    }
    if (moved < 5e-15) break;
  }
}

std::vector<double> project(const std::vector<double>& point, const std::vector<Halfspace>& hs) {
  std::vector<double> t = point;
  std::vector<double> mu(hs.size(), 0.0);
  project_onto_polytope(t, hs, mu);
  return t;
}

}  // namespace

SturmOnePointResult sturm_one_point(const MetricMeasureSpace& x, double p) {
  const int n = x.size();
  if (n == 1) return {0.0, {0.0}, 0.0};

  if (p == 1.0 || is_inf(p)) {
    const bool minimax = is_inf(p);
    const int nvar = minimax ? n + 1 : n;
    std::vector<double> obj(static_cast<std::size_t>(nvar), 0.0);
    if (minimax)
      obj[static_cast<std::size_t>(n)] = 1.0;
    else
      for (int i = 0; i < n; ++i) obj[static_cast<std::size_t>(i)] = x.mass(i);
    std::vector<LpConstraint> cons;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double d = x.dist(a, b);
        LpConstraint diff1;
        diff1.a.assign(static_cast<std::size_t>(nvar), 0.0);
        diff1.a[static_cast<std::size_t>(a)] = 1.0;
        diff1.a[static_cast<std::size_t>(b)] = -1.0;
        diff1.rel = Rel::le;
        diff1.b = d;
        LpConstraint diff2 = diff1;
        diff2.a[static_cast<std::size_t>(a)] = -1.0;
        diff2.a[static_cast<std::size_t>(b)] = 1.0;
        LpConstraint sum;
        sum.a.assign(static_cast<std::size_t>(nvar), 0.0);
        sum.a[static_cast<std::size_t>(a)] = 1.0;
        sum.a[static_cast<std::size_t>(b)] = 1.0;
        sum.rel = Rel::ge;
        sum.b = d;
        cons.push_back(std::move(diff1));
        cons.push_back(std::move(diff2));
        cons.push_back(std::move(sum));
      }
    if (minimax)
      for (int a = 0; a < n; ++a) {
        LpConstraint below;
        below.a.assign(static_cast<std::size_t>(nvar), 0.0);
        below.a[static_cast<std::size_t>(a)] = 1.0;
        below.a[static_cast<std::size_t>(n)] = -1.0;
        below.rel = Rel::le;
        below.b = 0.0;
        cons.push_back(std::move(below));
      }
    const LpResult lp = solve_lp(obj, cons);
    if (!lp.optimal) fail("SolverStall", "extension LP did not solve");
    std::vector<double> t(lp.x.begin(), lp.x.begin() + n);
    const double value = minimax ? lp.value : lp.value;
    return {value, std::move(t), 0.0};
  }

  if (!(p > 1.0)) fail("BadExponent", "sturm_one_point needs p >= 1");

  // Projected gradient descent on G(t) = sum mu_x t_x^p over the polytope.
  // Feasible start: the distance column of the best 1-center.
  const std::vector<Halfspace> hs = extension_constraints(x.space());
  const RadResult rc = rad_p(x, Subset::full(n), p);
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = x.dist(rc.center, i);

  auto G = [&](const std::vector<double>& v) {
    double g = 0.0;
    for (int i = 0; i < n; ++i) g += x.mass(i) * power_cost(v[static_cast<std::size_t>(i)], p);
    return g;
  };
  auto grad = [&](const std::vector<double>& v, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)] =
          p * x.mass(i) * std::pow(std::max(v[static_cast<std::size_t>(i)], 0.0), p - 1.0);
  };

  double alpha = 1.0;
  double gval = G(t);
  std::vector<double> g, trial, step(static_cast<std::size_t>(n));
  double residual = kInf;
  const int max_iters = 20000;
  for (int iter = 0; iter < max_iters; ++iter) {
    grad(t, g);
    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      trial = t;
      for (int i = 0; i < n; ++i) trial[static_cast<std::size_t>(i)] -= alpha * g[static_cast<std::size_t>(i)];
      trial = project(trial, hs);
      double quad = 0.0, lin = 0.0;
      for (int i = 0; i < n; ++i) {
        const double dlt = trial[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(i)];
        lin += g[static_cast<std::size_t>(i)] * dlt;
        quad += dlt * dlt;
      }
      const double gtrial = G(trial);
      if (gtrial <= gval + lin + quad / (2.0 * alpha) + 1e-15) {
        residual = std::sqrt(quad) / alpha;
        t = trial;
        gval = gtrial;
        alpha = std::min(alpha * 1.25, 1e3);
        accepted = true;
        break;
      }
      alpha /= 2.0;
    }
    if (!accepted || residual < 1e-9) break;
  }
  if (residual > 1e-7)
    fail("SolverTolerance", "gradient-mapping residual " + std::to_string(residual));
  return {power_root(gval, p), t, residual};
}

}  // namespace mms
