#include "mms/clustering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mms {

namespace {

double pow_or_id(double v, double e) { return e == 1.0 ? v : std::pow(v, e); }

double count_partitions_at_most(int n, int k) {
  // sum over j <= k of Stirling numbers of the second kind S(n, j)
  std::vector<double> row(static_cast<std::size_t>(k) + 1, 0.0);
  row[0] = 1.0;  // S(0,0)
  for (int i = 1; i <= n; ++i) {
    std::vector<double> next(static_cast<std::size_t>(k) + 1, 0.0);
    for (int j = 1; j <= k && j <= i; ++j)
      next[static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(j - 1)] + j * row[static_cast<std::size_t>(j)];
    row = next;
  }
  double total = 0.0;
  for (int j = 1; j <= k; ++j) total += row[static_cast<std::size_t>(j)];
  return total;
}

// Restricted-growth prefixes of a fixed depth, used to split the enumeration
// across threads.
struct Prefix {
  std::vector<int> assign;
  int used = 0;
};

void expand_prefixes(int n, int k, std::size_t want, std::vector<Prefix>& out) {
  out = {Prefix{{}, 0}};
  int depth = 0;
  while (depth < n && out.size() < want) {
    std::vector<Prefix> next;
    next.reserve(out.size() * static_cast<std::size_t>(k));
    for (const Prefix& pre : out) {
      const int lim = std::min(pre.used, k - 1);
      for (int b = 0; b <= lim; ++b) {
        Prefix np = pre;
        np.assign.push_back(b);
        np.used = std::max(np.used, b + 1);
        next.push_back(std::move(np));
      }
    }
    out = std::move(next);
    ++depth;
  }
}

struct BestPartition {
  double value = kInf;
  std::vector<int> assign;

  void consider(double v, const std::vector<int>& a) {
    if (v < value) {
      value = v;
      assign = a;
    }
  }
  void merge(const BestPartition& o) {
    if (o.value < value || (o.value == value && !o.assign.empty() &&
                            (assign.empty() || o.assign < assign)))
      *this = o;
  }
};

void atomic_min(std::atomic<double>& target, double v) {
  double cur = target.load(std::memory_order_relaxed);
  while (v < cur && !target.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
  }
}

// Depth-first completion for the max-diameter objective with incremental
// cost and branch-and-bound pruning against the shared best. Pruning is
// strict (>) so every optimal assignment survives and the lexicographically
// first witness is schedule-independent.
struct MaxdiamSearch {
  const FiniteMetricSpace& x;
  int n, k;
  std::atomic<double>* shared_best;
  std::vector<int> assign;
  BestPartition best;

  void run(const Prefix& pre) {
    assign = pre.assign;
    assign.resize(static_cast<std::size_t>(n), -1);
    double partial = 0.0;
    const int depth = static_cast<int>(pre.assign.size());
    for (int i = 0; i < depth; ++i)
      for (int j = i + 1; j < depth; ++j)
        if (assign[static_cast<std::size_t>(i)] == assign[static_cast<std::size_t>(j)])
          partial = std::max(partial, x.dist(i, j));
    dfs(depth, pre.used, partial);
  }

  void dfs(int depth, int used, double partial) {
    if (partial > shared_best->load(std::memory_order_relaxed)) return;
    if (depth == n) {
      best.consider(partial, assign);
      atomic_min(*shared_best, partial);
      return;
    }
    const int lim = std::min(used, k - 1);
    for (int b = 0; b <= lim; ++b) {
      double np = partial;
      for (int q = 0; q < depth; ++q)
        if (assign[static_cast<std::size_t>(q)] == b) np = std::max(np, x.dist(depth, q));
      if (np > shared_best->load(std::memory_order_relaxed)) continue;
      assign[static_cast<std::size_t>(depth)] = b;
      dfs(depth + 1, std::max(used, b + 1), np);
    }
    assign[static_cast<std::size_t>(depth)] = -1;
  }
};

// Leaf evaluation for the measured objectives, shared by the brute force.
// powd caches d^p so the inner loops stay multiply-add.
struct MeasuredEval {
  const MetricMeasureSpace& x;
  Objective obj;
  std::vector<double> powd;
  int n;

  MeasuredEval(const MetricMeasureSpace& xx, const Objective& o) : x(xx), obj(o), n(xx.size()) {
    if (!is_inf(obj.p)) {
      powd.resize(static_cast<std::size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          powd[static_cast<std::size_t>(i) * n + j] = pow_or_id(x.dist(i, j), obj.p);
    }
  }

  double block_diam_pow(const std::vector<int>& blk) const {  // diam_p^p, p finite
    double s = 0.0, mu = 0.0;
    for (int i : blk) mu += x.mass(i);
    for (int i : blk)
      for (int j : blk)
        s += powd[static_cast<std::size_t>(i) * n + j] * x.mass(i) * x.mass(j);
    return s / (mu * mu);
  }

  double block_rad_pow(const std::vector<int>& blk) const {  // rad_p^p, p finite
    double mu = 0.0;
    for (int i : blk) mu += x.mass(i);
    double best = kInf;
    for (int a : blk) {
      double s = 0.0;
      for (int i : blk) s += powd[static_cast<std::size_t>(a) * n + i] * x.mass(i);
      best = std::min(best, s / mu);
    }
    return best;
  }

  double block_diam_inf(const std::vector<int>& blk) const {
    double v = 0.0;
    for (std::size_t a = 0; a < blk.size(); ++a)
      for (std::size_t b = a + 1; b < blk.size(); ++b)
        v = std::max(v, x.dist(blk[a], blk[b]));
    return v;
  }

  double block_rad_inf(const std::vector<int>& blk) const {
    double best = kInf;
    for (int a : blk) {
      double far = 0.0;
      for (int i : blk) far = std::max(far, x.dist(a, i));
      best = std::min(best, far);
    }
    return best;
  }

  struct Scratch {
    std::vector<double> mu, acc;
  };

  // Allocation-free evaluation on a raw assignment; scratch is reused
  // across leaves so the enumeration stays a pure sweep.
  double eval_assign(const std::vector<int>& assign, int nblocks, Scratch& sc) const {
    const bool radial = obj.kind == Objective::Kind::rad;
    sc.mu.assign(static_cast<std::size_t>(nblocks), 0.0);
    for (int i = 0; i < n; ++i) sc.mu[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])] += x.mass(i);

    if (!is_inf(obj.p)) {
      sc.acc.assign(static_cast<std::size_t>(nblocks), radial ? kInf : 0.0);
      for (int i = 0; i < n; ++i) {
        const int bi = assign[static_cast<std::size_t>(i)];
        const double* row = powd.data() + static_cast<std::size_t>(i) * n;
        double srow = 0.0;
        for (int j = 0; j < n; ++j)
          if (assign[static_cast<std::size_t>(j)] == bi) srow += row[j] * x.mass(j);
        if (radial)
          sc.acc[static_cast<std::size_t>(bi)] = std::min(sc.acc[static_cast<std::size_t>(bi)], srow);
        else
          sc.acc[static_cast<std::size_t>(bi)] += x.mass(i) * srow;
      }
      if (is_inf(obj.q)) {
        double worstpow = 0.0;
        for (int b = 0; b < nblocks; ++b) {
          const double mu = sc.mu[static_cast<std::size_t>(b)];
          const double vpow = radial ? sc.acc[static_cast<std::size_t>(b)] / mu
                                     : sc.acc[static_cast<std::size_t>(b)] / (mu * mu);
          worstpow = std::max(worstpow, vpow);
        }
        return std::pow(worstpow, 1.0 / obj.p);
      }
      double acc = 0.0;
      for (int b = 0; b < nblocks; ++b) {
        const double mu = sc.mu[static_cast<std::size_t>(b)];
        const double vpow = radial ? sc.acc[static_cast<std::size_t>(b)] / mu
                                   : sc.acc[static_cast<std::size_t>(b)] / (mu * mu);
        acc += mu * ((obj.q == obj.p) ? vpow : std::pow(std::pow(vpow, 1.0 / obj.p), obj.q));
      }
      return pow_or_id(acc, 1.0 / obj.q);
    }

    // p = inf: plain diameters / minimax radii
    sc.acc.assign(static_cast<std::size_t>(nblocks), radial ? kInf : 0.0);
    if (radial) {
      for (int i = 0; i < n; ++i) {
        const int bi = assign[static_cast<std::size_t>(i)];
        double far = 0.0;
        for (int j = 0; j < n; ++j)
          if (assign[static_cast<std::size_t>(j)] == bi) far = std::max(far, x.dist(i, j));
        sc.acc[static_cast<std::size_t>(bi)] = std::min(sc.acc[static_cast<std::size_t>(bi)], far);
      }
    } else {
      for (int i = 0; i < n; ++i) {
        const int bi = assign[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
          if (assign[static_cast<std::size_t>(j)] == bi)
            sc.acc[static_cast<std::size_t>(bi)] =
                std::max(sc.acc[static_cast<std::size_t>(bi)], x.dist(i, j));
      }
    }
    if (is_inf(obj.q)) {
      double worst = 0.0;
      for (int b = 0; b < nblocks; ++b) worst = std::max(worst, sc.acc[static_cast<std::size_t>(b)]);
      return worst;
    }
    double acc = 0.0;
    for (int b = 0; b < nblocks; ++b)
      acc += sc.mu[static_cast<std::size_t>(b)] * pow_or_id(sc.acc[static_cast<std::size_t>(b)], obj.q);
    return pow_or_id(acc, 1.0 / obj.q);
  }

  double eval(const std::vector<std::vector<int>>& blocks) const {
    const bool radial = obj.kind == Objective::Kind::rad;
    if (is_inf(obj.q)) {
      double worst = 0.0;
      for (const auto& blk : blocks) {
        double v;
        if (is_inf(obj.p))
          v = radial ? block_rad_inf(blk) : block_diam_inf(blk);
        else
          v = std::pow(radial ? block_rad_pow(blk) : block_diam_pow(blk), 1.0 / obj.p);
        worst = std::max(worst, v);
      }
      return worst;
    }
    double acc = 0.0;
    for (const auto& blk : blocks) {
      double mu = 0.0;
      for (int i : blk) mu += x.mass(i);
      double vq;  // block value raised to q
      if (is_inf(obj.p)) {
        vq = pow_or_id(radial ? block_rad_inf(blk) : block_diam_inf(blk), obj.q);
      } else {
        const double vpow = radial ? block_rad_pow(blk) : block_diam_pow(blk);
        vq = (obj.q == obj.p) ? vpow : std::pow(std::pow(vpow, 1.0 / obj.p), obj.q);
      }
      acc += mu * vq;
    }
    return pow_or_id(acc, 1.0 / obj.q);
  }
};

template <class Leaf>
void complete_assignments(std::vector<int>& assign, int depth, int used, int n, int k,
                          Leaf&& leaf) {
  if (depth == n) {
    leaf(assign, used);
    return;
  }
  const int lim = std::min(used, k - 1);
  for (int b = 0; b <= lim; ++b) {
    assign[static_cast<std::size_t>(depth)] = b;
    complete_assignments(assign, depth + 1, std::max(used, b + 1), n, k, leaf);
  }
}

void check_partition_budget(int n, int k, const BruteBudget& budget) {
  if (n > 25) fail("BudgetExceeded", "brute-force enumeration capped at n <= 25");
  if (count_partitions_at_most(n, k) > static_cast<double>(budget.max_partitions))
    fail("BudgetExceeded", "too many partitions; raise max_partitions");
}

}  // namespace

std::string Objective::name() const {
  auto fmt = [](double v) {
    if (is_inf(v)) return std::string("inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };
  switch (kind) {
    case Kind::maxdiam:
      return "maxdiam";
    case Kind::phi:
      return "phi(p=" + fmt(p) + ",q=" + fmt(q) + ")";
    case Kind::rad:
      return "rad(p=" + fmt(p) + ",q=" + fmt(q) + ")";
  }
  return "?";
}

double cost_maxdiam(const FiniteMetricSpace& x, const Partition& part) {
  double worst = 0.0;
  for (const auto& blk : part.blocks()) {
    Subset s{blk};
    worst = std::max(worst, diam(x, s));
  }
  return worst;
}

double cost_phi_pq(const MetricMeasureSpace& x, const Partition& part, double p, double q) {
  MeasuredEval ev(x, Objective::phi(p, q));
  return ev.eval(part.blocks());
}

double cost_rad_pq(const MetricMeasureSpace& x, const Partition& part, double p, double q) {
  MeasuredEval ev(x, Objective::rad(p, q));
  return ev.eval(part.blocks());
}

double cost(const MetricMeasureSpace& x, const Partition& part, const Objective& obj) {
  switch (obj.kind) {
    case Objective::Kind::maxdiam:
      return cost_maxdiam(x.space(), part);
    case Objective::Kind::phi:
      return cost_phi_pq(x, part, obj.p, obj.q);
    case Objective::Kind::rad:
      return cost_rad_pq(x, part, obj.p, obj.q);
  }
  return 0.0;
}

ClusteringResult shatter_bruteforce(const FiniteMetricSpace& x, int k, BruteBudget budget,
                                    Exec exec) {
  const int n = x.size();
  if (k < 1) fail("BadArgument", "k >= 1 required");
  if (k >= n) {
    return {Partition::singletons(n), 0.0, "maxdiam", true, 0.0, std::nullopt};
  }
  check_partition_budget(n, k, budget);

  std::vector<Prefix> prefixes;
  const std::size_t want =
      exec == Exec::parallel ? static_cast<std::size_t>(hardware_threads()) * 32 : 1;
  expand_prefixes(n, k, want, prefixes);

  std::atomic<double> shared_best{kInf};
  std::vector<BestPartition> results(prefixes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
#endif
  for (long long i = 0; i < static_cast<long long>(prefixes.size()); ++i) {
    MaxdiamSearch s{x, n, k, &shared_best, {}, {}};
    s.run(prefixes[static_cast<std::size_t>(i)]);
    results[static_cast<std::size_t>(i)] = std::move(s.best);
  }
  BestPartition best;
  for (const auto& r : results) best.merge(r);

  Partition part = Partition::from_assignment(
      best.assign, 1 + *std::max_element(best.assign.begin(), best.assign.end()));
  const double value = cost_maxdiam(x, part);
  return {std::move(part), value, "maxdiam", true, 0.0, std::nullopt};
}

ClusteringResult shatter_bruteforce(const MetricMeasureSpace& x, int k, const Objective& obj,
                                    BruteBudget budget, Exec exec) {
  if (obj.kind == Objective::Kind::maxdiam)
    return shatter_bruteforce(x.space(), k, budget, exec);
  const int n = x.size();
  if (k < 1) fail("BadArgument", "k >= 1 required");
  if (k >= n)
    return {Partition::singletons(n), 0.0, obj.name(), true, 0.0, std::nullopt};
  check_partition_budget(n, k, budget);

  const MeasuredEval ev(x, obj);
  std::vector<Prefix> prefixes;
  const std::size_t want =
      exec == Exec::parallel ? static_cast<std::size_t>(hardware_threads()) * 32 : 1;
  expand_prefixes(n, k, want, prefixes);

  std::vector<BestPartition> results(prefixes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
#endif
  for (long long i = 0; i < static_cast<long long>(prefixes.size()); ++i) {
    const Prefix& pre = prefixes[static_cast<std::size_t>(i)];
    BestPartition local;
    MeasuredEval::Scratch scratch;
    std::vector<int> assign = pre.assign;
    assign.resize(static_cast<std::size_t>(n), -1);
    complete_assignments(assign, static_cast<int>(pre.assign.size()), pre.used, n, k,
                         [&](const std::vector<int>& a, int used) {
                           local.consider(ev.eval_assign(a, used, scratch), a);
                         });
    results[static_cast<std::size_t>(i)] = std::move(local);
  }
  BestPartition best;
  for (const auto& r : results) best.merge(r);

  Partition part = Partition::from_assignment(
      best.assign, 1 + *std::max_element(best.assign.begin(), best.assign.end()));
  const double value = cost(x, part, obj);
  return {std::move(part), value, obj.name(), true, 0.0, std::nullopt};
}

namespace {

// Greedy feasibility for contiguous max-diameter clustering: sweep in order,
// cut when the running block diameter would exceed the threshold.
bool contiguous_feasible(const FiniteMetricSpace& x, const std::vector<int>& order, int k,
                         double c, std::vector<int>* cuts_out) {
  const int n = static_cast<int>(order.size());
  int blocks = 1;
  int start = 0;
  std::vector<int> cuts{0};
  for (int i = 1; i < n; ++i) {
    bool fits = true;
    for (int q = start; q < i; ++q)
      if (x.dist(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(q)]) > c) {
        fits = false;
        break;
      }
    if (!fits) {
      ++blocks;
      if (blocks > k) return false;
      start = i;
      cuts.push_back(i);
    }
  }
  if (cuts_out) *cuts_out = cuts;
  return true;
}

}  // namespace

ClusteringResult shatter_contiguous(const FiniteMetricSpace& x, int k, bool circular) {
  const int n = x.size();
  if (k < 1) fail("BadArgument", "k >= 1 required");
  if (k >= n) return {Partition::singletons(n), 0.0, "maxdiam", true, 0.0, std::nullopt};

  std::vector<double> cand{0.0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cand.push_back(x.dist(i, j));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<int> base(static_cast<std::size_t>(n));
  std::iota(base.begin(), base.end(), 0);

  auto feasible = [&](double c, std::vector<int>* order_out, std::vector<int>* cuts_out) {
    if (!circular) {
      if (contiguous_feasible(x, base, k, c, cuts_out)) {
        if (order_out) *order_out = base;
        return true;
      }
      return false;
    }
    for (int s = 0; s < n; ++s) {
      std::vector<int> order(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = (s + i) % n;
      if (contiguous_feasible(x, order, k, c, cuts_out)) {
        if (order_out) *order_out = order;
        return true;
      }
    }
    return false;
  };

  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(cand[mid], nullptr, nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }
  std::vector<int> order, cuts;
  if (!feasible(cand[lo], &order, &cuts)) fail("SolverStall", "contiguous feasibility lost");
  std::vector<std::vector<int>> blocks;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const int from = cuts[c];
    const int to = (c + 1 < cuts.size()) ? cuts[c + 1] : static_cast<int>(order.size());
    blocks.emplace_back(order.begin() + from, order.begin() + to);
  }
  Partition part = Partition::checked(std::move(blocks), n);
  const double value = cost_maxdiam(x, part);
  return {std::move(part), value, "maxdiam", true, 0.0, std::nullopt};
}

ClusteringResult shatter_ultrametric_cut(const FiniteMetricSpace& x, int k) {
  const int n = x.size();
  if (k < 1) fail("BadArgument", "k >= 1 required");
  if (k >= n) return {Partition::singletons(n), 0.0, "maxdiam", true, 0.0, std::nullopt};

  // Prim's MST on the complete graph.
  std::vector<double> key(static_cast<std::size_t>(n), kInf);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  key[0] = 0.0;
  struct Edge {
    int a, b;
    double w;
  };
  std::vector<Edge> mst;
  for (int it = 0; it < n; ++it) {
    int u = -1;
    for (int i = 0; i < n; ++i)
      if (!used[static_cast<std::size_t>(i)] && (u < 0 || key[static_cast<std::size_t>(i)] < key[static_cast<std::size_t>(u)]))
        u = i;
    used[static_cast<std::size_t>(u)] = 1;
    if (parent[static_cast<std::size_t>(u)] >= 0)
      mst.push_back({parent[static_cast<std::size_t>(u)], u, key[static_cast<std::size_t>(u)]});
    for (int v = 0; v < n; ++v)
      if (!used[static_cast<std::size_t>(v)] && x.dist(u, v) < key[static_cast<std::size_t>(v)]) {
        key[static_cast<std::size_t>(v)] = x.dist(u, v);
        parent[static_cast<std::size_t>(v)] = u;
      }
  }
  std::sort(mst.begin(), mst.end(), [](const Edge& a, const Edge& b) { return a.w > b.w; });

  // Union the n-k lightest edges; the k-1 heaviest are the cuts.
  std::vector<int> uf(static_cast<std::size_t>(n));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&uf](int a) {
    while (uf[static_cast<std::size_t>(a)] != a) {
      uf[static_cast<std::size_t>(a)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(a)])];
      a = uf[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (std::size_t e = static_cast<std::size_t>(k - 1); e < mst.size(); ++e)
    uf[static_cast<std::size_t>(find(mst[e].a))] = find(mst[e].b);

  std::vector<int> root_to_block(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (root_to_block[static_cast<std::size_t>(r)] < 0) {
      root_to_block[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(root_to_block[static_cast<std::size_t>(r)])].push_back(i);
  }
  Partition part = Partition::checked(std::move(blocks), n);
  const double value = cost_maxdiam(subdominant_ultrametric(x), part);
  return {std::move(part), value, "maxdiam-ultrametric", true, 0.0, std::nullopt};
}

std::vector<int> fps(const FiniteMetricSpace& x, int k, int seed_index) {
  const int n = x.size();
  if (seed_index < 0 || seed_index >= n) fail("IndexOutOfRange", "seed index");
  if (k < 1) fail("BadArgument", "k >= 1 required");
  k = std::min(k, n);
  std::vector<int> centers{seed_index};
  std::vector<double> mind(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mind[static_cast<std::size_t>(i)] = x.dist(seed_index, i);
  while (static_cast<int>(centers.size()) < k) {
    int next = 0;
    for (int i = 1; i < n; ++i)
      if (mind[static_cast<std::size_t>(i)] > mind[static_cast<std::size_t>(next)]) next = i;
    centers.push_back(next);
    for (int i = 0; i < n; ++i)
      mind[static_cast<std::size_t>(i)] = std::min(mind[static_cast<std::size_t>(i)], x.dist(next, i));
  }
  return centers;
}

GonzalezResult gonzalez(const FiniteMetricSpace& x, int k, int seed_index) {
  std::vector<int> centers = fps(x, k, seed_index);
  Partition part = voronoi_partition(x, centers);
  const double value = cost_maxdiam(x, part);
  return {std::move(centers), std::move(part), value};
}

double norm_p_of_centers(const MetricMeasureSpace& x, const std::vector<int>& centers, double p) {
  if (centers.empty()) fail("EmptyCenters", "need at least one center");
  const int n = x.size();
  double acc = 0.0, worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double nearest = kInf;
    for (int c : centers) nearest = std::min(nearest, x.dist(i, c));
    if (is_inf(p))
      worst = std::max(worst, nearest);
    else
      acc += x.mass(i) * pow_or_id(nearest, p);
  }
  return is_inf(p) ? worst : pow_or_id(acc, 1.0 / p);
}

LocalSearchResult local_search_tswap(const MetricMeasureSpace& x, int k, double p, int t,
                                     double eps) {
  if (is_inf(p) || !(p >= 1.0)) fail("BadExponent", "local search needs finite p >= 1");
  if (!(eps > 0.0 && eps < 1.0)) fail("BadArgument", "eps in (0,1)");
  const int n = x.size();
  if (t < 1 || t > k) fail("BadArgument", "1 <= t <= k required");
  if (k >= n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return {std::move(all), 0.0, 0};
  }
  const double tau = eps / (10.0 * k);
  std::vector<int> centers = fps(x.space(), k, 0);
  std::sort(centers.begin(), centers.end());
  double value = norm_p_of_centers(x, centers, p);
  int accepted = 0;

  // Lexicographic scan over (out-set, in-set) pairs of sizes 1..t; first
  // improving swap restarts the scan.
  auto next_combination = [](std::vector<int>& c, int limit) {
    const int s = static_cast<int>(c.size());
    for (int i = s - 1; i >= 0; --i) {
      if (c[static_cast<std::size_t>(i)] < limit - (s - i)) {
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < s; ++j)
          c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
        return true;
      }
    }
    return false;
  };

  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<int> complement;
    for (int i = 0; i < n; ++i)
      if (std::find(centers.begin(), centers.end(), i) == centers.end()) complement.push_back(i);
    for (int s = 1; s <= t && !improved; ++s) {
      std::vector<int> out(static_cast<std::size_t>(s));
      std::iota(out.begin(), out.end(), 0);
      do {
        std::vector<int> in(static_cast<std::size_t>(s));
        std::iota(in.begin(), in.end(), 0);
        do {
          std::vector<int> trial = centers;
          for (int i = 0; i < s; ++i)
            trial[static_cast<std::size_t>(out[static_cast<std::size_t>(i)])] =
                complement[static_cast<std::size_t>(in[static_cast<std::size_t>(i)])];
          const double tv = norm_p_of_centers(x, trial, p);
          if (tv <= (1.0 - tau) * value) {
            std::sort(trial.begin(), trial.end());
            centers = std::move(trial);
            value = tv;
            ++accepted;
            improved = true;
          }
        } while (!improved && next_combination(in, static_cast<int>(complement.size())));
      } while (!improved && next_combination(out, k));
    }
  }
  return {std::move(centers), value, accepted};
}

OptPResult opt_p_brute(const MetricMeasureSpace& x, int k, double p, BruteBudget budget) {
  const int n = x.size();
  if (k < 1) fail("BadArgument", "k >= 1 required");
  k = std::min(k, n);
  double combos = 1.0;
  for (int i = 0; i < k; ++i) combos = combos * (n - i) / (i + 1);
  if (combos * n > static_cast<double>(budget.max_subsets))
    fail("BudgetExceeded", "too many center subsets; raise max_subsets");

  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  OptPResult best;
  best.value = kInf;
  while (true) {
    const double v = norm_p_of_centers(x, c, p);
    if (v < best.value) {
      best.value = v;
      best.centers = c;
    }
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  best.exact = true;
  return best;
}

namespace {

bool ball_cover_feasible(const FiniteMetricSpace& x, int k, double r, std::vector<int>& centers) {
  const int n = x.size();
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  std::vector<int> chosen;
  std::function<bool(int)> rec = [&](int depth) -> bool {
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (!covered[static_cast<std::size_t>(i)]) {
        first = i;
        break;
      }
    if (first < 0) return true;
    if (depth == k) return false;
    for (int c = 0; c < n; ++c) {
      if (x.dist(c, first) > r) continue;
      std::vector<int> newly;
      for (int i = 0; i < n; ++i)
        if (!covered[static_cast<std::size_t>(i)] && x.dist(c, i) <= r) {
          covered[static_cast<std::size_t>(i)] = 1;
          newly.push_back(i);
        }
      chosen.push_back(c);
      if (rec(depth + 1)) return true;
      chosen.pop_back();
      for (int i : newly) covered[static_cast<std::size_t>(i)] = 0;
    }
    return false;
  };
  if (rec(0)) {
    centers = chosen;
    return true;
  }
  return false;
}

}  // namespace

OptPResult opt_inf(const FiniteMetricSpace& x, int k, BruteBudget budget) {
  const int n = x.size();
  if (k < 1) fail("BadArgument", "k >= 1 required");
  if (k >= n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return {std::move(all), 0.0, true};
  }
  double work = 1.0;
  for (int i = 0; i < k; ++i) work *= n;
  if (work > static_cast<double>(budget.max_subsets)) {
    // Out of budget: Gonzalez centers give a factor-2 certified value.
    std::vector<int> centers = fps(x, k, 0);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      double nearest = kInf;
      for (int c : centers) nearest = std::min(nearest, x.dist(i, c));
      worst = std::max(worst, nearest);
    }
    return {std::move(centers), worst, false};
  }

  std::vector<double> cand{0.0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cand.push_back(x.dist(i, j));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<int> centers;
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<int> tmp;
    if (ball_cover_feasible(x, k, cand[mid], tmp))
      hi = mid;
    else
      lo = mid + 1;
  }
  if (!ball_cover_feasible(x, k, cand[lo], centers))
    fail("SolverStall", "ball cover feasibility lost at optimum");
  return {std::move(centers), cand[lo], true};
}

ClusteringResult shatter_rad(const MetricMeasureSpace& x, int k, double p, double q, RadMode mode,
                             BruteBudget budget, Exec exec) {
  if (mode == RadMode::brute)
    return shatter_bruteforce(x, k, Objective::rad(p, q), budget, exec);
  if (q != p && !(is_inf(q) && is_inf(p)))
    fail("BadArgument", "via_opt_p requires q = p");
  OptPResult opt = is_inf(p) ? opt_inf(x.space(), k, budget) : opt_p_brute(x, k, p, budget);
  Partition part = voronoi_partition(x.space(), opt.centers);
  return {std::move(part), opt.value, "opt_p", opt.exact, opt.exact ? 0.0 : 2.0, opt.centers};
}

FiniteMetricSpace subdominant_ultrametric(const FiniteMetricSpace& x) {
  const int n = x.size();
  std::vector<std::vector<double>> u(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x.dist(i, j);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double via = std::max(u[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)],
                                    u[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)]);
        if (via < u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = via;
      }
  return FiniteMetricSpace::validate(u, x.labels());
}

FiniteMetricSpace metric_transform_mp(const FiniteMetricSpace& x, double p) {
  if (!(p > 1.0) || is_inf(p)) fail("BadExponent", "metric transform needs 1 < p < inf");
  const int n = x.size();
  std::vector<std::vector<double>> w(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::pow(x.dist(i, j), p);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double via = w[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] +
                           w[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
        if (via < w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = via;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          std::pow(w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 1.0 / p);
  return FiniteMetricSpace::validate(w, x.labels());
}

}  // namespace mms
