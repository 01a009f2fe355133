#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mms/metric_core.hpp"

namespace mms {

// Partition cost functionals. q = kInf takes the max over blocks instead of
// the weighted q-mean; p = kInf uses plain diameters / minimax radii.
double cost_maxdiam(const FiniteMetricSpace& x, const Partition& p);
double cost_phi_pq(const MetricMeasureSpace& x, const Partition& part, double p, double q);
double cost_rad_pq(const MetricMeasureSpace& x, const Partition& part, double p, double q);

struct Objective {
  enum class Kind { maxdiam, phi, rad };
  Kind kind = Kind::maxdiam;
  double p = kInf;
  double q = kInf;

  static Objective maxdiam() { return {Kind::maxdiam, kInf, kInf}; }
  static Objective phi(double p, double q) { return {Kind::phi, p, q}; }
  static Objective rad(double p, double q) { return {Kind::rad, p, q}; }
  std::string name() const;
};

double cost(const MetricMeasureSpace& x, const Partition& part, const Objective& obj);

struct ClusteringResult {
  Partition partition;
  double cost = 0.0;
  std::string objective;
  bool exact = true;
  double approx_factor = 0.0;                // 0 when exact
  std::optional<std::vector<int>> centers;   // set by center-based objectives
};

struct BruteBudget {
  std::uint64_t max_partitions = 50'000'000;
  std::uint64_t max_subsets = 20'000'000;
};

// Exact minimum over all partitions into at most k nonempty blocks
// (restricted-growth enumeration; the partition count is checked against the
// budget up front). OpenMP splits the enumeration across prefixes; the
// serial path is the reference.
ClusteringResult shatter_bruteforce(const FiniteMetricSpace& x, int k, BruteBudget budget = {},
                                    Exec exec = Exec::parallel);
ClusteringResult shatter_bruteforce(const MetricMeasureSpace& x, int k, const Objective& obj,
                                    BruteBudget budget = {}, Exec exec = Exec::parallel);

// Exact max-diameter clustering restricted to contiguous blocks in the given
// point order (points must be laid out along a path or a cycle for this to
// equal the unrestricted optimum).
ClusteringResult shatter_contiguous(const FiniteMetricSpace& x, int k, bool circular);

// Exact max-diameter clustering of the subdominant ultrametric via the
// minimum spanning tree: cutting the k-1 heaviest MST edges is optimal.
ClusteringResult shatter_ultrametric_cut(const FiniteMetricSpace& x, int k);

struct GonzalezResult {
  std::vector<int> centers;
  Partition partition;
  double cost = 0.0;
};

// FPS centers plus their Voronoi partition; max block diameter is within a
// factor 2 of the optimum.
GonzalezResult gonzalez(const FiniteMetricSpace& x, int k, int seed_index = 0);

// Greedy max-min center sequence starting at seed_index; ties pick the
// smallest index.
std::vector<int> fps(const FiniteMetricSpace& x, int k, int seed_index);

double norm_p_of_centers(const MetricMeasureSpace& x, const std::vector<int>& centers, double p);

struct LocalSearchResult {
  std::vector<int> centers;
  double value = 0.0;
  int accepted_swaps = 0;
};

// t-swap local search on ||C||_p from a Gonzalez warm start; swaps are
// accepted when they improve by a factor (1 - eps/(10k)), scanned in
// lexicographic (out-set, in-set) order.
LocalSearchResult local_search_tswap(const MetricMeasureSpace& x, int k, double p, int t,
                                     double eps);

struct OptPResult {
  std::vector<int> centers;
  double value = 0.0;
  bool exact = true;
};

OptPResult opt_p_brute(const MetricMeasureSpace& x, int k, double p, BruteBudget budget = {});
// p = inf: binary search over distances with an exact ball-cover check when
// in budget, Gonzalez bound (flagged) otherwise.
OptPResult opt_inf(const FiniteMetricSpace& x, int k, BruteBudget budget = {});

enum class RadMode { brute, via_opt_p };

ClusteringResult shatter_rad(const MetricMeasureSpace& x, int k, double p, double q, RadMode mode,
                             BruteBudget budget = {}, Exec exec = Exec::parallel);

// Largest ultrametric below d: minimax path distances.
FiniteMetricSpace subdominant_ultrametric(const FiniteMetricSpace& x);

// Shortest paths under d^p, re-rooted by 1/p. Requires 1 < p < inf.
FiniteMetricSpace metric_transform_mp(const FiniteMetricSpace& x, double p);

}  // namespace mms
