#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mms/clustering.hpp"
#include "mms/metric_core.hpp"

namespace mms {

// Unit-distance space on m points with uniform mass.
MetricMeasureSpace gen_delta(int m);

// n evenly spaced points on the circle with geodesic distances, uniform mass.
MetricMeasureSpace gen_circle(int n);

// Uniform n-point grid on [0,1] with uniform mass.
MetricMeasureSpace gen_grid(int n);

// n pseudo-random unit vectors in R^dim with geodesic (arccos) distances.
// Deterministic given the seed: mt19937_64 feeding an explicit Box-Muller,
// so the sample is reproducible across implementations.
FiniteMetricSpace gen_sphere_sample(int dim, int n, std::uint64_t seed);

// k copies of the unit grid {0, 1/n, ..., 1} laid out on a line with gap 1
// between consecutive copies; diam = 2k - 1.
FiniteMetricSpace gen_ynk(int n, int k);

struct CounterexamplePair {
  FiniteMetricSpace x;
  FiniteMetricSpace y;
};

// Tree instance: m copies of the 6-point three-branch tree glued at a common
// root, against 3m branch points at distance 3/2 from the root.
CounterexamplePair gen_tree_counterexample(int m);

// Planar instance with distances {1, sqrt 3, sqrt 7, 2 sqrt 3}; copies are
// translated far apart for m > 1.
CounterexamplePair gen_euclidean_counterexample(int m);

struct SetCoverInstance {
  int universe = 0;                       // elements 0..universe-1
  std::vector<std::vector<int>> subsets;  // union must cover the universe
  int k = 0;

  void check() const;
};

// Shortest-path metric of the incidence gadget: element and subset vertices
// plus r, r', all edges of length 1.
FiniteMetricSpace setcover_to_graph(const SetCoverInstance& inst);

// Exhaustive: does a cover of size <= k exist?
bool setcover_brute_has_cover(const SetCoverInstance& inst);

// Cover of size <= k exists  iff  the gadget splits into k+1 blocks of
// diameter <= 2. Returns whether the two sides agree.
bool reduction_equivalence_check(const SetCoverInstance& inst, BruteBudget budget = {});

// Random test instances: entries uniform in [1,2] satisfy the triangle
// inequality outright; masses are normalized positive uniforms.
FiniteMetricSpace random_metric_space(int n, std::mt19937_64& rng);
MetricMeasureSpace random_mm_space(int n, std::mt19937_64& rng);
SetCoverInstance random_setcover_instance(int max_universe, int max_subsets,
                                          std::mt19937_64& rng);

}  // namespace mms
