#pragma once

#include <string>
#include <vector>

#include "mms/clustering.hpp"
#include "mms/correspondence.hpp"
#include "mms/transport.hpp"

namespace mms {

// k-point space of pairwise block Hausdorff distances. Blocks at Hausdorff
// distance 0 violate identity of indiscernibles, so they are merged and the
// result is flagged degenerate (the model stays within "cardinality at most
// k").
struct HausdorffMapResult {
  FiniteMetricSpace model;
  std::vector<int> block_to_model;  // block index -> model point
  bool degenerate = false;
};

HausdorffMapResult hausdorff_map(const FiniteMetricSpace& x, const Partition& part);

// Voronoi partition of the glued space w.r.t. the model, restricted to X.
// Throws EmptyBlock when a model point captures no point of X.
Partition voronoi_map(const FiniteMetricSpace& x, const FiniteMetricSpace& model,
                      const MetricCoupling& d);

// How a metric sketch's upper bound is re-evaluated from its relation:
// half the distortion for correspondence-based sketches, the max matched
// distance for subset (Hausdorff-style) sketches.
enum class SketchCostKind { half_distortion, sup_distance };

struct MetricSketchResult {
  FiniteMetricSpace model;
  std::vector<int> model_points;  // original indices, set for subset models
  Correspondence relation;
  double upper = 0.0;
  double lower = 0.0;
  SketchCostKind cost_kind = SketchCostKind::half_distortion;
  std::string method;

  double reevaluate(const FiniteMetricSpace& x) const;
};

// Exact sketch via the optimal max-diameter partition: the model is the
// Hausdorff map of the optimal partition and upper = lower = half the
// optimal clustering cost.
MetricSketchResult sketch_k_exact(const FiniteMetricSpace& x, int k, BruteBudget budget = {},
                                  Exec exec = Exec::parallel);

// Same construction from a caller-supplied optimal partition (for instances
// where the optimum comes from a structured solver instead of brute force).
MetricSketchResult sketch_from_optimal_partition(const FiniteMetricSpace& x,
                                                 const ClusteringResult& opt);

MetricSketchResult sketch_k_2approx(const FiniteMetricSpace& x, int k);

MetricSketchResult fps_sketch_4approx(const FiniteMetricSpace& x, int k, int seed_index);

struct WassersteinMapResult {
  MetricMeasureSpace model;
  std::vector<int> block_to_model;
  bool degenerate = false;
};

// k-point mm-space with pairwise block Wasserstein distances and block
// masses.
WassersteinMapResult wasserstein_map(const MetricMeasureSpace& x, const Partition& part,
                                     double p);

struct SturmUpperResult {
  double value = 0.0;
  SturmPair witness;
};

// The explicit coupling pair built from a partition: block-diagonal plan,
// cross distances d(x, i) = W_p(delta_x, mu|B_i). Upper-bounds the Sturm
// sketch objective by the (p,p) clustering cost of the partition.
SturmUpperResult sturm_upper_from_partition(const MetricMeasureSpace& x, const Partition& part,
                                            double p);

struct SturmSketchResult {
  MetricMeasureSpace model;
  SturmPair relation;
  double upper = 0.0;
  double lower = 0.0;
  std::string method;
};

// Approximation pipeline: t-swap local search -> Voronoi partition ->
// Wasserstein map -> explicit coupling.
SturmSketchResult sketch_sturm_fp_approx(const MetricMeasureSpace& x, int k, double p, int t,
                                         double eps, BruteBudget budget = {});

// Certified upper bound on the coupling-based sketch objective: the best
// partition-coupling bound over candidate partitions (brute-force optimal
// when in budget, Gonzalez otherwise).
double weak_sketch_upper(const MetricMeasureSpace& x, int k, double p, BruteBudget budget = {},
                         Exec exec = Exec::parallel);

}  // namespace mms
