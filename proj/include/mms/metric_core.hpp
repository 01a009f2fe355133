#pragma once

#include <string>
#include <vector>

#include "mms/common.hpp"

namespace mms {

// Validation tolerances. Distances and masses come from exact file values or
// closed-form generators, so these only absorb float rounding.
inline constexpr double kTriangleTol = 1e-9;  // relative to max entry
inline constexpr double kMassTol = 1e-9;

// Immutable finite metric space: labeled points with an n x n distance
// matrix. Construct through validate(); all invariants (symmetry, zero
// diagonal, positivity off-diagonal, triangle inequality) are checked there.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;  // empty placeholder, to be assigned

  static FiniteMetricSpace validate(const std::vector<std::vector<double>>& matrix,
                                    std::vector<std::string> labels = {},
                                    Exec exec = Exec::parallel);

  // Trusted constructor for generator-internal matrices that are metric by
  // construction but still cheap to check; runs the same checks.
  int size() const { return n_; }
  double dist(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& raw() const { return d_; }

  double max_dist() const { return max_dist_; }

  FiniteMetricSpace restrict_to(const std::vector<int>& indices) const;

 private:
  FiniteMetricSpace(int n, std::vector<double> d, std::vector<std::string> labels);

  int n_ = 0;
  std::vector<double> d_;  // row-major n*n
  std::vector<std::string> labels_;
  double max_dist_ = 0.0;
};

// Full-support probability measure on top of a FiniteMetricSpace.
class MetricMeasureSpace {
 public:
  static MetricMeasureSpace validate(FiniteMetricSpace space, std::vector<double> mass);
  static MetricMeasureSpace uniform(FiniteMetricSpace space);

  const FiniteMetricSpace& space() const { return space_; }
  int size() const { return space_.size(); }
  double dist(int i, int j) const { return space_.dist(i, j); }
  double mass(int i) const { return mass_[i]; }
  const std::vector<double>& masses() const { return mass_; }

 private:
  MetricMeasureSpace(FiniteMetricSpace space, std::vector<double> mass)
      : space_(std::move(space)), mass_(std::move(mass)) {}

  FiniteMetricSpace space_;
  std::vector<double> mass_;
};

// Nonempty set of point indices.
struct Subset {
  std::vector<int> indices;

  static Subset checked(std::vector<int> idx, int n);
  static Subset full(int n);
  int size() const { return static_cast<int>(indices.size()); }
};

// k pairwise disjoint nonempty blocks covering [n].
class Partition {
 public:
  static Partition checked(std::vector<std::vector<int>> blocks, int n);
  // assign[i] in [0,k); every value in [0,k) must occur.
  static Partition from_assignment(const std::vector<int>& assign, int k);
  static Partition singletons(int n);

  int k() const { return static_cast<int>(blocks_.size()); }
  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int i) const { return blocks_[i]; }
  std::vector<int> assignment() const;

 private:
  Partition(std::vector<std::vector<int>> blocks, int n)
      : blocks_(std::move(blocks)), n_(n) {}

  std::vector<std::vector<int>> blocks_;
  int n_ = 0;
};

double diam(const FiniteMetricSpace& x, const Subset& b);

// p-averaged diameter of a measured block; p = kInf falls back to diam.
// Row partial sums are combined in index order, so serial and parallel
// agree to the last bit.
double diam_p(const MetricMeasureSpace& x, const Subset& b, double p,
              Exec exec = Exec::parallel);

struct RadResult {
  double value = 0.0;
  int center = -1;
};

RadResult rad_p(const MetricMeasureSpace& x, const Subset& b, double p);

double hausdorff_distance(const FiniteMetricSpace& x, const Subset& a, const Subset& b);

// Order-dependent nearest-center partition; ties go to the earliest center
// in `centers`, which is exactly the disjointification B_i' \ (B_1' u ...).
Partition voronoi_partition(const FiniteMetricSpace& x, const std::vector<int>& centers);

}  // namespace mms
