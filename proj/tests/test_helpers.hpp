#pragma once

#include <random>
#include <vector>

#include "mms/instances.hpp"
#include "mms/metric_core.hpp"

namespace mms_test {

inline mms::FiniteMetricSpace space_of(std::vector<std::vector<double>> m) {
  return mms::FiniteMetricSpace::validate(m);
}

inline mms::MetricMeasureSpace uniform_of(std::vector<std::vector<double>> m) {
  return mms::MetricMeasureSpace::uniform(space_of(std::move(m)));
}

// Points on a line, absolute-difference metric.
inline mms::FiniteMetricSpace line_space(const std::vector<double>& pts) {
  std::vector<std::vector<double>> d(pts.size(), std::vector<double>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) d[i][j] = std::abs(pts[i] - pts[j]);
  return space_of(std::move(d));
}

// The six-point three-branch tree table.
inline mms::FiniteMetricSpace tree6() { return mms::gen_tree_counterexample(1).x; }

}  // namespace mms_test
