#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mms/analysis.hpp"
#include "mms/instances.hpp"
#include "test_helpers.hpp"

using namespace mms;

TEST_CASE("doubling constant on unit-distance spaces and grids") {
  CHECK(doubling_constant(gen_delta(1)).C == 1.0);
  for (int m : {3, 5, 8}) CHECK(doubling_constant(gen_delta(m)).C == doctest::Approx(m));
  CHECK(doubling_constant(gen_grid(16)).C <= 4.0 + 1e-12);
}

TEST_CASE("doubling witnesses satisfy the defining inequality everywhere") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 6; ++trial) {
    const auto x = random_mm_space(7, rng);
    const DoublingReport rep = doubling_constant(x);
    auto ball = [&x](int c, double r) {
      double m = 0.0;
      for (int i = 0; i < x.size(); ++i)
        if (x.dist(c, i) <= r) m += x.mass(i);
      return m;
    };
    for (int c = 0; c < x.size(); ++c)
      for (int i = 0; i < x.size(); ++i)
        for (double r : {x.dist(c, i), x.dist(c, i) / 2.0}) {
          if (r <= 0) continue;
          CHECK(ball(c, 2.0 * r) <= rep.C * ball(c, r) + 1e-12);
        }
  }
}

TEST_CASE("f_delta on the two-point space") {
  const auto two = MetricMeasureSpace::uniform(mms_test::line_space({0.0, 1.0}));
  CHECK(f_delta(two, 0.3, 0.5) == 0.0);  // each ball has mass 0.5 > 0.3
  CHECK(f_delta(two, 0.6, 0.5) == 1.0);  // both balls fall under 0.6
  CHECK(f_delta(two, 0.3, 0.0) == 0.0);  // delta below the minimal mass
}

TEST_CASE("f_delta is nonincreasing in eps and within [0,1]") {
  std::mt19937_64 rng(223);
  const auto x = random_mm_space(8, rng);
  double prev = 1.0;
  for (double eps : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    const double f = f_delta(x, 0.2, eps);
    CHECK(f <= prev + 1e-15);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }
}

TEST_CASE("v_delta on closed forms") {
  const auto two = MetricMeasureSpace::uniform(mms_test::line_space({0.0, 1.0}));
  CHECK(v_delta(two, 0.3) == 0.0);
  for (int m : {3, 5}) {
    const auto d = gen_delta(m);
    CHECK(v_delta(d, 1.0 / m + 1e-6) == 1.0);
  }
}

TEST_CASE("v_delta is monotone in delta and respects the doubling bound") {
  std::mt19937_64 rng(227);
  for (int trial = 0; trial < 6; ++trial) {
    const auto x = random_mm_space(7, rng);
    double prev = 0.0;
    for (double delta : {0.05, 0.15, 0.35, 0.7}) {
      const double v = v_delta(x, delta);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
    const DoublingReport rep = doubling_constant(x);
    const double dm = diam(x.space(), Subset::full(x.size()));
    for (double delta : {0.1, 0.3})
      CHECK(v_delta(x, delta) <=
            2.0 * dm * std::pow(delta, 1.0 / std::log2(std::max(rep.C, 1.0 + 1e-12))) + 1e-12);
  }
}

TEST_CASE("covering radius basics") {
  std::mt19937_64 rng(229);
  const auto x = random_metric_space(7, rng);
  CHECK(covering_radius(x, 7).value == 0.0);
  const double d = diam(x, Subset::full(7));
  CHECK(covering_radius(x, 1).value >= d / 2.0 - 1e-12);

  // unit grid: one ball centered mid-grid reaches everything within 1/2
  const auto y = gen_ynk(4, 1);
  CHECK(covering_radius(y, 1).value == doctest::Approx(0.5).epsilon(1e-12));

  double prev = kInf;
  for (int k = 1; k <= 5; ++k) {
    const double v = covering_radius(x, k).value;
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("block grids keep covering radius at least one half") {
  for (int n : {4, 8, 16})
    for (int k : {1, 2}) CHECK(covering_radius(gen_ynk(n, k), k).value >= 0.5 - 1e-12);
}

TEST_CASE("admissibility table") {
  const auto rows = admissibility_report({4, 8, 16}, {1, 2}, 2.0);
  for (const auto& row : rows) {
    CHECK(row.cov_k >= 0.5 - 1e-12);
    if (row.functional == "phi_ultrametric")
      CHECK(row.shatter == doctest::Approx(1.0 / row.n).epsilon(1e-12));
    if (row.functional == "phi_bar") CHECK(row.shatter == 0.0);
    if (row.functional == "phi_p")
      CHECK(row.shatter == doctest::Approx(std::pow(row.n, -0.5)).epsilon(1e-12));
  }
}

TEST_CASE("doubling bound check on grids and the unmet path") {
  // grid with many blocks: the weak upper bound is far below 2^-5
  const auto g = gen_grid(64);
  const DoublingBoundReport rep = doubling_bound_check(g, 32, 1.0);
  CHECK(rep.precondition_met);
  CHECK(rep.delta <= rep.sturm_upper + 1e-12);
  CHECK(rep.sturm_upper < rep.rhs);
  CHECK(rep.holds);

  // unit-distance spaces at small k violate the precondition
  const DoublingBoundReport unmet = doubling_bound_check(gen_delta(6), 2, 1.0);
  CHECK_FALSE(unmet.precondition_met);
}
