#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mms/correspondence.hpp"
#include "mms/instances.hpp"
#include "test_helpers.hpp"

using namespace mms;
using mms_test::tree6;

TEST_CASE("distortion of the identity is zero, one-point target gives diam") {
  const auto x = tree6();
  CHECK(distortion(Correspondence::identity(6), x, x) == 0.0);

  const auto one = gen_delta(1).space();
  Correspondence all;
  for (int i = 0; i < 6; ++i) all.pairs.emplace_back(i, 0);
  CHECK(distortion(all, x, one) == 4.0);  // diam of the tree instance
}

TEST_CASE("distortion of the branch-collapsing correspondence is 1") {
  const auto pair = gen_tree_counterexample(1);
  Correspondence r;
  r.pairs = {{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 2}, {5, 2}};
  CHECK(distortion(r, pair.x, pair.y) == 1.0);
}

TEST_CASE("invalid correspondences are rejected") {
  const auto x = gen_delta(3).space();
  Correspondence missing;
  missing.pairs = {{0, 0}, {1, 0}};  // point 2 of X missing
  CHECK_THROWS_AS(distortion(missing, x, gen_delta(1).space()), Error);
}

TEST_CASE("canonical coupling: members sit at dis/2, identity reproduces d_X") {
  const auto pair = gen_tree_counterexample(1);
  Correspondence r;
  r.pairs = {{0, 0}, {1, 0}, {2, 1}, {3, 1}, {4, 2}, {5, 2}};
  const MetricCoupling d = canonical_coupling(r, pair.x, pair.y);
  for (auto [i, j] : r.pairs) CHECK(d.cross(i, j) == 0.5);

  const auto x = tree6();
  const MetricCoupling ident = canonical_coupling(Correspondence::identity(6), x, x);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(ident.cross(i, j) == x.dist(i, j));
}

TEST_CASE("canonical coupling to the one-point space is diam/2 everywhere") {
  const auto x = tree6();
  const auto one = gen_delta(1).space();
  Correspondence all;
  for (int i = 0; i < 6; ++i) all.pairs.emplace_back(i, 0);
  const MetricCoupling d = canonical_coupling(all, x, one);
  for (int i = 0; i < 6; ++i) CHECK(d.cross(i, 0) == 2.0);  // diam/2
}

TEST_CASE("hausdorff inside a coupling") {
  const auto x = tree6();
  // X glued to itself with a constant offset.
  std::vector<std::vector<double>> cross(6, std::vector<double>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) cross[i][j] = x.dist(i, j) + 0.25;
  const MetricCoupling d = MetricCoupling::checked(x, x, cross);
  CHECK(hausdorff_in_coupling(d, x, x) == 0.25);

  const auto one = gen_delta(1).space();
  std::vector<std::vector<double>> c1(6, std::vector<double>(1, 2.0));
  const MetricCoupling d1 = MetricCoupling::checked(x, one, c1);
  CHECK(hausdorff_in_coupling(d1, x, one) == 2.0);
}

TEST_CASE("hausdorff in the canonical coupling is at most dis/2") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_metric_space(5, rng);
    const auto y = random_metric_space(3, rng);
    // nearest-map correspondence
    Correspondence r;
    for (int i = 0; i < 5; ++i) r.pairs.emplace_back(i, i % 3);
    for (int j = 0; j < 3; ++j) r.pairs.emplace_back(j, j);
    std::sort(r.pairs.begin(), r.pairs.end());
    r.pairs.erase(std::unique(r.pairs.begin(), r.pairs.end()), r.pairs.end());
    const double half_dis = distortion(r, x, y) / 2.0;
    const MetricCoupling d = canonical_coupling(r, x, y);
    CHECK(hausdorff_in_coupling(d, x, y) <= half_dis + 1e-12);
  }
}

TEST_CASE("gh oracle: one-point, self, and the tree pair") {
  const auto x = tree6();
  const auto one = gen_delta(1).space();
  CHECK(gh_oracle(x, one).value == 2.0);  // diam/2
  CHECK(gh_oracle(x, x).value == 0.0);

  const auto pair = gen_tree_counterexample(1);
  const GhResult r = gh_oracle(pair.x, pair.y);
  CHECK(r.value == 0.5);
  CHECK(r.optimal);
  CHECK(distortion(r.witness, pair.x, pair.y) == 1.0);
}

TEST_CASE("gh oracle agrees with the reference oracles on random pairs") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 15; ++trial) {
    const auto x = random_metric_space(2 + static_cast<int>(rng() % 3), rng);
    const auto y = random_metric_space(2 + static_cast<int>(rng() % 2), rng);
    const double dfs = gh_oracle(x, y).value;
    const double maps = gh_oracle_map_pairs(x, y).value;
    CHECK(dfs == maps);
    if (x.size() * y.size() <= 12) CHECK(dfs == gh_oracle_subsets(x, y).value);
  }
}

TEST_CASE("gh oracle is symmetric and dominates the returned witness") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_metric_space(5, rng);
    const auto y = random_metric_space(4, rng);
    const GhResult a = gh_oracle(x, y);
    const GhResult b = gh_oracle(y, x);
    CHECK(a.value == b.value);
    CHECK(distortion(a.witness, x, y) == 2.0 * a.value);
    CHECK(gh_lower_bound(x, y) <= a.value + 1e-15);
  }
}

TEST_CASE("optimal couplings glue at the oracle value") {
  std::mt19937_64 rng(307);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_metric_space(5, rng);
    const auto y = random_metric_space(3, rng);
    const GhResult r = gh_oracle(x, y);
    const MetricCoupling d = canonical_coupling(r.witness, x, y);
    CHECK(hausdorff_in_coupling(d, x, y) == doctest::Approx(r.value).epsilon(1e-12));
  }
}

TEST_CASE("gh triangle inequality on random 4-point triples") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_metric_space(4, rng);
    const auto y = random_metric_space(4, rng);
    const auto z = random_metric_space(4, rng);
    const double xy = gh_oracle_map_pairs(x, y).value;
    const double yz = gh_oracle_map_pairs(y, z).value;
    const double xz = gh_oracle_map_pairs(x, z).value;
    CHECK(xz <= xy + yz + 1e-12);
  }
}

TEST_CASE("gh lower bound examples") {
  CHECK(gh_lower_bound(gen_delta(2).space(), gen_delta(1).space()) == 0.5);
  const auto x = tree6();
  const auto k = x.restrict_to({0, 2, 4});
  CHECK(gh_lower_bound(x, k) == 1.0);  // |4 - 2| / 2
  CHECK(gh_lower_bound(x, x) == 0.0);
}

TEST_CASE("budget exhaustion returns a certified interval") {
  std::mt19937_64 rng(47);
  const auto x = random_metric_space(7, rng);
  const auto y = random_metric_space(5, rng);
  GhBudget tiny;
  tiny.max_nodes = 50;
  const GhResult r = gh_oracle(x, y, tiny);
  CHECK_FALSE(r.optimal);
  const GhResult full = gh_oracle(x, y);
  CHECK(r.lower <= full.value + 1e-15);
  CHECK(full.value <= r.upper + 1e-15);
}
