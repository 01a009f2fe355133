#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "mms/io.hpp"
#include "test_helpers.hpp"

using namespace mms;

TEST_CASE("space files round-trip bit-identically") {
  std::mt19937_64 rng(241);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_mm_space(2 + static_cast<int>(rng() % 8), rng);
    std::stringstream ss;
    write_space(ss, x);
    const LoadedSpace back = read_space(ss);
    REQUIRE(back.mass.has_value());
    const auto mm = back.require_measure();
    for (int i = 0; i < x.size(); ++i) {
      CHECK(mm.mass(i) == x.mass(i));
      for (int j = 0; j < x.size(); ++j) CHECK(mm.dist(i, j) == x.dist(i, j));
    }
  }
}

TEST_CASE("space files without a measure load as plain metric spaces") {
  std::mt19937_64 rng(251);
  const auto x = random_metric_space(5, rng);
  std::stringstream ss;
  write_space(ss, x);
  const LoadedSpace back = read_space(ss);
  CHECK_FALSE(back.mass.has_value());
  try {
    back.require_measure();
    FAIL("expected MeasureRequired");
  } catch (const Error& e) {
    CHECK(e.code() == "MeasureRequired");
  }
}

TEST_CASE("parse errors carry line numbers") {
  std::stringstream bad("2\n0 1\n1\n");
  try {
    read_space(bad);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == "ParseError");
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("invalid matrices surface the metric error") {
  std::stringstream bad("3\n0 1 3\n1 0 1\n3 1 0\n");
  try {
    read_space(bad);
    FAIL("expected TriangleViolation");
  } catch (const Error& e) {
    CHECK(e.code() == "TriangleViolation");
  }
}

TEST_CASE("partition files round-trip") {
  const Partition p = Partition::checked({{0, 2}, {1}, {3, 4}}, 5);
  std::stringstream ss;
  write_partition(ss, p);
  const Partition back = read_partition(ss, 5);
  CHECK(back.blocks() == p.blocks());
}

TEST_CASE("coupling files round-trip through sparse triplets") {
  std::mt19937_64 rng(257);
  const auto x = random_mm_space(4, rng);
  const auto y = random_mm_space(3, rng);
  const MeasureCoupling plan = MeasureCoupling::product(x.masses(), y.masses());
  std::stringstream ss;
  write_coupling(ss, plan);
  const MeasureCoupling back = read_coupling(ss, x.masses(), y.masses());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) CHECK(back.at(i, j) == plan.at(i, j));
}

TEST_CASE("set cover files") {
  std::stringstream ss("3 2 1\n0 1\n1 2\n");
  const SetCoverInstance inst = read_setcover(ss);
  CHECK(inst.universe == 3);
  CHECK(inst.k == 1);
  REQUIRE(inst.subsets.size() == 2);
  CHECK(inst.subsets[1] == std::vector<int>{1, 2});
}
