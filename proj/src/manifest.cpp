#include "mms/manifest.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "mms/analysis.hpp"
#include "mms/clustering.hpp"
#include "mms/common.hpp"
#include "mms/correspondence.hpp"
#include "mms/instances.hpp"
#include "mms/io.hpp"
#include "mms/sketching.hpp"
#include "mms/transport.hpp"

namespace mms {

namespace {

using nlohmann::json;

double parse_p(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return kInf;
    fail("BadManifest", std::string(key) + " must be a number or \"inf\"");
  }
  return v.get<double>();
}

FiniteMetricSpace gen_metric(const json& desc);

MetricMeasureSpace gen_mm(const json& desc) {
  const std::string family = desc.at("family").get<std::string>();
  if (family == "delta") return gen_delta(desc.at("m").get<int>());
  if (family == "circle") return gen_circle(desc.at("n").get<int>());
  if (family == "grid") return gen_grid(desc.at("n").get<int>());
  return MetricMeasureSpace::uniform(gen_metric(desc));
}

FiniteMetricSpace gen_metric(const json& desc) {
  if (desc.contains("file")) return read_space_file(desc.at("file").get<std::string>()).space;
  const std::string family = desc.at("family").get<std::string>();
  if (family == "delta") return gen_delta(desc.at("m").get<int>()).space();
  if (family == "circle") return gen_circle(desc.at("n").get<int>()).space();
  if (family == "grid") return gen_grid(desc.at("n").get<int>()).space();
  if (family == "ynk") return gen_ynk(desc.at("n").get<int>(), desc.at("k").get<int>());
  if (family == "sphere")
    return gen_sphere_sample(desc.at("dim").get<int>(), desc.at("n").get<int>(),
                             desc.at("seed").get<std::uint64_t>());
  if (family == "tree_x") return gen_tree_counterexample(desc.value("m", 1)).x;
  if (family == "tree_y") return gen_tree_counterexample(desc.value("m", 1)).y;
  if (family == "euclid_x") return gen_euclidean_counterexample(desc.value("m", 1)).x;
  if (family == "euclid_y") return gen_euclidean_counterexample(desc.value("m", 1)).y;
  fail("BadManifest", "unknown generator family " + family);
}

double run_op(const json& row) {
  const std::string op = row.at("op").get<std::string>();
  const double p = parse_p(row, "p", kInf);
  const double q = parse_p(row, "q", kInf);
  const int k = row.value("k", 1);

  if (op == "diam") {
    const FiniteMetricSpace x = gen_metric(row.at("space"));
    return diam(x, Subset::full(x.size()));
  }
  if (op == "diam_p") {
    const MetricMeasureSpace x = gen_mm(row.at("space"));
    return diam_p(x, Subset::full(x.size()), p);
  }
  if (op == "shatter_brute") {
    const MetricMeasureSpace x = gen_mm(row.at("space"));
    const Objective obj = row.contains("p") ? Objective::phi(p, q) : Objective::maxdiam();
    return shatter_bruteforce(x, k, obj).cost;
  }
  if (op == "shatter_rad_brute") {
    const MetricMeasureSpace x = gen_mm(row.at("space"));
    return shatter_bruteforce(x, k, Objective::rad(p, q)).cost;
  }
  if (op == "shatter_contiguous") {
    const FiniteMetricSpace x = gen_metric(row.at("space"));
    return shatter_contiguous(x, k, row.value("circular", false)).cost;
  }
  if (op == "shatter_ultrametric") {
    const FiniteMetricSpace x = gen_metric(row.at("space"));
    return shatter_ultrametric_cut(x, k).cost;
  }
  if (op == "shatter_mp_contiguous") {
    const FiniteMetricSpace x = gen_metric(row.at("space"));
    return shatter_contiguous(metric_transform_mp(x, p), k, row.value("circular", false)).cost;
  }
  if (op == "gh") {
    const FiniteMetricSpace x = gen_metric(row.at("x"));
    const FiniteMetricSpace y = gen_metric(row.at("y"));
    return gh_oracle(x, y).value;
  }
  if (op == "sketch_exact") {
    const FiniteMetricSpace x = gen_metric(row.at("space"));
    return sketch_k_exact(x, k).upper;
  }
  if (op == "sketch_exact_contiguous") {
    const FiniteMetricSpace x = gen_metric(row.at("space"));
    const ClusteringResult opt = shatter_contiguous(x, k, row.value("circular", false));
    return sketch_from_optimal_partition(x, opt).upper;
  }
  if (op == "gonzalez") {
    const FiniteMetricSpace x = gen_metric(row.at("space"));
    return gonzalez(x, k).cost;
  }
  if (op == "fps_sketch_upper") {
    const FiniteMetricSpace x = gen_metric(row.at("space"));
    return fps_sketch_4approx(x, k, row.value("seed_index", 0)).upper;
  }
  if (op == "sturm_one_point") {
    const MetricMeasureSpace x = gen_mm(row.at("space"));
    return sturm_one_point(x, p).value;
  }
  if (op == "sturm_ratio") {
    // sturm_one_point value over the k=1 clustering cost (= diam_p).
    const MetricMeasureSpace x = gen_mm(row.at("space"));
    return sturm_one_point(x, p).value / diam_p(x, Subset::full(x.size()), p);
  }
  if (op == "sturm_upper_opt") {
    const MetricMeasureSpace x = gen_mm(row.at("space"));
    const ClusteringResult opt = shatter_bruteforce(x, k, Objective::phi(p, p));
    return sturm_upper_from_partition(x, opt.partition, p).value;
  }
  if (op == "gw_product") {
    const MetricMeasureSpace x = gen_mm(row.at("x"));
    const MetricMeasureSpace y = gen_mm(row.at("y"));
    return gw_upper_bound_product(x, y, p);
  }
  if (op == "weak_sketch_upper") {
    const MetricMeasureSpace x = gen_mm(row.at("space"));
    return weak_sketch_upper(x, k, p);
  }
  if (op == "covering_radius") {
    const FiniteMetricSpace x = gen_metric(row.at("space"));
    return covering_radius(x, k).value;
  }
  if (op == "doubling_constant") {
    const MetricMeasureSpace x = gen_mm(row.at("space"));
    return doubling_constant(x).C;
  }
  if (op == "v_delta") {
    const MetricMeasureSpace x = gen_mm(row.at("space"));
    return v_delta(x, row.at("delta").get<double>());
  }
  fail("BadManifest", "unknown op " + op);
}

}  // namespace

ManifestReport run_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IoError", "cannot open " + path);
  json doc = json::parse(in);

  ManifestReport report;
  report.name = doc.value("name", path);
  if (!doc.contains("rows")) return report;

  for (const json& row : doc.at("rows")) {
    ManifestRow r;
    r.name = row.value("name", row.at("op").get<std::string>());
    r.op = row.at("op").get<std::string>();
    r.expect = row.at("expect").get<double>();
    r.tol = row.value("tol", 0.0);
    r.cmp = row.value("cmp", "eq");
    r.tag = row.at("tag").get<std::string>();
    if (!(r.tol >= 0.0)) fail("BadManifest", "tolerances must be positive");
    const auto start = std::chrono::steady_clock::now();
    try {
      r.value = run_op(row);
      if (r.cmp == "eq")
        r.pass = std::abs(r.value - r.expect) <= r.tol;
      else if (r.cmp == "le")
        r.pass = r.value <= r.expect + r.tol;
      else if (r.cmp == "ge")
        r.pass = r.value >= r.expect - r.tol;
      else
        fail("BadManifest", "cmp must be eq, le or ge");
    } catch (const Error& e) {
      r.error = e.code();
      r.pass = false;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.all_pass = report.all_pass && r.pass;
    report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace mms
