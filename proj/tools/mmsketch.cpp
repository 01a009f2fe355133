// Command-line surface: validation, generators, clustering/sketching runs,
// duality verification and the serial-vs-parallel bench. Reports are TSV
// with columns: instance k p q value lower upper method seconds (and a
// status column for verify/manifest rows).
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mms/analysis.hpp"
#include "mms/clustering.hpp"
#include "mms/common.hpp"
#include "mms/correspondence.hpp"
#include "mms/instances.hpp"
#include "mms/io.hpp"
#include "mms/manifest.hpp"
#include "mms/sketching.hpp"
#include "mms/transport.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

double parse_p_flag(const std::string& s) {
  if (s == "inf") return mms::kInf;
  return std::stod(s);
}

std::string fmt_p(double p) { return mms::is_inf(p) ? "inf" : mms::format_value(p); }

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void tsv_header(std::ostream& out) {
  out << "instance\tk\tp\tq\tvalue\tlower\tupper\tmethod\tseconds\n";
}

void tsv_row(std::ostream& out, const std::string& instance, const std::string& k,
             const std::string& p, const std::string& q, double value, double lower, double upper,
             const std::string& method, double seconds) {
  out << instance << "\t" << k << "\t" << p << "\t" << q << "\t" << mms::format_value(value)
      << "\t" << mms::format_value(lower) << "\t" << mms::format_value(upper) << "\t" << method
      << "\t" << mms::format_value(seconds) << "\n";
}

std::vector<double> read_mass_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) mms::fail("IoError", "cannot open " + path);
  std::vector<double> m;
  double v;
  while (in >> v) m.push_back(v);
  if (static_cast<int>(m.size()) != n)
    mms::fail("ParseError", path + ": expected " + std::to_string(n) + " masses");
  return m;
}

mms::FiniteMetricSpace generate(const std::string& family, int n, int m, int k, int dim,
                                std::uint64_t seed, bool* has_measure,
                                std::vector<double>* measure) {
  *has_measure = false;
  auto with_measure = [&](const mms::MetricMeasureSpace& x) {
    *has_measure = true;
    *measure = x.masses();
    return x.space();
  };
  if (family == "delta") return with_measure(mms::gen_delta(m));
  if (family == "circle") return with_measure(mms::gen_circle(n));
  if (family == "grid") return with_measure(mms::gen_grid(n));
  if (family == "ynk") return mms::gen_ynk(n, k);
  if (family == "sphere") return mms::gen_sphere_sample(dim, n, seed);
  if (family == "tree_x") return mms::gen_tree_counterexample(m).x;
  if (family == "tree_y") return mms::gen_tree_counterexample(m).y;
  if (family == "euclid_x") return mms::gen_euclidean_counterexample(m).x;
  if (family == "euclid_y") return mms::gen_euclidean_counterexample(m).y;
  mms::fail("BadArgument", "unknown family " + family);
}

}  // namespace

int main(int argc, char** argv) {
  mms::apply_thread_env();
  CLI::App app{"sketching/clustering toolkit for finite metric measure spaces"};
  app.require_subcommand(1);

  // validate
  std::string val_path;
  bool val_mm = false;
  auto* cmd_validate = app.add_subcommand("validate", "check a space file");
  cmd_validate->add_option("path", val_path)->required();
  cmd_validate->add_flag("--mm", val_mm, "require a measure line");

  // gen
  std::string gen_family, gen_out, gen_setcover;
  int gen_n = 0, gen_m = 1, gen_k = 1, gen_dim = 3;
  std::uint64_t gen_seed = 0;
  bool gen_seed_set = false;
  auto* cmd_gen = app.add_subcommand("gen", "emit an instance file");
  cmd_gen->add_option("--family", gen_family,
                      "delta|circle|grid|ynk|sphere|tree_x|tree_y|euclid_x|euclid_y|setcover");
  cmd_gen->add_option("--setcover", gen_setcover, "set-cover instance file (family setcover)");
  cmd_gen->add_option("--n", gen_n);
  cmd_gen->add_option("--m", gen_m);
  cmd_gen->add_option("--k", gen_k);
  cmd_gen->add_option("--dim", gen_dim);
  cmd_gen->add_option("--seed", gen_seed)->each([&](const std::string&) { gen_seed_set = true; });
  cmd_gen->add_option("--out", gen_out, "output path (default stdout)");

  // shatter
  std::string sh_space, sh_p = "inf", sh_q = "inf", sh_objective = "maxdiam", sh_mode = "brute";
  int sh_k = 1;
  bool sh_circular = false;
  std::uint64_t sh_max_partitions = 50'000'000;
  auto* cmd_shatter = app.add_subcommand("shatter", "optimal clustering cost");
  cmd_shatter->add_option("--space", sh_space)->required();
  cmd_shatter->add_option("--k", sh_k)->required();
  cmd_shatter->add_option("--p", sh_p);
  cmd_shatter->add_option("--q", sh_q);
  cmd_shatter->add_option("--objective", sh_objective, "maxdiam|phi|rad");
  cmd_shatter->add_option("--mode", sh_mode, "brute|contiguous|ultrametric");
  cmd_shatter->add_flag("--circular", sh_circular);
  cmd_shatter->add_option("--max-partitions", sh_max_partitions);

  // sketch
  std::string sk_space, sk_method = "exact", sk_p = "1", sk_out;
  int sk_k = 1, sk_t = 1, sk_seed_index = 0;
  double sk_eps = 0.5;
  std::uint64_t sk_max_partitions = 50'000'000;
  auto* cmd_sketch = app.add_subcommand("sketch", "k-point sketch with certified bounds");
  cmd_sketch->add_option("--space", sk_space)->required();
  cmd_sketch->add_option("--k", sk_k)->required();
  cmd_sketch->add_option("--method", sk_method, "exact|2approx|fps|sturm");
  cmd_sketch->add_option("--p", sk_p);
  cmd_sketch->add_option("--t", sk_t);
  cmd_sketch->add_option("--epsilon", sk_eps);
  cmd_sketch->add_option("--seed-index", sk_seed_index);
  cmd_sketch->add_option("--out", sk_out, "base path for model/relation/bounds files");
  cmd_sketch->add_option("--max-partitions", sk_max_partitions);

  // gh
  std::string gh_x, gh_y, gh_mode = "dfs";
  std::uint64_t gh_max_maps = 50'000'000;
  auto* cmd_gh = app.add_subcommand("gh", "Gromov-Hausdorff oracle");
  cmd_gh->add_option("--x", gh_x)->required();
  cmd_gh->add_option("--y", gh_y)->required();
  cmd_gh->add_option("--oracle", gh_mode, "dfs|mappairs|subsets");
  cmd_gh->add_option("--max-maps", gh_max_maps);

  // wasserstein
  std::string ws_space, ws_mu_a, ws_mu_b, ws_p = "1";
  auto* cmd_ws = app.add_subcommand("wasserstein", "transport distance between measures");
  cmd_ws->add_option("--space", ws_space)->required();
  cmd_ws->add_option("--mu-a", ws_mu_a)->required();
  cmd_ws->add_option("--mu-b", ws_mu_b)->required();
  cmd_ws->add_option("--p", ws_p, "exponent or inf");

  // verify-duality
  int vd_n = 8, vd_k = 3, vd_trials = 20;
  std::uint64_t vd_seed = 0;
  auto* cmd_vd = app.add_subcommand("verify-duality", "random-instance duality check");
  cmd_vd->add_option("--n", vd_n);
  cmd_vd->add_option("--k", vd_k);
  cmd_vd->add_option("--trials", vd_trials);
  cmd_vd->add_option("--seed", vd_seed)->required();

  // bench
  std::string bench_kernel = "shatter";
  int bench_n = 10, bench_k = 4;
  std::uint64_t bench_seed = 1;
  auto* cmd_bench = app.add_subcommand("bench", "serial vs OpenMP kernel timings");
  cmd_bench->add_option("--kernel", bench_kernel, "shatter|ghmaps|diamp|validate|all");
  cmd_bench->add_option("--n", bench_n);
  cmd_bench->add_option("--k", bench_k);
  cmd_bench->add_option("--seed", bench_seed);

  // manifest
  std::string man_path;
  auto* cmd_man = app.add_subcommand("manifest", "run an experiment manifest");
  cmd_man->add_option("path", man_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cmd_validate) {
      const mms::LoadedSpace loaded = mms::read_space_file(val_path);
      if (val_mm) loaded.require_measure();
      std::cout << "valid\n";
      return kExitOk;
    }

    if (*cmd_gen) {
      if ((gen_family == "sphere") && !gen_seed_set)
        mms::fail("BadArgument", "--seed is required for randomized generators");
      if (gen_family.empty() && gen_setcover.empty())
        mms::fail("BadArgument", "--family (or --setcover with family setcover) is required");
      bool has_measure = false;
      std::vector<double> measure;
      const mms::FiniteMetricSpace x = [&] {
        if (gen_family == "setcover" || (!gen_setcover.empty() && gen_family.empty())) {
          std::ifstream in(gen_setcover);
          if (!in) mms::fail("IoError", "cannot open " + gen_setcover);
          return mms::setcover_to_graph(mms::read_setcover(in));
        }
        return generate(gen_family, gen_n, gen_m, gen_k, gen_dim, gen_seed, &has_measure,
                        &measure);
      }();
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!gen_out.empty()) {
        file.open(gen_out);
        if (!file) mms::fail("IoError", "cannot write " + gen_out);
        out = &file;
      }
      if (has_measure)
        mms::write_space(*out, mms::MetricMeasureSpace::validate(x, measure));
      else
        mms::write_space(*out, x);
      return kExitOk;
    }

    if (*cmd_shatter) {
      const mms::LoadedSpace loaded = mms::read_space_file(sh_space);
      const double p = parse_p_flag(sh_p), q = parse_p_flag(sh_q);
      Timer timer;
      mms::ClusteringResult res = [&] {
        if (sh_mode == "contiguous") return mms::shatter_contiguous(loaded.space, sh_k, sh_circular);
        if (sh_mode == "ultrametric") return mms::shatter_ultrametric_cut(loaded.space, sh_k);
        mms::BruteBudget budget;
        budget.max_partitions = sh_max_partitions;
        if (sh_objective == "maxdiam") return mms::shatter_bruteforce(loaded.space, sh_k, budget);
        const mms::MetricMeasureSpace mm =
            loaded.mass ? loaded.require_measure() : mms::MetricMeasureSpace::uniform(loaded.space);
        const mms::Objective obj = sh_objective == "rad" ? mms::Objective::rad(p, q)
                                                         : mms::Objective::phi(p, q);
        return mms::shatter_bruteforce(mm, sh_k, obj, budget);
      }();
      tsv_header(std::cout);
      tsv_row(std::cout, sh_space, std::to_string(sh_k), fmt_p(p), fmt_p(q), res.cost, res.cost,
              res.cost, res.objective + (res.exact ? "/exact" : "/approx"), timer.seconds());
      return kExitOk;
    }

    if (*cmd_sketch) {
      const mms::LoadedSpace loaded = mms::read_space_file(sk_space);
      const double p = parse_p_flag(sk_p);
      mms::BruteBudget budget;
      budget.max_partitions = sk_max_partitions;
      Timer timer;
      tsv_header(std::cout);
      if (sk_method == "sturm") {
        const mms::MetricMeasureSpace mm =
            loaded.mass ? loaded.require_measure() : mms::MetricMeasureSpace::uniform(loaded.space);
        const mms::SturmSketchResult res =
            mms::sketch_sturm_fp_approx(mm, sk_k, p, sk_t, sk_eps, budget);
        tsv_row(std::cout, sk_space, std::to_string(sk_k), fmt_p(p), "-", res.upper, res.lower,
                res.upper, res.method, timer.seconds());
        if (!sk_out.empty()) mms::write_sketch(sk_out, res);
        return kExitOk;
      }
      mms::MetricSketchResult res = [&] {
        if (sk_method == "2approx") return mms::sketch_k_2approx(loaded.space, sk_k);
        if (sk_method == "fps") return mms::fps_sketch_4approx(loaded.space, sk_k, sk_seed_index);
        return mms::sketch_k_exact(loaded.space, sk_k, budget);
      }();
      tsv_row(std::cout, sk_space, std::to_string(sk_k), "-", "-", res.upper, res.lower, res.upper,
              res.method, timer.seconds());
      if (!sk_out.empty()) mms::write_sketch(sk_out, res);
      return kExitOk;
    }

    if (*cmd_gh) {
      const mms::FiniteMetricSpace x = mms::read_space_file(gh_x).space;
      const mms::FiniteMetricSpace y = mms::read_space_file(gh_y).space;
      mms::GhBudget budget;
      budget.max_pairs = gh_max_maps;
      Timer timer;
      mms::GhResult res = [&] {
        if (gh_mode == "mappairs") return mms::gh_oracle_map_pairs(x, y, budget);
        if (gh_mode == "subsets") return mms::gh_oracle_subsets(x, y);
        return mms::gh_oracle(x, y, budget);
      }();
      tsv_header(std::cout);
      tsv_row(std::cout, gh_x + "|" + gh_y, "-", "-", "-", res.value, res.lower, res.upper,
              std::string("gh-") + gh_mode + (res.optimal ? "/exact" : "/interval"),
              timer.seconds());
      return res.optimal ? kExitOk : kExitBudget;
    }

    if (*cmd_ws) {
      const mms::LoadedSpace loaded = mms::read_space_file(ws_space);
      const std::vector<double> mu_a = read_mass_file(ws_mu_a, loaded.space.size());
      const std::vector<double> mu_b = read_mass_file(ws_mu_b, loaded.space.size());
      const double p = parse_p_flag(ws_p);
      Timer timer;
      const mms::TransportResult res = mms::is_inf(p)
                                           ? mms::wasserstein_inf(loaded.space, mu_a, mu_b)
                                           : mms::wasserstein_p(loaded.space, mu_a, mu_b, p);
      tsv_header(std::cout);
      tsv_row(std::cout, ws_space, "-", fmt_p(p), "-", res.value, res.value, res.value,
              mms::is_inf(p) ? "bottleneck-flow" : "transport-simplex", timer.seconds());
      return kExitOk;
    }

    if (*cmd_vd) {
      std::mt19937_64 rng(vd_seed);
      std::cout << "instance\tk\tp\tq\tvalue\tlower\tupper\tmethod\tseconds\tstatus\n";
      bool all_ok = true;
      for (int trial = 0; trial < vd_trials; ++trial) {
        const mms::FiniteMetricSpace x = mms::random_metric_space(vd_n, rng);
        Timer timer;
        const mms::ClusteringResult opt = mms::shatter_bruteforce(x, vd_k);
        const mms::MetricSketchResult sk = mms::sketch_from_optimal_partition(x, opt);
        const mms::GhResult gh = mms::gh_oracle(x, sk.model);
        const bool ok = std::abs(gh.value - opt.cost / 2.0) <= 1e-12;
        all_ok = all_ok && ok;
        std::cout << "trial" << trial << "\t" << vd_k << "\t-\t-\t"
                  << mms::format_value(gh.value) << "\t" << mms::format_value(opt.cost / 2.0)
                  << "\t" << mms::format_value(sk.upper) << "\tduality\t"
                  << mms::format_value(timer.seconds()) << "\t" << (ok ? "OK" : "FAIL") << "\n";
      }
      return all_ok ? kExitOk : kExitCheckFailure;
    }

    if (*cmd_bench) {
      std::mt19937_64 rng(bench_seed);
      std::cout << "kernel\tn\tk\tserial_s\tparallel_s\tspeedup\tmatch\n";
      auto report = [&](const std::string& kernel, int n, int k, double ts, double tp, bool match) {
        std::cout << kernel << "\t" << n << "\t" << k << "\t" << mms::format_value(ts) << "\t"
                  << mms::format_value(tp) << "\t" << mms::format_value(ts / tp) << "\t"
                  << (match ? "yes" : "NO") << "\n";
      };
      const bool all = bench_kernel == "all";
      if (all || bench_kernel == "shatter") {
        // measured objective: the enumeration has no pruning, so the kernel
        // is a clean data-parallel sweep
        const mms::MetricMeasureSpace x = mms::random_mm_space(bench_n, rng);
        const mms::Objective obj = mms::Objective::phi(2, 2);
        Timer t1;
        const auto serial = mms::shatter_bruteforce(x, bench_k, obj, {}, mms::Exec::serial);
        const double ts = t1.seconds();
        Timer t2;
        const auto parallel = mms::shatter_bruteforce(x, bench_k, obj, {}, mms::Exec::parallel);
        report("shatter", bench_n, bench_k, ts, t2.seconds(), serial.cost == parallel.cost);
      }
      if (all || bench_kernel == "ghmaps") {
        const int n = std::min(bench_n, 7);
        const mms::FiniteMetricSpace x = mms::random_metric_space(n, rng);
        const mms::FiniteMetricSpace y = mms::random_metric_space(std::min(bench_k, 4), rng);
        Timer t1;
        const auto serial = mms::gh_oracle_map_pairs(x, y, {}, mms::Exec::serial);
        const double ts = t1.seconds();
        Timer t2;
        const auto parallel = mms::gh_oracle_map_pairs(x, y, {}, mms::Exec::parallel);
        report("ghmaps", n, std::min(bench_k, 4), ts, t2.seconds(),
               serial.value == parallel.value);
      }
      if (all || bench_kernel == "diamp") {
        const int n = std::max(bench_n, 500);
        const mms::MetricMeasureSpace x = mms::gen_grid(n);
        Timer t1;
        const double vs = mms::diam_p(x, mms::Subset::full(n), 2.0, mms::Exec::serial);
        const double ts = t1.seconds();
        Timer t2;
        const double vp = mms::diam_p(x, mms::Subset::full(n), 2.0, mms::Exec::parallel);
        report("diamp", n, 0, ts, t2.seconds(), std::abs(vs - vp) < 1e-12);
      }
      if (all || bench_kernel == "validate") {
        const int n = std::max(bench_n, 500);
        const mms::MetricMeasureSpace g = mms::gen_grid(n);
        std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                              std::vector<double>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.dist(i, j);
        Timer t1;
        (void)mms::FiniteMetricSpace::validate(rows, {}, mms::Exec::serial);
        const double ts = t1.seconds();
        Timer t2;
        (void)mms::FiniteMetricSpace::validate(rows, {}, mms::Exec::parallel);
        report("validate", n, 0, ts, t2.seconds(), true);
      }
      return kExitOk;
    }

    if (*cmd_man) {
      const mms::ManifestReport report = mms::run_manifest(man_path);
      std::cout << "name\top\tvalue\texpect\tcmp\ttol\ttag\tseconds\tstatus\n";
      for (const auto& row : report.rows) {
        std::cout << row.name << "\t" << row.op << "\t" << mms::format_value(row.value) << "\t"
                  << mms::format_value(row.expect) << "\t" << row.cmp << "\t"
                  << mms::format_value(row.tol) << "\t" << row.tag << "\t"
                  << mms::format_value(row.seconds) << "\t"
                  << (row.pass ? "OK" : (row.error.empty() ? "FAIL" : row.error)) << "\n";
      }
      std::cout << (report.all_pass ? "ALL OK" : "FAILURES") << "\t" << report.rows.size()
                << " rows\n";
      return report.all_pass ? kExitOk : kExitCheckFailure;
    }
  } catch (const mms::Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == "BudgetExceeded") return kExitBudget;
    if (e.code() == "BadArgument" || e.code() == "FlagConflict") return kExitUsage;
    return kExitCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
