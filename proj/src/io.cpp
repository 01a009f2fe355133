#include "mms/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mms {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail("ParseError", "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

MetricMeasureSpace LoadedSpace::require_measure() const {
  if (!mass) fail("MeasureRequired", "space file carries no measure: line");
  return MetricMeasureSpace::validate(space, *mass);
}

LoadedSpace read_space(std::istream& in, Exec exec) {
  int lineno = 0;
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) parse_fail(1, "expected point count");
  int n = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> n) || n < 1) parse_fail(lineno, "invalid point count");
  }
  std::vector<std::vector<double>> matrix(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!next_line()) parse_fail(lineno + 1, "expected matrix row " + std::to_string(i));
    std::istringstream ss(line);
    double v;
    while (ss >> v) matrix[static_cast<std::size_t>(i)].push_back(v);
    if (static_cast<int>(matrix[static_cast<std::size_t>(i)].size()) != n)
      parse_fail(lineno, "row " + std::to_string(i) + " needs " + std::to_string(n) + " entries");
  }
  std::optional<std::vector<double>> mass;
  if (next_line()) {
    if (line.rfind("measure:", 0) != 0) parse_fail(lineno, "expected measure: line");
    std::vector<double> m;
    std::string rest = line.substr(8);
    std::istringstream ss(rest);
    double v;
    while (ss >> v) m.push_back(v);
    while (static_cast<int>(m.size()) < n && next_line()) {
      std::istringstream ms(line);
      while (ms >> v) m.push_back(v);
    }
    if (static_cast<int>(m.size()) != n) parse_fail(lineno, "measure needs n masses");
    mass = std::move(m);
  }
  return {FiniteMetricSpace::validate(matrix, {}, exec), std::move(mass)};
}

LoadedSpace read_space_file(const std::string& path, Exec exec) {
  std::ifstream in(path);
  if (!in) fail("IoError", "cannot open " + path);
  return read_space(in, exec);
}

void write_space(std::ostream& out, const FiniteMetricSpace& x) {
  out << x.size() << "\n";
  for (int i = 0; i < x.size(); ++i) {
    for (int j = 0; j < x.size(); ++j) out << (j ? " " : "") << format_value(x.dist(i, j));
    out << "\n";
  }
}

void write_space(std::ostream& out, const MetricMeasureSpace& x) {
  write_space(out, x.space());
  out << "measure:";
  for (int i = 0; i < x.size(); ++i) out << " " << format_value(x.mass(i));
  out << "\n";
}

Partition read_partition(std::istream& in, int n) {
  std::vector<std::vector<int>> blocks;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<int> blk;
    int v;
    while (ss >> v) blk.push_back(v);
    if (!blk.empty()) blocks.push_back(std::move(blk));
  }
  if (blocks.empty()) parse_fail(lineno, "no blocks");
  return Partition::checked(std::move(blocks), n);
}

void write_partition(std::ostream& out, const Partition& p) {
  for (const auto& blk : p.blocks()) {
    for (std::size_t i = 0; i < blk.size(); ++i) out << (i ? " " : "") << blk[i];
    out << "\n";
  }
}

MeasureCoupling read_coupling(std::istream& in, const std::vector<double>& mu_x,
                              const std::vector<double>& mu_y) {
  const int n = static_cast<int>(mu_x.size());
  const int m = static_cast<int>(mu_y.size());
  std::vector<std::vector<double>> plan(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(m), 0.0));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    int i, j;
    double v;
    if (!(ss >> i >> j >> v)) parse_fail(lineno, "expected 'i j mass'");
    if (i < 0 || i >= n || j < 0 || j >= m) parse_fail(lineno, "index out of range");
    plan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += v;
  }
  return MeasureCoupling::checked(std::move(plan), mu_x, mu_y);
}

void write_coupling(std::ostream& out, const MeasureCoupling& plan) {
  for (const auto& [i, j] : plan.support(0.0))
    out << i << " " << j << " " << format_value(plan.at(i, j)) << "\n";
}

Correspondence read_correspondence(std::istream& in) {
  Correspondence r;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    int i, j;
    if (!(ss >> i >> j)) parse_fail(lineno, "expected 'i j'");
    r.pairs.emplace_back(i, j);
  }
  return r;
}

void write_correspondence(std::ostream& out, const Correspondence& r) {
  for (auto [i, j] : r.pairs) out << i << " " << j << "\n";
}

SetCoverInstance read_setcover(std::istream& in) {
  std::string line;
  int lineno = 0;
  SetCoverInstance inst;
  int m = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    if (!(ss >> inst.universe >> m >> inst.k)) parse_fail(lineno, "expected 'n m k'");
    break;
  }
  for (int j = 0; j < m; ++j) {
    if (!std::getline(in, line)) parse_fail(lineno, "expected " + std::to_string(m) + " subset lines");
    ++lineno;
    std::istringstream ss(line);
    std::vector<int> s;
    int e;
    while (ss >> e) s.push_back(e);
    inst.subsets.push_back(std::move(s));
  }
  inst.check();
  return inst;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("IoError", "cannot write " + path);
  return out;
}

}  // namespace

void write_sketch(const std::string& base_path, const MetricSketchResult& r) {
  {
    auto out = open_out(base_path + ".model.txt");
    write_space(out, r.model);
  }
  {
    auto out = open_out(base_path + ".relation.txt");
    write_correspondence(out, r.relation);
  }
  auto out = open_out(base_path + ".bounds.txt");
  out << "bounds: " << format_value(r.lower) << " " << format_value(r.upper) << " " << r.method
      << "\n";
}

void write_sketch(const std::string& base_path, const SturmSketchResult& r) {
  {
    auto out = open_out(base_path + ".model.txt");
    write_space(out, r.model);
  }
  {
    auto out = open_out(base_path + ".relation.txt");
    write_coupling(out, r.relation.plan);
  }
  auto out = open_out(base_path + ".bounds.txt");
  out << "bounds: " << format_value(r.lower) << " " << format_value(r.upper) << " " << r.method
      << "\n";
}

}  // namespace mms
