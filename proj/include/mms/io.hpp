#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mms/correspondence.hpp"
#include "mms/instances.hpp"
#include "mms/metric_core.hpp"
#include "mms/sketching.hpp"
#include "mms/transport.hpp"

namespace mms {

// Space file: line 1 is n, then n whitespace-separated matrix rows, then an
// optional "measure:" line followed by n masses. Values are written with 17
// significant digits so read-back is bit-identical.
struct LoadedSpace {
  FiniteMetricSpace space;
  std::optional<std::vector<double>> mass;

  MetricMeasureSpace require_measure() const;
};

LoadedSpace read_space(std::istream& in, Exec exec = Exec::parallel);
LoadedSpace read_space_file(const std::string& path, Exec exec = Exec::parallel);
void write_space(std::ostream& out, const FiniteMetricSpace& x);
void write_space(std::ostream& out, const MetricMeasureSpace& x);

// Partition file: one line per block, space-separated indices.
Partition read_partition(std::istream& in, int n);
void write_partition(std::ostream& out, const Partition& p);

// Coupling file: sparse triplets "i j mass", one per line.
MeasureCoupling read_coupling(std::istream& in, const std::vector<double>& mu_x,
                              const std::vector<double>& mu_y);
void write_coupling(std::ostream& out, const MeasureCoupling& plan);

// Correspondence file: pairs "i j", one per line.
Correspondence read_correspondence(std::istream& in);
void write_correspondence(std::ostream& out, const Correspondence& r);

// Set cover file: line 1 "n m k", then m lines of element indices.
SetCoverInstance read_setcover(std::istream& in);

// Sketch output: <base>.model.txt, <base>.relation.txt and <base>.bounds.txt
// ("bounds: lower upper method").
void write_sketch(const std::string& base_path, const MetricSketchResult& r);
void write_sketch(const std::string& base_path, const SturmSketchResult& r);

std::string format_value(double v);  // 17 significant digits

}  // namespace mms
