#pragma once

#include <string>
#include <vector>

namespace mms {

// Experiment manifests are JSON files listing operations with expected
// values, comparison mode (eq / le / ge), tolerance and a provenance tag.
// run_manifest executes every row and reports pass/fail per row.
struct ManifestRow {
  std::string name;
  std::string op;
  double value = 0.0;
  double expect = 0.0;
  double tol = 0.0;
  std::string cmp;
  std::string tag;
  bool pass = false;
  double seconds = 0.0;
  std::string error;  // nonempty when the row threw
};

struct ManifestReport {
  std::string name;
  std::vector<ManifestRow> rows;
  bool all_pass = true;
};

ManifestReport run_manifest(const std::string& path);

}  // namespace mms
