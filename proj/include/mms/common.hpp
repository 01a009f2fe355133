#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mms {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double p) { return p == kInf; }

// Error with a stable machine-readable code ("TriangleViolation", ...).
// The CLI prints the code on stderr; tests match on it.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& msg) {
  throw Error(std::move(code), msg);
}

// Execution policy for kernels that have both a serial reference
// implementation and an OpenMP one. Serial is kept for testing and for
// the bench target; results must agree (bitwise for min/max reductions,
// within 1e-12 relative for floating sums).
enum class Exec { serial, parallel };

int hardware_threads();
void apply_thread_env();  // honors MMSKETCH_THREADS

// Order-fixed chunked accumulation: partial sums over fixed-size chunks are
// combined in index order, so the result does not depend on the number of
// threads used to fill the chunks.
inline constexpr std::size_t kSumChunk = 4096;

double chunked_sum(const std::vector<double>& terms);

}  // namespace mms
