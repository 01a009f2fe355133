#include "mms/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "mms/common.hpp"

namespace mms {

namespace {

constexpr double kPivotEps = 1e-11;

// Standard-form tableau simplex. Rows: m constraints (all equalities after
// slack/surplus), columns: structural + slack + artificial, plus rhs.
struct Tableau {
  std::size_t rows = 0, cols = 0;  // cols excludes rhs
  std::vector<double> t;           // (rows+1) x (cols+1); last row = objective
  std::vector<int> basis;          // basis[r] = column basic in row r

  double& at(std::size_t r, std::size_t c) { return t[r * (cols + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t[r * (cols + 1) + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double pv = at(pr, pc);
    for (std::size_t c = 0; c <= cols; ++c) at(pr, c) /= pv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = static_cast<int>(pc);
  }

  // Bland's rule: entering = smallest column with negative reduced cost,
  // leaving = smallest ratio then smallest basis column. Returns false when
  // optimal, throws on unbounded.
  bool step(std::size_t usable_cols) {
    std::size_t pc = cols;
    for (std::size_t c = 0; c < usable_cols; ++c)
      if (at(rows, c) < -kPivotEps) {
        pc = c;
        break;
      }
    if (pc == cols) return false;
    std::size_t pr = rows;
    double best = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double a = at(r, pc);
      if (a > kPivotEps) {
        const double ratio = at(r, cols) / a;
        if (pr == rows || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis[r] < basis[pr])) {
          pr = r;
          best = ratio;
        }
      }
    }
    if (pr == rows) fail("LpUnbounded", "unbounded linear program");
    pivot(pr, pc);
    return true;
  }
};

}  // namespace

LpResult solve_lp(const std::vector<double>& objective,
                  const std::vector<LpConstraint>& constraints) {
  const std::size_t nvar = objective.size();
  const std::size_t m = constraints.size();

  std::size_t nslack = 0;
  for (const auto& c : constraints)
    if (c.rel != Rel::eq) ++nslack;

  Tableau tb;
  tb.rows = m;
  tb.cols = nvar + nslack + m;  // artificials for every row
  tb.t.assign((tb.rows + 1) * (tb.cols + 1), 0.0);
  tb.basis.assign(m, -1);

  std::size_t slack_at = nvar;
  const std::size_t art_at = nvar + nslack;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& con = constraints[r];
    double sign = 1.0;
    if (con.b < 0.0) sign = -1.0;  // keep rhs nonnegative
    for (std::size_t c = 0; c < nvar && c < con.a.size(); ++c)
      tb.at(r, c) = sign * con.a[c];
    tb.at(r, tb.cols) = sign * con.b;
    if (con.rel != Rel::eq) {
      const double s = (con.rel == Rel::le) ? 1.0 : -1.0;
      tb.at(r, slack_at) = sign * s;
      ++slack_at;
    }
    tb.at(r, art_at + r) = 1.0;
    tb.basis[r] = static_cast<int>(art_at + r);
  }

  // Phase 1: minimize sum of artificials.
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c <= tb.cols; ++c) tb.at(tb.rows, c) -= tb.at(r, c);
  while (tb.step(tb.cols)) {
  }
  LpResult res;
  if (tb.at(tb.rows, tb.cols) < -1e-7) {
    res.infeasible = true;
    return res;
  }
  // Drive leftover artificials out of the basis where possible.
  for (std::size_t r = 0; r < m; ++r) {
    if (static_cast<std::size_t>(tb.basis[r]) >= art_at) {
      for (std::size_t c = 0; c < art_at; ++c)
        if (std::abs(tb.at(r, c)) > kPivotEps) {
          tb.pivot(r, c);
          break;
        }
    }
  }

  // Phase 2: install the real objective, zero out basic columns.
  for (std::size_t c = 0; c <= tb.cols; ++c) tb.at(tb.rows, c) = 0.0;
  for (std::size_t c = 0; c < nvar; ++c) tb.at(tb.rows, c) = objective[c];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bc = static_cast<std::size_t>(tb.basis[r]);
    const double coef = tb.at(tb.rows, bc);
    if (coef != 0.0)
      for (std::size_t c = 0; c <= tb.cols; ++c) tb.at(tb.rows, c) -= coef * tb.at(r, c);
  }
  while (tb.step(art_at)) {  // artificials stay out
  }

  res.optimal = true;
  res.x.assign(nvar, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bc = static_cast<std::size_t>(tb.basis[r]);
    if (bc < nvar) res.x[bc] = tb.at(r, tb.cols);
  }
  double v = 0.0;
  for (std::size_t c = 0; c < nvar; ++c) v += objective[c] * res.x[c];
  res.value = v;
  return res;
}

}  // namespace mms
