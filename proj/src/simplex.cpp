#include "packbounds/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace packbounds {

namespace {
constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-12;
constexpr int kDegenerateRunBeforeBland = 50;
}  // namespace

SimplexResult simplex_maximize(const std::vector<double>& a, int rows, int cols,
                               const std::vector<double>& b, const std::vector<double>& c,
                               int max_pivots) {
  if (rows < 0 || cols < 0 || a.size() != static_cast<std::size_t>(rows) * cols ||
      b.size() != static_cast<std::size_t>(rows) || c.size() != static_cast<std::size_t>(cols))
    throw std::invalid_argument("simplex_maximize: shape mismatch");
  for (double v : b)
    if (!(v >= 0.0)) throw std::invalid_argument("simplex_maximize: requires b >= 0");

  // Tableau columns: structural 0..cols-1, slacks cols..cols+rows-1, rhs last.
  const int width = cols + rows + 1;
  std::vector<double> t(static_cast<std::size_t>(rows) * width, 0.0);
  auto at = [&](int i, int j) -> double& { return t[static_cast<std::size_t>(i) * width + j]; };
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) at(i, j) = a[static_cast<std::size_t>(i) * cols + j];
    at(i, cols + i) = 1.0;
    at(i, width - 1) = b[i];
  }
  // Reduced costs r_j = c_j - z_j; entering columns have r_j > 0.
  std::vector<double> reduced(width, 0.0);
  for (int j = 0; j < cols; ++j) reduced[j] = c[j];
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = cols + i;

  SimplexResult out;
  int degenerate_run = 0;
  for (;;) {
    const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
    int enter = -1;
    double best = kCostTol;
    for (int j = 0; j < width - 1; ++j) {
      if (reduced[j] > best) {
        enter = j;
        if (bland) break;
        best = reduced[j];
      }
    }
    if (enter < 0) {
      out.status = SimplexStatus::optimal;
      break;
    }
    if (out.pivots >= max_pivots) {
      out.status = SimplexStatus::iteration_limit;
      break;
    }
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      const double p = at(i, enter);
      if (p <= kPivotTol) continue;
      const double ratio = at(i, width - 1) / p;
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      out.status = SimplexStatus::unbounded;
      break;
    }
    degenerate_run = best_ratio == 0.0 ? degenerate_run + 1 : 0;

    const double pivot = at(leave, enter);
    for (int j = 0; j < width; ++j) at(leave, j) /= pivot;
    at(leave, enter) = 1.0;
    for (int i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double factor = at(i, enter);
      if (factor == 0.0) continue;
      for (int j = 0; j < width; ++j) at(i, j) -= factor * at(leave, j);
      at(i, enter) = 0.0;
      if (at(i, width - 1) < 0.0) at(i, width - 1) = 0.0;  // round-off below zero
    }
    const double factor = reduced[enter];
    for (int j = 0; j < width - 1; ++j) reduced[j] -= factor * at(leave, j);
    reduced[enter] = 0.0;
    basis[leave] = enter;
    ++out.pivots;
  }

  out.primal.assign(cols, 0.0);
  for (int i = 0; i < rows; ++i)
    if (basis[i] < cols) out.primal[basis[i]] = at(i, width - 1);
  // Recomputed from y rather than the running update to shed accumulated round-off.
  out.objective = 0.0;
  for (int j = 0; j < cols; ++j) out.objective += c[j] * out.primal[j];
  out.row_duals.assign(rows, 0.0);
  for (int i = 0; i < rows; ++i) out.row_duals[i] = -reduced[cols + i];
  return out;
}

}  // namespace packbounds
