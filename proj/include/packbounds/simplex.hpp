#pragma once

#include <vector>

namespace packbounds {

enum class SimplexStatus { optimal, unbounded, iteration_limit };

/// Solution of  max c.y  s.t.  A y <= b, y >= 0  with b >= 0.
struct SimplexResult {
  SimplexStatus status = SimplexStatus::iteration_limit;
  double objective = 0.0;
  std::vector<double> primal;  // y
  /// Multipliers of the rows of A (the dual solution), >= 0 at optimality.
  std::vector<double> row_duals;
  int pivots = 0;
};

/// Dense tableau simplex. `a` is row-major rows x cols. Dantzig pricing,
/// switching to Bland's rule after a run of degenerate pivots.
SimplexResult simplex_maximize(const std::vector<double>& a, int rows, int cols,
                               const std::vector<double>& b, const std::vector<double>& c,
                               int max_pivots = 100000);

}  // namespace packbounds
