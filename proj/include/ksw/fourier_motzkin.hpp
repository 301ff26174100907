#pragma once

#include "ksw/rational.hpp"

#include <optional>
#include <vector>

namespace ksw {

using RationalRow = std::vector<Rational>;

struct StrictFeasibility {
  bool feasible = false;
  // A solution with every row strictly positive, when feasible.
  std::optional<std::vector<Rational>> solution;
  // Nonnegative, nonzero multipliers y with sum_i y_i row_i = 0, when infeasible.
  std::optional<std::vector<Rational>> certificate;
};

// Decides whether {x : row_i . x > 0 for all i} is nonempty by exact Fourier-Motzkin elimination
// (variables eliminated in index order, Chernikov pruning on combination supports).
StrictFeasibility solve_strict_homogeneous(const std::vector<RationalRow>& rows, std::size_t num_vars);

// Checks y >= 0, y != 0 and y^T A = 0.
bool verify_certificate(const std::vector<RationalRow>& rows, const std::vector<Rational>& y);
// Checks row . x > 0 for every row.
bool verify_solution(const std::vector<RationalRow>& rows, const std::vector<Rational>& x);

}  // namespace ksw
