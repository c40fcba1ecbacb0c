#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cbcalc/ints.hpp"

namespace cbcalc::hnf {

using Matrix = std::vector<std::vector<Int>>; // row-major

/// Exact solver for A x = b over the integers. Construction reduces A to
/// column echelon form H = A U by unimodular column operations (Hermite-style
/// gcd elimination); each solve is then a forward substitution, so one matrix
/// can serve many right-hand sides.
class IntegerSolver {
public:
  explicit IntegerSolver(Matrix a);

  // Any integer solution of A x = b, or nullopt when none exists.
  std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const;

  int rows() const { return rows_; }
  int cols() const { return cols_; }

private:
  int rows_, cols_;
  Matrix h_; // column echelon form
  Matrix u_; // unimodular transform with A u = h
  std::vector<std::pair<int, int>> pivots_; // (row, col), rows increasing
};

std::optional<std::vector<Int>> solve_integer(const Matrix& a, const std::vector<Int>& b);

} // namespace cbcalc::hnf
