#include "cbcalc/hnf.hpp"

#include <stdexcept>

namespace cbcalc::hnf {

namespace {

// extended gcd: returns g >= 0 with g = s*a + t*b
Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int old_r = a, r = b;
  Int old_s = 1, s_ = 0;
  Int old_t = 0, t_ = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s_;
    old_s = s_;
    s_ = tmp;
    tmp = old_t - q * t_;
    old_t = t_;
    t_ = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

} // namespace

IntegerSolver::IntegerSolver(Matrix a)
    : rows_(static_cast<int>(a.size())),
      cols_(rows_ > 0 ? static_cast<int>(a[0].size()) : 0),
      h_(std::move(a)) {
  for (const auto& row : h_)
    if (static_cast<int>(row.size()) != cols_)
      throw std::invalid_argument("ragged matrix");
  u_.assign(cols_, std::vector<Int>(cols_, 0));
  for (int j = 0; j < cols_; ++j) u_[j][j] = 1;

  auto col_combine = [&](int j, int k, const Int& p, const Int& q, const Int& r,
                         const Int& s) {
    // (C_j, C_k) <- (p*C_j + q*C_k, r*C_j + s*C_k); p*s - q*r = ±1
    for (int i = 0; i < rows_; ++i) {
      Int nj = p * h_[i][j] + q * h_[i][k];
      Int nk = r * h_[i][j] + s * h_[i][k];
      h_[i][j] = nj;
      h_[i][k] = nk;
    }
    for (int i = 0; i < cols_; ++i) {
      Int nj = p * u_[i][j] + q * u_[i][k];
      Int nk = r * u_[i][j] + s * u_[i][k];
      u_[i][j] = nj;
      u_[i][k] = nk;
    }
  };

  int col = 0;
  for (int row = 0; row < rows_ && col < cols_; ++row) {
    int nz = -1;
    for (int j = col; j < cols_; ++j)
      if (h_[row][j] != 0) {
        nz = j;
        break;
      }
    if (nz < 0) continue;
    if (nz != col)
      for (int i = 0; i < rows_; ++i) std::swap(h_[i][col], h_[i][nz]);
    if (nz != col)
      for (int i = 0; i < cols_; ++i) std::swap(u_[i][col], u_[i][nz]);
    for (int j = col + 1; j < cols_; ++j) {
      if (h_[row][j] == 0) continue;
      Int s, t;
      Int g = xgcd(h_[row][col], h_[row][j], s, t);
      Int ac = h_[row][col] / g, aj = h_[row][j] / g;
      col_combine(col, j, s, t, -aj, ac);
    }
    if (h_[row][col] < 0) {
      for (int i = 0; i < rows_; ++i) h_[i][col] = -h_[i][col];
      for (int i = 0; i < cols_; ++i) u_[i][col] = -u_[i][col];
    }
    pivots_.emplace_back(row, col);
    ++col;
  }
}

std::optional<std::vector<Int>> IntegerSolver::solve(const std::vector<Int>& b) const {
  if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("size mismatch");
  std::vector<Int> y(cols_, 0);
  // pivot k always lands in column k, so the determined prefix is y[0..next_pivot)
  std::size_t next_pivot = 0;
  for (int row = 0; row < rows_; ++row) {
    Int acc = 0;
    for (std::size_t j = 0; j < next_pivot; ++j)
      if (y[j] != 0) acc += y[j] * h_[row][j];
    Int rem = b[row] - acc;
    if (next_pivot < pivots_.size() && pivots_[next_pivot].first == row) {
      int pc = pivots_[next_pivot].second;
      const Int& d = h_[row][pc];
      if (rem % d != 0) return std::nullopt;
      y[pc] = rem / d;
      ++next_pivot;
    } else {
      if (rem != 0) return std::nullopt;
    }
  }
  std::vector<Int> x(cols_, 0);
  for (int i = 0; i < cols_; ++i) {
    Int acc = 0;
    for (int j = 0; j < cols_; ++j)
      if (y[j] != 0) acc += u_[i][j] * y[j];
    x[i] = acc;
  }
  return x;
}

std::optional<std::vector<Int>> solve_integer(const Matrix& a, const std::vector<Int>& b) {
  return IntegerSolver(a).solve(b);
}

} // namespace cbcalc::hnf
