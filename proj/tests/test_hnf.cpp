#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cbcalc/hnf.hpp"

using namespace cbcalc;
using namespace cbcalc::hnf;

namespace {

std::vector<Int> mat_vec(const Matrix& a, const std::vector<Int>& x) {
  std::vector<Int> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
  return out;
}

} // namespace

TEST_CASE("hand cases") {
  // 2x = 4 solvable, 2x = 3 not
  CHECK(solve_integer({{2}}, {4}).has_value());
  CHECK(!solve_integer({{2}}, {3}).has_value());

  // x + 2y = 1, 3x + 4y = 1  ->  x = -1, y = 1
  auto s = solve_integer({{1, 2}, {3, 4}}, {1, 1});
  REQUIRE(s.has_value());
  CHECK((*s)[0] == -1);
  CHECK((*s)[1] == 1);

  // inconsistent
  CHECK(!solve_integer({{1, 1}, {1, 1}}, {0, 1}).has_value());

  // underdetermined but 2x + 4y = 2 solvable; 2x + 4y = 1 not
  CHECK(solve_integer({{2, 4}}, {2}).has_value());
  CHECK(!solve_integer({{2, 4}}, {1}).has_value());
}

TEST_CASE("random constructed systems round-trip") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    int m = 1 + static_cast<int>(rng() % 6);
    int n = 1 + static_cast<int>(rng() % 8);
    Matrix a(m, std::vector<Int>(n));
    for (auto& row : a)
      for (auto& v : row) v = static_cast<long long>(rng() % 9) - 4;
    std::vector<Int> x0(n);
    for (auto& v : x0) v = static_cast<long long>(rng() % 11) - 5;
    std::vector<Int> b = mat_vec(a, x0);

    IntegerSolver solver(a);
    auto x = solver.solve(b);
    REQUIRE(x.has_value());
    CHECK(mat_vec(a, *x) == b);

    // a solution found for a perturbed target must still verify
    std::vector<Int> b2 = b;
    b2[rng() % m] += static_cast<long long>(rng() % 5) - 2;
    auto x2 = solver.solve(b2);
    if (x2) CHECK(mat_vec(a, *x2) == b2);
  }
}
