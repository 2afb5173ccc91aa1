#include <random>

#include "doctest.h"
#include "qf/arith.hpp"

using namespace qf;

namespace {

// cofactor expansion along the first row
Int det_cofactor(const IntMat& a) {
  long n = (long)a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Int out = 0;
  for (long j = 0; j < n; ++j) {
    IntMat minor;
    for (long i = 1; i < n; ++i) {
      IntVec row;
      for (long k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Int term = Int(a[0][j]) * det_cofactor(minor);
    out += (j % 2 ? -term : term);
  }
  return out;
}

IntMat random_matrix(std::mt19937& rng, long rows, long cols, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMat a(rows, IntVec(cols));
  for (auto& r : a)
    for (auto& x : r) x = d(rng);
  return a;
}

}  // namespace

TEST_CASE("binomial and factorial small values") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(5, -1) == 0);
  for (long n = 1; n <= 20; ++n)
    for (long k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    long n = 1 + t % 5;
    IntMat a = random_matrix(rng, n, n, 3);
    CHECK(det(a) == det_cofactor(a));
  }
}

TEST_CASE("rank of products is bounded by the inner dimension") {
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    IntMat b = random_matrix(rng, 5, 2, 3), c = random_matrix(rng, 2, 6, 3);
    IntMat p(5, IntVec(6, 0));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 2; ++k) p[i][j] += b[i][k] * c[k][j];
    CHECK(rank(p) <= 2);
    CHECK(rank(p) == rank(transpose(p)));
  }
}

TEST_CASE("unimodular inverse") {
  IntMat a{{1, 2, 0}, {0, 1, 3}, {0, 0, 1}};
  IntMat inv = unimodular_inverse(a);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * inv[k][j];
      CHECK(s == (i == j ? 1 : 0));
    }
  CHECK_THROWS_AS(unimodular_inverse({{2, 0}, {0, 1}}), Error);
}

TEST_CASE("simplex on a small LP") {
  // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
  RatMat a{{1, 2, 1, 0}, {3, 1, 0, 1}};
  auto r = simplex_max(a, {4, 6}, {1, 1, 0, 0});
  REQUIRE(r.status == LPResult::Optimal);
  CHECK(r.value == Rat(14, 5));
  auto inf = simplex_max({{1, 1}}, {-1}, {1, 0});
  CHECK(inf.status == LPResult::Infeasible);
  auto unb = simplex_max({{1, -1}}, {0}, {1, 0});
  CHECK(unb.status == LPResult::Unbounded);
}

TEST_CASE("cone membership") {
  std::vector<IntVec> gens{{1, 0}, {1, 1}};
  CHECK(in_cone(gens, {3, 1}));
  CHECK(in_cone(gens, {1, 0}));
  CHECK_FALSE(in_cone(gens, {0, 1}));
  CHECK(in_cone_interior(gens, {2, 1}));
  CHECK_FALSE(in_cone_interior(gens, {1, 0}));
}

TEST_CASE("solve and rational rounding") {
  RatVec x;
  REQUIRE(solve({{2, 1}, {1, 3}}, {3, 5}, x));
  CHECK(x[0] == Rat(4, 5));
  CHECK(x[1] == Rat(7, 5));
  CHECK_FALSE(solve({{1, 1}, {1, 1}}, {1, 2}, x));
  CHECK(floor_rat(Rat(-7, 2)) == -4);
  CHECK(ceil_rat(Rat(-7, 2)) == -3);
  CHECK(floor_rat(Rat(6, 3)) == 2);
}
