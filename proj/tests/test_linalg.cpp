#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "limitfem/linalg.hpp"
#include "limitfem/sparse.hpp"

using namespace limitfem;

namespace {

CompressedMatrix poisson_1d(std::size_t n) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 2.0;
    if (i > 0) d[i][i - 1] = -1.0;
    if (i + 1 < n) d[i][i + 1] = -1.0;
  }
  return CompressedMatrix::from_dense(d);
}

CompressedMatrix random_spd(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> b(n, std::vector<double>(n));
  for (auto& row : b)
    for (auto& v : row) v = u(rng);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) a[i][j] += b[i][k] * b[j][k];
    }
    a[i][i] += static_cast<double>(n);
  }
  return CompressedMatrix::from_dense(a);
}

}  // namespace

TEST_CASE("compressed matrix basics") {
  CompressedMatrix m(3, {{0, 2, 2}, {1}, {0, 2}});
  CHECK(m.nonzeros() == 5);
  CHECK(m.find(0, 1) == CompressedMatrix::npos);
  m.add(0, 2, 1.5);
  m.add(0, 2, 1.0);
  CHECK(m.at(0, 2) == 2.5);
  CHECK(m.at(0, 1) == 0.0);
  CHECK_THROWS(m.add(0, 1, 1.0));
  m.add(2, 0, 2.5);
  CHECK(m.asymmetry() == 0.0);
  m.add(2, 0, 1.0);
  CHECK(m.asymmetry() == 1.0);
  const auto y = m.multiply(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(y == std::vector<double>{7.5, 0.0, 3.5});
  m.set_zero();
  CHECK(m.at(0, 2) == 0.0);
  CHECK_THROWS_AS(CompressedMatrix(2, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(CompressedMatrix(2, {{0}, {5}}), std::out_of_range);
}

TEST_CASE("vector helpers") {
  const std::vector<double> a{3.0, 4.0}, b{1.0, -1.0};
  CHECK(dot(a, b) == -1.0);
  CHECK(norm2(a) == 5.0);
}

TEST_CASE("CG on the identity takes one iteration") {
  const auto id = CompressedMatrix::identity(6);
  const std::vector<double> b{1, -2, 3, 0.5, 7, -1};
  const auto r = cg_ssor(id, b);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(r.x[i] - b[i]) < 1e-15);
}

TEST_CASE("CG with zero right-hand side") {
  const auto r = cg_ssor(poisson_1d(5), std::vector<double>(5, 0.0));
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  for (double v : r.x) CHECK(v == 0.0);
}

TEST_CASE("CG matches the direct solver on 1D Poisson") {
  const auto a = poisson_1d(10);
  const std::vector<double> b(10, 1.0);
  const auto cg = cg_ssor(a, b);
  const auto direct = sparse_direct_solve(a, b);
  CHECK(cg.converged);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(std::abs(cg.x[i] - direct[i]) < 1e-10);
    // Exact solution x_i = (i+1)(n-i)/2.
    CHECK(std::abs(direct[i] - 0.5 * (i + 1.0) * (10.0 - i)) < 1e-10);
  }
}

TEST_CASE("direct solver small systems") {
  const auto a = CompressedMatrix::from_dense({{2, 1}, {1, 2}});
  const auto x = sparse_direct_solve(a, std::vector<double>{3, 3});
  CHECK(std::abs(x[0] - 1.0) < 1e-15);
  CHECK(std::abs(x[1] - 1.0) < 1e-15);
  const auto y = sparse_direct_solve(CompressedMatrix::identity(3), std::vector<double>{4, 5, 6});
  CHECK(y == std::vector<double>{4, 5, 6});
}

TEST_CASE("direct solver reports singular matrices") {
  const auto a = CompressedMatrix::from_dense({{1, 2}, {2, 4}});
  CHECK_THROWS_AS(sparse_direct_solve(a, std::vector<double>{1, 1}), SingularMatrixError);
}

TEST_CASE("random SPD: CG and direct solver agree") {
  const auto a = random_spd(50, 42);
  std::vector<double> b(50);
  for (std::size_t i = 0; i < 50; ++i) b[i] = std::sin(0.3 * static_cast<double>(i));
  const auto cg = cg_ssor(a, b);
  const auto direct = sparse_direct_solve(a, b);
  REQUIRE(cg.converged);
  for (std::size_t i = 0; i < 50; ++i) CHECK(std::abs(cg.x[i] - direct[i]) < 1e-8);
}

TEST_CASE("CG energy error does not increase") {
  const auto a = random_spd(30, 9);
  std::vector<double> b(30, 1.0);
  const auto exact = sparse_direct_solve(a, b);
  double prev = INFINITY;
  CgOptions opt;
  opt.observer = [&](int, std::span<const double> x) {
    std::vector<double> e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) e[i] = x[i] - exact[i];
    const double energy = dot(e, a.multiply(e));
    CHECK(energy <= prev * (1.0 + 1e-12) + 1e-24);
    prev = energy;
  };
  CHECK(cg_ssor(a, b, opt).converged);
}

TEST_CASE("SSOR preconditioner is symmetric") {
  const auto a = random_spd(20, 4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double omega : {1.0, 0.7, 1.5}) {
    const SsorPreconditioner m(a, omega);
    std::vector<double> z1(20), z2(20);
    for (auto& v : z1) v = u(rng);
    for (auto& v : z2) v = u(rng);
    const double lhs = dot(z1, m.apply(z2));
    const double rhs = dot(z2, m.apply(z1));
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
  }
  CHECK_THROWS_AS(SsorPreconditioner(a, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(SsorPreconditioner(a, 0.0), std::invalid_argument);
}

TEST_CASE("CG reports non-convergence") {
  CgOptions opt;
  opt.max_iter = 2;
  const auto r = cg_ssor(random_spd(40, 8), std::vector<double>(40, 1.0), opt);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
}
