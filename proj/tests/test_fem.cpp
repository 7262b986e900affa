#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "limitfem/fem.hpp"
#include "limitfem/solver.hpp"

using namespace limitfem;

TEST_CASE("shape values interpolate the corners") {
  for (std::size_t a = 0; a < 4; ++a) {
    const auto c = reference_corner(a);
    const auto n = shape_values(c.xi, c.eta);
    for (std::size_t b = 0; b < 4; ++b) CHECK(n[b] == (a == b ? 1.0 : 0.0));
  }
  const auto c0 = reference_corner(0);
  CHECK(c0.xi == -1.0);
  CHECK(c0.eta == -1.0);
}

TEST_CASE("shape values at the centre and partition of unity") {
  const auto n = shape_values(0.0, 0.0);
  for (double v : n) CHECK(v == 0.25);
  for (double xi : {-0.9, -0.3, 0.1, 0.77}) {
    for (double eta : {-0.5, 0.0, 0.6}) {
      const auto s = shape_values(xi, eta);
      CHECK(std::abs(std::accumulate(s.begin(), s.end(), 0.0) - 1.0) < 1e-15);
    }
  }
}

TEST_CASE("shape gradients at the centre") {
  const auto g = shape_gradients(0.0, 0.0);
  const double expected[4] = {-0.25, 0.25, 0.25, -0.25};
  for (std::size_t a = 0; a < 4; ++a) CHECK(g[a][0] == expected[a]);
}

TEST_CASE("shape gradients sum to zero and match central differences") {
  const double step = 1e-5;
  for (double xi : {-0.7, 0.0, 0.35}) {
    for (double eta : {-0.2, 0.9}) {
      const auto g = shape_gradients(xi, eta);
      double sx = 0.0, sy = 0.0;
      for (std::size_t a = 0; a < 4; ++a) {
        sx += g[a][0];
        sy += g[a][1];
        const double fx =
            (shape_values(xi + step, eta)[a] - shape_values(xi - step, eta)[a]) / (2.0 * step);
        const double fy =
            (shape_values(xi, eta + step)[a] - shape_values(xi, eta - step)[a]) / (2.0 * step);
        CHECK(std::abs(fx - g[a][0]) < 1e-8);
        CHECK(std::abs(fy - g[a][1]) < 1e-8);
      }
      CHECK(std::abs(sx) < 1e-15);
      CHECK(std::abs(sy) < 1e-15);
    }
  }
}

TEST_CASE("Gauss rules") {
  const auto one = gauss_rule(1);
  REQUIRE(one.size() == 1);
  CHECK(one.points[0].xi == 0.0);
  CHECK(one.weights[0] == 4.0);

  const auto two = gauss_rule(2);
  REQUIRE(two.size() == 4);
  for (std::size_t q = 0; q < 4; ++q) {
    CHECK(std::abs(std::abs(two.points[q].xi) - 0.5773502691896258) < 1e-16);
    CHECK(two.weights[q] == 1.0);
  }

  double integral = 0.0;
  for (std::size_t q = 0; q < two.size(); ++q) {
    const auto& p = two.points[q];
    integral += two.weights[q] * p.xi * p.xi * p.eta * p.eta;
  }
  CHECK(std::abs(integral - 4.0 / 9.0) < 1e-14);

  // n points integrate degree 2n-1 exactly in each variable.
  for (int n = 1; n <= 5; ++n) {
    const auto r = gauss_rule(n);
    double sum = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) sum += r.weights[q] * std::pow(r.points[q].xi, 2 * n - 2);
    CHECK(sum == doctest::Approx(2.0 * 2.0 / (2 * n - 1)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(gauss_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_rule(6), std::invalid_argument);
}

TEST_CASE("mapping of a square cell") {
  const Mesh m = build_unit_square(3);
  const double h = m.h();
  const auto rule = gauss_rule(2);
  for (std::size_t c : {std::size_t{0}, std::size_t{13}, m.num_cells() - 1}) {
    double area = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto mp = map_to_physical(m, c, rule.points[q]);
      CHECK(std::abs(mp.det_j - h * h / 4.0) < 1e-15);
      area += rule.weights[q] * mp.det_j;
      // Interpolant of f(x, y) = x has gradient (1, 0).
      double gx = 0.0, gy = 0.0;
      const auto pts = m.cell_points(c);
      for (std::size_t a = 0; a < 4; ++a) {
        gx += pts[a].x * mp.grads[a][0];
        gy += pts[a].x * mp.grads[a][1];
      }
      CHECK(std::abs(gx - 1.0) < 1e-12);
      CHECK(std::abs(gy) < 1e-12);
    }
    CHECK(std::abs(area - h * h) < 1e-14);
  }
}

TEST_CASE("Q1 reproduces bilinear functions at quadrature points") {
  const Mesh m = build_slit_square(2);
  auto f = [](Point2 p) { return 1.0 + 2.0 * p.x - 3.0 * p.y + 0.5 * p.x * p.y; };
  const auto rule = gauss_rule(3);
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const auto pts = m.cell_points(c);
    for (const auto& q : rule.points) {
      const auto mp = map_to_physical(m, c, q);
      const auto n = shape_values(q.xi, q.eta);
      double v = 0.0;
      for (std::size_t a = 0; a < 4; ++a) v += n[a] * f(pts[a]);
      CHECK(std::abs(v - f(mp.x)) < 1e-13);
    }
  }
}

TEST_CASE("dof map counts") {
  const Mesh m = build_unit_square(1);
  SUBCASE("scalar field with Gamma1 data") {
    const auto bcs = temperature_conditions(TemperatureCase::Case1);
    const DofMap d = build_dof_map(m, FieldKind::Scalar, bcs);
    CHECK(d.num_dofs() == 9);
    CHECK(d.num_constrained() == 3);
  }
  SUBCASE("vector field with the tensile data") {
    const auto bcs = displacement_conditions();
    const DofMap d = build_dof_map(m, FieldKind::Vector2, bcs);
    CHECK(d.num_dofs() == 18);
    CHECK(d.num_constrained() == 9);
    std::size_t bottom_y = 0, top = 0;
    for (const auto& n : m.nodes()) {
      if (n.y == 0.0) {
        CHECK_FALSE(d.is_constrained(d.dof(n.id, 0)));
        bottom_y += d.is_constrained(d.dof(n.id, 1));
      }
      if (n.y == 1.0) {
        top += d.is_constrained(d.dof(n.id, 0)) + d.is_constrained(d.dof(n.id, 1));
        CHECK(d.prescribed_value(d.dof(n.id, 1)) == 1.0);
      }
    }
    CHECK(bottom_y == 3);
    CHECK(top == 6);
  }
  SUBCASE("no conditions") {
    const DofMap d = build_dof_map(m, FieldKind::Vector2, {});
    CHECK(d.num_constrained() == 0);
  }
}

TEST_CASE("dof map interleaves vector components") {
  const DofMap d(FieldKind::Vector2, 5);
  CHECK(d.dof(3, 0) == 6);
  CHECK(d.dof(3, 1) == 7);
  const DofMap s(FieldKind::Scalar, 5);
  CHECK(s.dof(4) == 4);
}

TEST_CASE("conflicting Dirichlet data") {
  const Mesh m = build_unit_square(1);
  auto constant = [](double c) { return [c](Point2, int) { return c; }; };
  SUBCASE("equal priority, different values at a shared corner") {
    std::vector<DirichletCondition> bcs{{BoundaryTag::Gamma1, {true, true}, constant(0.0), 0},
                                        {BoundaryTag::Gamma2, {true, true}, constant(1.0), 0}};
    CHECK_THROWS_AS(build_dof_map(m, FieldKind::Vector2, bcs), DofError);
  }
  SUBCASE("higher priority wins") {
    std::vector<DirichletCondition> bcs{{BoundaryTag::Gamma1, {true, true}, constant(0.0), 0},
                                        {BoundaryTag::Gamma2, {true, true}, constant(1.0), 1}};
    const DofMap d = build_dof_map(m, FieldKind::Vector2, bcs);
    CHECK(d.prescribed_value(d.dof(2, 0)) == 1.0);  // node (1, 0)
  }
  SUBCASE("equal values agree") {
    std::vector<DirichletCondition> bcs{{BoundaryTag::Gamma1, {true, true}, constant(2.0), 0},
                                        {BoundaryTag::Gamma2, {true, true}, constant(2.0), 0}};
    CHECK_NOTHROW(build_dof_map(m, FieldKind::Vector2, bcs));
  }
}
