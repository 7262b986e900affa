#include <cmath>
#include <random>

#include "doctest.h"
#include "limitfem/constitutive.hpp"

using namespace limitfem;

namespace {

const MaterialParams kDefaults{};

MaterialParams unit(double a, double beta) {
  MaterialParams p;
  p.a = a;
  p.beta = beta;
  return p;
}

double max_abs_diff(const SymTensor2& x, const SymTensor2& y) {
  return std::max({std::abs(x.xx - y.xx), std::abs(x.yy - y.yy), std::abs(x.xy - y.xy)});
}

SymTensor2 random_tensor(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return {d(rng), d(rng), d(rng)};
}

}  // namespace

TEST_CASE("default material") {
  CHECK(kDefaults.lambda == 1.0);
  CHECK(kDefaults.mu == 1.0);
  CHECK(kDefaults.a == 0.5);
  CHECK(kDefaults.beta == 0.02);
  CHECK(kDefaults.k == 20.0);
  CHECK(kDefaults.g == -10.0);
  CHECK(kDefaults.alpha_T == 0.1);
  CHECK(kDefaults.alpha() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("material validation") {
  MaterialParams p;
  p.mu = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.a = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.beta = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_NOTHROW(MaterialParams{}.validate());
}

TEST_CASE("elasticity tensor") {
  const auto s = elasticity_apply(SymTensor2::identity(), kDefaults);
  CHECK(s == SymTensor2{4.0, 4.0, 0.0});
  CHECK(elasticity_apply({}, kDefaults) == SymTensor2{});
  const auto shear = elasticity_apply({0.0, 0.0, 0.3}, kDefaults);
  CHECK(shear.xx == 0.0);
  CHECK(shear.yy == 0.0);
  CHECK(shear.xy == doctest::Approx(0.6));
}

TEST_CASE("compliance tensor") {
  for (double p : {1.0, -3.5, 8.0}) {
    const auto k = compliance_apply(p * SymTensor2::identity(), kDefaults);
    CHECK(k.xx == doctest::Approx(p / 4.0).epsilon(1e-15));
    CHECK(k.yy == doctest::Approx(p / 4.0).epsilon(1e-15));
    CHECK(k.xy == 0.0);
  }
  CHECK(compliance_apply({}, kDefaults) == SymTensor2{});
  std::mt19937_64 rng(7);
  MaterialParams other;
  other.lambda = 2.3;
  other.mu = 0.7;
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_tensor(rng, 10.0);
    for (const auto& p : {kDefaults, other}) {
      CHECK(max_abs_diff(elasticity_apply(compliance_apply(t, p), p), t) < 1e-12);
    }
  }
}

TEST_CASE("energy norm") {
  CHECK(energy_norm(SymTensor2::identity(), kDefaults) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-15));
  CHECK(energy_norm({}, kDefaults) == 0.0);
  const SymTensor2 e{0.3, -0.1, 0.25};
  for (double c : {-2.0, 0.5, 3.0}) {
    CHECK(energy_norm(c * e, kDefaults) == doctest::Approx(std::abs(c) * energy_norm(e, kDefaults)).epsilon(1e-14));
  }
}

TEST_CASE("psi") {
  CHECK(psi(0.0, kDefaults) == 1.0);
  CHECK(psi(0.0, unit(1.0, 0.5)) == 1.0);
  CHECK(psi(123.0, kDefaults.linearized()) == 1.0);
  CHECK(psi(1.0, unit(1.0, 0.5)) == doctest::Approx(2.0).epsilon(1e-15));
  double prev = 1.0;
  for (double r = 1.0; r < 49.0; r += 4.0) {
    const double v = psi(r, kDefaults);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(psi(50.0, kDefaults), StrainLimitViolation);
  CHECK_THROWS_AS(psi(60.0, kDefaults), StrainLimitViolation);
}

TEST_CASE("stress from strain") {
  CHECK(stress_from_strain({}, kDefaults) == SymTensor2{});
  const SymTensor2 e{0.1, 0.1, 0.0};
  // Independent scalar evaluation of Psi(N) E[eps] for eps = 0.1 I.
  const double n = std::sqrt(0.08);
  const double psi_v = std::pow(1.0 - std::sqrt(0.02 * n), -2.0);
  const auto s = stress_from_strain(e, kDefaults);
  CHECK(n == doctest::Approx(0.28284271247).epsilon(1e-10));
  CHECK(s.xx == doctest::Approx(psi_v * 0.4).epsilon(1e-14));
  CHECK(s.yy == doctest::Approx(psi_v * 0.4).epsilon(1e-14));
  CHECK(s.xx == doctest::Approx(0.467709).epsilon(1e-5));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_tensor(rng, 5.0);
    CHECK(stress_from_strain(t, kDefaults.linearized()) == elasticity_apply(t, kDefaults));
  }
  CHECK_THROWS_AS(stress_from_strain(30.0 * SymTensor2::identity(), kDefaults), StrainLimitViolation);
}

TEST_CASE("strain from stress") {
  CHECK(strain_from_stress({}, kDefaults) == SymTensor2{});
  const auto e = strain_from_stress(2.0 * SymTensor2::identity(), unit(1.0, 0.5));
  const double expected = 0.5 / (1.0 + 0.5 * std::sqrt(2.0));
  CHECK(e.xx == doctest::Approx(expected).epsilon(1e-15));
  CHECK(e.xx == doctest::Approx(0.29289).epsilon(1e-5));
  CHECK(e.xy == 0.0);

  std::mt19937_64 rng(11);
  for (const auto& p : {kDefaults, unit(1.0, 0.5), unit(2.0, 0.1)}) {
    int tested = 0;
    while (tested < 300) {
      const auto eps = random_tensor(rng, 2.0 / (p.beta * 4.0));
      if (p.beta * energy_norm(eps, p) > 0.9) continue;
      ++tested;
      const auto back = strain_from_stress(stress_from_strain(eps, p), p);
      CHECK(max_abs_diff(back, eps) <= 1e-10 * std::max(1.0, eps.norm()));
    }
  }
}

TEST_CASE("strain from stress is bounded by the limit") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto t = random_tensor(rng, 1e6);
    CHECK(energy_norm(strain_from_stress(t, kDefaults), kDefaults) < 1.0 / kDefaults.beta);
  }
}

TEST_CASE("tangent") {
  std::mt19937_64 rng(19);
  SUBCASE("linear limit and zero direction") {
    for (int i = 0; i < 50; ++i) {
      const auto e = random_tensor(rng, 1.0);
      const auto d = random_tensor(rng, 1.0);
      CHECK(tangent_apply(e, d, kDefaults.linearized()) == elasticity_apply(d, kDefaults));
      CHECK(tangent_apply(e, {}, kDefaults) == SymTensor2{});
    }
  }
  SUBCASE("matches directional finite differences") {
    const double xi = 1e-6;
    for (const auto& p : {kDefaults, unit(1.0, 0.5), unit(2.0, 0.2)}) {
      int tested = 0;
      while (tested < 100) {
        const auto e = random_tensor(rng, 0.5 / p.beta);
        const auto d = random_tensor(rng, 1.0);
        if (p.beta * energy_norm(e, p) > 0.8) continue;
        ++tested;
        const auto fd = (1.0 / xi) * (stress_from_strain(e + xi * d, p) - stress_from_strain(e, p));
        const auto t = tangent_apply(e, d, p);
        CHECK((fd - t).norm() <= 1e-5 * t.norm());
      }
    }
  }
  SUBCASE("bilinear form is symmetric") {
    for (int i = 0; i < 200; ++i) {
      const auto e = random_tensor(rng, 10.0);
      const auto d1 = random_tensor(rng, 1.0);
      const auto d2 = random_tensor(rng, 1.0);
      const double a = contract(tangent_apply(e, d1, kDefaults), d2);
      const double b = contract(tangent_apply(e, d2, kDefaults), d1);
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
  SUBCASE("tangent at zero strain is the elasticity tensor") {
    const SymTensor2 d{0.2, -0.4, 0.1};
    CHECK(max_abs_diff(tangent_apply({}, d, kDefaults), elasticity_apply(d, kDefaults)) < 1e-15);
  }
}

TEST_CASE("monotonicity of the stress map") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    const auto t1 = random_tensor(rng, 1e3);
    const auto t2 = random_tensor(rng, 1e3);
    const double m = contract(strain_from_stress(t1, kDefaults) - strain_from_stress(t2, kDefaults), t1 - t2);
    CHECK(m >= -1e-12);
  }
}
