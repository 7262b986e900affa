#include "limitfem/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace limitfem {

namespace {

constexpr double kDim = 2.0;
constexpr double kTinyNorm = 1e-14;

std::string violation_message(double r, double beta) {
  std::ostringstream os;
  os.precision(10);
  os << "strain limit violated: energy norm " << r << " is not below the limit "
     << (beta > 0.0 ? 1.0 / beta : INFINITY) << " (beta = " << beta << ")";
  return os.str();
}

/// 1 - (beta r)^a, throwing once the strain limit is reached.
double limit_gap(double r, const MaterialParams& params) {
  if (params.beta == 0.0) return 1.0;
  const double br = params.beta * r;
  if (!(br < 1.0)) throw StrainLimitViolation(r, params.beta);
  return 1.0 - std::pow(br, params.a);
}

}  // namespace

double SymTensor2::norm() const { return std::sqrt(contract(*this, *this)); }

void MaterialParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!(mu > 0.0)) fail("mu must be positive");
  if (!(lambda + mu > 0.0)) fail("lambda + mu must be positive");
  if (!(a > 0.0)) fail("a must be positive");
  if (!(beta >= 0.0)) fail("beta must be non-negative");
  if (!(k > 0.0)) fail("k must be positive");
  if (!std::isfinite(g)) fail("g must be finite");
  if (!std::isfinite(alpha_T)) fail("alpha_T must be finite");
}

StrainLimitViolation::StrainLimitViolation(double r, double beta)
    : std::runtime_error(violation_message(r, beta)),
      r_(r),
      limit_(beta > 0.0 ? 1.0 / beta : INFINITY) {}

SymTensor2 elasticity_apply(const SymTensor2& eps, const MaterialParams& params) {
  const double lt = params.lambda * eps.trace();
  return {2.0 * params.mu * eps.xx + lt, 2.0 * params.mu * eps.yy + lt, 2.0 * params.mu * eps.xy};
}

SymTensor2 compliance_apply(const SymTensor2& stress, const MaterialParams& params) {
  if (!(params.mu > 0.0) || !(params.lambda + params.mu > 0.0)) {
    throw std::invalid_argument("compliance undefined for mu <= 0 or lambda + mu <= 0");
  }
  const double inv2mu = 1.0 / (2.0 * params.mu);
  // Exact inverse of E in d dimensions; the lambda factor vanishes from
  // the printed form of this tensor only when lambda = 1.
  const double vol = params.lambda * stress.trace() /
                     (2.0 * params.mu * (params.lambda + 2.0 * params.mu / kDim) * kDim);
  return {inv2mu * stress.xx - vol, inv2mu * stress.yy - vol, inv2mu * stress.xy};
}

double energy_norm(const SymTensor2& eps, const MaterialParams& params) {
  // radicand is non-negative for admissible moduli; clamp rounding noise
  return std::sqrt(std::max(0.0, contract(eps, elasticity_apply(eps, params))));
}

double psi(double r, const MaterialParams& params) {
  return std::pow(limit_gap(r, params), -1.0 / params.a);
}

SymTensor2 stress_from_strain(const SymTensor2& eps, const MaterialParams& params) {
  const SymTensor2 lin = elasticity_apply(eps, params);
  if (params.beta == 0.0) return lin;
  return psi(energy_norm(eps, params), params) * lin;
}

SymTensor2 strain_from_stress(const SymTensor2& stress, const MaterialParams& params) {
  const SymTensor2 lin = compliance_apply(stress, params);
  if (params.beta == 0.0) return lin;
  const double m = std::sqrt(std::max(0.0, contract(stress, lin)));
  const double denom =
      std::pow(1.0 + std::pow(params.beta, params.a) * std::pow(m, params.a), 1.0 / params.a);
  return (1.0 / denom) * lin;
}

SymTensor2 tangent_apply(const SymTensor2& eps_n, const SymTensor2& eps_delta,
                         const MaterialParams& params) {
  const SymTensor2 lin_delta = elasticity_apply(eps_delta, params);
  if (params.beta == 0.0) return lin_delta;

  const double n = energy_norm(eps_n, params);
  const double gap = limit_gap(n, params);
  SymTensor2 out = std::pow(gap, -1.0 / params.a) * lin_delta;
  if (n < kTinyNorm) return out;

  const SymTensor2 lin_n = elasticity_apply(eps_n, params);
  const double theta1 = std::pow(n, params.a - 2.0);
  const double theta2 = contract(lin_n, eps_delta);
  const double scale =
      std::pow(params.beta, params.a) * theta1 * theta2 * std::pow(gap, -1.0 - 1.0 / params.a);
  out += scale * lin_n;
  return out;
}

}  // namespace limitfem
