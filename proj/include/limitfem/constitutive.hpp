#pragma once

#include <stdexcept>
#include <string>

namespace limitfem {

/// Symmetric 2x2 tensor stored by its three independent entries.
struct SymTensor2 {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;

  static SymTensor2 identity() { return {1.0, 1.0, 0.0}; }

  double trace() const { return xx + yy; }
  double norm() const;

  SymTensor2& operator+=(const SymTensor2& o) {
    xx += o.xx;
    yy += o.yy;
    xy += o.xy;
    return *this;
  }
  SymTensor2& operator-=(const SymTensor2& o) {
    xx -= o.xx;
    yy -= o.yy;
    xy -= o.xy;
    return *this;
  }
  SymTensor2& operator*=(double s) {
    xx *= s;
    yy *= s;
    xy *= s;
    return *this;
  }

  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }
  friend SymTensor2 operator*(SymTensor2 a, double s) { return a *= s; }
  friend bool operator==(const SymTensor2&, const SymTensor2&) = default;
};

/// Full contraction A : B (the off-diagonal entry counts twice).
inline double contract(const SymTensor2& a, const SymTensor2& b) {
  return a.xx * b.xx + a.yy * b.yy + 2.0 * a.xy * b.xy;
}

/// Symmetric part of a displacement gradient given as
/// [[du_x/dx, du_x/dy], [du_y/dx, du_y/dy]].
inline SymTensor2 symmetric_gradient(double dux_dx, double dux_dy, double duy_dx, double duy_dy) {
  return {dux_dx, duy_dy, 0.5 * (dux_dy + duy_dx)};
}

/// Homogeneous material constants. `alpha()` is derived, never stored.
struct MaterialParams {
  double lambda = 1.0;   // Pa
  double mu = 1.0;       // Pa
  double a = 0.5;
  double beta = 0.02;
  double k = 20.0;       // J/(m^2 s K)
  double g = -10.0;      // J/(m^2 s)
  double alpha_T = 0.1;  // 1/K

  /// Thermal stress coefficient alpha_T (3 lambda + 2 mu).
  double alpha() const { return alpha_T * (3.0 * lambda + 2.0 * mu); }

  /// Throws std::invalid_argument naming the offending constant.
  void validate() const;

  /// Same material with beta = 0.
  MaterialParams linearized() const {
    MaterialParams p = *this;
    p.beta = 0.0;
    return p;
  }

  friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

/// Thrown when beta * r reaches the strain limit 1.
class StrainLimitViolation : public std::runtime_error {
 public:
  StrainLimitViolation(double r, double beta);

  double energy_norm() const { return r_; }
  double limit() const { return limit_; }

 private:
  double r_;
  double limit_;
};

/// 2 mu eps + lambda tr(eps) I.
SymTensor2 elasticity_apply(const SymTensor2& eps, const MaterialParams& params);

/// Inverse of elasticity_apply in two dimensions.
SymTensor2 compliance_apply(const SymTensor2& stress, const MaterialParams& params);

/// sqrt(eps : E[eps]).
double energy_norm(const SymTensor2& eps, const MaterialParams& params);

/// Amplification factor (1 - (beta r)^a)^(-1/a).
double psi(double r, const MaterialParams& params);

/// Mechanical stress psi(|E^1/2[eps]|) E[eps].
SymTensor2 stress_from_strain(const SymTensor2& eps, const MaterialParams& params);

/// Strain-limiting response K[T] / (1 + beta^a |K^1/2[T]|^a)^(1/a); the
/// energy norm of the result stays below 1/beta.
SymTensor2 strain_from_stress(const SymTensor2& stress, const MaterialParams& params);

/// Directional derivative of stress_from_strain at eps_n along eps_delta.
///
/// The second (rank-one) term carries |E^1/2[eps_n]|^(a-2), singular at
/// zero strain for a < 2 although the product vanishes there; it is
/// dropped when the energy norm is below 1e-14.
SymTensor2 tangent_apply(const SymTensor2& eps_n, const SymTensor2& eps_delta,
                         const MaterialParams& params);

}  // namespace limitfem
