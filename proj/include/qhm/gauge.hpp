#pragma once

#include <array>
#include <optional>

#include "qhm/conventions.hpp"
#include "qhm/direction.hpp"

namespace qhm {

/// Connection nabla = nabla0 + rho with a skew-adjoint perturbation per
/// direction; a missing entry means zero.
struct Connection {
  ConfigPtr cfg;
  std::array<std::optional<EElement>, 3> rho;

  explicit Connection(ConfigPtr c) : cfg(std::move(c)) {}
  const EElement* perturbation(Direction d) const {
    const auto& v = rho[static_cast<int>(d)];
    return v ? &*v : nullptr;
  }
  void set(Direction d, EElement e) { rho[static_cast<int>(d)] = std::move(e); }
};

/// Largest skew-adjointness defect among the perturbation entries.
double connection_skew_defect(const Connection& conn);

/// Alternating E-valued 2-form stored on the canonical pairs
/// (X,Y), (Y,Z), (Z,X).
struct CurvatureForm {
  ConfigPtr cfg;
  std::array<EElement, 3> values;  // XY, YZ, ZX

  const EElement& xy() const { return values[0]; }
  const EElement& yz() const { return values[1]; }
  const EElement& zx() const { return values[2]; }

  /// value on an ordered pair, with the alternating sign
  EElement pairValue(Direction a, Direction b) const;
};

/// Base connection on module vectors:
///   nabla0_X f = -df/dx
///   nabla0_Y f = -df/dy + (pi c i / 2 mu) x^2 f
///   nabla0_Z f = (pi i x / mu) f.
XiElement apply_nabla0(Direction dir, const XiElement& f);

/// nabla_dir f = nabla0_dir f + rho(dir) . f
XiElement apply_connection(const Conventions& conv, const Connection& conn,
                           Direction dir, const XiElement& f);

/// Perturbation 2-form
///   Omega(A,B) = delta_A(rho_B) - delta_B(rho_A) - rho_[A,B] + [rho_A, rho_B].
CurvatureForm omega(const Conventions& conv, const Connection& conn);

/// Curvature of nabla0 + rho, computed as the constant base curvature plus
/// omega. The base values are (0, 0, (pi i / mu) I) on (X,Y), (Y,Z), (Z,X);
/// the operator commutators recover the same values and are used as the
/// cross-check oracle.
CurvatureForm curvature(const Conventions& conv, const Connection& conn);

struct ConstantFit {
  Complex kappa{0, 0};
  double residual = 0;
};

/// Least-trace fit of a curvature value against the identity:
/// kappa = tau_E(v) / tau_E(I), residual = sup |v - kappa I|.
ConstantFit constant_fit(const EElement& v);

/// Components of the divergence of the curvature,
///   (div Theta)(Z_i) = sum_j [nabla_{Z_j}, Theta(Z_i ^ Z_j)]
///                      - sum_{j<k} c^i_{jk} Theta(Z_j ^ Z_k),
/// as evaluated sup-norms per direction. Zero exactly at critical points.
std::array<double, 3> ym_residual(const Conventions& conv, const Connection& conn);

/// The same residual components as elements (used by tests).
std::array<EElement, 3> ym_residual_elements(const Conventions& conv,
                                             const Connection& conn);

/// Yang-Mills value -tau_E({Theta, Theta}); real and nonnegative for
/// compatible (skew-valued) curvature.
double ym_value(const Conventions& conv, const Connection& conn);

/// Conjugated connection gamma_u(nabla) = u nabla u*; requires u unitary
/// within 1e-8. The new perturbation is u delta(u*) + u rho u*.
Connection gauge_transform(const Conventions& conv, const EElement& u,
                           const Connection& conn);

}  // namespace qhm
