#include "qhm/gauge.hpp"

#include <cmath>

namespace qhm {

double connection_skew_defect(const Connection& conn) {
  double worst = 0;
  for (const auto& v : conn.rho) {
    if (v) worst = std::max(worst, skewadjoint_defect(*v));
  }
  return worst;
}

EElement CurvatureForm::pairValue(Direction a, Direction b) const {
  auto idx = [](Direction u, Direction v) -> int {
    if (u == Direction::X && v == Direction::Y) return 0;
    if (u == Direction::Y && v == Direction::Z) return 1;
    if (u == Direction::Z && v == Direction::X) return 2;
    return -1;
  };
  if (int i = idx(a, b); i >= 0) return values[i];
  if (int i = idx(b, a); i >= 0) return Complex{-1, 0} * values[i];
  throw InvalidParameter("pairValue: equal directions have no curvature value");
}

XiElement apply_nabla0(Direction dir, const XiElement& f) {
  const auto& cfg = f.cfg;
  XiElement out(cfg);
  const int N = cfg->halfModes(), J = cfg->gridXi();
  const double mu = cfg->mu();
  const int c = cfg->c();

  if (dir == Direction::X) {
    const auto w = central_first_derivative(cfg->interpOrder(), cfg->stepXi());
    const int half = cfg->interpOrder() / 2;
    for (int n = -N; n <= N; ++n) {
      for (int j = 0; j < J; ++j) {
        Complex acc{0, 0};
        for (int s = -half; s <= half; ++s) {
          const int jj = j + s;
          if (jj < 0 || jj >= J) continue;  // zero tail
          acc += w[s + half] * f.at(n, jj);
        }
        out.at(n, j) = -acc;
      }
    }
  } else if (dir == Direction::Y) {
    for (int n = -N; n <= N; ++n) {
      for (int j = 0; j < J; ++j) {
        const double x = cfg->xiPoint(j);
        const Complex factor{0, -2.0 * kPi * n + kPi * c * x * x / (2.0 * mu)};
        out.at(n, j) = factor * f.at(n, j);
      }
    }
  } else {
    for (int n = -N; n <= N; ++n) {
      for (int j = 0; j < J; ++j) {
        const double x = cfg->xiPoint(j);
        out.at(n, j) = Complex{0, kPi * x / mu} * f.at(n, j);
      }
    }
  }
  out.declaredTail = f.declaredTail * (1.0 + kPi * (1.0 + cfg->window() * cfg->window()) / mu);
  return out;
}

XiElement apply_connection(const Conventions& conv, const Connection& conn,
                           Direction dir, const XiElement& f) {
  conv.require();
  XiElement out = apply_nabla0(dir, f);
  if (const EElement* r = conn.perturbation(dir)) {
    out = out + act_e(*r, f);
  }
  return out;
}

namespace {

EElement commutator(const EElement& a, const EElement& b) {
  return e_mul(a, b) - e_mul(b, a);
}

/// [nabla_dir, T] for nabla = nabla0 + rho
EElement covariant_commutator(const Connection& conn, Direction dir, const EElement& t) {
  EElement out = e_delta(dir, t);
  if (const EElement* r = conn.perturbation(dir)) {
    out = out + commutator(*r, t);
  }
  return out;
}

}  // namespace

CurvatureForm omega(const Conventions& conv, const Connection& conn) {
  conv.require();
  const auto& cfg = conn.cfg;
  const EElement zero(cfg);
  auto rhoOrZero = [&](Direction d) -> EElement {
    const EElement* r = conn.perturbation(d);
    return r ? *r : zero;
  };
  const EElement rx = rhoOrZero(Direction::X);
  const EElement ry = rhoOrZero(Direction::Y);
  const EElement rz = rhoOrZero(Direction::Z);
  const double c = cfg->c();

  CurvatureForm form{cfg, {zero, zero, zero}};
  // (X,Y): bracket term rho_[X,Y] = -c rho_Z
  form.values[0] = e_delta(Direction::X, ry) - e_delta(Direction::Y, rx) +
                   (Complex{c, 0} * rz) + commutator(rx, ry);
  // (Y,Z) and (Z,X): brackets vanish
  form.values[1] =
      e_delta(Direction::Y, rz) - e_delta(Direction::Z, ry) + commutator(ry, rz);
  form.values[2] =
      e_delta(Direction::Z, rx) - e_delta(Direction::X, rz) + commutator(rz, rx);
  return form;
}

CurvatureForm curvature(const Conventions& conv, const Connection& conn) {
  CurvatureForm form = omega(conv, conn);
  // base curvature of nabla0: only the (Z,X) pair is nonzero
  const EElement base = Complex{0, kPi / conn.cfg->mu()} * e_identity(conn.cfg);
  form.values[2] = form.values[2] + base;
  return form;
}

ConstantFit constant_fit(const EElement& v) {
  // the calibration constant cancels in the ratio, so the fit is raw
  const Complex num = e_integral0(v);
  const Complex den = e_integral0(e_identity(v.cfg));
  ConstantFit fit;
  fit.kappa = num / den;
  fit.residual = defect(v, fit.kappa * e_identity(v.cfg));
  return fit;
}

std::array<EElement, 3> ym_residual_elements(const Conventions& conv,
                                             const Connection& conn) {
  conv.require();
  const CurvatureForm theta = curvature(conv, conn);
  std::array<EElement, 3> out{EElement(conn.cfg), EElement(conn.cfg), EElement(conn.cfg)};
  for (Direction zi : kDirections) {
    EElement acc(conn.cfg);
    for (Direction zj : kDirections) {
      if (zj == zi) continue;
      acc = acc + covariant_commutator(conn, zj, theta.pairValue(zi, zj));
    }
    // structure-constant term: -sum_{j<k} c^i_{jk} Theta(Z_j ^ Z_k)
    const std::array<std::pair<Direction, Direction>, 3> pairs{
        std::pair{Direction::X, Direction::Y}, {Direction::Y, Direction::Z},
        {Direction::Z, Direction::X}};
    for (const auto& [a, b] : pairs) {
      const double sc = structure_constant(zi, a, b) * conn.cfg->c();
      if (sc != 0.0) acc = acc - (Complex{sc, 0} * theta.pairValue(a, b));
    }
    out[static_cast<int>(zi)] = acc;
  }
  return out;
}

std::array<double, 3> ym_residual(const Conventions& conv, const Connection& conn) {
  const auto elems = ym_residual_elements(conv, conn);
  return {sup_norm(elems[0]), sup_norm(elems[1]), sup_norm(elems[2])};
}

double ym_value(const Conventions& conv, const Connection& conn) {
  conv.require();
  const CurvatureForm theta = curvature(conv, conn);
  EElement pairing(conn.cfg);
  for (const auto& v : theta.values) {
    pairing = pairing + e_mul(v, v);
  }
  const Complex val = Complex{-1, 0} * e_trace(pairing, conv.calibration());
  if (std::abs(val.imag()) > 1e-9 * (1.0 + std::abs(val.real()))) {
    throw InvalidParameter("ym_value: pairing trace has a non-negligible imaginary part");
  }
  return val.real();
}

Connection gauge_transform(const Conventions& conv, const EElement& u,
                           const Connection& conn) {
  conv.require();
  const auto& cfg = conn.cfg;
  const double unit = defect(e_mul(u, e_star(u)), e_identity(cfg));
  if (unit > 1e-8) {
    throw NotUnitary("gauge_transform: u u* differs from the identity by " +
                     std::to_string(unit));
  }
  const EElement ustar = e_star(u);
  Connection out(cfg);
  for (Direction d : kDirections) {
    EElement rhoNew = e_mul(u, e_delta(d, ustar));
    if (const EElement* r = conn.perturbation(d)) {
      rhoNew = rhoNew + e_mul(u, e_mul(*r, ustar));
    }
    out.set(d, std::move(rhoNew));
  }
  return out;
}

}  // namespace qhm
