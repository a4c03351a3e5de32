#include <cmath>

#include "doctest.h"
#include "qhm/gauge.hpp"
#include "qhm/sampling.hpp"

using namespace qhm;

namespace {

ConfigPtr cfg() {
  static ConfigPtr c = default_config();
  return c;
}

const Conventions& conv() {
  static Conventions c = Conventions::validate(cfg());
  return c;
}

Connection flat() { return Connection(cfg()); }

Connection random_connection(uint64_t ctr, double scale) {
  const CounterRng rng{515};
  Connection conn(cfg());
  for (Direction d : kDirections) {
    conn.set(d, Complex{scale, 0} * random_skew(cfg(), rng, 16 * ctr + static_cast<int>(d)));
  }
  return conn;
}

}  // namespace

TEST_CASE("base connection along Z is the position multiplier") {
  const XiElement f = gaussian_vector(cfg(), 3.0, 1, 0.0);
  const XiElement zf = apply_nabla0(Direction::Z, f);
  for (double x : {-1.3, 0.0, 0.7, 2.1}) {
    const Complex expect = Complex{0, kPi * x / cfg()->mu()} * f.eval(x, 0.3);
    CHECK(std::abs(zf.eval(x, 0.3) - expect) < 1e-8);
  }
}

TEST_CASE("connections satisfy the Leibniz rule against the derivations") {
  const CounterRng rng{121};
  for (uint64_t i = 0; i < 3; ++i) {
    const XiElement f = random_vector(cfg(), rng, 300 + i);
    const DElement phi = random_d(cfg(), rng, 310 + i);
    const Connection conn = (i == 0) ? flat() : random_connection(i, 0.4);
    for (Direction d : kDirections) {
      const XiElement lhs = apply_connection(conv(), conn, d, act_d(f, phi));
      const XiElement rhs = act_d(apply_connection(conv(), conn, d, f), phi) +
                            act_d(f, delta(d, phi));
      CHECK(defect(lhs, rhs) < 1e-7);
    }
  }
}

TEST_CASE("connections are compatible with the hermitian structure") {
  const CounterRng rng{131};
  for (uint64_t i = 0; i < 3; ++i) {
    const XiElement f = random_vector(cfg(), rng, 400 + 2 * i);
    const XiElement g = random_vector(cfg(), rng, 401 + 2 * i);
    const Connection conn = (i == 0) ? flat() : random_connection(10 + i, 0.4);
    for (Direction d : kDirections) {
      const DElement lhs = delta(d, inner_d(f, g));
      const DElement rhs = inner_d(apply_connection(conv(), conn, d, f), g) +
                           inner_d(f, apply_connection(conv(), conn, d, g));
      CHECK(defect(lhs, rhs) < 1e-7);
    }
  }
}

TEST_CASE("base curvature is constant with the expected scalar values") {
  const CurvatureForm theta = curvature(conv(), flat());
  const auto fitXY = constant_fit(theta.xy());
  const auto fitYZ = constant_fit(theta.yz());
  const auto fitZX = constant_fit(theta.zx());
  CHECK(std::abs(fitXY.kappa) < 1e-8);
  CHECK(fitXY.residual < 1e-8);
  CHECK(std::abs(fitYZ.kappa) < 1e-8);
  CHECK(fitYZ.residual < 1e-8);
  CHECK(fitZX.residual < 1e-8);
  const double target = kPi / cfg()->mu();
  CHECK(std::abs(std::abs(fitZX.kappa) - target) < 1e-6 * target);
  // the implemented sign: the operator commutator gives +pi i / mu
  CHECK(std::abs(fitZX.kappa - Complex{0, target}) < 1e-6 * target);
  // curvature values of a compatible connection are skew-adjoint
  for (const auto& v : theta.values) CHECK(skewadjoint_defect(v) < 1e-8);
}

TEST_CASE("operator commutators recover the base curvature") {
  // second-order operator recovery runs on the refined grid
  const ConfigPtr fine = cfg()->refined(2);
  auto nabla = [&](Direction d, const XiElement& f) { return apply_nabla0(d, f); };
  auto thetaOp = [&](Direction a, Direction b) {
    return [=](const XiElement& f) {
      return nabla(a, nabla(b, f)) - nabla(b, nabla(a, f));
    };
  };
  // (Z,X): [Z,X] = 0, so the commutator is the whole curvature value
  const RecoveredElement zx = from_operator(fine, thetaOp(Direction::Z, Direction::X), 1);
  const auto fit = constant_fit(zx.psi);
  const double target = kPi / fine->mu();
  CHECK(std::abs(fit.kappa - Complex{0, target}) < 1e-7 * target);
  CHECK(fit.residual < 1e-7);

  // (Y,Z): commutator vanishes
  const RecoveredElement yz = from_operator(fine, thetaOp(Direction::Y, Direction::Z), 1);
  CHECK(sup_norm(yz.psi) < 1e-7);
}

TEST_CASE("perturbation two-form: zero, bracket term, skewness") {
  CHECK(sup_norm(omega(conv(), flat()).xy()) == 0.0);

  // rho supported along Z only: Omega(X,Y) = c rho_Z, other pairs vanish
  const CounterRng rng{141};
  const EElement rhoZ = random_skew(cfg(), rng, 77);
  Connection conn(cfg());
  conn.set(Direction::Z, rhoZ);
  const CurvatureForm om = omega(conv(), conn);
  CHECK(defect(om.xy(), Complex{static_cast<double>(cfg()->c()), 0} * rhoZ) < 1e-9);

  const Connection generic = random_connection(21, 0.5);
  const CurvatureForm omG = omega(conv(), generic);
  for (const auto& v : omG.values) CHECK(skewadjoint_defect(v) < 1e-8);
}

TEST_CASE("curvature of a perturbed connection via the operator route") {
  const ConfigPtr fine = cfg()->refined(2);
  const Conventions convF = Conventions::validate(fine);
  const CounterRng rng{151};
  Connection conn(fine);
  conn.set(Direction::X, Complex{0.3, 0} * random_skew(fine, rng, 5));
  conn.set(Direction::Y, Complex{0.4, 0} * random_skew(fine, rng, 6));
  conn.set(Direction::Z, Complex{0.2, 0} * random_skew(fine, rng, 7));

  auto nab = [&](Direction d, const XiElement& f) {
    return apply_connection(convF, conn, d, f);
  };
  auto op = [&](const XiElement& f) {
    XiElement lhs = nab(Direction::X, nab(Direction::Y, f));
    XiElement rhs = nab(Direction::Y, nab(Direction::X, f));
    // [X,Y] = -cZ, so the bracket term adds + c nabla_Z f
    XiElement br = Complex{static_cast<double>(fine->c()), 0} * nab(Direction::Z, f);
    return lhs - rhs + br;
  };
  const RecoveredElement rec = from_operator(fine, op, fine->pMax());
  const CurvatureForm theta = curvature(convF, conn);
  CHECK(defect(rec.psi, theta.xy()) < 1e-6);
}

TEST_CASE("generic perturbations produce non-constant curvature") {
  const Connection conn = random_connection(31, 0.5);
  const CurvatureForm theta = curvature(conv(), conn);
  const auto fit = constant_fit(theta.xy());
  CHECK(fit.residual > 1e-3);
}

TEST_CASE("the base connection satisfies the stationarity equation") {
  const auto res = ym_residual(conv(), flat());
  for (double r : res) CHECK(r < 1e-6);
}

TEST_CASE("a sizable random perturbation is not stationary") {
  const auto res = ym_residual(conv(), random_connection(41, 0.5));
  CHECK((res[0] > 1e-2 || res[1] > 1e-2 || res[2] > 1e-2));
}

TEST_CASE("gauge conjugates of the base connection stay stationary") {
  const CounterRng rng{161};
  for (uint64_t i = 0; i < 2; ++i) {
    const EElement u = random_unitary(cfg(), rng, 50 + i, 0.7);
    const Connection moved = gauge_transform(conv(), u, flat());
    CHECK(connection_skew_defect(moved) < 1e-7);
    const auto res = ym_residual(conv(), moved);
    for (double r : res) CHECK(r < 1e-6);
  }
}

TEST_CASE("yang-mills value of the base connection has its closed form") {
  const double ym0 = ym_value(conv(), flat());
  const double target = std::pow(kPi / cfg()->mu(), 2) *
                        (e_trace(e_identity(cfg()), conv().calibration()).real());
  CHECK(ym0 > 0);
  CHECK(std::abs(ym0 - target) < 1e-6 * target);
}

TEST_CASE("perturbing the connection can only raise the value") {
  const double ym0 = ym_value(conv(), flat());
  const CounterRng rng{171};
  for (uint64_t i = 0; i < 3; ++i) {
    const Connection conn = random_connection(60 + i, 0.25 * (i + 1));
    const double gap = ym_value(conv(), conn) - ym0;
    CHECK(gap >= -1e-8);

    const CurvatureForm om = omega(conv(), conn);
    EElement quad(cfg());
    for (const auto& v : om.values) quad = quad + e_mul(e_star(v), v);
    const double viaOmega = e_trace(quad, conv().calibration()).real();
    CHECK(std::abs(gap - viaOmega) < 1e-7);
  }
}

TEST_CASE("the yang-mills value is gauge invariant") {
  const CounterRng rng{181};
  for (uint64_t i = 0; i < 2; ++i) {
    const EElement u = random_unitary(cfg(), rng, 70 + i, 0.6);
    for (uint64_t j = 0; j < 2; ++j) {
      const Connection conn = (j == 0) ? flat() : random_connection(80 + i, 0.35);
      const double before = ym_value(conv(), conn);
      const double after = ym_value(conv(), gauge_transform(conv(), u, conn));
      CHECK(std::abs(after - before) < 1e-6);
    }
  }
}

TEST_CASE("curvature transforms by conjugation") {
  const CounterRng rng{191};
  const EElement u = random_unitary(cfg(), rng, 90, 0.6);
  const EElement us = e_star(u);
  const Connection conn = random_connection(91, 0.3);
  const CurvatureForm before = curvature(conv(), conn);
  const CurvatureForm after = curvature(conv(), gauge_transform(conv(), u, conn));
  for (int i = 0; i < 3; ++i) {
    CHECK(defect(after.values[i], e_mul(u, e_mul(before.values[i], us))) < 1e-7);
  }
}

TEST_CASE("gauge transform guards and identity behavior") {
  const Connection conn = random_connection(95, 0.3);
  const Connection same = gauge_transform(conv(), e_identity(cfg()), conn);
  for (Direction d : kDirections) {
    CHECK(defect(*same.perturbation(d), *conn.perturbation(d)) < 1e-10);
  }
  const CounterRng rng{201};
  const EElement notU = Complex{2, 0} * e_identity(cfg());
  CHECK_THROWS_AS(gauge_transform(conv(), notU, conn), NotUnitary);
  (void)rng;
}
