#include <cmath>
#include <cstring>

#include "doctest.h"
#include "oracles.hpp"
#include "qhm/conventions.hpp"
#include "qhm/sampling.hpp"
#include "qhm/ximodule.hpp"

using namespace qhm;

namespace {

ConfigPtr cfg() {
  static ConfigPtr c = default_config();
  return c;
}

double sample_defect_xi(const XiElement& a, const oracle::FnXi& ref, int samples = 60) {
  const CounterRng rng{881};
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = 5.5 * rng.symmetric(2 * i);
    const double y = rng.uniform(2 * i + 1);
    worst = std::max(worst, std::abs(a.eval(x, y) - ref(x, y)));
  }
  return worst;
}

double sample_defect_d(const DElement& a, const oracle::FnD& ref, int samples = 40) {
  const CounterRng rng{882};
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = rng.uniform(3 * i);
    const double y = rng.uniform(3 * i + 1);
    const int p =
        static_cast<int>(std::floor(rng.uniform(3 * i + 2) * (2 * cfg()->pMax() + 1))) -
        cfg()->pMax();
    worst = std::max(worst, std::abs(a.eval(x, y, p) - ref(x, y, p)));
  }
  return worst;
}

double sample_defect_e(const EElement& a, const oracle::FnE& ref, int samples = 40) {
  const CounterRng rng{883};
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = 2.0 * a.cfg->mu() * rng.uniform(3 * i);
    const double y = rng.uniform(3 * i + 1);
    const int k =
        static_cast<int>(std::floor(rng.uniform(3 * i + 2) * (2 * cfg()->pMax() + 1))) -
        cfg()->pMax();
    worst = std::max(worst, std::abs(a.eval(x, y, k) - ref(x, y, k)));
  }
  return worst;
}

oracle::GaussXi as_oracle(double a, int n0, double x0) {
  return {.x0 = x0, .a = a, .n0 = n0, .amp = Complex{std::pow(2.0 * a, 0.25), 0}};
}

}  // namespace

TEST_CASE("gaussian vectors are normalized and match their closed form") {
  const XiElement f = gaussian_vector(cfg(), 1.0, 0, 0.0);
  CHECK(std::abs(f.l2sq() - 1.0) < 1e-12);
  CHECK(sample_defect_xi(f, as_oracle(1.0, 0, 0.0).fn()) < 1e-10);
  // value at x = 1 equals the normalized exp(-pi)
  const double norm = std::pow(2.0, 0.25);
  CHECK(std::abs(f.eval(1.0, 0.3) - norm * std::exp(-kPi)) < 1e-10);
  // outside the window evaluation is exactly zero
  CHECK(f.eval(6.5, 0.2) == Complex{0, 0});
  CHECK(f.eval(0.0, 0.0).real() > 1.0);
}

TEST_CASE("gaussian factory contracts") {
  CHECK_THROWS_AS(gaussian_vector(cfg(), 0.1, 0, 0.0), OutOfRange);
  CHECK_THROWS_AS(gaussian_vector(cfg(), 1.0, 100, 0.0), OutOfRange);
  CHECK_THROWS_AS(gaussian_vector(cfg(), 1.0, 0, 5.0), OutOfRange);
  // wide and far off-center: tail breaks the decay contract
  CHECK_THROWS_AS(gaussian_vector(cfg(), 0.25, 0, 3.0), TailOverflow);
  // declared tail is conservative: below exp(-25 pi) for the unit gaussian
  const XiElement f = gaussian_vector(cfg(), 1.0, 0, 0.0);
  CHECK(f.declaredTail < std::exp(-25.0 * kPi));
  // determinism: two builds are bitwise identical
  const XiElement g = gaussian_vector(cfg(), 1.0, 0, 0.0);
  CHECK(std::memcmp(f.coef.data(), g.coef.data(), f.coef.size() * sizeof(Complex)) == 0);
}

TEST_CASE("right action by the identity is the identity") {
  const XiElement f = gaussian_vector(cfg(), 2.0, 1, 0.5);
  CHECK(defect(act_d(f, d_identity(cfg())), f) < 1e-13);
}

TEST_CASE("right action matches its defining sum pointwise") {
  const XiElement f = gaussian_vector(cfg(), 3.0, 1, -0.4);
  const auto fo = as_oracle(3.0, 1, -0.4);
  const DElement phi = d_gaussian(cfg(), 1, -1, 0.3, 3.5, Complex{0.7, 0.2});
  const oracle::GaussD po{.cfg = cfg(), .p0 = 1, .n0 = -1, .x0 = 0.3, .a = 3.5,
                          .amp = Complex{0.7, 0.2}};
  const XiElement fp = act_d(f, phi);
  auto ref = [&](double x, double y) {
    return oracle::act_d_ref(cfg(), fo.fn(), po.fn(), x, y);
  };
  CHECK(sample_defect_xi(fp, ref) < 2e-9);
}

TEST_CASE("fiber-0 algebra elements act by pointwise multiplication") {
  const XiElement f = gaussian_vector(cfg(), 2.5, 0, 0.2);
  const DElement phi = d_gaussian(cfg(), 0, 1, 0.6, 3.0);
  const XiElement fp = act_d(f, phi);
  const double x = 0.83, y = 0.41;
  CHECK(std::abs(fp.eval(x, y) - std::conj(phi.eval(x, y, 0)) * f.eval(x, y)) < 1e-9);
}

TEST_CASE("module associativity over the algebra") {
  const CounterRng rng{61};
  const XiElement f = random_vector(cfg(), rng, 0);
  const DElement a = random_d(cfg(), rng, 1);
  const DElement b = random_d(cfg(), rng, 2);
  CHECK(defect(act_d(act_d(f, a), b), act_d(f, d_mul(a, b))) < 1e-7);
}

TEST_CASE("inner product with zero vanishes") {
  const XiElement f = gaussian_vector(cfg(), 2.0, 0, 0.0);
  const XiElement zero(cfg());
  CHECK(sup_norm(inner_d(f, zero)) == 0.0);
  CHECK(sup_norm(inner_e(zero, f)) == 0.0);
}

TEST_CASE("inner products match their defining sums pointwise") {
  const XiElement f = gaussian_vector(cfg(), 4.0, 1, 0.3);
  const XiElement g = gaussian_vector(cfg(), 4.5, -1, -0.2);
  const auto fo = as_oracle(4.0, 1, 0.3);
  const auto go = as_oracle(4.5, -1, -0.2);

  const DElement ip = inner_d(f, g);
  auto refD = [&](double x, double y, int p) {
    return oracle::inner_d_ref(cfg(), fo.fn(), go.fn(), x, y, p);
  };
  CHECK(sample_defect_d(ip, refD) < 2e-9);

  const EElement ie = inner_e(f, g);
  auto refE = [&](double x, double y, int k) {
    return oracle::inner_e_ref(cfg(), fo.fn(), go.fn(), x, y, k);
  };
  CHECK(sample_defect_e(ie, refE) < 2e-9);
}

TEST_CASE("inner products land in the twisted algebras") {
  const CounterRng rng{67};
  const XiElement f = random_vector(cfg(), rng, 10);
  const XiElement g = random_vector(cfg(), rng, 11);
  // products of gaussians are narrower than the factors, so the seam
  // diagnostic sits at the interpolation error of the combined width
  CHECK(seam_defect(inner_d(f, g)) < 3e-8);
  CHECK(seam_defect(inner_e(f, g)) < 3e-8);

  // twist defect of the defining sum, via the sampler route
  const auto fo = as_oracle(4.0, 1, 0.3);
  const auto go = as_oracle(4.5, -1, -0.2);
  auto sampler = [&](double x, double y, int p) {
    return oracle::inner_d_ref(cfg(), fo.fn(), go.fn(), x, y, p);
  };
  auto [el, twist] = d_from_function(cfg(), sampler);
  CHECK(twist < 1e-12);
}

TEST_CASE("trace of inner_d(f,f) is the squared L2 norm") {
  const CounterRng rng{71};
  for (uint64_t i = 0; i < 3; ++i) {
    const XiElement f = random_vector(cfg(), rng, 20 + i);
    const Complex tr = d_trace(inner_d(f, f));
    CHECK(std::abs(tr - Complex{f.l2sq(), 0}) < 1e-8);
    CHECK(tr.real() >= 0.0);
  }
}

TEST_CASE("hermitian symmetry of both inner products") {
  const CounterRng rng{73};
  const XiElement f = random_vector(cfg(), rng, 30);
  const XiElement g = random_vector(cfg(), rng, 31);
  CHECK(defect(d_star(inner_d(f, g)), inner_d(g, f)) < 1e-8);
  CHECK(defect(e_star(inner_e(f, g)), inner_e(g, f)) < 1e-8);
}

TEST_CASE("inner_d is right-linear over the algebra") {
  const CounterRng rng{79};
  const XiElement f = random_vector(cfg(), rng, 40);
  const XiElement g = random_vector(cfg(), rng, 41);
  const DElement phi = random_d(cfg(), rng, 42);
  CHECK(defect(inner_d(f, act_d(g, phi)), d_mul(inner_d(f, g), phi)) < 1e-7);
}

TEST_CASE("imprimitivity: the two inner products induce the same operator") {
  const CounterRng rng{83};
  for (uint64_t i = 0; i < 5; ++i) {
    const XiElement f = random_vector(cfg(), rng, 50 + 3 * i);
    const XiElement g = random_vector(cfg(), rng, 51 + 3 * i);
    const XiElement h = random_vector(cfg(), rng, 52 + 3 * i);
    CHECK(defect(act_e(inner_e(f, g), h), act_d(f, inner_d(g, h))) < 1e-7);
  }
}

TEST_CASE("left action: identity, module law, commutation with the right action") {
  const CounterRng rng{89};
  const XiElement f = random_vector(cfg(), rng, 60);
  CHECK(defect(act_e(e_identity(cfg()), f), f) < 1e-13);

  const EElement psi = random_e(cfg(), rng, 61);
  const EElement chi = random_e(cfg(), rng, 62);
  CHECK(defect(act_e(e_mul(psi, chi), f), act_e(psi, act_e(chi, f))) < 1e-7);

  const DElement phi = random_d(cfg(), rng, 63);
  CHECK(defect(act_e(psi, act_d(f, phi)), act_d(act_e(psi, f), phi)) < 1e-7);
}

TEST_CASE("left action matches its defining sum pointwise") {
  const XiElement f = gaussian_vector(cfg(), 3.0, 1, 0.2);
  const auto fo = as_oracle(3.0, 1, 0.2);
  const EElement psi = e_gaussian(cfg(), 1, -1, 0.35, 3.0, Complex{0.5, 0.5});
  const oracle::GaussE po{.cfg = cfg(), .k0 = 1, .n0 = -1, .x0 = 0.35, .a = 3.0,
                          .amp = Complex{0.5, 0.5}};
  auto ref = [&](double x, double y) {
    return oracle::act_e_ref(cfg(), po.fn(), fo.fn(), x, y);
  };
  CHECK(sample_defect_xi(act_e(psi, f), ref) < 2e-9);
}

TEST_CASE("trace calibration is consistent and near unity") {
  const TraceCalibration calib = calibrate_trace(cfg(), 2024);
  CHECK(calib.relativeSpread < 1e-6);
  // the chosen normalization of the E-trace makes the measured constant 1
  CHECK(std::abs(calib.C - 1.0) < 1e-7);
  const Complex tI = e_trace(e_identity(cfg()), calib);
  CHECK(std::abs(tI - Complex{2.0 * cfg()->mu() * calib.C, 0}) < 1e-12);
}

TEST_CASE("trace identity links the two inner products") {
  const TraceCalibration calib = calibrate_trace(cfg(), 2024);
  const CounterRng rng{97};
  for (uint64_t i = 0; i < 3; ++i) {
    const XiElement f = random_vector(cfg(), rng, 70 + 2 * i);
    const XiElement g = random_vector(cfg(), rng, 71 + 2 * i);
    CHECK(std::abs(e_trace(inner_e(f, g), calib) - d_trace(inner_d(f, g))) < 1e-8);
  }
}

TEST_CASE("conventions certificate validates on the default configuration") {
  const Conventions conv = Conventions::validate(cfg());
  CHECK(conv.passed());
  CHECK(conv.imprimitivity < 1e-7);
  CHECK(conv.innerDHermitian < 1e-8);
  CHECK(conv.innerEHermitian < 1e-7);
  CHECK(conv.moduleAssociativity < 1e-7);
  CHECK(conv.commutant < 1e-7);
  CHECK(conv.actHomomorphism < 1e-7);
  CHECK(conv.traceIdentity < 1e-8);
  CHECK_NOTHROW(conv.require());
}

TEST_CASE("xi serialization round-trips") {
  const XiElement f = gaussian_vector(cfg(), 2.0, 1, 0.25);
  const XiElement back = XiElement::fromJson(cfg(), f.toJson());
  CHECK(defect(f, back) < 1e-6);
}
