#include "qhm/conventions.hpp"

#include <cmath>

#include "qhm/dalgebra.hpp"
#include "qhm/sampling.hpp"

namespace qhm {

TraceCalibration calibrate_trace(ConfigPtr cfg, uint64_t rngSeed) {
  const CounterRng rng{rngSeed};
  std::vector<Complex> ratios;
  uint64_t ctr = 0;
  while (ratios.size() < 20 && ctr < 200) {
    const uint64_t base = 1000 + 4 * ctr++;
    const double a1 = 4.0 + 2.0 * rng.uniform(base);
    const double a2 = 4.0 + 2.0 * rng.uniform(base + 1);
    const int n0 = static_cast<int>(std::floor(rng.uniform(base + 2) * 5.0)) - 2;
    const double x1 = rng.symmetric(base + 3) * 0.35;
    const double x2 = x1 + 0.3 * rng.symmetric(base + 3710);
    const XiElement f = gaussian_vector(cfg, a1, n0, x1);
    const XiElement g = gaussian_vector(cfg, a2, n0, x2);
    const Complex tD = d_trace(inner_d(f, g));
    const Complex tERaw = e_integral0(inner_e(f, g));
    if (std::abs(tD) < 0.05) continue;  // too small for a reliable ratio
    ratios.push_back(tD / tERaw);
  }
  if (ratios.size() < 20) {
    throw CalibrationInconsistent("calibrate_trace: could not assemble 20 usable pairs");
  }
  Complex mean{0, 0};
  for (const auto& r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double spread = 0;
  for (const auto& r : ratios) spread = std::max(spread, std::abs(r - mean));
  const double rel = spread / std::abs(mean);
  if (rel > 1e-6) {
    throw CalibrationInconsistent(
        "calibrate_trace: implied constants spread " + std::to_string(rel) +
        " relative (> 1e-6); a convention upstream is wrong");
  }
  if (std::abs(mean.imag()) > 1e-8 * std::abs(mean)) {
    throw CalibrationInconsistent("calibrate_trace: constant is not real");
  }
  return TraceCalibration{mean.real(), rel, cfg->hash()};
}

Conventions Conventions::validate(ConfigPtr cfg) {
  Conventions conv;
  conv.cfg_ = cfg;
  const CounterRng rng{cfg->seed()};

  // involution symmetry of both inner products
  for (uint64_t i = 0; i < 5; ++i) {
    const XiElement f = random_vector(cfg, rng, 2 * i);
    const XiElement g = random_vector(cfg, rng, 2 * i + 1);
    conv.innerDHermitian =
        std::max(conv.innerDHermitian, defect(d_star(inner_d(f, g)), inner_d(g, f)));
    conv.innerEHermitian =
        std::max(conv.innerEHermitian, defect(e_star(inner_e(f, g)), inner_e(g, f)));
  }

  // imprimitivity: the E-valued product acts as the D-side rank-one operator
  for (uint64_t i = 0; i < 10; ++i) {
    const XiElement f = random_vector(cfg, rng, 100 + 3 * i);
    const XiElement g = random_vector(cfg, rng, 101 + 3 * i);
    const XiElement h = random_vector(cfg, rng, 102 + 3 * i);
    const XiElement lhs = act_e(inner_e(f, g), h);
    const XiElement rhs = act_d(f, inner_d(g, h));
    conv.imprimitivity = std::max(conv.imprimitivity, defect(lhs, rhs));
  }

  // module laws and the commutant property
  for (uint64_t i = 0; i < 4; ++i) {
    const XiElement f = random_vector(cfg, rng, 200 + 4 * i);
    const DElement phi = random_d(cfg, rng, 300 + i);
    const DElement psiD = random_d(cfg, rng, 310 + i);
    conv.moduleAssociativity = std::max(
        conv.moduleAssociativity,
        defect(act_d(act_d(f, phi), psiD), act_d(f, d_mul(phi, psiD))));
    const EElement psi = random_e(cfg, rng, 320 + i);
    const EElement chi = random_e(cfg, rng, 330 + i);
    conv.commutant = std::max(conv.commutant,
                              defect(act_e(psi, act_d(f, phi)), act_d(act_e(psi, f), phi)));
    conv.actHomomorphism = std::max(
        conv.actHomomorphism, defect(act_e(e_mul(psi, chi), f), act_e(psi, act_e(chi, f))));
    conv.starInvolution = std::max(conv.starInvolution, defect(e_star(e_star(psi)), psi));
  }

  conv.calib_ = calibrate_trace(cfg, cfg->seed());
  for (uint64_t i = 0; i < 5; ++i) {
    const XiElement f = random_vector(cfg, rng, 400 + 2 * i);
    const XiElement g = random_vector(cfg, rng, 401 + 2 * i);
    const Complex tE = e_trace(inner_e(f, g), conv.calib_);
    const Complex tD = d_trace(inner_d(f, g));
    conv.traceIdentity = std::max(conv.traceIdentity, std::abs(tE - tD));
  }

  const double tol = cfg->tolAlgebra() * 10.0;  // 1e-7 at defaults
  conv.pass_ = conv.innerDHermitian < tol && conv.innerEHermitian < tol &&
               conv.imprimitivity < tol && conv.moduleAssociativity < tol &&
               conv.commutant < tol && conv.actHomomorphism < tol &&
               conv.starInvolution < cfg->tolAlgebra() && conv.traceIdentity < tol;
  return conv;
}

}  // namespace qhm
