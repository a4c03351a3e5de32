#include "qhm/ximodule.hpp"

#include <cmath>

namespace qhm {

XiElement gaussian_vector(ConfigPtr cfg, double a, int n0, double x0) {
  const double L = cfg->window();
  const int N = cfg->halfModes();
  if (a < 0.25) throw OutOfRange("gaussian_vector: width parameter a must be >= 1/4");
  if (n0 < -N || n0 > N) throw OutOfRange("gaussian_vector: mode outside range");
  if (std::abs(x0) > 0.5 * L) throw OutOfRange("gaussian_vector: center outside [-L/2, L/2]");

  XiElement out(cfg);
  const double norm = std::pow(2.0 * a, 0.25);
  const int J = cfg->gridXi();
  for (int j = 0; j < J; ++j) {
    const double u = cfg->xiPoint(j) - x0;
    out.at(n0, j) = norm * std::exp(-kPi * a * u * u);
  }
  const double edge = L - std::abs(x0);
  out.declaredTail = norm * std::exp(-kPi * a * edge * edge);
  if (out.declaredTail >= cfg->tolAlgebra() / 10.0) {
    throw TailOverflow("gaussian_vector: tail at the window edge exceeds the decay contract");
  }
  return out;
}

XiElement act_d(const XiElement& f, const DElement& phi) {
  require_same_config(f.cfg->hash(), phi.cfg->hash(), "act_d");
  const auto& cfg = f.cfg;
  XiElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridXi();
  const double mu = cfg->mu(), nu = cfg->nu();

  std::vector<Complex> dm(M), fm(M);
  for (int j = 0; j < J; ++j) {
    const double x = cfg->xiPoint(j);
    Complex* ocol = out.coef.data() + j;
    for (int p = -P; p <= P; ++p) {
      const double xs = x + 2.0 * p * mu;
      if (std::abs(xs) > cfg->window()) continue;
      phi.modeAt(p, xs, dm.data());
      f.modeAt(xs, fm.data());
      for (int n = -N; n <= N; ++n) {
        Complex acc{0, 0};
        for (int m = -N; m <= N; ++m) {
          const int src = n + m;
          if (src < -N || src > N) continue;
          acc += std::conj(dm[m + N]) * fm[src + N];
        }
        ocol[static_cast<std::size_t>(n + N) * J] += cis(2.0 * p * nu * n) * acc;
      }
    }
  }
  out.declaredTail = std::max(f.declaredTail, out.boundaryMass());
  if (out.boundaryMass() >= cfg->tolAlgebra() / 10.0) {
    throw TailOverflow("act_d: result mass at the window boundary exceeds the decay contract");
  }
  return out;
}

DElement inner_d(const XiElement& f, const XiElement& g) {
  require_same_config(f.cfg->hash(), g.cfg->hash(), "inner_d");
  const auto& cfg = f.cfg;
  DElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridD();
  const int K = cfg->kMax();
  const double h = cfg->stepD();
  const int c = cfg->c();
  const double mu = cfg->mu(), nu = cfg->nu();

  std::vector<Complex> fm(M), gm(M);
  double budget = 0;
  for (int p = -P; p <= P; ++p) {
    for (int j = 0; j < J; ++j) {
      const double x = j * h;
      Complex* orow = out.coef.data() + out.index(p, -N, j);
      for (int k = -K; k <= K; ++k) {
        f.modeAt(x + k, fm.data());
        g.modeAt(x - 2.0 * p * mu + k, gm.data());
        const int shift = c * k * p;
        const Complex ph = cis(c * k * static_cast<double>(p) * p * nu);
        for (int n = -N; n <= N; ++n) {
          Complex acc{0, 0};
          for (int b = -N; b <= N; ++b) {
            const int aIdx = n + shift + b;
            if (aIdx < -N || aIdx > N) continue;
            acc += fm[aIdx + N] * std::conj(gm[b + N]) * cis(2.0 * p * nu * b);
          }
          orow[static_cast<std::size_t>(n + N) * J] += ph * acc;
        }
        // contributions the mode range cannot hold
        for (int b = -N; b <= N; ++b) {
          for (int aIdx = -N; aIdx <= N; ++aIdx) {
            const int n = aIdx - b - shift;
            if (n >= -N && n <= N) continue;
            const double mag = std::abs(fm[aIdx + N]) * std::abs(gm[b + N]);
            if (mag > budget) budget = mag;
          }
        }
      }
    }
  }
  out.modeTruncation = budget;
  return out;
}

EElement inner_e(const XiElement& f, const XiElement& g) {
  require_same_config(f.cfg->hash(), g.cfg->hash(), "inner_e");
  const auto& cfg = f.cfg;
  EElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridE();
  const double h = cfg->stepE();
  const int c = cfg->c();
  const double mu = cfg->mu(), nu = cfg->nu();

  std::vector<Complex> fm(M), gm(M);
  double budget = 0;
  for (int k = -P; k <= P; ++k) {
    for (int j = 0; j < J; ++j) {
      const double x = j * h;
      Complex* orow = out.coef.data() + out.index(k, -N, j);
      for (int p = -P; p <= P; ++p) {
        f.modeAt(x - 2.0 * p * mu, fm.data());
        g.modeAt(x - 2.0 * p * mu + k, gm.data());
        const int shift = c * k * p;
        const Complex ph = cis(c * k * static_cast<double>(p) * p * nu);
        for (int n = -N; n <= N; ++n) {
          Complex acc{0, 0};
          for (int b = -N; b <= N; ++b) {
            const int aIdx = n + shift + b;
            if (aIdx < -N || aIdx > N) continue;
            acc += fm[aIdx + N] * std::conj(gm[b + N]);
          }
          orow[static_cast<std::size_t>(n + N) * J] +=
              ph * cis(-2.0 * p * nu * (n + shift)) * acc;
        }
        for (int b = -N; b <= N; ++b) {
          for (int aIdx = -N; aIdx <= N; ++aIdx) {
            const int n = aIdx - b - shift;
            if (n >= -N && n <= N) continue;
            const double mag = std::abs(fm[aIdx + N]) * std::abs(gm[b + N]);
            if (mag > budget) budget = mag;
          }
        }
      }
    }
  }
  out.modeTruncation = budget;
  return out;
}

XiElement act_e(const EElement& psi, const XiElement& f) {
  require_same_config(psi.cfg->hash(), f.cfg->hash(), "act_e");
  const auto& cfg = f.cfg;
  XiElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridXi();

  std::vector<Complex> em(M), fm(M);
  for (int j = 0; j < J; ++j) {
    const double x = cfg->xiPoint(j);
    Complex* ocol = out.coef.data() + j;
    for (int k = -P; k <= P; ++k) {
      if (std::abs(x + k) > cfg->window()) continue;
      psi.modeAt(k, x, em.data());
      f.modeAt(x + k, fm.data());
      for (int n = -N; n <= N; ++n) {
        Complex acc{0, 0};
        for (int m = -N; m <= N; ++m) {
          const int src = n - m;
          if (src < -N || src > N) continue;
          acc += em[m + N] * fm[src + N];
        }
        ocol[static_cast<std::size_t>(n + N) * J] += acc;
      }
    }
  }
  out.declaredTail = std::max(f.declaredTail, out.boundaryMass());
  return out;
}

}  // namespace qhm
