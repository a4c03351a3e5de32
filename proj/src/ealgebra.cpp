#include "qhm/ealgebra.hpp"

#include <cmath>

namespace qhm {

std::pair<EElement, double> e_from_function(ConfigPtr cfg, const ESampler& sampler) {
  EElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridE();
  const double h = cfg->stepE();
  const int c = cfg->c();
  const double mu = cfg->mu(), nu = cfg->nu();

  std::vector<Complex> row(M);
  double twistDefect = 0;
  for (int k = -P; k <= P; ++k) {
    for (int j = 0; j < J; ++j) {
      const double x = j * h;
      for (int l = 0; l < M; ++l) {
        const double y = static_cast<double>(l) / M;
        const Complex v = sampler(x, y, k);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          throw NonFiniteSample("e_from_function: sampler returned a non-finite value");
        }
        row[l] = v;
        for (int p : {-1, 1}) {
          const Complex shifted = sampler(x - 2.0 * p * mu, y - 2.0 * p * nu, k);
          if (!std::isfinite(shifted.real()) || !std::isfinite(shifted.imag())) {
            throw NonFiniteSample("e_from_function: sampler returned a non-finite value");
          }
          const Complex predicted = cis(c * k * p * (y - p * nu)) * v;
          twistDefect = std::max(twistDefect, std::abs(shifted - predicted));
        }
      }
      for (int n = -N; n <= N; ++n) {
        Complex acc{0, 0};
        for (int l = 0; l < M; ++l) acc += row[l] * cis(-n * static_cast<double>(l) / M);
        out.at(k, n, j) = acc / static_cast<double>(M);
      }
    }
  }
  return {std::move(out), twistDefect};
}

EElement e_identity(ConfigPtr cfg) {
  EElement out(std::move(cfg));
  for (int j = 0; j < out.grid(); ++j) out.at(0, 0, j) = Complex{1, 0};
  return out;
}

EElement e_mul(const EElement& a, const EElement& b) {
  require_same_config(a.cfg->hash(), b.cfg->hash(), "e_mul");
  const auto& cfg = a.cfg;
  EElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridE();
  const double h = cfg->stepE();

  std::vector<Complex> bm(M);
  double budget = std::max(a.modeTruncation, b.modeTruncation);
  for (int k = -P; k <= P; ++k) {
    for (int jp = -P; jp <= P; ++jp) {
      const int r = k - jp;
      if (r < -P || r > P) continue;
      for (int j = 0; j < J; ++j) {
        const Complex* arow = a.coef.data() + a.index(jp, -N, j);
        bool any = false;
        for (int n1 = 0; n1 < M && !any; ++n1) {
          any = arow[static_cast<std::size_t>(n1) * J] != Complex{0, 0};
        }
        if (!any) continue;
        b.modeAt(r, j * h + jp, bm.data());
        Complex* orow = out.coef.data() + out.index(k, -N, j);
        for (int n1 = -N; n1 <= N; ++n1) {
          const Complex av = arow[static_cast<std::size_t>(n1 + N) * J];
          if (av == Complex{0, 0}) continue;
          for (int n2 = -N; n2 <= N; ++n2) {
            const int n = n1 + n2;
            const Complex term = av * bm[n2 + N];
            if (n < -N || n > N) {
              budget = std::max(budget, std::abs(term));
              continue;
            }
            orow[static_cast<std::size_t>(n + N) * J] += term;
          }
        }
      }
    }
  }
  out.modeTruncation = budget;
  return out;
}

EElement e_star(const EElement& a) {
  const auto& cfg = a.cfg;
  EElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridE();
  const double h = cfg->stepE();
  std::vector<Complex> mv(M);
  for (int k = -P; k <= P; ++k) {
    for (int j = 0; j < J; ++j) {
      a.modeAt(-k, j * h + k, mv.data());
      for (int n = -N; n <= N; ++n) out.at(k, n, j) = std::conj(mv[-n + N]);
    }
  }
  out.modeTruncation = a.modeTruncation;
  return out;
}

double selfadjoint_defect(const EElement& a) { return defect(e_star(a), a); }

double skewadjoint_defect(const EElement& a) {
  return defect(e_star(a), Complex{-1, 0} * a);
}

EElement e_delta(Direction dir, const EElement& a) {
  const auto& cfg = a.cfg;
  EElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), J = cfg->gridE();
  const double h = cfg->stepE();
  const double mu = cfg->mu();
  const int c = cfg->c();

  if (dir == Direction::X) {
    const auto w = central_first_derivative(cfg->interpOrder(), h);
    const int half = cfg->interpOrder() / 2;
    for (int k = -P; k <= P; ++k) {
      for (int n = -N; n <= N; ++n) {
        for (int j = 0; j < J; ++j) {
          Complex acc{0, 0};
          for (int s = -half; s <= half; ++s) acc += w[s + half] * a.ghost(k, n, j + s);
          out.at(k, n, j) = -acc;
        }
      }
    }
  } else if (dir == Direction::Y) {
    for (int k = -P; k <= P; ++k) {
      for (int n = -N; n <= N; ++n) {
        for (int j = 0; j < J; ++j) {
          const double x = j * h;
          const Complex factor{0, -2.0 * kPi * n - (kPi * c / (2.0 * mu)) * k * (2.0 * x + k)};
          out.at(k, n, j) = factor * a.at(k, n, j);
        }
      }
    }
  } else {
    for (int k = -P; k <= P; ++k) {
      const Complex factor{0, -kPi * k / mu};
      for (int n = -N; n <= N; ++n) {
        for (int j = 0; j < J; ++j) out.at(k, n, j) = factor * a.at(k, n, j);
      }
    }
  }
  out.modeTruncation = a.modeTruncation;
  return out;
}

EElement e_exp(const EElement& a) {
  const auto& cfg = a.cfg;
  double amax = 0;
  for (const auto& v : a.coef) amax = std::max(amax, std::abs(v));
  if (amax > 20.0) {
    throw ConvergenceBudgetExceeded("e_exp: input norm exceeds the series budget");
  }
  EElement sum = e_identity(cfg);
  EElement term = e_identity(cfg);
  for (int n = 1; n <= 200; ++n) {
    term = e_mul(term, a);
    term = (Complex{1.0 / n, 0}) * term;
    sum = sum + term;
    double tmax = 0;
    for (const auto& v : term.coef) tmax = std::max(tmax, std::abs(v));
    if (tmax < 1e-14) return sum;
  }
  throw ConvergenceBudgetExceeded("e_exp: series did not converge within 200 terms");
}

Complex e_integral0(const EElement& a) {
  const int J = a.grid();
  Complex acc{0, 0};
  for (int j = 0; j < J; ++j) acc += a.at(0, 0, j);
  return acc * (2.0 * a.cfg->mu() / static_cast<double>(J));
}

Complex e_trace(const EElement& a, const TraceCalibration& calib) {
  if (calib.configHash != a.cfg->hash()) {
    throw ConfigMismatch("e_trace: calibration belongs to a different configuration");
  }
  return calib.C * e_integral0(a);
}

Complex e_trace_product(const EElement& a, const EElement& b,
                        const TraceCalibration& calib) {
  require_same_config(a.cfg->hash(), b.cfg->hash(), "e_trace_product");
  if (calib.configHash != a.cfg->hash()) {
    throw ConfigMismatch("e_trace_product: calibration belongs to a different configuration");
  }
  const auto& cfg = a.cfg;
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridE();
  const double h = cfg->stepE();
  std::vector<Complex> bm(M);
  Complex acc{0, 0};
  for (int jp = -P; jp <= P; ++jp) {
    for (int j = 0; j < J; ++j) {
      const Complex* arow = a.coef.data() + a.index(jp, -N, j);
      bool any = false;
      for (int n = 0; n < M && !any; ++n) {
        any = arow[static_cast<std::size_t>(n) * J] != Complex{0, 0};
      }
      if (!any) continue;
      b.modeAt(-jp, j * h + jp, bm.data());
      // mode-0 coefficient of the product column
      for (int m = -N; m <= N; ++m) {
        acc += arow[static_cast<std::size_t>(m + N) * J] * bm[-m + N];
      }
    }
  }
  return calib.C * acc * (2.0 * cfg->mu() / static_cast<double>(J));
}

EElement e_gaussian(ConfigPtr cfg, int k0, int n0, double x0, double a, Complex amp) {
  EElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), J = cfg->gridE();
  if (k0 < -P || k0 > P) throw OutOfRange("e_gaussian: fiber outside range");
  if (n0 < -N || n0 > N) throw OutOfRange("e_gaussian: mode outside range");
  const double h = cfg->stepE();
  const int c = cfg->c();
  const double mu = cfg->mu(), nu = cfg->nu();
  const double reach = std::sqrt(40.0 / (kPi * a));
  const int pLo = static_cast<int>(std::floor((x0 - reach - 2.0 * mu) / (2.0 * mu)));
  const int pHi = static_cast<int>(std::ceil((x0 + reach) / (2.0 * mu)));
  for (int p = pLo; p <= pHi; ++p) {
    const int m = n0 + c * k0 * p;
    if (m < -N || m > N) continue;
    const Complex ph =
        amp * cis(c * k0 * static_cast<double>(p) * p * nu + 2.0 * p * nu * n0);
    for (int j = 0; j < J; ++j) {
      const double u = j * h + 2.0 * p * mu - x0;
      out.at(k0, m, j) += ph * std::exp(-kPi * a * u * u);
    }
  }
  return out;
}

RecoveredElement from_operator(ConfigPtr cfg, const XiOperator& L, int kRange) {
  const int P = cfg->pMax();
  if (kRange < 0 || kRange > P) throw OutOfRange("from_operator: fiber range outside storage");
  const int N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridE();
  const double h = cfg->stepE();
  const double twoMu = 2.0 * cfg->mu();

  // Probe geometry: slab half-width s and probe sharpness chosen so that the
  // probe is well resolved on the grid, stays above 1e-6 across a slab and
  // leaks below ~1e-8 into the neighboring integer shifts.
  const double slabHalf = 0.1;
  const double aProbe = 8.5;
  const double probeNorm = 1.0;
  auto probeValue = [&](double u) { return probeNorm * std::exp(-kPi * aProbe * u * u); };

  RecoveredElement rec{EElement(cfg), 0.0};
  std::vector<Complex> lm(M);

  const int nSlabs = static_cast<int>(std::ceil(twoMu / (2.0 * slabHalf)));
  for (int k = -kRange; k <= kRange; ++k) {
    for (int slab = 0; slab <= nSlabs; ++slab) {
      // slab == nSlabs re-samples a band past the fundamental domain for the
      // twist-consistency defect
      const double lo = (slab == nSlabs) ? twoMu : slab * 2.0 * slabHalf;
      const double hi = (slab == nSlabs) ? twoMu + slabHalf
                                         : std::min((slab + 1) * 2.0 * slabHalf, twoMu);
      if (lo >= hi) continue;
      const double center = 0.5 * (lo + hi) + k;

      XiElement probe(cfg);
      for (int j = 0; j < cfg->gridXi(); ++j) {
        probe.at(0, j) = probeValue(cfg->xiPoint(j) - center);
      }
      probe.declaredTail = probeValue(cfg->window() - std::abs(center));
      const XiElement image = L(probe);

      if (slab < nSlabs) {
        for (int j = 0; j < J; ++j) {
          const double x = j * h;
          if (x < lo || x >= hi) continue;
          const double pv = probeValue(x + k - center);
          if (pv < 1e-6) {
            throw ProbeIllConditioned("from_operator: probe value below 1e-6");
          }
          image.modeAt(x, lm.data());
          for (int n = -N; n <= N; ++n) rec.psi.at(k, n, j) = lm[n + N] / pv;
        }
      } else {
        // compare the off-domain recovery with the stored data's extension
        std::vector<Complex> ext(M);
        for (int t = 0; t < 6; ++t) {
          const double x = lo + (hi - lo) * (t + 0.5) / 6.0;
          const double pv = probeValue(x + k - center);
          if (pv < 1e-6) {
            throw ProbeIllConditioned("from_operator: probe value below 1e-6");
          }
          image.modeAt(x, lm.data());
          rec.psi.modeAt(k, x, ext.data());
          for (int n = 0; n < M; ++n) {
            rec.twistDefect = std::max(rec.twistDefect, std::abs(lm[n] / pv - ext[n]));
          }
        }
      }
    }
  }
  return rec;
}

}  // namespace qhm
