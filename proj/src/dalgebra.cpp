#include "qhm/dalgebra.hpp"

#include <cmath>

namespace qhm {

std::pair<DElement, double> d_from_function(ConfigPtr cfg, const DSampler& sampler) {
  DElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridD();
  const double h = cfg->stepD();
  const int c = cfg->c();
  const double nu = cfg->nu();

  std::vector<Complex> row(M);
  double twistDefect = 0;
  for (int p = -P; p <= P; ++p) {
    for (int j = 0; j < J; ++j) {
      const double x = j * h;
      for (int l = 0; l < M; ++l) {
        const double y = static_cast<double>(l) / M;
        const Complex v = sampler(x, y, p);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          throw NonFiniteSample("d_from_function: sampler returned a non-finite value");
        }
        row[l] = v;
        for (int k : {-1, 1}) {
          const Complex shifted = sampler(x + k, y, p);
          if (!std::isfinite(shifted.real()) || !std::isfinite(shifted.imag())) {
            throw NonFiniteSample("d_from_function: sampler returned a non-finite value");
          }
          const Complex predicted = cis(c * k * p * (y - p * nu)) * v;
          twistDefect = std::max(twistDefect, std::abs(shifted - predicted));
        }
      }
      for (int n = -N; n <= N; ++n) {
        Complex acc{0, 0};
        for (int l = 0; l < M; ++l) acc += row[l] * cis(-n * static_cast<double>(l) / M);
        out.at(p, n, j) = acc / static_cast<double>(M);
      }
    }
  }
  return {std::move(out), twistDefect};
}

DElement d_identity(ConfigPtr cfg) {
  DElement out(std::move(cfg));
  const int J = out.grid();
  for (int j = 0; j < J; ++j) out.at(0, 0, j) = Complex{1, 0};
  return out;
}

DElement d_mul(const DElement& a, const DElement& b) {
  require_same_config(a.cfg->hash(), b.cfg->hash(), "d_mul");
  const auto& cfg = a.cfg;
  DElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridD();
  const double h = cfg->stepD();
  const double mu = cfg->mu(), nu = cfg->nu();

  std::vector<Complex> bm(M);
  double budget = std::max(a.modeTruncation, b.modeTruncation);
  for (int p = -P; p <= P; ++p) {
    for (int q = -P; q <= P; ++q) {
      const int r = p - q;
      if (r < -P || r > P) continue;
      for (int j = 0; j < J; ++j) {
        b.modeAt(r, j * h - 2.0 * q * mu, bm.data());
        // y shift by -2 q nu multiplies mode n2 by e(-2 q nu n2)
        for (int n2 = -N; n2 <= N; ++n2) bm[n2 + N] *= cis(-2.0 * q * nu * n2);
        const Complex* arow = a.coef.data() + a.index(q, -N, j);
        Complex* orow = out.coef.data() + out.index(p, -N, j);
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

DElement d_star(const DElement& a) {
  const auto& cfg = a.cfg;
  DElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridD();
  const double h = cfg->stepD();
  const double mu = cfg->mu(), nu = cfg->nu();
  std::vector<Complex> mv(M);
  for (int p = -P; p <= P; ++p) {
    for (int j = 0; j < J; ++j) {
      a.modeAt(-p, j * h - 2.0 * p * mu, mv.data());
      for (int n = -N; n <= N; ++n) {
        out.at(p, n, j) = cis(-2.0 * p * nu * n) * std::conj(mv[-n + N]);
      }
    }
  }
  out.modeTruncation = a.modeTruncation;
  return out;
}

Complex d_trace(const DElement& a) {
  const int J = a.grid();
  Complex acc{0, 0};
  for (int j = 0; j < J; ++j) acc += a.at(0, 0, j);
  return acc / static_cast<double>(J);
}

DElement delta(Direction dir, const DElement& a) {
  const auto& cfg = a.cfg;
  DElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), J = cfg->gridD();
  const double h = cfg->stepD();
  const double mu = cfg->mu();
  const Complex twoPiI{0, 2.0 * kPi};

  if (dir == Direction::X) {
    const auto w = central_first_derivative(cfg->interpOrder(), h);
    const int half = cfg->interpOrder() / 2;
    for (int p = -P; p <= P; ++p) {
      for (int n = -N; n <= N; ++n) {
        for (int j = 0; j < J; ++j) {
          Complex acc{0, 0};
          for (int s = -half; s <= half; ++s) acc += w[s + half] * a.ghost(p, n, j + s);
          out.at(p, n, j) = -acc;
        }
      }
    }
  } else if (dir == Direction::Y) {
    for (int p = -P; p <= P; ++p) {
      for (int n = -N; n <= N; ++n) {
        for (int j = 0; j < J; ++j) {
          const double x = j * h;
          out.at(p, n, j) =
              (twoPiI * (cfg->c() * p * (x - p * mu) - static_cast<double>(n))) *
              a.at(p, n, j);
        }
      }
    }
  } else {
    for (int p = -P; p <= P; ++p) {
      const Complex f = twoPiI * static_cast<double>(p);
      for (int n = -N; n <= N; ++n) {
        for (int j = 0; j < J; ++j) out.at(p, n, j) = f * a.at(p, n, j);
      }
    }
  }
  out.modeTruncation = a.modeTruncation;
  return out;
}

DElement heis_act(double r, double s, double t, const DElement& a) {
  const auto& cfg = a.cfg;
  DElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), M = cfg->yModes(), J = cfg->gridD();
  const double h = cfg->stepD();
  const double mu = cfg->mu();
  std::vector<Complex> mv(M);
  for (int p = -P; p <= P; ++p) {
    for (int j = 0; j < J; ++j) {
      const double x = j * h;
      a.modeAt(p, x - r, mv.data());
      const Complex pre = cis(p * (t + cfg->c() * s * (x - p * mu - r)));
      for (int n = -N; n <= N; ++n) {
        out.at(p, n, j) = pre * cis(-n * s) * mv[n + N];
      }
    }
  }
  out.modeTruncation = a.modeTruncation;
  return out;
}

double delta_fd_check(Direction dir, const DElement& a, double h) {
  if (!(h > 0.0) || h > 1e-2) {
    throw InvalidParameter("delta_fd_check: h must lie in (0, 1e-2]");
  }
  // exp(h W) for a basis element W is the one-parameter group element with a
  // single nonzero coordinate (the Heisenberg exponential is exact here).
  double r = 0, s = 0, t = 0;
  switch (dir) {
    case Direction::X: r = h; break;
    case Direction::Y: s = h; break;
    case Direction::Z: t = h; break;
  }
  const DElement plus = heis_act(r, s, t, a);
  const DElement minus = heis_act(-r, -s, -t, a);
  const DElement fd = (Complex{1.0 / (2.0 * h), 0}) * (plus - minus);
  return defect(delta(dir, a), fd);
}

DElement d_gaussian(ConfigPtr cfg, int p0, int n0, double x0, double a, Complex amp) {
  DElement out(cfg);
  const int P = cfg->pMax(), N = cfg->halfModes(), J = cfg->gridD();
  if (p0 < -P || p0 > P) throw OutOfRange("d_gaussian: fiber outside range");
  if (n0 < -N || n0 > N) throw OutOfRange("d_gaussian: mode outside range");
  const double h = cfg->stepD();
  const int c = cfg->c();
  const double nu = cfg->nu();
  const double reach = std::sqrt(40.0 / (kPi * a));  // |G| < 1e-17 beyond
  const int kLo = static_cast<int>(std::floor(x0 - reach - 1.0));
  const int kHi = static_cast<int>(std::ceil(x0 + reach));
  for (int k = kLo; k <= kHi; ++k) {
    const int m = n0 - c * k * p0;
    if (m < -N || m > N) continue;
    const Complex ph = amp * cis(c * k * static_cast<double>(p0) * p0 * nu);
    for (int j = 0; j < J; ++j) {
      const double u = j * h + k - x0;
      out.at(p0, m, j) += ph * std::exp(-kPi * a * u * u);
    }
  }
  return out;
}

}  // namespace qhm
