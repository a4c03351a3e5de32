#pragma once

// Closed-form reference implementations used as independent oracles.
// Everything here evaluates defining sums directly from mother Gaussians;
// no grids, stored coefficients or interpolation are involved, so agreement
// with the library exercises the whole storage/extension/interpolation path.

#include <cmath>
#include <functional>

#include "qhm/config.hpp"
#include "qhm/numeric.hpp"

namespace oracle {

using qhm::cis;
using qhm::Complex;
using qhm::ConfigPtr;

using FnD = std::function<Complex(double, double, int)>;  // (x, y, p)
using FnE = std::function<Complex(double, double, int)>;  // (x, y, k)
using FnXi = std::function<Complex(double, double)>;      // (x, y)

inline double gaussian(double a, double u) { return std::exp(-qhm::kPi * a * u * u); }

/// f(x, y) = amp * exp(-pi a (x-x0)^2) e(n0 y)
struct GaussXi {
  double x0 = 0;
  double a = 1;
  int n0 = 0;
  Complex amp{1, 0};

  Complex operator()(double x, double y) const {
    return amp * gaussian(a, x - x0) * cis(n0 * y);
  }
  FnXi fn() const { return *this; }
};

/// Twist-orbit sum of amp * exp(-pi a (x-x0)^2) e(n0 y) at fiber p0:
///   phi(x, y, p0) = sum_k e(-c k p0 (y - p0 nu)) G(x + k) e(n0 y).
struct GaussD {
  ConfigPtr cfg;
  int p0 = 0, n0 = 0;
  double x0 = 0;
  double a = 1;
  Complex amp{1, 0};

  Complex operator()(double x, double y, int p) const {
    if (p != p0) return {0, 0};
    const double reach = std::sqrt(42.0 / (qhm::kPi * a));
    Complex acc{0, 0};
    const int kLo = static_cast<int>(std::floor(x0 - x - reach));
    const int kHi = static_cast<int>(std::ceil(x0 - x + reach));
    for (int k = kLo; k <= kHi; ++k) {
      acc += cis(-cfg->c() * k * p0 * (y - p0 * cfg->nu())) * gaussian(a, x + k - x0) *
             cis(n0 * y);
    }
    return amp * acc;
  }
  FnD fn() const { return *this; }
};

/// Twist-orbit sum at fiber k0:
///   psi(x, y, k0) = sum_p e(c k0 p (y + p nu)) G(x + 2 p mu) e(n0 (y + 2 p nu)).
struct GaussE {
  ConfigPtr cfg;
  int k0 = 0, n0 = 0;
  double x0 = 0;
  double a = 1;
  Complex amp{1, 0};

  Complex operator()(double x, double y, int k) const {
    if (k != k0) return {0, 0};
    const double mu = cfg->mu(), nu = cfg->nu();
    const double reach = std::sqrt(42.0 / (qhm::kPi * a));
    const int pLo = static_cast<int>(std::floor((x0 - x - reach) / (2.0 * mu)));
    const int pHi = static_cast<int>(std::ceil((x0 - x + reach) / (2.0 * mu)));
    Complex acc{0, 0};
    for (int p = pLo; p <= pHi; ++p) {
      acc += cis(cfg->c() * k0 * p * (y + p * nu)) * gaussian(a, x + 2.0 * p * mu - x0) *
             cis(n0 * (y + 2.0 * p * nu));
    }
    return amp * acc;
  }
  FnE fn() const { return *this; }
};

// --- defining operation formulas, evaluated pointwise ---------------------

inline Complex mul_d(const ConfigPtr& cfg, const FnD& A, const FnD& B, double x,
                     double y, int p) {
  Complex acc{0, 0};
  for (int q = -cfg->pMax(); q <= cfg->pMax(); ++q) {
    if (p - q < -cfg->pMax() || p - q > cfg->pMax()) continue;
    acc += A(x, y, q) * B(x - 2.0 * q * cfg->mu(), y - 2.0 * q * cfg->nu(), p - q);
  }
  return acc;
}

inline Complex star_d(const ConfigPtr& cfg, const FnD& A, double x, double y, int p) {
  return std::conj(A(x - 2.0 * p * cfg->mu(), y - 2.0 * p * cfg->nu(), -p));
}

inline Complex act_d_ref(const ConfigPtr& cfg, const FnXi& f, const FnD& phi, double x,
                         double y) {
  Complex acc{0, 0};
  for (int p = -cfg->pMax(); p <= cfg->pMax(); ++p) {
    const double xs = x + 2.0 * p * cfg->mu();
    const double ys = y + 2.0 * p * cfg->nu();
    acc += std::conj(phi(xs, ys, p)) * f(xs, ys);
  }
  return acc;
}

inline Complex inner_d_ref(const ConfigPtr& cfg, const FnXi& f, const FnXi& g, double x,
                           double y, int p) {
  Complex acc{0, 0};
  for (int k = -cfg->kMax(); k <= cfg->kMax(); ++k) {
    acc += cis(-cfg->c() * k * p * (y - p * cfg->nu())) * f(x + k, y) *
           std::conj(g(x - 2.0 * p * cfg->mu() + k, y - 2.0 * p * cfg->nu()));
  }
  return acc;
}

inline Complex inner_e_ref(const ConfigPtr& cfg, const FnXi& f, const FnXi& g, double x,
                           double y, int k) {
  Complex acc{0, 0};
  for (int p = -cfg->pMax(); p <= cfg->pMax(); ++p) {
    const double xs = x - 2.0 * p * cfg->mu();
    const double ys = y - 2.0 * p * cfg->nu();
    acc += cis(-cfg->c() * k * p * (y - p * cfg->nu())) * f(xs, ys) *
           std::conj(g(xs + k, ys));
  }
  return acc;
}

inline Complex act_e_ref(const ConfigPtr& cfg, const FnE& psi, const FnXi& f, double x,
                         double y) {
  Complex acc{0, 0};
  for (int k = -cfg->pMax(); k <= cfg->pMax(); ++k) {
    acc += psi(x, y, k) * f(x + k, y);
  }
  return acc;
}

inline Complex mul_e(const ConfigPtr& cfg, const FnE& A, const FnE& B, double x, double y,
                     int k) {
  Complex acc{0, 0};
  for (int j = -cfg->pMax(); j <= cfg->pMax(); ++j) {
    if (k - j < -cfg->pMax() || k - j > cfg->pMax()) continue;
    acc += A(x, y, j) * B(x + j, y, k - j);
  }
  return acc;
}

inline Complex star_e(const FnE& A, double x, double y, int k) {
  return std::conj(A(x + k, y, -k));
}

}  // namespace oracle
