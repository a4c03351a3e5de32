#include "qhm/minimize.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace qhm {

namespace {

double grid_inner(const EElement& a, const EElement& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.coef.size(); ++i) {
    s += (std::conj(a.coef[i]) * b.coef[i]).real();
  }
  return s;
}

/// Jacobi eigenvalues of a small symmetric matrix.
std::vector<double> symmetric_eigenvalues(std::vector<double> m, int n) {
  auto at = [&](int i, int j) -> double& { return m[static_cast<std::size_t>(i) * n + j]; };
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off < 1e-24) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-18) continue;
        const double theta = 0.5 * (at(q, q) - at(p, p)) / apq;
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = at(p, i), aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  return ev;
}

}  // namespace

PerturbationBasis make_basis(ConfigPtr cfg, int fibers, int maxMode, int bumps) {
  PerturbationBasis basis;
  basis.cfg = cfg;
  const double twoMu = 2.0 * cfg->mu();
  const double width = 6.0;

  auto push = [&](EElement e) {
    const double norm = std::sqrt(grid_inner(e, e));
    if (norm < 1e-12) return;  // degenerate combination
    basis.elements.push_back(Complex{1.0 / norm, 0} * e);
  };

  for (int b = 0; b < bumps; ++b) {
    const double x0 = twoMu * (b + 1.0) / (bumps + 1.0);
    for (int k = 0; k <= fibers; ++k) {
      const int modeLo = (k == 0) ? 0 : -maxMode;
      for (int n = modeLo; n <= maxMode; ++n) {
        const EElement chi = e_gaussian(cfg, k, n, x0, width);
        const EElement star = e_star(chi);
        if (!(k == 0 && n == 0)) push(chi - star);
        push(Complex{0, 1} * (chi + star));
      }
    }
  }

  // Gram matrix of grid inner products; nonsingularity check
  const int d = basis.dim();
  std::vector<double> gram(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const double v = grid_inner(basis.elements[i], basis.elements[j]);
      gram[static_cast<std::size_t>(i) * d + j] = v;
      gram[static_cast<std::size_t>(j) * d + i] = v;
    }
  }
  auto ev = symmetric_eigenvalues(gram, d);
  double lo = ev[0], hi = ev[0];
  for (double v : ev) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo <= 1e-10 * hi) {
    throw InvalidParameter("make_basis: generators are numerically dependent");
  }
  basis.gramConditionNumber = hi / lo;
  basis.coordScale.assign(static_cast<std::size_t>(3) * d, 1.0);
  return basis;
}

void calibrate_coordinate_scales(const Conventions& conv, PerturbationBasis& basis,
                                 double h) {
  const int d3 = 3 * basis.dim();
  if (static_cast<int>(basis.coordScale.size()) != d3) {
    basis.coordScale.assign(d3, 1.0);
  }
  const double ym0 = ym_at(conv, basis, std::vector<double>(d3, 0.0));
  std::vector<double> x(d3, 0.0);
  for (int i = 0; i < d3; ++i) {
    x[i] = h;
    const double up = ym_at(conv, basis, x);
    x[i] = -h;
    const double dn = ym_at(conv, basis, x);
    x[i] = 0.0;
    const double q = (up - 2.0 * ym0 + dn) / (h * h);
    if (q > 0.05) basis.coordScale[i] /= std::sqrt(q);
  }
}

void check_descent_config(const DescentConfig& c) {
  std::vector<std::string> bad;
  if (!(c.step > 0)) bad.push_back("step must be positive");
  if (c.maxIter < 1) bad.push_back("maxIter must be >= 1");
  if (!(c.gradTol > 0)) bad.push_back("gradTol must be positive");
  if (!(c.fdStep > 0) || c.fdStep > 1e-2) bad.push_back("fdStep must lie in (0, 1e-2]");
  if (!bad.empty()) {
    std::string msg = "descent configuration:";
    for (const auto& m : bad) msg += " " + m + ";";
    throw InvalidParameter(msg);
  }
}

Connection rho_from_coeffs(const PerturbationBasis& basis,
                           const std::vector<double>& coeffs) {
  const int d = basis.dim();
  if (static_cast<int>(coeffs.size()) != 3 * d) {
    throw DimensionMismatch("rho_from_coeffs: expected " + std::to_string(3 * d) +
                            " coefficients, got " + std::to_string(coeffs.size()));
  }
  for (double v : coeffs) {
    if (!std::isfinite(v)) throw InvalidParameter("rho_from_coeffs: non-finite coefficient");
  }
  Connection conn(basis.cfg);
  for (int dir = 0; dir < 3; ++dir) {
    bool any = false;
    for (int i = 0; i < d; ++i) any = any || coeffs[dir * d + i] != 0.0;
    if (!any) continue;
    EElement acc(basis.cfg);
    for (int i = 0; i < d; ++i) {
      double w = coeffs[dir * d + i];
      if (!basis.coordScale.empty()) w *= basis.coordScale[dir * d + i];
      if (w == 0.0) continue;
      for (std::size_t s = 0; s < acc.coef.size(); ++s) {
        acc.coef[s] += w * basis.elements[i].coef[s];
      }
    }
    conn.set(static_cast<Direction>(dir), std::move(acc));
  }
  return conn;
}

double ym_at(const Conventions& conv, const PerturbationBasis& basis,
             const std::vector<double>& coeffs) {
  return ym_value(conv, rho_from_coeffs(basis, coeffs));
}

std::vector<double> ym_gradient(const Conventions& conv, const PerturbationBasis& basis,
                                const std::vector<double>& coeffs, double fdStep) {
  if (!(fdStep > 0) || fdStep > 1e-2) {
    throw InvalidParameter("ym_gradient: fdStep must lie in (0, 1e-2]");
  }
  std::vector<double> g(coeffs.size());
  std::vector<double> probe = coeffs;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    probe[i] = coeffs[i] + fdStep;
    const double up = ym_at(conv, basis, probe);
    probe[i] = coeffs[i] - fdStep;
    const double dn = ym_at(conv, basis, probe);
    probe[i] = coeffs[i];
    g[i] = (up - dn) / (2.0 * fdStep);
  }
  return g;
}

DescentResult descend(const Conventions& conv, const PerturbationBasis& basis,
                      const DescentConfig& cfg, const std::vector<double>& init) {
  check_descent_config(cfg);
  DescentResult res;
  std::vector<double> x = init;
  double fx = ym_at(conv, basis, x);
  res.history.push_back(fx);
  res.status = "maxIter";

  for (int it = 0; it < cfg.maxIter; ++it) {
    const auto g = ym_gradient(conv, basis, x, cfg.fdStep);
    double gInf = 0;
    for (double v : g) gInf = std::max(gInf, std::abs(v));
    if (gInf < cfg.gradTol) {
      res.status = "converged";
      break;
    }
    double step = cfg.step;
    bool accepted = false;
    while (step > 1e-12) {
      std::vector<double> xn = x;
      for (std::size_t i = 0; i < x.size(); ++i) xn[i] -= step * g[i];
      const double fn = ym_at(conv, basis, xn);
      if (fn < fx) {
        x = std::move(xn);
        fx = fn;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.status = "stalled";
      break;
    }
    res.history.push_back(fx);
    res.iterations = it + 1;
  }
  res.finalCoeffs = std::move(x);
  res.finalYM = fx;
  return res;
}

SweepResult minimality_sweep(const Conventions& conv, const PerturbationBasis& basis,
                             int nSamples, const std::vector<double>& scales,
                             uint64_t seed) {
  for (double s : scales) {
    if (!(s > 0)) throw InvalidParameter("minimality_sweep: scales must be positive");
  }
  const CounterRng rng{seed};
  const int d3 = 3 * basis.dim();
  SweepResult res;
  const Connection flat(basis.cfg);
  res.ym0 = ym_value(conv, flat);
  res.minGap = 0;
  res.maxMismatch = 0;

  const int perScale = (nSamples + static_cast<int>(scales.size()) - 1) /
                       static_cast<int>(scales.size());
  int id = 0;
  std::vector<double> meanGap(scales.size(), 0.0);
  for (std::size_t si = 0; si < scales.size(); ++si) {
    const double scale = scales[si];
    for (int s = 0; s < perScale; ++s) {
      std::vector<double> coeffs(d3);
      double norm = 0;
      for (int i = 0; i < d3; ++i) {
        coeffs[i] = rng.symmetric(9000 + 1000 * id + i);
        norm += coeffs[i] * coeffs[i];
      }
      norm = std::sqrt(norm);
      for (int i = 0; i < d3; ++i) coeffs[i] *= scale / norm;

      const Connection conn = rho_from_coeffs(basis, coeffs);
      SweepRow row;
      row.id = id++;
      row.scale = scale;
      row.ym = ym_value(conv, conn);
      row.gap = row.ym - res.ym0;

      const CurvatureForm om = omega(conv, conn);
      EElement quad(basis.cfg);
      for (const auto& v : om.values) quad = quad + e_mul(e_star(v), v);
      row.omegaGap = e_trace(quad, conv.calibration()).real();

      res.minGap = std::min(res.minGap, std::min(row.gap, row.omegaGap));
      res.maxMismatch = std::max(res.maxMismatch, std::abs(row.gap - row.omegaGap));
      meanGap[si] += row.gap / perScale;
      res.rows.push_back(row);
    }
  }
  if (scales.size() >= 2 && meanGap[0] > 0 && meanGap[1] > 0) {
    res.loglogSlope = std::log(meanGap[1] / meanGap[0]) / std::log(scales[1] / scales[0]);
  }
  return res;
}

std::string SweepResult::toCsv() const {
  std::ostringstream os;
  os.precision(15);
  os << "id,scale,ym,gap,omega_gap\n";
  for (const auto& r : rows) {
    os << r.id << ',' << r.scale << ',' << r.ym << ',' << r.gap << ',' << r.omegaGap
       << '\n';
  }
  return os.str();
}

std::string SweepResult::summaryJson() const {
  nlohmann::json j;
  j["ym0"] = ym0;
  j["samples"] = rows.size();
  j["minGap"] = minGap;
  j["maxMismatch"] = maxMismatch;
  j["loglogSlope"] = loglogSlope;
  return j.dump(2);
}

}  // namespace qhm
