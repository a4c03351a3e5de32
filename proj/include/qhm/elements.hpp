#pragma once

#include <functional>
#include <vector>

#include "qhm/config.hpp"
#include "qhm/errors.hpp"
#include "qhm/numeric.hpp"

namespace qhm {

// ---------------------------------------------------------------------------
// Shared storage scheme: every element keeps y-Fourier coefficients on a
// uniform x-grid over its fundamental domain. Values at arbitrary x are
// defined through the twist extension rule of the algebra the element
// belongs to, so the quasi-periodicity relation holds identically by
// construction. Integer mode shifts produced by the extension are exact in
// this representation; only the x-direction needs Lagrange interpolation.
// ---------------------------------------------------------------------------

/// Element of the deformed Heisenberg algebra D: fibers p in [-pMax, pMax],
/// coefficients phi_hat_n(x_j, p) on the fundamental domain x in [0,1).
/// Extension rule (coefficients): phi_hat_m(x + w, p) =
///   e(-c w p^2 nu) * phi_hat_{m - c w p}(x, p).
class DElement {
 public:
  explicit DElement(ConfigPtr cfg);

  ConfigPtr cfg;
  std::vector<Complex> coef;   // (p, n, j) row-major
  double modeTruncation = 0;   // sup of dropped mode contributions

  int fibers() const { return 2 * cfg->pMax() + 1; }
  int modes() const { return cfg->yModes(); }
  int grid() const { return cfg->gridD(); }

  std::size_t index(int p, int n, int j) const {
    const int P = cfg->pMax(), N = cfg->halfModes();
    return (static_cast<std::size_t>(p + P) * modes() + (n + N)) * grid() + j;
  }
  Complex& at(int p, int n, int j) { return coef[index(p, n, j)]; }
  Complex at(int p, int n, int j) const { return coef[index(p, n, j)]; }

  /// Stored coefficient at arbitrary grid index (any integer), produced by
  /// the extension rule; modes pushed outside the stored range read as zero.
  Complex ghost(int p, int m, long j) const;

  /// Interpolated mode vector at arbitrary real x (writes yModes values).
  /// baseShift displaces the interpolation stencil by whole cells and is
  /// used only by the seam-smoothness diagnostic.
  void modeAt(int p, double x, Complex* out, int baseShift = 0) const;

  /// Pointwise evaluation. x is reduced to [0,1) by an integer shift and the
  /// twist phase is applied, so the quasi-periodicity relation is exact.
  Complex eval(double x, double y, int p) const;

  std::string toJson() const;
  static DElement fromJson(ConfigPtr cfg, const std::string& text);
};

/// Element of the endomorphism algebra E: fibers k in [-pMax, pMax],
/// coefficients on the fundamental domain x in [0, 2mu).
/// Extension rule (coefficients): with w whole domain steps,
///   psi_hat_m(x + 2 w mu, k) =
///     e(c k w^2 nu) * e(-2 w nu (m + c k w)) * psi_hat_{m + c k w}(x, k).
class EElement {
 public:
  explicit EElement(ConfigPtr cfg);

  ConfigPtr cfg;
  std::vector<Complex> coef;  // (k, n, j) row-major
  double modeTruncation = 0;

  int fibers() const { return 2 * cfg->pMax() + 1; }
  int modes() const { return cfg->yModes(); }
  int grid() const { return cfg->gridE(); }

  std::size_t index(int k, int n, int j) const {
    const int P = cfg->pMax(), N = cfg->halfModes();
    return (static_cast<std::size_t>(k + P) * modes() + (n + N)) * grid() + j;
  }
  Complex& at(int k, int n, int j) { return coef[index(k, n, j)]; }
  Complex at(int k, int n, int j) const { return coef[index(k, n, j)]; }

  Complex ghost(int k, int m, long j) const;
  void modeAt(int k, double x, Complex* out, int baseShift = 0) const;
  Complex eval(double x, double y, int k) const;

  std::string toJson() const;
  static EElement fromJson(ConfigPtr cfg, const std::string& text);
};

/// Module vector: smooth function on R x T supported in the window [-L, L],
/// coefficients f_hat_n(x_j) with x_j = -L + j h. Evaluation outside the
/// window returns 0; declaredTail bounds the magnitude past the window.
class XiElement {
 public:
  explicit XiElement(ConfigPtr cfg);

  ConfigPtr cfg;
  std::vector<Complex> coef;  // (n, j) row-major
  double declaredTail = 0;

  int modes() const { return cfg->yModes(); }
  int grid() const { return cfg->gridXi(); }

  std::size_t index(int n, int j) const {
    return static_cast<std::size_t>(n + cfg->halfModes()) * grid() + j;
  }
  Complex& at(int n, int j) { return coef[index(n, j)]; }
  Complex at(int n, int j) const { return coef[index(n, j)]; }

  void modeAt(double x, Complex* out) const;
  Complex eval(double x, double y) const;

  /// Largest column mass sum_n |coef(n,j)| over the outermost `band` columns
  /// on each side; used for tail-contract checks.
  double boundaryMass(int band = 2) const;

  /// Integral of |f|^2 over R x T (Parseval in y, grid sum in x).
  double l2sq() const;

  std::string toJson() const;
  static XiElement fromJson(ConfigPtr cfg, const std::string& text);
};

// --- arithmetic (operands must share a configuration) ----------------------

DElement operator+(const DElement& a, const DElement& b);
DElement operator-(const DElement& a, const DElement& b);
DElement operator*(Complex s, const DElement& a);
EElement operator+(const EElement& a, const EElement& b);
EElement operator-(const EElement& a, const EElement& b);
EElement operator*(Complex s, const EElement& a);
XiElement operator+(const XiElement& a, const XiElement& b);
XiElement operator-(const XiElement& a, const XiElement& b);
XiElement operator*(Complex s, const XiElement& a);

void require_same_config(uint64_t a, uint64_t b, const char* who);

// --- defect metric ----------------------------------------------------------
// Sup over the declared sample set (fundamental-domain grid x yModes-point
// y-grid x fiber indices) of the absolute difference of the two evaluated
// objects. Zero exactly when the stored data agree on every sample.

double defect(const DElement& a, const DElement& b);
double defect(const EElement& a, const EElement& b);
double defect(const XiElement& a, const XiElement& b);

/// Evaluated sup-norm over the same sample set.
double sup_norm(const DElement& a);
double sup_norm(const EElement& a);
double sup_norm(const XiElement& a);

/// Twist-smoothness diagnostic: interpolates near the fundamental-domain
/// seam with two different stencil placements (which mix stored and
/// extension-rule ghost nodes differently) and reports the sup difference.
/// Data that genuinely satisfies the extension rule gives interpolation-level
/// noise; data breaking it gives an O(jump) defect.
double seam_defect(const DElement& a);
double seam_defect(const EElement& a);

}  // namespace qhm
