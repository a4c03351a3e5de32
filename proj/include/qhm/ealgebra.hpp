#pragma once

#include <functional>
#include <utility>

#include "qhm/direction.hpp"
#include "qhm/elements.hpp"

namespace qhm {

/// Pointwise sampler psi(x, y, k); must be defined for x in [-2mu, 4mu),
/// y in [0,1), |k| <= pMax.
using ESampler = std::function<Complex(double x, double y, int k)>;

/// Restriction to coefficients plus the twist defect of the sampler against
///   psi(x - 2 p mu, y - 2 p nu, k) = e(c k p (y - p nu)) psi(x, y, k)
/// for p in {-1, 1}.
std::pair<EElement, double> e_from_function(ConfigPtr cfg, const ESampler& sampler);

EElement e_identity(ConfigPtr cfg);

/// Crossed-product convolution:
///   (a * b)(x, y, k) = sum_j a(x, y, j) b(x + j, y, k - j).
EElement e_mul(const EElement& a, const EElement& b);

/// Involution a*(x, y, k) = conj a(x + k, y, -k); this is the adjoint for
/// both the module inner product and the L2 pairing.
EElement e_star(const EElement& a);

double selfadjoint_defect(const EElement& a);
double skewadjoint_defect(const EElement& a);

/// Covariant derivatives [nabla0_dir, psi .] in closed form:
///   X: -d psi/dx
///   Y: -d psi/dy - (pi c i / 2 mu) k (2x + k) psi
///   Z: -(pi i k / mu) psi.
EElement e_delta(Direction dir, const EElement& a);

/// Power series exp(a); unitary for skew-adjoint input. Throws
/// ConvergenceBudgetExceeded past the norm budget.
EElement e_exp(const EElement& a);

/// Uncalibrated integral of the k = 0 fiber over [0, 2mu) x T.
Complex e_integral0(const EElement& a);

/// Trace constant measured by calibrate_trace (conventions.hpp); the
/// calibration is an explicit value, never hidden state.
struct TraceCalibration {
  double C = 1.0;
  double relativeSpread = 0.0;
  uint64_t configHash = 0;
};

/// tau_E(a) = C * integral of a(x, y, 0) over [0, 2mu) x T.
Complex e_trace(const EElement& a, const TraceCalibration& calib);

/// tau_E(a * b) evaluated without materializing the product (only the
/// fiber-0 mode-0 column of the convolution contributes to the trace).
Complex e_trace_product(const EElement& a, const EElement& b,
                        const TraceCalibration& calib);

/// Band-limited test element at fiber k0: twist-orbit sum of the mother
/// function amp * exp(-pi a (x - x0)^2) e(n0 y). Exact under the extension
/// rule, with closed-form values everywhere.
EElement e_gaussian(ConfigPtr cfg, int k0, int n0, double x0, double a,
                    Complex amp = {1, 0});

/// Right-D-linear operator on module vectors.
using XiOperator = std::function<XiElement(const XiElement&)>;

struct RecoveredElement {
  EElement psi;
  double twistDefect = 0;  // re-sampled past the fundamental domain
};

/// Recovers the element implementing L through narrow Gaussian probes: a
/// probe centered at x0 + k isolates fiber k because the action shifts x by
/// integers. Throws ProbeIllConditioned when a required probe value is
/// below 1e-6.
RecoveredElement from_operator(ConfigPtr cfg, const XiOperator& L, int kRange);

}  // namespace qhm
