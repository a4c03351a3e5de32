#pragma once

#include <functional>
#include <utility>

#include "qhm/direction.hpp"
#include "qhm/elements.hpp"

namespace qhm {

/// Pointwise sampler phi(x, y, p); must be defined for x in [-1, 2),
/// y in [0, 1), |p| <= pMax.
using DSampler = std::function<Complex(double x, double y, int p)>;

/// Restricts samples on the fundamental domain to coefficients and measures
/// how far the sampler is from the quasi-periodicity relation
///   phi(x+k, y, p) = e(c k p (y - p nu)) phi(x, y, p),  k in {-1, 1}.
/// Returns the element together with that twist defect.
std::pair<DElement, double> d_from_function(ConfigPtr cfg, const DSampler& sampler);

DElement d_identity(ConfigPtr cfg);

/// Crossed-product convolution:
///   (a * b)(x, y, p) = sum_q a(x, y, q) b(x - 2 q mu, y - 2 q nu, p - q).
DElement d_mul(const DElement& a, const DElement& b);

/// Involution a*(x, y, p) = conj a(x - 2 p mu, y - 2 p nu, -p).
DElement d_star(const DElement& a);

/// tau_D(a) = integral of a(x, y, 0) over the torus.
Complex d_trace(const DElement& a);

/// Derivations of the Heisenberg action:
///   delta_X = -d/dx,
///   delta_Y = -d/dy + 2 pi i c p (x - p mu),
///   delta_Z = 2 pi i p.
DElement delta(Direction dir, const DElement& a);

/// Heisenberg group action
///   (alpha_{(r,s,t)} a)(x, y, p) = e(p (t + c s (x - p mu - r))) a(x-r, y-s, p).
DElement heis_act(double r, double s, double t, const DElement& a);

/// Defect between delta(dir, a) and the central difference of the group
/// action along exp(h * dir); O(h^2) for smooth data.
double delta_fd_check(Direction dir, const DElement& a, double h);

/// Band-limited test element: the twist-orbit sum of the mother function
/// amp * exp(-pi a (x - x0)^2) e(n0 y) placed at fiber p0. Satisfies the
/// extension rule exactly and has closed-form values everywhere.
DElement d_gaussian(ConfigPtr cfg, int p0, int n0, double x0, double a,
                    Complex amp = {1, 0});

}  // namespace qhm
