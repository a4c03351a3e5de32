#pragma once

#include "qhm/dalgebra.hpp"
#include "qhm/elements.hpp"

namespace qhm {

/// Normalized Gaussian test vector f(x,y) = N exp(-pi a (x-x0)^2) e(n0 y)
/// with integral |f|^2 = 1. Throws OutOfRange on parameter bounds and
/// TailOverflow when the tail at the window edge breaks the decay contract.
XiElement gaussian_vector(ConfigPtr cfg, double a, int n0, double x0);

inline Complex xi_eval(const XiElement& f, double x, double y) { return f.eval(x, y); }

/// Right action of the algebra D on module vectors:
///   (f . phi)(x, y) = sum_p conj(phi(x + 2 p mu, y + 2 p nu, p))
///                            f(x + 2 p mu, y + 2 p nu).
XiElement act_d(const XiElement& f, const DElement& phi);

/// D-valued inner product, conjugate-linear in g:
///   <f, g>_D(x, y, p) = sum_k ebar(c k p (y - p nu)) f(x+k, y)
///                              conj g(x - 2 p mu + k, y - 2 p nu).
DElement inner_d(const XiElement& f, const XiElement& g);

/// E-valued inner product, linear in f and conjugate-linear in g:
///   <f, g>_E(x, y, k) = sum_p e(-c k p (y - p nu)) f(x - 2 p mu, y - 2 p nu)
///                              conj g(x - 2 p mu + k, y - 2 p nu).
/// With this slot convention the imprimitivity identity
///   act_e(<f,g>_E, h) = act_d(f, <g,h>_D)
/// holds; the convention is revalidated numerically by the conventions suite.
EElement inner_e(const XiElement& f, const XiElement& g);

/// Left action of E on module vectors:
///   (psi . f)(x, y) = sum_k psi(x, y, k) f(x + k, y).
XiElement act_e(const EElement& psi, const XiElement& f);

}  // namespace qhm
