#pragma once

#include "qhm/dalgebra.hpp"
#include "qhm/ealgebra.hpp"
#include "qhm/elements.hpp"
#include "qhm/ximodule.hpp"

namespace qhm {

/// Deterministic factories for the Gaussian test family. Every draw is a
/// pure function of (rng, counter), so parallel evaluation and repeated runs
/// give identical elements. Parameters are kept inside the ranges where all
/// shift/mode sums truncate exactly at the default cutoffs.

XiElement random_vector(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr);

/// Sum of 1-2 orbit Gaussians on fibers |p| <= fiberRange.
DElement random_d(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr, int fiberRange = 1);

/// Sum of 1-2 orbit Gaussians on fibers |k| <= fiberRange.
EElement random_e(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr, int fiberRange = 1);

/// Skew-adjoint element chi - chi* or i (chi + chi*) for a random chi.
EElement random_skew(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr);

/// Random unitary e_exp(scale * skew).
EElement random_unitary(ConfigPtr cfg, const CounterRng& rng, uint64_t ctr,
                        double scale = 0.7);

}  // namespace qhm
