#pragma once

#include <string>
#include <vector>

#include "qhm/gauge.hpp"

namespace qhm {

/// Ordered list of skew-adjoint elements spanning the perturbation search
/// space; the same list parameterizes each of the three directions.
/// coordScale rescales individual coordinates (blocks X, Y, Z); it defaults
/// to ones and can be calibrated so the quadratic form of the functional has
/// a near-unit diagonal, which keeps plain gradient descent well conditioned.
struct PerturbationBasis {
  ConfigPtr cfg;
  std::vector<EElement> elements;
  std::vector<double> coordScale;
  double gramConditionNumber = 0;

  int dim() const { return static_cast<int>(elements.size()); }
};

/// Measures the second difference of the functional along each coordinate
/// and folds 1/sqrt(diagonal) into coordScale. Flat coordinates (the
/// functional has exact zero modes) keep scale 1.
void calibrate_coordinate_scales(const Conventions& conv, PerturbationBasis& basis,
                                 double h = 1e-2);

/// Skew generators from twist-orbit Gaussians at fibers k in {0..fibers},
/// y-modes |n| <= maxMode, `bumps` centers per fiber, combined as
/// chi - chi* and i (chi + chi*) and normalized. The Gram matrix of grid
/// inner products is checked for nonsingularity and its condition number
/// recorded.
PerturbationBasis make_basis(ConfigPtr cfg, int fibers = 1, int maxMode = 2,
                             int bumps = 3);

struct DescentConfig {
  double step = 0.5;
  int maxIter = 80;
  double gradTol = 1e-6;
  double fdStep = 1e-3;
  uint64_t seed = 7;
};

void check_descent_config(const DescentConfig& c);

/// Real coefficient vector (length 3*dim, blocks X, Y, Z) to a connection;
/// real combinations preserve skew-adjointness.
Connection rho_from_coeffs(const PerturbationBasis& basis,
                           const std::vector<double>& coeffs);

double ym_at(const Conventions& conv, const PerturbationBasis& basis,
             const std::vector<double>& coeffs);

/// Central-difference gradient of the Yang-Mills value in basis coordinates.
std::vector<double> ym_gradient(const Conventions& conv, const PerturbationBasis& basis,
                                const std::vector<double>& coeffs, double fdStep);

struct DescentResult {
  std::vector<double> finalCoeffs;
  double finalYM = 0;
  std::vector<double> history;  // monotone nonincreasing
  std::string status;           // converged | maxIter | stalled
  int iterations = 0;
};

/// Gradient descent with backtracking halving; a step is accepted only when
/// the value decreases, so the history is monotone by construction.
DescentResult descend(const Conventions& conv, const PerturbationBasis& basis,
                      const DescentConfig& cfg, const std::vector<double>& init);

struct SweepRow {
  int id = 0;
  double scale = 0;
  double ym = 0;
  double gap = 0;       // YM(nabla0 + rho) - YM(nabla0)
  double omegaGap = 0;  // tau_E(sum Omega* Omega), the independent route
};

struct SweepResult {
  double ym0 = 0;
  std::vector<SweepRow> rows;
  double minGap = 0;
  double maxMismatch = 0;    // sup |gap - omegaGap|
  double loglogSlope = 0;    // between the two smallest scales
  std::string toCsv() const;
  std::string summaryJson() const;
};

/// Samples skew perturbations at the given scales and records both the
/// Yang-Mills gap and its quadratic form; deterministic under the seed.
SweepResult minimality_sweep(const Conventions& conv, const PerturbationBasis& basis,
                             int nSamples, const std::vector<double>& scales,
                             uint64_t seed);

}  // namespace qhm
