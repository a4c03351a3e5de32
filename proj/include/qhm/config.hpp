#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qhm/numeric.hpp"

namespace qhm {

/// Algebra parameters: twist multiplicity c and the two deformation reals.
/// hbar is fixed at 1 for this family and kept only as documentation.
struct AlgebraParams {
  int c = 1;
  double mu = 0.35355339059327379;   // sqrt(2)/4
  double nu = 0.34641016151377546;   // sqrt(3)/5
  static constexpr double hbar = 1.0;
};

/// Discretization and truncation contract shared by every element type.
struct TruncationSpec {
  int pMax = 3;        // fiber cutoff |p| <= pMax (D) and |k| <= pMax (E)
  int kMax = 3;        // cutoff for integer-shift sums in inner products
  int yModes = 33;     // odd number of y-Fourier modes, n in [-(yModes-1)/2, ..]
  double xStep = 1.0 / 64.0;
  double xWindow = 6.0;  // support window [-L, L] for module vectors
  int interpOrder = 8;   // even x-interpolation / differentiation order
  double tolAlgebra = 1e-8;
  double tolGauge = 1e-7;
};

/// Validated configuration with derived grid geometry. Immutable after
/// construction; shared by every element via shared_ptr.
class Config {
 public:
  Config(const AlgebraParams& alg, const TruncationSpec& trunc, uint64_t seed);

  const AlgebraParams& alg() const { return alg_; }
  const TruncationSpec& trunc() const { return trunc_; }
  uint64_t seed() const { return seed_; }

  int c() const { return alg_.c; }
  double mu() const { return alg_.mu; }
  double nu() const { return alg_.nu; }
  int pMax() const { return trunc_.pMax; }
  int kMax() const { return trunc_.kMax; }
  int halfModes() const { return (trunc_.yModes - 1) / 2; }
  int yModes() const { return trunc_.yModes; }
  int interpOrder() const { return trunc_.interpOrder; }
  double tolAlgebra() const { return trunc_.tolAlgebra; }
  double tolGauge() const { return trunc_.tolGauge; }
  double window() const { return trunc_.xWindow; }

  // D fundamental domain [0,1)
  int gridD() const { return gridD_; }
  double stepD() const { return 1.0 / gridD_; }
  // E fundamental domain [0, 2mu)
  int gridE() const { return gridE_; }
  double stepE() const { return 2.0 * alg_.mu / gridE_; }
  // module window [-L, L)
  int gridXi() const { return gridXi_; }
  double stepXi() const { return 2.0 * trunc_.xWindow / gridXi_; }
  double xiPoint(int j) const { return -trunc_.xWindow + stepXi() * j; }

  uint64_t hash() const { return hash_; }

  std::string toJson() const;
  static std::shared_ptr<const Config> fromJson(const std::string& text);
  static std::shared_ptr<const Config> load(const std::string& path);

  /// Copy with a finer grid (xStep divided by `factor`), used by the
  /// convergence studies. Mode counts are unchanged.
  std::shared_ptr<const Config> refined(int factor) const;

 private:
  AlgebraParams alg_;
  TruncationSpec trunc_;
  uint64_t seed_;
  int gridD_, gridE_, gridXi_;
  uint64_t hash_;
};

using ConfigPtr = std::shared_ptr<const Config>;

/// Checks every invariant of the parameter pair and returns the list of
/// violations (empty when the configuration is acceptable).
std::vector<std::string> check_invariants(const AlgebraParams& alg,
                                          const TruncationSpec& trunc);

/// Returns a validated configuration or throws InvalidParameter naming every
/// violated bound. Deterministic and side-effect free.
ConfigPtr validate(const AlgebraParams& alg, const TruncationSpec& trunc,
                   uint64_t seed = 0);

ConfigPtr default_config();

}  // namespace qhm
