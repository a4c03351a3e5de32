#pragma once

#include "qhm/ealgebra.hpp"
#include "qhm/ximodule.hpp"

namespace qhm {

/// Measures the trace constant C that makes tau_E(<f,g>_E) = tau_D(<f,g>_D)
/// over at least 20 random Gaussian pairs. Throws CalibrationInconsistent
/// when the implied constants disagree by more than 1e-6 relative (which
/// signals a wrong convention upstream and is treated as build-breaking).
TraceCalibration calibrate_trace(ConfigPtr cfg, uint64_t rngSeed);

/// Certificate that the involution, action and trace conventions were
/// validated for this configuration in this session. Gauge-level operations
/// require it; nothing here is hidden global state.
class Conventions {
 public:
  static Conventions validate(ConfigPtr cfg);

  const ConfigPtr& config() const { return cfg_; }
  const TraceCalibration& calibration() const { return calib_; }
  bool passed() const { return pass_; }
  void require() const {
    if (!pass_) {
      throw ConventionUnvalidated(
          "action/involution conventions failed validation for this configuration");
    }
  }

  // measured defects, also surfaced as report rows
  double innerDHermitian = 0;     // <f,g>_D* vs <g,f>_D
  double innerEHermitian = 0;     // <f,g>_E* vs <g,f>_E
  double imprimitivity = 0;       // <f,g>_E . h vs f . <g,h>_D
  double moduleAssociativity = 0; // (f.phi).psi vs f.(phi psi)
  double commutant = 0;           // psi.(f.phi) vs (psi.f).phi
  double actHomomorphism = 0;     // (psi chi).f vs psi.(chi.f)
  double starInvolution = 0;      // psi** vs psi
  double traceIdentity = 0;       // tau_E(<f,g>_E) vs tau_D(<f,g>_D)

 private:
  Conventions() = default;
  ConfigPtr cfg_;
  TraceCalibration calib_;
  bool pass_ = false;
};

}  // namespace qhm
