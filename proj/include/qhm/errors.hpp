#pragma once

#include <stdexcept>
#include <string>

namespace qhm {

struct InvalidParameter : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteSample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TailOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CalibrationInconsistent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConventionUnvalidated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProbeIllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotUnitary : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownCheck : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qhm
