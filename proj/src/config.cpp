#include "qhm/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qhm/errors.hpp"

namespace qhm {

using nlohmann::json;

std::vector<std::string> check_invariants(const AlgebraParams& alg,
                                          const TruncationSpec& trunc) {
  std::vector<std::string> bad;
  auto fail = [&bad](const std::string& m) { bad.push_back(m); };

  if (alg.c < 1) fail("c: must be a positive integer, got " + std::to_string(alg.c));
  if (alg.mu == 0.0) fail("mu: must be nonzero");
  if (alg.mu < 0.0) fail("mu: version 1 requires mu > 0 (negative mu by symmetry only)");
  if (alg.nu == 0.0) fail("nu: must be nonzero");
  if (trunc.pMax < 1) fail("pMax: must be >= 1");
  if (trunc.kMax < 1) fail("kMax: must be >= 1");

  const int needModes = 2 * alg.c * trunc.pMax * trunc.kMax + 1;
  if (trunc.yModes % 2 == 0) {
    fail("yModes: must be odd");
  }
  if (trunc.yModes < needModes) {
    fail("yModes: needs >= " + std::to_string(needModes) +
         " (mode shifts by c*k*p must stay representable), got " +
         std::to_string(trunc.yModes));
  }

  if (!(trunc.xStep > 0.0)) {
    fail("xStep: must be positive");
  } else {
    const double inv = 1.0 / trunc.xStep;
    if (std::abs(inv - std::round(inv)) > 1e-9 * inv) {
      fail("xStep: 1/xStep must be an integer so the grid tiles [0,1)");
    }
  }

  if (!(trunc.xWindow > 0.0)) {
    fail("xWindow: must be positive");
  } else if (alg.mu > 0.0) {
    // Full window width must cover every shifted evaluation point; shifts are
    // bounded by 2*pMax*|mu| from fiber translations plus kMax integer steps
    // plus a unit of slack for interpolation stencils.
    const double need = 2.0 * trunc.pMax * std::abs(alg.mu) + trunc.kMax + 2.0;
    if (2.0 * trunc.xWindow < need) {
      std::ostringstream os;
      os << "xWindow: window width " << 2.0 * trunc.xWindow
         << " is below the required " << need;
      fail(os.str());
    }
  }

  if (trunc.interpOrder < 2 || trunc.interpOrder % 2 != 0) {
    fail("interpOrder: must be an even integer >= 2");
  }
  if (!(trunc.tolAlgebra > 0.0)) fail("tolAlgebra: must be positive");
  if (!(trunc.tolGauge > 0.0)) fail("tolGauge: must be positive");
  return bad;
}

ConfigPtr validate(const AlgebraParams& alg, const TruncationSpec& trunc,
                   uint64_t seed) {
  auto bad = check_invariants(alg, trunc);
  if (!bad.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& m : bad) msg += "\n  " + m;
    throw InvalidParameter(msg);
  }
  return std::make_shared<const Config>(alg, trunc, seed);
}

Config::Config(const AlgebraParams& alg, const TruncationSpec& trunc, uint64_t seed)
    : alg_(alg), trunc_(trunc), seed_(seed) {
  gridD_ = static_cast<int>(std::round(1.0 / trunc.xStep));
  gridE_ = std::max(static_cast<int>(std::round(2.0 * alg.mu / trunc.xStep)),
                    trunc.interpOrder + 2);
  gridXi_ = std::max(static_cast<int>(std::round(2.0 * trunc.xWindow / trunc.xStep)),
                     trunc.interpOrder + 2);

  std::ostringstream os;
  os.precision(17);
  os << alg.c << '|' << alg.mu << '|' << alg.nu << '|' << trunc.pMax << '|'
     << trunc.kMax << '|' << trunc.yModes << '|' << trunc.xStep << '|'
     << trunc.xWindow << '|' << trunc.interpOrder;
  hash_ = fnv1a(os.str());
}

std::string Config::toJson() const {
  json j;
  j["c"] = alg_.c;
  j["mu"] = alg_.mu;
  j["nu"] = alg_.nu;
  j["pMax"] = trunc_.pMax;
  j["kMax"] = trunc_.kMax;
  j["yModes"] = trunc_.yModes;
  j["xStep"] = trunc_.xStep;
  j["xWindow"] = trunc_.xWindow;
  j["interpOrder"] = trunc_.interpOrder;
  j["tolAlgebra"] = trunc_.tolAlgebra;
  j["tolGauge"] = trunc_.tolGauge;
  j["seed"] = seed_;
  return j.dump(2);
}

ConfigPtr Config::fromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw InvalidParameter(std::string("configuration is not valid JSON: ") + e.what());
  }
  static const char* kKeys[] = {"c",       "mu",          "nu",       "pMax",
                                "kMax",    "yModes",      "xStep",    "xWindow",
                                "interpOrder", "tolAlgebra", "tolGauge", "seed"};
  std::vector<std::string> bad;
  for (const char* k : kKeys) {
    if (!j.contains(k)) bad.push_back(std::string(k) + ": missing");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : kKeys) {
      if (it.key() == k) known = true;
    }
    if (!known) bad.push_back(it.key() + ": unknown key");
  }
  if (!bad.empty()) {
    std::string msg = "invalid configuration document:";
    for (const auto& m : bad) msg += "\n  " + m;
    throw InvalidParameter(msg);
  }
  AlgebraParams alg;
  TruncationSpec trunc;
  alg.c = j["c"].get<int>();
  alg.mu = j["mu"].get<double>();
  alg.nu = j["nu"].get<double>();
  trunc.pMax = j["pMax"].get<int>();
  trunc.kMax = j["kMax"].get<int>();
  trunc.yModes = j["yModes"].get<int>();
  trunc.xStep = j["xStep"].get<double>();
  trunc.xWindow = j["xWindow"].get<double>();
  trunc.interpOrder = j["interpOrder"].get<int>();
  trunc.tolAlgebra = j["tolAlgebra"].get<double>();
  trunc.tolGauge = j["tolGauge"].get<double>();
  const uint64_t seed = j["seed"].get<uint64_t>();
  return validate(alg, trunc, seed);
}

ConfigPtr Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigNotFound("configuration file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return fromJson(ss.str());
}

ConfigPtr Config::refined(int factor) const {
  TruncationSpec t = trunc_;
  t.xStep /= factor;
  return validate(alg_, t, seed_);
}

ConfigPtr default_config() {
  return validate(AlgebraParams{}, TruncationSpec{}, 12345);
}

}  // namespace qhm
