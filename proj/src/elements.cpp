#include "qhm/elements.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "json.hpp"

namespace qhm {

using nlohmann::json;

namespace {

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

constexpr int kMaxStencil = 16;

}  // namespace

void require_same_config(uint64_t a, uint64_t b, const char* who) {
  if (a != b) throw ConfigMismatch(std::string(who) + ": operands use different configurations");
}

// --------------------------------------------------------------------- D ---

DElement::DElement(ConfigPtr c) : cfg(std::move(c)) {
  coef.assign(static_cast<std::size_t>(fibers()) * modes() * grid(), Complex{0, 0});
}

Complex DElement::ghost(int p, int m, long j) const {
  const long J = grid();
  const long w = floor_div(j, J);
  const int j0 = static_cast<int>(j - w * J);
  const int N = cfg->halfModes();
  if (w == 0) {
    return at(p, m, j0);
  }
  const int src = m - cfg->c() * static_cast<int>(w) * p;
  if (src < -N || src > N) return {0, 0};
  const double wd = static_cast<double>(w);
  return cis(-cfg->c() * wd * p * p * cfg->nu()) * at(p, src, j0);
}

void DElement::modeAt(int p, double x, Complex* out, int baseShift) const {
  const int M = modes(), N = cfg->halfModes();
  const int ord = cfg->interpOrder();
  const long J = grid();
  const double t = x * J;  // grid units, spacing 1/J on [0,1)
  const int base = static_cast<int>(std::floor(t)) - ord / 2 + 1 + baseShift;
  double w[kMaxStencil];
  lagrange_weights(t, base, ord, w);
  std::fill(out, out + M, Complex{0, 0});
  const int c = cfg->c();
  const double nu = cfg->nu();
  for (int i = 0; i < ord; ++i) {
    const long g = base + i;
    const long wrap = floor_div(g, J);
    const int j0 = static_cast<int>(g - wrap * J);
    if (wrap == 0) {
      const Complex* col = coef.data() + index(p, -N, j0);
      for (int n = 0; n < M; ++n) out[n] += w[i] * col[static_cast<std::size_t>(n) * J];
    } else {
      const int shift = c * static_cast<int>(wrap) * p;
      const Complex ph = w[i] * cis(-c * static_cast<double>(wrap) * p * p * nu);
      for (int m = -N; m <= N; ++m) {
        const int src = m - shift;
        if (src < -N || src > N) continue;
        out[m + N] += ph * at(p, src, j0);
      }
    }
  }
}

Complex DElement::eval(double x, double y, int p) const {
  const long k = static_cast<long>(std::floor(x));
  const double x0 = x - static_cast<double>(k);
  const int M = modes(), N = cfg->halfModes();
  std::vector<Complex> mv(M);
  modeAt(p, x0, mv.data());
  Complex v{0, 0};
  for (int n = -N; n <= N; ++n) v += mv[n + N] * cis(n * y);
  return cis(cfg->c() * static_cast<double>(k) * p * (y - p * cfg->nu())) * v;
}

// --------------------------------------------------------------------- E ---

EElement::EElement(ConfigPtr c) : cfg(std::move(c)) {
  coef.assign(static_cast<std::size_t>(fibers()) * modes() * grid(), Complex{0, 0});
}

Complex EElement::ghost(int k, int m, long j) const {
  const long J = grid();
  const long w = floor_div(j, J);
  const int j0 = static_cast<int>(j - w * J);
  const int N = cfg->halfModes();
  if (w == 0) {
    return at(k, m, j0);
  }
  const int src = m + cfg->c() * static_cast<int>(w) * k;
  if (src < -N || src > N) return {0, 0};
  const double wd = static_cast<double>(w);
  const double nu = cfg->nu();
  const double phase = cfg->c() * k * wd * wd * nu - 2.0 * wd * nu * src;
  return cis(phase) * at(k, src, j0);
}

void EElement::modeAt(int k, double x, Complex* out, int baseShift) const {
  const int M = modes(), N = cfg->halfModes();
  const int ord = cfg->interpOrder();
  const long J = grid();
  const double h = 2.0 * cfg->mu() / J;
  const double t = x / h;
  const int base = static_cast<int>(std::floor(t)) - ord / 2 + 1 + baseShift;
  double w[kMaxStencil];
  lagrange_weights(t, base, ord, w);
  std::fill(out, out + M, Complex{0, 0});
  const int c = cfg->c();
  const double nu = cfg->nu();
  for (int i = 0; i < ord; ++i) {
    const long g = base + i;
    const long wrap = floor_div(g, J);
    const int j0 = static_cast<int>(g - wrap * J);
    if (wrap == 0) {
      const Complex* col = coef.data() + index(k, -N, j0);
      for (int n = 0; n < M; ++n) out[n] += w[i] * col[static_cast<std::size_t>(n) * J];
    } else {
      const int shift = c * static_cast<int>(wrap) * k;
      const double wd = static_cast<double>(wrap);
      const Complex phBase = w[i] * cis(c * k * wd * wd * nu);
      for (int m = -N; m <= N; ++m) {
        const int src = m + shift;
        if (src < -N || src > N) continue;
        out[m + N] += phBase * cis(-2.0 * wd * nu * src) * at(k, src, j0);
      }
    }
  }
}

Complex EElement::eval(double x, double y, int k) const {
  const double twoMu = 2.0 * cfg->mu();
  const long pr = -static_cast<long>(std::floor(x / twoMu));
  const double x0 = x + twoMu * static_cast<double>(pr);
  const double yr = y + 2.0 * pr * cfg->nu();
  const int M = modes(), N = cfg->halfModes();
  std::vector<Complex> mv(M);
  modeAt(k, x0, mv.data());
  Complex v{0, 0};
  for (int n = -N; n <= N; ++n) v += mv[n + N] * cis(n * yr);
  return cis(cfg->c() * k * static_cast<double>(pr) * (y + pr * cfg->nu())) * v;
}

// -------------------------------------------------------------------- Xi ---

XiElement::XiElement(ConfigPtr c) : cfg(std::move(c)) {
  coef.assign(static_cast<std::size_t>(modes()) * grid(), Complex{0, 0});
}

void XiElement::modeAt(double x, Complex* out) const {
  const int M = modes();
  const int ord = cfg->interpOrder();
  const int J = grid();
  std::fill(out, out + M, Complex{0, 0});
  const double L = cfg->window();
  if (x < -L || x > L) return;
  const double t = (x + L) / cfg->stepXi();
  const int base = static_cast<int>(std::floor(t)) - ord / 2 + 1;
  double w[kMaxStencil];
  lagrange_weights(t, base, ord, w);
  for (int i = 0; i < ord; ++i) {
    const int g = base + i;
    if (g < 0 || g >= J) continue;  // certified-zero tail
    const Complex* col = coef.data() + g;
    for (int n = 0; n < M; ++n) out[n] += w[i] * col[static_cast<std::size_t>(n) * J];
  }
}

Complex XiElement::eval(double x, double y) const {
  const int M = modes(), N = cfg->halfModes();
  const double L = cfg->window();
  if (x < -L || x > L) return {0, 0};
  std::vector<Complex> mv(M);
  modeAt(x, mv.data());
  Complex v{0, 0};
  for (int n = -N; n <= N; ++n) v += mv[n + N] * cis(n * y);
  return v;
}

double XiElement::boundaryMass(int band) const {
  const int J = grid(), M = modes();
  double worst = 0;
  for (int j = 0; j < J; ++j) {
    if (j >= band && j < J - band) continue;
    double colMass = 0;
    for (int n = 0; n < M; ++n) colMass += std::abs(coef[static_cast<std::size_t>(n) * J + j]);
    worst = std::max(worst, colMass);
  }
  return worst;
}

double XiElement::l2sq() const {
  double s = 0;
  for (const auto& v : coef) s += std::norm(v);
  return s * cfg->stepXi();
}

// --------------------------------------------------------- arithmetic ------

template <typename T>
static T add_impl(const T& a, const T& b, double sb) {
  require_same_config(a.cfg->hash(), b.cfg->hash(), "element arithmetic");
  T out(a.cfg);
  for (std::size_t i = 0; i < out.coef.size(); ++i) out.coef[i] = a.coef[i] + sb * b.coef[i];
  return out;
}

DElement operator+(const DElement& a, const DElement& b) { auto r = add_impl(a, b, 1.0); r.modeTruncation = std::max(a.modeTruncation, b.modeTruncation); return r; }
DElement operator-(const DElement& a, const DElement& b) { auto r = add_impl(a, b, -1.0); r.modeTruncation = std::max(a.modeTruncation, b.modeTruncation); return r; }
DElement operator*(Complex s, const DElement& a) {
  DElement out(a.cfg);
  for (std::size_t i = 0; i < out.coef.size(); ++i) out.coef[i] = s * a.coef[i];
  out.modeTruncation = std::abs(s) * a.modeTruncation;
  return out;
}
EElement operator+(const EElement& a, const EElement& b) { auto r = add_impl(a, b, 1.0); r.modeTruncation = std::max(a.modeTruncation, b.modeTruncation); return r; }
EElement operator-(const EElement& a, const EElement& b) { auto r = add_impl(a, b, -1.0); r.modeTruncation = std::max(a.modeTruncation, b.modeTruncation); return r; }
EElement operator*(Complex s, const EElement& a) {
  EElement out(a.cfg);
  for (std::size_t i = 0; i < out.coef.size(); ++i) out.coef[i] = s * a.coef[i];
  out.modeTruncation = std::abs(s) * a.modeTruncation;
  return out;
}
XiElement operator+(const XiElement& a, const XiElement& b) { auto r = add_impl(a, b, 1.0); r.declaredTail = a.declaredTail + b.declaredTail; return r; }
XiElement operator-(const XiElement& a, const XiElement& b) { auto r = add_impl(a, b, -1.0); r.declaredTail = a.declaredTail + b.declaredTail; return r; }
XiElement operator*(Complex s, const XiElement& a) {
  XiElement out(a.cfg);
  for (std::size_t i = 0; i < out.coef.size(); ++i) out.coef[i] = s * a.coef[i];
  out.declaredTail = std::abs(s) * a.declaredTail;
  return out;
}

// ------------------------------------------------------------- defects -----

namespace {

// table[l*M + nn] = e(n * y_l) on the yModes-point y sample grid
std::vector<Complex> phase_table(int M, int N) {
  std::vector<Complex> t(static_cast<std::size_t>(M) * M);
  for (int l = 0; l < M; ++l) {
    const double y = static_cast<double>(l) / M;
    for (int n = -N; n <= N; ++n) t[static_cast<std::size_t>(l) * M + (n + N)] = cis(n * y);
  }
  return t;
}

template <typename Elem>
double fiber_defect(const Elem& a, const Elem* b, int fibers, int M, int N, int J) {
  auto tab = phase_table(M, N);
  double worst = 0;
  for (int f = 0; f < fibers; ++f) {
    for (int j = 0; j < J; ++j) {
      for (int l = 0; l < M; ++l) {
        Complex va{0, 0};
        const Complex* row = tab.data() + static_cast<std::size_t>(l) * M;
        for (int nn = 0; nn < M; ++nn) {
          const std::size_t idx = (static_cast<std::size_t>(f) * M + nn) * J + j;
          Complex d = a.coef[idx];
          if (b) d -= b->coef[idx];
          va += d * row[nn];
        }
        worst = std::max(worst, std::abs(va));
      }
    }
  }
  return worst;
}

}  // namespace

double defect(const DElement& a, const DElement& b) {
  require_same_config(a.cfg->hash(), b.cfg->hash(), "defect");
  return fiber_defect(a, &b, a.fibers(), a.modes(), a.cfg->halfModes(), a.grid());
}
double defect(const EElement& a, const EElement& b) {
  require_same_config(a.cfg->hash(), b.cfg->hash(), "defect");
  return fiber_defect(a, &b, a.fibers(), a.modes(), a.cfg->halfModes(), a.grid());
}
double defect(const XiElement& a, const XiElement& b) {
  require_same_config(a.cfg->hash(), b.cfg->hash(), "defect");
  return fiber_defect(a, &b, 1, a.modes(), a.cfg->halfModes(), a.grid());
}
double sup_norm(const DElement& a) { return fiber_defect(a, static_cast<const DElement*>(nullptr), a.fibers(), a.modes(), a.cfg->halfModes(), a.grid()); }
double sup_norm(const EElement& a) { return fiber_defect(a, static_cast<const EElement*>(nullptr), a.fibers(), a.modes(), a.cfg->halfModes(), a.grid()); }
double sup_norm(const XiElement& a) { return fiber_defect(a, static_cast<const XiElement*>(nullptr), 1, a.modes(), a.cfg->halfModes(), a.grid()); }

namespace {

template <typename Elem>
double seam_defect_impl(const Elem& a, double domainLen) {
  const int M = a.modes();
  const int ord = a.cfg->interpOrder();
  const double h = domainLen / a.grid();
  std::vector<Complex> u(M), v(M);
  const int P = a.cfg->pMax();
  double worst = 0;
  for (int f = -P; f <= P; ++f) {
    for (int s = 0; s < ord; ++s) {
      // points whose stencil crosses the seam at x = domainLen
      const double x = domainLen + h * (s - ord / 2 + (1.0 / 3.0));
      a.modeAt(f, x, u.data(), 0);
      a.modeAt(f, x, v.data(), -1);
      for (int n = 0; n < M; ++n) worst = std::max(worst, std::abs(u[n] - v[n]));
    }
  }
  return worst;
}

}  // namespace

double seam_defect(const DElement& a) { return seam_defect_impl(a, 1.0); }
double seam_defect(const EElement& a) { return seam_defect_impl(a, 2.0 * a.cfg->mu()); }

// ------------------------------------------------------- serialization -----

namespace {

std::string pack_complex64(const std::vector<Complex>& v) {
  std::vector<unsigned char> raw(v.size() * 2 * sizeof(float));
  float* f = reinterpret_cast<float*>(raw.data());
  for (std::size_t i = 0; i < v.size(); ++i) {
    f[2 * i] = static_cast<float>(v[i].real());
    f[2 * i + 1] = static_cast<float>(v[i].imag());
  }
  return base64_encode(raw.data(), raw.size());
}

std::vector<Complex> unpack_complex64(const std::string& b64, std::size_t count) {
  auto raw = base64_decode(b64);
  if (raw.size() != count * 2 * sizeof(float)) {
    throw InvalidParameter("element payload has wrong size");
  }
  std::vector<Complex> v(count);
  const float* f = reinterpret_cast<const float*>(raw.data());
  for (std::size_t i = 0; i < count; ++i) v[i] = Complex(f[2 * i], f[2 * i + 1]);
  return v;
}

template <typename Elem>
std::string element_json(const Elem& e, const char* kind, int fibers, int grid) {
  json j;
  j["kind"] = kind;
  j["configHash"] = e.cfg->hash();
  j["fibers"] = fibers;
  j["yModes"] = e.modes();
  j["grid"] = grid;
  j["data"] = pack_complex64(e.coef);
  return j.dump();
}

template <typename Elem>
Elem element_from_json(ConfigPtr cfg, const std::string& text, const char* kind) {
  json j = json::parse(text);
  if (j.at("kind").get<std::string>() != kind) throw InvalidParameter("wrong element kind");
  if (j.at("configHash").get<uint64_t>() != cfg->hash()) {
    throw ConfigMismatch("serialized element belongs to a different configuration");
  }
  Elem e(cfg);
  e.coef = unpack_complex64(j.at("data").get<std::string>(), e.coef.size());
  return e;
}

}  // namespace

std::string DElement::toJson() const { return element_json(*this, "D", fibers(), grid()); }
DElement DElement::fromJson(ConfigPtr cfg, const std::string& text) {
  return element_from_json<DElement>(std::move(cfg), text, "D");
}
std::string EElement::toJson() const { return element_json(*this, "E", fibers(), grid()); }
EElement EElement::fromJson(ConfigPtr cfg, const std::string& text) {
  return element_from_json<EElement>(std::move(cfg), text, "E");
}
std::string XiElement::toJson() const { return element_json(*this, "Xi", 1, grid()); }
XiElement XiElement::fromJson(ConfigPtr cfg, const std::string& text) {
  return element_from_json<XiElement>(std::move(cfg), text, "Xi");
}

}  // namespace qhm
