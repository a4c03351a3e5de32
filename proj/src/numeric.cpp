#include "qhm/numeric.hpp"

#include <stdexcept>

namespace qhm {

void lagrange_weights(double t, int base, int count, double* w) {
  for (int i = 0; i < count; ++i) {
    double num = 1.0;
    double den = 1.0;
    const double xi = base + i;
    for (int j = 0; j < count; ++j) {
      if (j == i) continue;
      const double xj = base + j;
      num *= (t - xj);
      den *= (xi - xj);
    }
    w[i] = num / den;
  }
}

std::vector<double> fd_weights(int deriv, const std::vector<double>& offsets) {
  // Fornberg's recursion for finite difference weights at x = 0.
  const int n = static_cast<int>(offsets.size());
  const int m = deriv;
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    double c2 = 1.0;
    const int mn = std::min(i, m);
    for (int j = 0; j < i; ++j) {
      const double c3 = offsets[i] - offsets[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - offsets[i - 1] * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * offsets[i - 1] * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[j][k] = (offsets[i] * c[j][k] - k * c[j][k - 1]) / c3;
      }
      c[j][0] = offsets[i] * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = c[i][m];
  return out;
}

std::vector<double> central_first_derivative(int order, double h) {
  if (order < 2 || order % 2 != 0) {
    throw std::invalid_argument("central_first_derivative: order must be even and >= 2");
  }
  const int half = order / 2;
  std::vector<double> offsets;
  offsets.reserve(order + 1);
  for (int s = -half; s <= half; ++s) offsets.push_back(static_cast<double>(s));
  auto w = fd_weights(1, offsets);
  for (auto& v : w) v /= h;
  return w;
}

static uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t CounterRng::bits(uint64_t counter) const {
  return splitmix64(splitmix64(seed) ^ splitmix64(counter * 0x9e3779b97f4a7c15ULL + 1));
}

double CounterRng::uniform(uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::symmetric(uint64_t counter) const {
  return 2.0 * uniform(counter) - 1.0;
}

static const char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const unsigned char* data, std::size_t len) {
  std::string out;
  out.reserve((len + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < len; i += 3) {
    const unsigned v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(kB64[(v >> 6) & 63]);
    out.push_back(kB64[v & 63]);
  }
  if (i + 1 == len) {
    const unsigned v = data[i] << 16;
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out += "==";
  } else if (i + 2 == len) {
    const unsigned v = (data[i] << 16) | (data[i + 1] << 8);
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(kB64[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
  auto val = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<unsigned char> out;
  out.reserve(text.size() / 4 * 3);
  unsigned buf = 0;
  int bitsHeld = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    const int v = val(c);
    if (v < 0) throw std::invalid_argument("base64_decode: bad character");
    buf = (buf << 6) | static_cast<unsigned>(v);
    bitsHeld += 6;
    if (bitsHeld >= 8) {
      bitsHeld -= 8;
      out.push_back(static_cast<unsigned char>((buf >> bitsHeld) & 0xff));
    }
  }
  return out;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace qhm
