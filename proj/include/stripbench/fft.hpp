#pragma once
#include "core.hpp"
#include "grid.hpp"

namespace sb {

// iterative radix-2 FFT (grids are powers of two by construction)
inline void fft_inplace(std::vector<cplx>& a, bool inverse) {
  size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = 2 * PI / double(len) * (inverse ? 1 : -1);
    cplx wl = std::polar(1.0, ang);
    for (size_t i = 0; i < n; i += len) {
      cplx w = 1;
      for (size_t j = 0; j < len / 2; ++j) {
        cplx u = a[i + j], v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= double(n);
}

// spectral coefficients c_m, m = -n/2 .. n/2-1, of f sampled on the grid:
// f(theta_j) = sum_m c_m exp(i k_m theta_j), k_m = pi m / L.
// returned in a flat vector indexed by m + n/2.
inline std::vector<cplx> spectral_coeffs(const RapidityGrid& g, std::vector<cplx> samples) {
  int n = g.n_points;
  fft_inplace(samples, false);
  std::vector<cplx> c(n);
  for (int m = -n / 2; m < n / 2; ++m) {
    int idx = (m % n + n) % n;
    // node offset theta_j = -L + (j+1/2)h gives the extra phases below
    cplx phase = std::polar(1.0, PI * m - PI * m / double(n));
    c[m + n / 2] = samples[idx] / double(n) * phase;
  }
  return c;
}

inline std::vector<cplx> spectral_synthesis(const RapidityGrid& g, const std::vector<cplx>& c) {
  int n = g.n_points;
  std::vector<cplx> a(n);
  for (int m = -n / 2; m < n / 2; ++m) {
    int idx = (m % n + n) % n;
    cplx phase = std::polar(1.0, -PI * m + PI * m / double(n));
    a[idx] = c[m + n / 2] * phase;
  }
  fft_inplace(a, true);
  for (auto& x : a) x *= double(n);
  return a;
}

// evaluate sum_m c_m exp(i k_m zeta) at an arbitrary complex point
inline cplx spectral_eval(const RapidityGrid& g, const std::vector<cplx>& c, cplx zeta) {
  int n = g.n_points;
  cplx s = 0;
  for (int m = -n / 2; m < n / 2; ++m) {
    if (c[m + n / 2] == cplx(0)) continue;
    s += c[m + n / 2] * std::exp(I * g.k(m) * zeta);
  }
  return s;
}

}  // namespace sb
