#pragma once
#include "core.hpp"

namespace sb {

// uniform rapidity grid, nodes at half-offsets so they are symmetric about 0
// and never hit 0 or the window edges exactly
struct RapidityGrid {
  double theta_max;
  int n_points;
  double h;
  std::vector<double> nodes;

  explicit RapidityGrid(double L = 12.0, int n = 2048) : theta_max(L), n_points(n) {
    if (n < 64 || (n & (n - 1)) != 0)
      throw err("BadGrid", "n_points must be a power of two, at least 64");
    h = 2.0 * L / n;
    nodes.resize(n);
    for (int j = 0; j < n; ++j) nodes[j] = -L + (j + 0.5) * h;
  }
  double weight(int) const { return h; }  // trapezoid on a decaying periodic window
  double k(int m) const { return PI * m / theta_max; }  // spectral node for index m

  template <class F>
  std::vector<cplx> sample(F&& f) const {
    std::vector<cplx> v(n_points);
    for (int j = 0; j < n_points; ++j) v[j] = f(nodes[j]);
    return v;
  }
};

inline cplx grid_inner(const RapidityGrid& g, const std::vector<cplx>& a,
                       const std::vector<cplx>& b) {
  cplx s = 0;
  for (int j = 0; j < g.n_points; ++j) s += std::conj(a[j]) * b[j] * g.h;
  return s;
}

inline double grid_norm(const RapidityGrid& g, const std::vector<cplx>& a) {
  return std::sqrt(std::abs(grid_inner(g, a, a)));
}

}  // namespace sb
