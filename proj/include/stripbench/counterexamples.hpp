#pragma once
#include <vector>

#include "hardy.hpp"
#include "waves.hpp"

namespace sb {

// ---------------------------------------------------------------------------
// weak-but-not-strong commutation of e^{s1 X} and e^{s2 P}: the first
// multiplies by e^{s1 t}, the second shifts by -i s2; on entire Gaussian
// vectors the pairing flips order freely, while the pointwise composition
// picks up the Weyl phase e^{-i s1 s2}

struct CcrReport {
  double weak_residual = 0.0;   // sup over test pairs of the pairing mismatch
  double phase_mismatch = 0.0;  // |e^{-i s1 s2} - 1|
  double strong_residual = 0.0; // sup norm of (AB - e^{-i s1 s2} BA) on a test vector
};

inline CcrReport ccr_demo(double s1, double s2, const RapidityGrid& g) {
  CcrReport r;
  r.phase_mismatch = std::abs(std::exp(-I * s1 * s2) - 1.0);
  std::vector<OneFn> tests = {gauss_fn(1.0, 0.3), gauss_fn(0.8, -0.5), gauss_fn(1.2, 0.0)};
  auto mult = [s1](cplx t) { return std::exp(s1 * t); };
  for (const OneFn& phi : tests)
    for (const OneFn& psi : tests) {
      cplx lhs = 0, rhs = 0;
      for (double t : g.nodes) {
        cplx z(t);
        lhs += std::conj(mult(z) * phi(z)) * psi(z - I * s2) * g.h;
        rhs += std::conj(phi(z - I * s2)) * mult(z) * psi(z) * g.h;
      }
      r.weak_residual = std::max(r.weak_residual, std::abs(lhs - rhs));
    }
  const OneFn& psi = tests[0];
  cplx weyl = std::exp(I * s1 * s2);
  for (double t : g.nodes) {
    cplx z(t);
    cplx ab = mult(z) * psi(z - I * s2);
    cplx ba = mult(z - I * s2) * psi(z - I * s2);
    r.strong_residual = std::max(r.strong_residual, std::abs(ab - weyl * ba));
  }
  return r;
}

// ---------------------------------------------------------------------------
// zero count of g(z) = a + conj(f(conj z - i pi/3)) f(z) on the band
// -pi/3 < Im z < 0, with f a Blaschke product for that band; a positive count
// signals the nontrivial-extension scenario

inline int extension_symbol_zeros(double a, const std::vector<cplx>& blaschke_zeros,
                                  double half_width = 10.0, int per_side = 20000) {
  const double lo = -PI / 3;
  auto f = [&](cplx z) { return blaschke_point(blaschke_zeros, {}, lo, 0.0, z); };
  auto gfn = [&](cplx z) {
    return a + std::conj(f(std::conj(z) - I * PI / 3.0)) * f(z);
  };
  // rectangle walk, counter-clockwise; the factors flatten to constants well
  // inside half_width, so the truncated contour carries the full winding
  std::vector<cplx> path;
  path.reserve(4 * per_side);
  for (int j = 0; j < per_side; ++j)
    path.push_back(cplx(-half_width + 2 * half_width * j / per_side, lo));
  for (int j = 0; j < per_side; ++j)
    path.push_back(cplx(half_width, lo - lo * j / per_side));
  for (int j = 0; j < per_side; ++j)
    path.push_back(cplx(half_width - 2 * half_width * j / per_side, 0.0));
  for (int j = 0; j < per_side; ++j)
    path.push_back(cplx(-half_width, lo * j / per_side));
  double winding = 0;
  cplx prev = gfn(path.back());
  for (const cplx& z : path) {
    cplx cur = gfn(z);
    if (std::abs(cur) < 1e-9)
      throw err("BoundaryZero", "the symbol vanishes on the contour");
    winding += std::arg(cur / prev);
    prev = cur;
  }
  return (int)std::lround(winding / (2 * PI));
}

// ---------------------------------------------------------------------------
// pair of shift-by-2pi operators dressed by Blaschke-type multipliers: they
// agree on a vector engineered to vanish at every multiplier pole, while a
// generic vector fails the domain guard of at least one composition order

// 2 pi i-periodic unimodular multiplier with zero lattice w + 2 pi i Z
struct PeriodicBlaschke {
  std::vector<cplx> zeros;
  cplx operator()(cplx z) const {
    cplx prod = 1.0;
    for (cplx w : zeros) prod *= std::sinh((z - w) / 2.0) / std::sinh((z - std::conj(w)) / 2.0);
    return prod;
  }
  cplx conj_fn(cplx z) const { return std::conj((*this)(std::conj(z))); }
};

struct BlaschkePairReport {
  double commutation_residual = 0.0;  // sup |A1 A2 xi - A2 A1 xi| over sup |A1 A2 xi|
  int generic_attempts = 0;
  int generic_guard_failures = 0;  // compositions rejected by the domain guard
};

namespace detail {

// one application of A = M_{conj f} Delta M_f through the spectral machinery;
// the guard certifies f * (input) continues down by 2 pi
inline std::vector<cplx> dressed_shift_apply(const PeriodicBlaschke& f,
                                             const RapidityGrid& g,
                                             const std::vector<cplx>& v) {
  std::vector<cplx> u(g.n_points);
  for (int j = 0; j < g.n_points; ++j) u[j] = f(cplx(g.nodes[j])) * v[j];
  // a full-period shift amplifies the spectrum so strongly that the sampling
  // noise floor must be stripped by hand; data with an uncancelled multiplier
  // pole decays too slowly and shows up as a ratio many orders higher
  std::vector<cplx> c = spectral_coeffs(g, u);
  double peak = 0;
  for (const cplx& y : c) peak = std::max(peak, std::abs(y));
  for (cplx& y : c)
    if (std::abs(y) < 1e-12 * peak) y = 0.0;
  if (membership_ratio(g, c, 2 * PI) >= 1e6)
    throw err("OutOfDomain", "input does not continue through the full period");
  HardyElement el{g, std::move(c), -2 * PI, 0.0};
  std::vector<cplx> out = delta_power(el, 2 * PI).samples();
  for (int j = 0; j < g.n_points; ++j) out[j] *= f.conj_fn(cplx(g.nodes[j]));
  return out;
}

}  // namespace detail

inline BlaschkePairReport blaschke_pair_demo(const PeriodicBlaschke& f1,
                                             const PeriodicBlaschke& f2,
                                             const RapidityGrid& g) {
  BlaschkePairReport r;
  // engineered vector: a wide Gaussian times one odd-period factor per pole
  // lattice, which vanishes at every pole of f1 and f2
  auto xi = [&](cplx z) {
    cplx v = std::exp(-z * z / 72.0);
    for (const PeriodicBlaschke* f : {&f1, &f2})
      for (cplx w : f->zeros) v *= std::sinh((z - std::conj(w)) / 2.0);
    return v;
  };
  std::vector<cplx> base = g.sample([&](double t) { return xi(cplx(t)); });
  std::vector<cplx> a12 = detail::dressed_shift_apply(f1, g, detail::dressed_shift_apply(f2, g, base));
  std::vector<cplx> a21 = detail::dressed_shift_apply(f2, g, detail::dressed_shift_apply(f1, g, base));
  double diff = 0, scale = 0;
  for (int j = 0; j < g.n_points; ++j) {
    diff = std::max(diff, std::abs(a12[j] - a21[j]));
    scale = std::max(scale, std::abs(a12[j]));
  }
  r.commutation_residual = scale > 0 ? diff / scale : diff;
  // generic vectors: plain Gaussians, no engineered zeros
  for (double c : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    ++r.generic_attempts;
    std::vector<cplx> v = g.sample([&](double t) { return gauss_fn(2.0, c)(cplx(t)); });
    try {
      detail::dressed_shift_apply(f1, g, detail::dressed_shift_apply(f2, g, v));
    } catch (const Error&) {
      ++r.generic_guard_failures;
      continue;
    }
    try {
      detail::dressed_shift_apply(f2, g, detail::dressed_shift_apply(f1, g, v));
    } catch (const Error&) {
      ++r.generic_guard_failures;
    }
  }
  return r;
}

}  // namespace sb
