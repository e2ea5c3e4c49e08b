#pragma once
#include <random>
#include <vector>

#include "chi.hpp"
#include "waves.hpp"

namespace sb {

// outcome of the lower-bound inequality
//   Re<chi Psi, chi' Psi> >= -n c <(chi + chi' + 2) Psi, Psi>
// on an n-particle vector, with c estimated from the truncated product
struct PositivityResult {
  int n = 0;
  double c = 0.0;           // inflated norm estimate for the cross bound
  double convergence = 0.0; // relative change of the last power-iteration step
  cplx cross = 0.0;         // <chi Psi, chi' Psi>
  double lhs = 0.0;         // Re cross
  double quad_form = 0.0;   // Re<(chi + chi' + 2) Psi, Psi>
  double rhs = 0.0;         // -n c quad_form
  double margin = 0.0;      // lhs - rhs, must be >= -1e-8
  double norm_chi = 0.0;    // |chi Psi|
  double norm_chip = 0.0;   // |chi' Psi|
  double norm_sum = 0.0;    // |(chi + chi' + c(n+1)) Psi|
};

namespace detail {

// one application of the truncated one-particle operator: cut the spectrum,
// continue by the modular multiplier, multiply by the symbol line values,
// and project back onto the truncation
inline std::vector<cplx> chi1_trunc_apply(const BoundStatePair& p, const RapidityGrid& g,
                                          const std::vector<cplx>& v, int m_cut,
                                          bool primed) {
  std::vector<cplx> c = spectral_coeffs(g, v);
  double t = primed ? -PI / 3 : PI / 3;
  for (int m = -g.n_points / 2; m < g.n_points / 2; ++m) {
    cplx& y = c[m + g.n_points / 2];
    y = std::abs(m) > m_cut ? 0.0 : y * std::exp(g.k(m) * t);
  }
  std::vector<cplx> w = spectral_synthesis(g, c);
  const cplx third = PI * I / 3.0;
  for (int j = 0; j < g.n_points; ++j)
    w[j] *= p.prefactor * (primed ? p.eta(cplx(g.nodes[j]) - third)
                                  : p.xi(cplx(g.nodes[j]) + third));
  std::vector<cplx> c2 = spectral_coeffs(g, w);
  for (int m = -g.n_points / 2; m < g.n_points / 2; ++m)
    if (std::abs(m) > m_cut) c2[m + g.n_points / 2] = 0.0;
  return spectral_synthesis(g, c2);
}

}  // namespace detail

// power-iteration estimate of |chi^{1/2} chi'^{1/2}|: the square root of the
// top eigenvalue of the truncated product chi chi' (the factors alone are
// unbounded, only the growth rate of the product is finite), then c = that
// plus one, inflated by two because truncation only lower-bounds norms
inline double chi_product_norm(const BoundStatePair& p, const RapidityGrid& g,
                               int m_cut = 48, int iters = 20, double* conv = nullptr,
                               uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(g.n_points);
  for (auto& x : v) x = cplx(nd(rng), nd(rng));
  double lam = 0, prev = 0;
  for (int it = 0; it < iters; ++it) {
    double nv = grid_norm(g, v);
    if (!(nv > 0) || !std::isfinite(nv))
      throw err("PowerIterationStall", "iterate collapsed or overflowed");
    for (auto& x : v) x /= nv;
    v = detail::chi1_trunc_apply(p, g, detail::chi1_trunc_apply(p, g, v, m_cut, true),
                                 m_cut, false);
    prev = lam;
    lam = grid_norm(g, v);
  }
  if (!(lam > 0) || !std::isfinite(lam) || std::abs(lam - prev) > 0.5 * lam)
    throw err("PowerIterationStall", "growth rate did not settle");
  if (conv) *conv = std::abs(lam - prev) / lam;
  return std::sqrt(lam);
}

// one-particle version of the lower-bound inequality
inline PositivityResult positivity_check(const BoundStatePair& p, const RapidityGrid& g,
                                         const OneFn& psi) {
  PositivityResult r;
  r.n = 1;
  double conv = 0;
  r.c = 2.0 * (chi_product_norm(p, g, 48, 20, &conv) + 1.0);
  r.convergence = conv;
  std::vector<cplx> ps(g.n_points), a(g.n_points), b(g.n_points);
  for (int j = 0; j < g.n_points; ++j) {
    cplx th(g.nodes[j]);
    ps[j] = psi(th);
    a[j] = chi1_point(p, psi, th);
    b[j] = chi1p_point(p, psi, th);
  }
  r.cross = grid_inner(g, a, b);
  r.lhs = r.cross.real();
  r.quad_form = (grid_inner(g, a, ps) + grid_inner(g, b, ps)).real() +
                2.0 * std::norm(grid_norm(g, ps));
  r.rhs = -double(r.n) * r.c * r.quad_form;
  r.margin = r.lhs - r.rhs;
  r.norm_chi = grid_norm(g, a);
  r.norm_chip = grid_norm(g, b);
  std::vector<cplx> sum(g.n_points);
  for (int j = 0; j < g.n_points; ++j)
    sum[j] = a[j] + b[j] + r.c * double(r.n + 1) * ps[j];
  r.norm_sum = grid_norm(g, sum);
  return r;
}

// two-particle version: the closed forms of the pole-safe second-level
// operators supply every table entry
inline PositivityResult positivity_check(const BoundStatePair& p, const RapidityGrid& g,
                                         const NWave& psi2) {
  if (psi2.n != 2) throw err("BadSettings", "two-particle check");
  PositivityResult r;
  r.n = 2;
  double conv = 0;
  r.c = 2.0 * (chi_product_norm(p, g, 48, 20, &conv) + 1.0);
  r.convergence = conv;
  const int N = g.n_points;
  std::vector<cplx> ps(N * N), a(N * N), b(N * N);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      cplx u(g.nodes[j]), v(g.nodes[k]);
      ps[j * N + k] = psi2(u, v);
      a[j * N + k] = chi2_point(p, psi2, u, v);
      b[j * N + k] = chi2p_point(p, psi2, u, v);
    }
  double h2 = g.h * g.h;
  auto inner = [&](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    cplx s = 0;
    for (int i = 0; i < N * N; ++i) s += std::conj(x[i]) * y[i];
    return s * h2;
  };
  r.cross = inner(a, b);
  r.lhs = r.cross.real();
  r.quad_form = (inner(a, ps) + inner(b, ps) + 2.0 * inner(ps, ps)).real();
  r.rhs = -double(r.n) * r.c * r.quad_form;
  r.margin = r.lhs - r.rhs;
  r.norm_chi = std::sqrt(std::abs(inner(a, a)));
  r.norm_chip = std::sqrt(std::abs(inner(b, b)));
  std::vector<cplx> sum(N * N);
  for (int i = 0; i < N * N; ++i) sum[i] = a[i] + b[i] + r.c * double(r.n + 1) * ps[i];
  r.norm_sum = std::sqrt(std::abs(inner(sum, sum)));
  return r;
}

// |<chi_1 Phi, Psi> - <X Phi, X Psi>| with X the half-factored form: multiply
// by the symbol, continue by half the modular step through the spectral
// multiplier; the mirrored flag uses the right symbol and the inverse step
inline double xstarx_residual(const BoundStatePair& p, const OneFn& phi, const OneFn& psi,
                              const RapidityGrid& g, bool mirrored = false) {
  std::vector<cplx> cphi(g.n_points), cpsi(g.n_points);
  for (int j = 0; j < g.n_points; ++j) {
    cplx th(g.nodes[j]);
    cphi[j] = mirrored ? chi1p_point(p, phi, th) : chi1_point(p, phi, th);
    cpsi[j] = psi(th);
  }
  cplx direct = grid_inner(g, cphi, cpsi);
  double t = mirrored ? -PI / 6 : PI / 6;
  HardyElement xphi = delta_power(chi1_domain_element(p, phi, g, mirrored), t);
  HardyElement xpsi = delta_power(chi1_domain_element(p, psi, g, mirrored), t);
  cplx factored = grid_inner(g, xphi.samples(), xpsi.samples());
  return std::abs(direct - factored);
}

// quadratic form behind the two-particle cross term: shift both slots by half
// a modular step and weigh by the exchange factors; nonnegative when the real
// part of S stays positive on the shifted line
inline double crossterm_positivity(const ScatteringFunction& S, const NWave& psi2,
                                   const RapidityGrid& g) {
  if (psi2.n != 2) throw err("BadSettings", "two-particle cross term");
  const int N = g.n_points;
  const cplx half = PI * I / 6.0;
  double total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      if (j == k) continue;  // the exchange zero kills the pole line exactly
      cplx u(g.nodes[j] - g.nodes[k]);
      cplx w = psi2(cplx(g.nodes[j]) - half, cplx(g.nodes[k]) - half);
      cplx val = std::conj(w) * S.eval(u + PI * I / 3.0) * std::conj(S.eval(u)) * w;
      total += val.real();
    }
  return total * g.h * g.h;
}

// the alternative cross term with only one slot shifted; its multiplier is
// pole-free, and its sign follows from the shifted-line inequality on S
inline double konrady_crossterm(const ScatteringFunction& S, const NWave& psi2,
                                const RapidityGrid& g) {
  if (psi2.n != 2) throw err("BadSettings", "two-particle cross term");
  const int N = g.n_points;
  const cplx half = PI * I / 6.0;
  double total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      cplx u(g.nodes[j] - g.nodes[k]);
      cplx w = psi2(cplx(g.nodes[j]), cplx(g.nodes[k]) - half);
      cplx val = std::conj(w) * S.eval(u) * std::conj(S.eval(u + half)) * w;
      total += val.real();
    }
  return total * g.h * g.h;
}

}  // namespace sb
