#pragma once
#include <vector>

#include "hardy.hpp"
#include "symbol.hpp"
#include "waves.hpp"

namespace sb {

// the data defining one left/right pair of bound-state operators: the wedge
// test functions are squares of analytic family members, and each square
// factors through a strip-outer symbol that carries the domain information
struct BoundStatePair {
  const ScatteringFunction* S = nullptr;
  FamilyMember xi_u;   // left member, analytic on 0 < Im z < pi
  FamilyMember eta_u;  // right member, analytic on -pi < Im z < 0
  Symbol xi0, eta0;
  double prefactor = 1.0;  // sqrt(2 pi |R|)
  cplx R;

  cplx xi(cplx z) const {
    cplx m = xi_u(z);
    return m * m;
  }
  cplx eta(cplx z) const {
    cplx m = eta_u(z);
    return m * m;
  }
};

inline BoundStatePair make_pair(const ScatteringFunction& S, const FamilyMember& left,
                                const FamilyMember& right) {
  if (!left.left || right.left) throw err("BadSettings", "need one member per wedge");
  BoundStatePair p;
  p.S = &S;
  p.xi_u = left;
  p.eta_u = right;
  p.xi0 = build_symbol(left, S);
  p.eta0 = build_symbol(right, S);
  p.R = residue_R(S);
  p.prefactor = std::sqrt(2.0 * PI * std::abs(p.R));
  for (const Symbol* s : {&p.xi0, &p.eta0})
    if (symbol_identity_residual(*s) > 1e-6)
      throw err("BadSettings", "symbol fails its defining identity");
  return p;
}

// convenience: the mirrored pair built from one left member
inline BoundStatePair make_pair(const ScatteringFunction& S, const FamilyMember& left) {
  return make_pair(S, left, left.reflected());
}

// ---------------------------------------------------------------------------
// one-particle component

// direct closed form: (chi_1 Psi)(z) = pref xi(z + i pi/3) Psi(z - i pi/3)
inline cplx chi1_point(const BoundStatePair& p, const OneFn& psi, cplx z) {
  const cplx third = PI * I / 3.0;
  return p.prefactor * p.xi(z + third) * psi(z - third);
}

inline cplx chi1p_point(const BoundStatePair& p, const OneFn& psi, cplx z) {
  const cplx third = PI * I / 3.0;
  return p.prefactor * p.eta(z - third) * psi(z + third);
}

// domain guard: the symbol-multiplied data must continue to Im z = -pi/3
// (checked on its grid Fourier coefficients); throws OutOfDomain otherwise
inline HardyElement chi1_domain_element(const BoundStatePair& p, const OneFn& psi,
                                        const RapidityGrid& grid, bool primed = false) {
  const cplx band = (primed ? -2.0 : 2.0) * PI * I / 3.0;
  const Symbol& s = primed ? p.eta0 : p.xi0;
  std::vector<cplx> u(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j)
    u[j] = s(cplx(grid.nodes[j]) + band) * psi(cplx(grid.nodes[j]));
  // the sampled data carries an aliasing/roundoff noise floor at high
  // frequencies; strip it so the membership weights only see genuine
  // spectral content, then guard with a tightened ratio on what remains
  std::vector<cplx> c = spectral_coeffs(grid, u);
  double peak = 0;
  for (const cplx& v : c) peak = std::max(peak, std::abs(v));
  for (cplx& v : c)
    if (std::abs(v) < 1e-12 * peak) v = 0.0;
  double a = primed ? 0.0 : -PI / 3, b = primed ? PI / 3 : 0.0;
  if (membership_ratio(grid, c, primed ? -b : -a) >= 1e4)
    throw err("OutOfDomain", "symbol-multiplied data does not reach the shifted line");
  HardyElement el{grid, std::move(c), a, b};
  return el;
}

// grid samples of chi_1 Psi with the membership guard enforced
inline std::vector<cplx> chi1_apply(const BoundStatePair& p, const OneFn& psi,
                                    const RapidityGrid& grid, bool primed = false) {
  chi1_domain_element(p, psi, grid, primed);  // throws if not in the domain
  std::vector<cplx> out(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j)
    out[j] = primed ? chi1p_point(p, psi, cplx(grid.nodes[j]))
                    : chi1_point(p, psi, cplx(grid.nodes[j]));
  return out;
}

// factored route: multiply by the symbol, continue by the modular power
// through Fourier coefficients, multiply by the conjugate symbol
inline cplx chi1_factored_point(const BoundStatePair& p, const OneFn& psi,
                                const RapidityGrid& grid, double theta,
                                bool primed = false) {
  HardyElement el = chi1_domain_element(p, psi, grid, primed);
  HardyElement sh = delta_power(el, primed ? -PI / 3 : PI / 3);
  const cplx band = (primed ? -2.0 : 2.0) * PI * I / 3.0;
  const Symbol& s = primed ? p.eta0 : p.xi0;
  return std::conj(s(cplx(theta) + band)) * sh.eval(cplx(theta));
}

// ---------------------------------------------------------------------------
// removable-singularity helper: S(u + shift) B(u) where B vanishes with u;
// at the coincidence point the value is the residue times the slope of B
template <class BFn>
cplx pole_times_zero(const ScatteringFunction& S, cplx shift, cplx u, BFn&& B) {
  if (std::abs(u) > 1e-7) return S.eval(u + shift) * B(u);
  // residue of S at the shift and the slope of B, both by symmetric steps
  const double d = 1e-5;
  cplx r = 0.5 * (S.eval(cplx(d) + shift) * d - S.eval(cplx(-d) + shift) * d);
  cplx slope = (B(u + d) - B(u - d)) / (2.0 * d);
  return r * slope;
}

// ---------------------------------------------------------------------------
// n-particle components on closed-form waves.  The two-particle forms are
// algebraically rearranged so that every exchange factor evaluated on the
// real coincidence set is paired with a seed that vanishes there.

inline cplx chi2_point(const BoundStatePair& p, const NWave& w, cplx t1, cplx t2) {
  if (w.n != 2) throw err("BadSettings", "two-particle wave expected");
  const cplx third = PI * I / 3.0;
  auto F = [&](cplx a, cplx b) { return w.raw({a, b}); };
  cplx u = t2 - t1;
  cplx main = 0.5 * p.xi(t1 + third) * F(t1 - third, t2) +
              0.5 * p.S->eval(u) * p.xi(t2 + third) * F(t2 - third, t1);
  cplx c = 0.5 * (t1 + t2);
  auto B = [&](cplx v) {
    cplx a = c - 0.5 * v, b = c + 0.5 * v;  // b - a = v
    return p.xi(a + third) * F(b, a - third) + p.xi(b + third) * F(a, b - third);
  };
  return p.prefactor * (main + 0.5 * pole_times_zero(*p.S, third, u, B));
}

inline cplx chi2p_point(const BoundStatePair& p, const NWave& w, cplx t1, cplx t2) {
  if (w.n != 2) throw err("BadSettings", "two-particle wave expected");
  const cplx third = PI * I / 3.0;
  auto F = [&](cplx a, cplx b) { return w.raw({a, b}); };
  cplx u = t2 - t1;
  cplx main = 0.5 * p.eta(t2 - third) * F(t1, t2 + third) +
              0.5 * p.S->eval(u) * p.eta(t1 - third) * F(t2, t1 + third);
  cplx c = 0.5 * (t1 + t2);
  auto B = [&](cplx v) {
    cplx a = c - 0.5 * v, b = c + 0.5 * v;
    return p.eta(b - third) * F(b + third, a) + p.eta(a - third) * F(a + third, b);
  };
  return p.prefactor * (main + 0.5 * pole_times_zero(*p.S, third, u, B));
}

// literal sum-over-insertions form, valid away from coincidences; used for
// the two-route cross checks and for the exploratory three-particle data
inline cplx chin_point(const BoundStatePair& p, const NWave& w,
                       const std::vector<cplx>& t, bool primed = false) {
  int n = (int)t.size();
  if (n != w.n) throw err("BadSettings", "arity mismatch");
  if (n > 3) throw err("ParticleCap", "supported up to three particles");
  const cplx third = PI * I / 3.0;
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k) {
    cplx prod = 1.0;
    std::vector<cplx> arg = t;
    if (!primed) {
      for (int j = 0; j < k; ++j) prod *= p.S->eval(t[k] - t[j] + third);
      prod *= p.xi(t[k] + third);
      arg[k] = t[k] - third;
    } else {
      for (int j = k + 1; j < n; ++j) prod *= p.S->eval(t[j] - t[k] + third);
      prod *= p.eta(t[k] - third);
      arg[k] = t[k] + third;
    }
    acc += prod * w(arg);
  }
  return p.prefactor * acc;
}

// dispatching wrapper: one- and two-particle evaluations route through the
// coincidence-safe forms, so grid tables never hit the exchange pole
inline cplx chin_apply(const BoundStatePair& p, const NWave& w,
                       const std::vector<cplx>& t, bool primed = false) {
  if (w.n == 1)
    return primed ? chi1p_point(p, [&](cplx z) { return w(z); }, t.at(0))
                  : chi1_point(p, [&](cplx z) { return w(z); }, t.at(0));
  if (w.n == 2)
    return primed ? chi2p_point(p, w, t.at(0), t.at(1))
                  : chi2_point(p, w, t.at(0), t.at(1));
  return chin_point(p, w, t, primed);
}

// ---------------------------------------------------------------------------
// numerical domain certificate for two-particle waves: sup norms along 16
// horizontal lines between the real axis and the continued line must stay
// comparable to the first line's; the exchange pole of an unengineered
// product makes the last line blow up like one over the inset
inline double domain_scan_ratio(const NWave& w, const RapidityGrid& grid,
                                bool primed = false) {
  if (w.n != 2) throw err("BadSettings", "two-particle scan");
  double sgn = primed ? 1.0 : -1.0;
  double base = 0, worst = 0;
  for (int line = 1; line <= 16; ++line) {
    // stop just short of the full shift: the coincidence pole sits exactly on
    // the last line and a non-member diverges like the inverse distance
    double t = line == 16 ? PI / 3 - 1e-4 : PI / 3 * line / 16.0;
    double s = 0;
    for (double a : grid.nodes)
      for (double b : grid.nodes) s = std::max(s, std::abs(w(cplx(a, sgn * t), cplx(b))));
    if (line == 1) base = s;
    worst = std::max(worst, s);
  }
  return worst / base;
}

}  // namespace sb
