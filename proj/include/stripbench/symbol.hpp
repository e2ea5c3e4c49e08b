#pragma once
#include "core.hpp"
#include "family.hpp"
#include "schwarz.hpp"
#include "smatrix.hpp"

namespace sb {

// the multiplier symbol for the one-particle bound-state operator: analytic
// on S_{pi/3,2pi/3} (left) or S_{-2pi/3,-pi/3} (right), unimodular on the
// outer boundary line, and solving
//   xi0(t + pi i/3) conj(xi0(t + 2 pi i/3)) = sqrt(2 pi |R|) xi(t + pi i/3)
// with xi the square of the family member
struct Symbol {
  FamilyMember base;  // always stored in left form; right side conjugates
  bool left = true;
  double prefactor = 1.0;  // sqrt(2 pi |R|)
  std::vector<cplx> bzeros;
  StripOuter outer;

  cplx eval_left(cplx z) const {
    // the member's own zero-pair factor, continued into the band: its line
    // reality gives conj P(t + 2pi i/3) = P(t + pi i/3), so it enters the
    // defining identity unsquared and exactly
    cplx P = base.inserted_part(z);
    cplx E = std::exp(-2.0 * I *
                      momentum_pair(base.a0, base.a1, z - 2.0 * PI * I / 3.0, base.mass));
    return P * E * std::exp(outer.log_eval(z));
  }

  cplx operator()(cplx z) const {
    if (left) return eval_left(z);
    return std::conj(eval_left(std::conj(z)));
  }
};

inline Symbol build_symbol(const FamilyMember& member, const ScatteringFunction& S) {
  Symbol sym;
  sym.left = member.left;
  sym.base = member.left ? member : member.reflected();
  sym.prefactor = std::sqrt(2.0 * PI * std::abs(residue_R(S)));

  // zeros of the symbol inside the band: the pair factor's zeros land there
  // with their reflection partners, each simple
  for (cplx w : sym.base.inserted_zeros)
    for (cplx z : {w, std::conj(w) + PI * I})
      if (z.imag() > PI / 3 + 1e-9 && z.imag() < 2 * PI / 3 - 1e-9)
        sym.bzeros.push_back(z);

  // outer part: the upper-line data cancels the pair factor's modulus there
  // (making the symbol unimodular), the lower line carries the prefactor and
  // the squared zero-free envelope; the oscillating exponential's modulus is
  // supplied by the E factor
  FamilyMember env = sym.base;
  double logpref = std::log(sym.prefactor);
  auto pair_log_up = [env](double t) {
    double m = std::abs(env.inserted_part(cplx(t, 2 * PI / 3)));
    if (!(m > 0) || !std::isfinite(m))
      throw err("SplitIllConditioned", "pair factor degenerate on the outer line");
    return std::log(m);
  };
  auto mu_lo = [env, logpref, pair_log_up](double t) {
    double m = std::abs(env.envelope(cplx(t, PI / 3))) /
               std::abs(env.inserted_part(cplx(t, PI / 3)));
    if (!(m > 0) || !std::isfinite(m))
      throw err("SplitIllConditioned", "boundary data for the outer split degenerate");
    return logpref + 2.0 * std::log(m) + pair_log_up(t);
  };
  auto mu_up = [pair_log_up](double t) { return -pair_log_up(t); };
  sym.outer = StripOuter{PI / 3, 2 * PI / 3, mu_lo, mu_up};
  return sym;
}

// sup over the test lattice of the defining identity's residual
inline double symbol_identity_residual(const Symbol& sym, int n_lat = 41,
                                       double half_width = 3.0) {
  double worst = 0;
  for (int j = 0; j < n_lat; ++j) {
    double t = -half_width + 2 * half_width * j / (n_lat - 1);
    cplx lo, hi, xi;
    if (sym.left) {
      lo = sym(cplx(t, PI / 3));
      hi = sym(cplx(t, 2 * PI / 3));
      cplx m = sym.base(cplx(t, PI / 3));
      xi = m * m;
    } else {
      lo = sym(cplx(t, -PI / 3));
      hi = sym(cplx(t, -2 * PI / 3));
      FamilyMember right = sym.base.reflected();
      cplx m = right(cplx(t, -PI / 3));
      xi = m * m;
    }
    worst = std::max(worst, std::abs(lo * std::conj(hi) - sym.prefactor * xi));
  }
  return worst;
}

inline double symbol_unimodularity_residual(const Symbol& sym, int n_lat = 41,
                                            double half_width = 3.0) {
  double worst = 0;
  double line = sym.left ? 2 * PI / 3 : -2 * PI / 3;
  for (int j = 0; j < n_lat; ++j) {
    double t = -half_width + 2 * half_width * j / (n_lat - 1);
    worst = std::max(worst, std::abs(std::abs(sym(cplx(t, line))) - 1.0));
  }
  return worst;
}

}  // namespace sb
