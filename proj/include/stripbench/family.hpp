#pragma once
#include "core.hpp"
#include "hardy.hpp"
#include <functional>

namespace sb {

// on-shell momentum pairing a.p(z) = m (a0 cosh z - a1 sinh z), real on the line
inline cplx momentum_pair(double a0, double a1, cplx z, double mass = 1.0) {
  return mass * (a0 * std::cosh(z) - a1 * std::sinh(z));
}

inline bool in_left_wedge(double a0, double a1) { return a1 <= -std::abs(a0); }
inline bool in_right_wedge(double a0, double a1) { return a1 >= std::abs(a0); }

// closed-form one-particle functions analytic and bounded on S_{0,pi} (left)
// or S_{-pi,0} (right), satisfying the line reality condition; evaluable at
// arbitrary complex arguments, which the shifted contours require
struct FamilyMember {
  enum Kind { WedgeExpSech, Gaussian, Custom } kind = WedgeExpSech;
  bool left = true;           // strip S_{0,pi} if true, else S_{-pi,0}
  double a0 = 0.0, a1 = -1.0; // spacetime shift, W_L (left) / W_R (right)
  double beta = 0.5;          // sech steepness, in (0,1)
  double mu = 0.0, sigma = 1.0;
  std::vector<cplx> inserted_zeros;  // each w adds the reflected pair (w, wbar + i pi)
  std::function<cplx(cplx)> custom;
  double mass = 1.0;

  double center_im() const { return left ? PI / 2 : -PI / 2; }

  // pair of elementary factors with zeros at w and its reflection across the
  // center line; unimodular on both boundary lines, preserves line reality
  cplx inserted_part(cplx z) const {
    cplx prod = 1.0;
    double lo = left ? 0.0 : -PI, hi = lo + PI;
    for (cplx w : inserted_zeros) {
      cplx wr = std::conj(w) + 2.0 * I * center_im();
      prod *= blaschke_point({w, wr}, {}, lo, hi, z);
    }
    return prod;
  }

  // member without its oscillating exponential; its line modulus drives the
  // outer part of the symbol construction
  cplx envelope(cplx z) const {
    cplx x = z - I * center_im();
    switch (kind) {
      case WedgeExpSech: return inserted_part(z) / std::cosh(beta * x);
      case Gaussian: {
        cplx s2 = 2.0 * sigma * sigma;
        return 0.5 * (std::exp(-(x - mu) * (x - mu) / s2) +
                      std::exp(-(x + mu) * (x + mu) / s2));
      }
      case Custom: return custom(z);
    }
    return 0.0;
  }

  cplx operator()(cplx z) const {
    return std::exp(I * momentum_pair(a0, a1, z, mass)) * envelope(z);
  }

  // reflected member conj(f(conj z)): swaps sides and negates the shift
  FamilyMember reflected() const {
    FamilyMember r = *this;
    r.left = !left;
    r.a0 = -a0;
    r.a1 = -a1;
    r.inserted_zeros.clear();
    for (cplx w : inserted_zeros) r.inserted_zeros.push_back(std::conj(w));
    if (kind == Custom) {
      auto f = custom;
      r.custom = [f](cplx z) { return std::conj(f(std::conj(z))); };
    }
    return r;
  }
};

inline FamilyMember make_wedge_member(double a0, double a1, double beta, bool left = true,
                                      std::vector<cplx> zeros = {}) {
  if (!(beta > 0.0 && beta < 1.0)) throw err("OutOfRange", "beta must lie in (0,1)");
  if (left ? !in_left_wedge(a0, a1) : !in_right_wedge(a0, a1))
    throw err("OutOfRange", "shift not in the required wedge");
  FamilyMember m;
  m.kind = FamilyMember::WedgeExpSech;
  m.left = left;
  m.a0 = a0;
  m.a1 = a1;
  m.beta = beta;
  double lo = left ? 0.0 : -PI;
  for (cplx w : zeros)
    if (!(w.imag() > lo && w.imag() < lo + PI))
      throw err("BadZero", "inserted zero outside the member's strip");
  m.inserted_zeros = std::move(zeros);
  return m;
}

}  // namespace sb
