#pragma once
#include "core.hpp"
#include "hardy.hpp"
#include "schwarz.hpp"
#include "winding.hpp"

namespace sb {

struct FactorizationResult {
  double strip_a = 0.0, strip_b = 0.0;
  std::vector<cplx> blaschke_zeros;
  std::vector<double> lattice;                     // window nodes on the lines
  std::vector<double> outer_log_lo, outer_log_up;  // outer log-modulus data
  cplx constant = 1.0;                             // unimodular up to rounding
  double residual = 0.0;                           // sup |f - c B O| / sup |f|
  bool singular_inner_flag = false;
  StripOuter outer;

  cplx blaschke(cplx z) const {
    return blaschke_point(blaschke_zeros, {}, strip_a, strip_b, z);
  }
  cplx reconstruct(cplx z) const { return constant * blaschke(z) * outer.eval(z); }
};

namespace detail {
inline double safe_log_abs(cplx v) {
  double m = std::abs(v);
  return m > 0 ? std::max(std::log(m), -700.0) : -700.0;
}
}  // namespace detail

// Beurling-style factorization of a bounded analytic function on a strip:
// zeros by the argument principle, outer part from boundary log-modulus, and
// an evidence flag when the product fails to reconstruct f (singular part)
template <class F>
FactorizationResult factorize(F&& f, double strip_a, double strip_b,
                              double half_width = 6.0, int max_zeros = 64) {
  FactorizationResult r;
  r.strip_a = strip_a;
  r.strip_b = strip_b;
  r.blaschke_zeros = locate_zeros(
      f, ComplexRect(-half_width, half_width, strip_a + 1e-6, strip_b - 1e-6), max_zeros);

  auto mu_lo = [=](double t) { return detail::safe_log_abs(f(cplx(t, strip_a))); };
  auto mu_up = [=](double t) { return detail::safe_log_abs(f(cplx(t, strip_b))); };
  r.outer = StripOuter{strip_a, strip_b, mu_lo, mu_up};

  int n_lat = 81;
  for (int j = 0; j < n_lat; ++j) {
    double t = -4.0 + 8.0 * j / (n_lat - 1);
    r.lattice.push_back(t);
    r.outer_log_lo.push_back(mu_lo(t));
    r.outer_log_up.push_back(mu_up(t));
  }

  cplx mid(0.0, 0.5 * (strip_a + strip_b));
  cplx ref = r.blaschke(mid) * r.outer.eval(mid);
  if (std::abs(ref) == 0) throw err("NonConvergent", "degenerate reference point");
  r.constant = f(mid) / ref;

  double worst = 0, scale = 0;
  for (double t : r.lattice)
    for (double y : {strip_a, 0.5 * (strip_a + strip_b), strip_b}) {
      cplx z(t, y);
      cplx fv = f(z);
      scale = std::max(scale, std::abs(fv));
      worst = std::max(worst, std::abs(fv - r.reconstruct(z)));
    }
  r.residual = worst / std::max(scale, 1e-300);
  r.singular_inner_flag = r.residual > 1e-4;
  return r;
}

}  // namespace sb
