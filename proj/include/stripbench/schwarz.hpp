#pragma once
#include "core.hpp"
#include "parallel.hpp"
#include <functional>

namespace sb {

// zero-free analytic function on the strip A < Im z < B with prescribed
// boundary log-modulus, built as a Schwarz integral on the upper half plane
// after the map z -> exp(pi (z - iA)/(B - A)); the lower line lands on the
// positive real axis, the upper line on the negative one.
//
// On the boundary itself the principal-value form is used, whose real part
// reproduces the data exactly; only the phase comes from quadrature.
struct StripOuter {
  double A, B;
  std::function<double(double)> mu_lo, mu_up;  // log|f| on Im z = A resp. B
  double T = 25.0;       // quadrature window in the line parameter
  double h = 0.01;       // trapezoid step
  double g() const { return PI / (B - A); }

  // integrates w(t) * (K(e^{gt}) mu_lo(t) + K(-e^{gt}) mu_up(t)) dt with the
  // Cauchy kernel for the target point; callers pass the singular correction
  template <class K>
  cplx kernel_sum(K&& kernel) const {
    long n = std::lround(2 * T / h);
    cplx total = map_sum(n + 1, [&](long j) {
      double t = -T + j * h;
      double wgt = (j == 0 || j == n) ? 0.5 * h : h;
      return wgt * kernel(t);
    });
    return total;
  }

  cplx cauchy(double s, cplx z) const { return 1.0 / (s - z) - s / (1.0 + s * s); }

  // log f at a strictly interior point
  cplx log_interior(cplx zeta) const {
    double gg = g();
    cplx z = std::exp(gg * (zeta - I * A));
    cplx integral = kernel_sum([&](double t) {
      double s = std::exp(gg * t);
      return gg * s * (cauchy(s, z) * mu_lo(t) + cauchy(-s, z) * mu_up(t));
    });
    return integral / (PI * I);
  }

  // log f on the line Im z = A (lower boundary), principal value + half residue
  cplx log_lower(double th) const {
    double gg = g(), s0 = std::exp(gg * th), m0 = mu_lo(th);
    cplx integral = kernel_sum([&](double t) -> cplx {
      double s = std::exp(gg * t);
      cplx up = cauchy(-s, s0) * mu_up(t);
      cplx lo;
      if (std::abs(t - th) < 1e-9)
        lo = (mu_lo(th + 1e-5) - mu_lo(th - 1e-5)) / 2e-5 / (gg * s);
      else
        lo = cauchy(s, s0) * (mu_lo(t) - m0);
      return gg * s * (lo + up);
    });
    return (integral - m0 * gg * th) / (PI * I) + m0;
  }

  // log f on the line Im z = B (upper boundary)
  cplx log_upper(double th) const {
    double gg = g(), s0 = -std::exp(gg * th), m0 = mu_up(th);
    cplx integral = kernel_sum([&](double t) -> cplx {
      double s = std::exp(gg * t);
      cplx lo = cauchy(s, s0) * mu_lo(t);
      cplx up;
      if (std::abs(t - th) < 1e-9)
        // limit of the subtracted kernel; the map reverses orientation here
        up = -(mu_up(th + 1e-5) - mu_up(th - 1e-5)) / 2e-5 / (gg * s);
      else
        up = cauchy(-s, s0) * (mu_up(t) - m0);
      return gg * s * (lo + up);
    });
    return (integral + m0 * gg * th) / (PI * I) + m0;
  }

  // dispatch on the imaginary part; boundary lines get the exact-modulus form
  cplx log_eval(cplx zeta) const {
    if (!(zeta.imag() > A - 1e-9 && zeta.imag() < B + 1e-9))
      throw err("OutOfDomain", "point outside the closed strip");
    if (std::abs(zeta.imag() - A) < 1e-9) return log_lower(zeta.real());
    if (std::abs(zeta.imag() - B) < 1e-9) return log_upper(zeta.real());
    return log_interior(zeta);
  }

  cplx eval(cplx zeta) const { return std::exp(log_eval(zeta)); }
};

}  // namespace sb
