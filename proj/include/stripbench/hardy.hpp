#pragma once
#include "core.hpp"
#include "fft.hpp"
#include "grid.hpp"

namespace sb {

// boundary values on the real line of a function analytic in Im z in (a,b);
// coeffs are the grid Fourier coefficients, indexed m + n/2
struct HardyElement {
  RapidityGrid grid;
  std::vector<cplx> coeffs;
  double a = 0.0, b = 0.0;  // claimed strip, a <= 0 <= b

  std::vector<cplx> samples() const { return spectral_synthesis(grid, coeffs); }
  cplx eval(cplx z) const { return spectral_eval(grid, coeffs, z); }
};

namespace detail {

// zero out coefficients below the relative noise floor so that exponential
// multipliers do not amplify rounding junk into fake blow-up
inline std::vector<cplx> floored(const std::vector<cplx>& c) {
  double peak = 0;
  for (auto v : c) peak = std::max(peak, std::abs(v));
  std::vector<cplx> out(c.size(), 0.0);
  for (size_t j = 0; j < c.size(); ++j)
    if (std::abs(c[j]) > 1e-14 * peak) out[j] = c[j];
  return out;
}

inline double norm2(const std::vector<cplx>& c) {
  double s = 0;
  for (auto v : c) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace detail

// membership ratio for continuation to Im z = -t: the multiplier is e^{kt}
inline double membership_ratio(const RapidityGrid& grid, const std::vector<cplx>& coeffs,
                               double t) {
  auto c = detail::floored(coeffs);
  double base = detail::norm2(c);
  if (base == 0) return 0.0;
  double s = 0;
  for (int m = -grid.n_points / 2; m < grid.n_points / 2; ++m) {
    double w = std::norm(c[m + grid.n_points / 2]);
    // skip dead modes: for large shifts the weight alone can overflow
    if (w > 0) s += w * std::exp(2.0 * grid.k(m) * t);
  }
  return std::sqrt(s) / base;
}

inline HardyElement make_hardy(const RapidityGrid& grid, const std::vector<cplx>& samples,
                               double a, double b) {
  if (!(a <= 0.0 && 0.0 <= b)) throw err("BadStrip", "strip must contain the real line");
  HardyElement el{grid, spectral_coeffs(grid, samples), a, b};
  for (double t : {-b, -a})
    if (membership_ratio(grid, el.coeffs, t) >= 1e12)
      throw err("OutOfDomain", "coefficients fail the strip membership guard");
  return el;
}

// (delta_power(Psi, t))(theta) = Psi(theta - i t): Fourier multiplier e^{k t}
inline HardyElement delta_power(const HardyElement& el, double t) {
  if (t < -el.b - 1e-12 || t > -el.a + 1e-12)
    throw err("OutOfDomain", "shift exceeds the element's strip reach");
  if (membership_ratio(el.grid, el.coeffs, t) >= 1e12)
    throw err("OutOfDomain", "shifted coefficients fail the membership guard");
  HardyElement out{el.grid, detail::floored(el.coeffs), el.a + t, el.b + t};
  for (int m = -el.grid.n_points / 2; m < el.grid.n_points / 2; ++m) {
    cplx& y = out.coeffs[m + el.grid.n_points / 2];
    // skip dead modes: for large shifts the multiplier alone can overflow
    if (y != 0.0) y *= std::exp(el.grid.k(m) * t);
  }
  return out;
}

// |<Phi, D Psi> - <D Phi, Psi>| with D the shift by -i t, both sides computed
// by real-line quadrature of the continued functions (not by the multiplier
// identity on coefficients, which would make the check circular)
template <class F, class G>
double cauchy_shift_residual(const RapidityGrid& grid, F&& phi, G&& psi, double t) {
  cplx lhs = 0, rhs = 0;
  for (double th : grid.nodes) {
    lhs += std::conj(phi(cplx(th))) * psi(cplx(th, -t)) * grid.h;
    rhs += std::conj(phi(cplx(th, -t))) * psi(cplx(th)) * grid.h;
  }
  return std::abs(lhs - rhs);
}

inline double cauchy_shift_residual(const HardyElement& phi, const HardyElement& psi,
                                    double t) {
  for (auto* el : {&phi, &psi})
    if (membership_ratio(el->grid, el->coeffs, t) >= 1e12 ||
        membership_ratio(el->grid, el->coeffs, -t) >= 1e12)
      throw err("OutOfDomain", "element not in the domain of the shift");
  return cauchy_shift_residual(phi.grid, [&](cplx z) { return phi.eval(z); },
                               [&](cplx z) { return psi.eval(z); }, t);
}

// elementary Blaschke factor on the strip a < Im z < b with zero w: transport
// to the standard strip via lambda(z) = pi (z - i a)/(b - a), then use the
// exponential form, unimodular on both boundary lines
inline cplx blaschke_point(const std::vector<cplx>& zeros, const std::vector<cplx>& phases,
                           double a, double b, cplx z) {
  if (!(b > a)) throw err("BadStrip", "empty strip");
  if (!phases.empty() && phases.size() != zeros.size())
    throw err("BadSettings", "phase list length mismatch");
  auto lam = [&](cplx u) { return PI * (u - I * a) / (b - a); };
  cplx prod = 1.0;
  for (size_t j = 0; j < zeros.size(); ++j) {
    cplx w = zeros[j];
    if (!(w.imag() > a && w.imag() < b)) throw err("BadZero", "zero outside the open strip");
    cplx eu = std::exp(lam(z)), ew = std::exp(lam(w)), ewc = std::exp(std::conj(lam(w)));
    if (std::abs(eu - ewc) < 1e-12 * (std::abs(eu) + std::abs(ewc)))
      throw err("AtZeroConjugatePole", "evaluation at the reflected pole of a factor");
    prod *= (eu - ew) / (eu - ewc);
    if (!phases.empty()) prod *= phases[j];
  }
  return prod;
}

}  // namespace sb
