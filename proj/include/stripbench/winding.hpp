#pragma once
#include "core.hpp"
#include "quadrature.hpp"
#include <algorithm>

namespace sb {

namespace detail {

// accumulated phase change of f along segment a->b, step-halved until each
// consecutive phase step is < pi/2
template <class F>
double phase_change(F&& f, cplx a, cplx b, int min_samples, double boundary_threshold) {
  auto val = [&](double t) {
    cplx z = a + t * (b - a);
    cplx fv = f(z);
    if (!finite(fv)) throw err("NonFinite", "winding integrand not finite");
    if (!(std::abs(fv) > boundary_threshold))
      throw err("OnBoundary", "|f| vanishes on contour");
    return fv;
  };
  struct Node { double t; cplx v; };
  std::vector<Node> nodes;
  nodes.reserve(min_samples + 1);
  for (int i = 0; i <= min_samples; ++i) {
    double t = double(i) / min_samples;
    nodes.push_back({t, val(t)});
  }
  double total = 0;
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    // refine this step until the phase jump is unambiguous
    std::vector<Node> stack{nodes[i + 1]};
    Node cur = nodes[i];
    int budget = 60;
    while (!stack.empty()) {
      Node nxt = stack.back();
      double d = std::remainder(std::arg(nxt.v) - std::arg(cur.v), 2 * PI);
      if (std::abs(d) < PI / 2) {
        total += d;
        cur = nxt;
        stack.pop_back();
      } else {
        // a phase jump that survives halving to machine scale means a zero
        // sits on (or hugs) the contour and the winding is ill-defined there
        if (--budget < 0 || nxt.t - cur.t < 1e-15)
          throw err("OnBoundary", "phase jump unresolvable: zero pinned to contour");
        double tm = 0.5 * (cur.t + nxt.t);
        stack.push_back({tm, val(tm)});
      }
    }
  }
  return total;
}

}  // namespace detail

template <class F>
int winding_number(F&& f, const Contour& contour, double boundary_threshold = 1e-300) {
  if (!contour.closed()) throw err("BadContour", "winding needs a closed contour");
  double total = 0;
  for (auto& s : contour.segments)
    total += detail::phase_change(f, s.a, s.b, std::max(16, s.samples), boundary_threshold);
  double w = total / (2 * PI);
  long n = std::lround(w);
  if (std::abs(w - double(n)) > 0.25)
    throw err("NonConvergent", "winding did not land near an integer");
  return int(n);
}

template <class F>
int winding_number(F&& f, const ComplexRect& rect, double boundary_threshold = 1e-300) {
  return winding_number(f, Contour::rectangle(rect), boundary_threshold);
}

namespace detail {

template <class F>
cplx fd_derivative(F&& f, cplx z) {
  double h = 1e-6 * (1.0 + std::abs(z));
  return (f(z + h) - f(z - h)) / (2 * h);
}

// Newton polish with multiplicity-aware step; central finite differences
template <class F>
cplx newton_polish(F&& f, cplx z0, int multiplicity) {
  cplx z = z0;
  for (int it = 0; it < 60; ++it) {
    cplx fv = f(z);
    if (std::abs(fv) < 1e-14) break;
    cplx dv = fd_derivative(f, z);
    if (std::abs(dv) == 0) break;
    cplx step = double(multiplicity) * fv / dv;
    z -= step;
    if (std::abs(step) < 1e-13 * (1.0 + std::abs(z))) break;
  }
  return z;
}

template <class F>
void zeros_in_rect(F&& f, const ComplexRect& rect, int max_count,
                   std::vector<cplx>& found, int depth, int w_known) {
  int w = w_known;
  if (w < 0) {
    try {
      w = winding_number(f, rect);
    } catch (const Error& e) {
      if (e.kind == "OnBoundary")
        throw err("BoundaryZero", std::string("zero on search rectangle boundary: ") + e.what());
      throw;
    }
  }
  if (w == 0) return;
  if (w < 0) throw err("BadZero", "negative winding: pole inside zero-search rectangle");
  if (int(found.size()) + w > max_count) throw err("TooManyZeros", "zero count exceeds max_count");

  const double tiny = 1e-6;
  bool cell_tiny = rect.width() < tiny && rect.height() < tiny;
  bool cell_small = rect.width() + rect.height() < 1e-2;
  if (w == 1 || cell_tiny || cell_small) {
    cplx z = newton_polish(f, {0.5 * (rect.re_min + rect.re_max),
                               0.5 * (rect.im_min + rect.im_max)}, w);
    bool in_cell = z.real() > rect.re_min - tiny && z.real() < rect.re_max + tiny &&
                   z.imag() > rect.im_min - tiny && z.imag() < rect.im_max + tiny;
    bool coincide = true;
    if (w > 1 && !cell_tiny) {
      // a multiple zero pulls every start to the same point; a cluster of
      // distinct zeros does not, and then we keep subdividing instead
      for (double sx : {0.25, 0.75})
        for (double sy : {0.25, 0.75}) {
          cplx zk = newton_polish(f, {rect.re_min + sx * rect.width(),
                                      rect.im_min + sy * rect.height()}, w);
          if (std::abs(zk - z) > 1e-6) coincide = false;
        }
    }
    // confirm there is a genuine zero at the polished point by the argument
    // principle on a small box: immune to the scale of |f|, which can be
    // exponentially small far away from any zero.  The box winding may exceed
    // the cell's count when the zero sits on a shared cell edge and each
    // sibling carries part of the phase; the split-sum invariant keeps the
    // total multiplicity right, so >= 1 is the correct acceptance test.
    bool confirmed = false;
    if ((in_cell || cell_tiny) && coincide) {
      double rr = 1e-5 * (1.0 + std::abs(z));
      try {
        confirmed = winding_number(f, ComplexRect(z.real() - rr, z.real() + rr,
                                                  z.imag() - rr, z.imag() + rr)) >= 1;
      } catch (const Error&) {
        confirmed = false;
      }
    }
    if (confirmed) {
      for (int k = 0; k < w; ++k) found.push_back(z);
      return;
    }
    if (cell_tiny)
      throw err("NonConvergent", "polished point fails the winding confirmation");
    // polish escaped or stalled: isolate further
  }
  if (depth > 80) throw err("NonConvergent", "quadrisection depth exhausted");
  // try split ratios until the child cells see every zero exactly once;
  // a zero sitting on a candidate line shows up as OnBoundary or a bad sum
  const double ratios[] = {0.5, 0.5309, 0.4617, 0.5871, 0.4129, 0.55};
  for (double r : ratios) {
    double xm = rect.re_min + r * rect.width(), ym = rect.im_min + r * rect.height();
    ComplexRect cell[4] = {ComplexRect(rect.re_min, xm, rect.im_min, ym),
                           ComplexRect(xm, rect.re_max, rect.im_min, ym),
                           ComplexRect(rect.re_min, xm, ym, rect.im_max),
                           ComplexRect(xm, rect.re_max, ym, rect.im_max)};
    int cw[4], sum = 0;
    bool good = true;
    for (int k = 0; k < 4 && good; ++k) {
      try {
        cw[k] = winding_number(f, cell[k]);
        sum += cw[k];
      } catch (const Error& e) {
        if (e.kind != "OnBoundary") throw;
        good = false;
      }
    }
    if (!good || sum != w) continue;
    for (int k = 0; k < 4; ++k)
      zeros_in_rect(f, cell[k], max_count, found, depth + 1, cw[k]);
    return;
  }
  throw err("NonConvergent", "no admissible subdivision line found");
}

}  // namespace detail

// zeros (with multiplicity, repeated) of f inside rect, sorted by re then im
template <class F>
std::vector<cplx> locate_zeros(F&& f, const ComplexRect& rect, int max_count = 64) {
  std::vector<cplx> found;
  detail::zeros_in_rect(f, rect, max_count, found, 0, -1);
  // quantized key keeps the ordering strict when real parts agree up to noise
  auto key = [](cplx z) { return std::pair(std::llround(z.real() * 1e9), z.imag()); };
  std::sort(found.begin(), found.end(), [&](cplx a, cplx b) { return key(a) < key(b); });
  return found;
}

// residue via circle contour, cross-validated by an 8-direction limit
template <class F>
cplx residue_at(F&& f, cplx pole, double radius = 1e-2,
                const QuadratureSettings& settings = {}) {
  auto integrand = [&](cplx t) {
    cplx z = pole + radius * std::exp(I * t);
    return f(z) * I * radius * std::exp(I * t);
  };
  cplx by_contour = integrate_line(integrand, cplx(0), cplx(2 * PI), settings) / (2 * PI * I);
  cplx by_limit = 0;
  double delta = 0.5 * radius, probe_mag = 0;
  for (int k = 0; k < 8; ++k) {
    cplx z = pole + delta * std::exp(I * (PI * k / 4));
    cplx v = (z - pole) * f(z);
    probe_mag = std::max(probe_mag, std::abs(v));
    by_limit += v;
  }
  by_limit /= 8.0;
  // the probe-magnitude term absorbs cancellation noise when the residue
  // itself vanishes (higher-order pole)
  double allow = 10 * settings.rel_tol * std::max(std::abs(by_contour), std::abs(by_limit)) +
                 1e-11 * probe_mag + 1e-30;
  if (std::abs(by_contour - by_limit) > allow)
    throw err("Inconsistent", "contour and limit residue estimates disagree");
  return by_contour;
}

}  // namespace sb
