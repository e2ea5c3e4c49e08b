#pragma once
#include "core.hpp"
#include <algorithm>
#include <functional>

namespace sb {

// Gauss-Kronrod 15-point panel on [-1,1]; embedded 7-point Gauss gives the
// error estimate. Adaptive bisection of the worst panel until tolerances hold.
namespace gk15 {
inline constexpr double xk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                 0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double wg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};
}  // namespace gk15

struct Panel {
  double t0, t1;     // parameter subinterval of [0,1]
  cplx value;
  double error;
};

// integral of f along the straight segment a -> b
template <class F>
cplx integrate_line(F&& f, cplx a, cplx b, const QuadratureSettings& settings = {},
                    double* err_out = nullptr) {
  settings.validate();
  cplx dir = b - a;
  auto eval_panel = [&](double t0, double t1) -> Panel {
    double c = 0.5 * (t0 + t1), h = 0.5 * (t1 - t0);
    cplx acc_k = 0, acc_g = 0;
    for (int i = 0; i < 15; ++i) {
      cplx z = a + (c + h * gk15::xk[i]) * dir;
      cplx fv = f(z);
      if (!finite(fv)) throw err("NonFinite", "integrand not finite on segment");
      acc_k += gk15::wk[i] * fv;
      if (i % 2 == 1) acc_g += gk15::wg[i / 2] * fv;
    }
    acc_k *= h;
    acc_g *= h;
    return {t0, t1, acc_k, std::abs(acc_k - acc_g)};
  };
  std::vector<Panel> panels{eval_panel(0.0, 1.0)};
  for (int pass = 0; pass < settings.max_refinements; ++pass) {
    cplx total = 0;
    double error = 0;
    for (auto& p : panels) {
      total += p.value;
      error += p.error;
    }
    double scaled_error = error * std::abs(dir);
    if (scaled_error <= std::max(settings.abs_tol, settings.rel_tol * std::abs(total * dir))) {
      if (err_out) *err_out = scaled_error;
      return total * dir;
    }
    // split every panel above its share of the budget
    std::vector<Panel> next;
    double budget = std::max(settings.abs_tol, settings.rel_tol * std::abs(total * dir)) /
                    std::abs(dir) / std::max<size_t>(panels.size(), 1);
    for (auto& p : panels) {
      if (p.error > budget) {
        double mid = 0.5 * (p.t0 + p.t1);
        next.push_back(eval_panel(p.t0, mid));
        next.push_back(eval_panel(mid, p.t1));
      } else {
        next.push_back(p);
      }
    }
    panels.swap(next);
    if (panels.size() > 100000) break;
  }
  throw err("NonConvergent", "refinement budget exhausted on segment");
}

template <class F>
cplx integrate_contour(F&& f, const Contour& contour, const QuadratureSettings& settings = {}) {
  cplx total = 0;
  for (auto& s : contour.segments) total += integrate_line(f, s.a, s.b, settings);
  return total;
}

}  // namespace sb
