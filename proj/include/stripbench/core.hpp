#pragma once
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>
#include <cmath>

namespace sb {

using cplx = std::complex<double>;
using std::size_t;

inline constexpr double PI = 3.141592653589793238462643383279502884;
inline const cplx I{0.0, 1.0};

// error taxonomy shared by all modules
struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

inline Error err(const std::string& kind, const std::string& msg) { return Error(kind, msg); }

struct ComplexRect {
  double re_min, re_max, im_min, im_max;
  ComplexRect(double a, double b, double c, double d)
      : re_min(a), re_max(b), im_min(c), im_max(d) {
    if (!(re_min < re_max && im_min < im_max))
      throw err("BadRect", "degenerate rectangle");
  }
  cplx corner(int k) const {  // counterclockwise from lower-left
    switch (k & 3) {
      case 0: return {re_min, im_min};
      case 1: return {re_max, im_min};
      case 2: return {re_max, im_max};
      default: return {re_min, im_max};
    }
  }
  bool contains(cplx z) const {
    return z.real() > re_min && z.real() < re_max && z.imag() > im_min && z.imag() < im_max;
  }
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
};

struct Segment {
  cplx a, b;
  int samples = 64;  // sampling hint for winding/contour walks
};

struct Contour {
  std::vector<Segment> segments;
  bool closed() const {
    if (segments.empty()) return false;
    for (auto& s : segments)
      if (s.samples < 16) return false;
    return std::abs(segments.front().a - segments.back().b) < 1e-14;
  }
  static Contour rectangle(const ComplexRect& r, int samples_per_side = 256) {
    Contour c;
    for (int k = 0; k < 4; ++k)
      c.segments.push_back({r.corner(k), r.corner(k + 1), samples_per_side});
    return c;
  }
  static Contour circle(cplx center, double radius, int n_segments = 8, int samples = 64) {
    Contour c;
    for (int k = 0; k < n_segments; ++k) {
      double t0 = 2 * PI * k / n_segments, t1 = 2 * PI * (k + 1) / n_segments;
      c.segments.push_back({center + radius * std::exp(I * t0),
                            center + radius * std::exp(I * t1), samples});
    }
    return c;
  }
};

struct QuadratureSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_refinements = 20;
  void validate() const {
    if (abs_tol <= 0 || rel_tol <= 0 || max_refinements < 1)
      throw err("BadSettings", "quadrature settings out of range");
  }
};

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace sb
