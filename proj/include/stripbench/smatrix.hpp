#pragma once
#include "core.hpp"
#include "grid.hpp"
#include "winding.hpp"
#include "parallel.hpp"
#include <optional>

namespace sb {

struct BlaschkeFactor {
  cplx zero;   // in the closed physical strip
  cplx phase;  // unimodular
};

// two-particle amplitude: sinh-quotient base * epsilon family * Blaschke part
struct ScatteringFunction {
  double epsilon = 0.0;
  std::vector<BlaschkeFactor> blaschke;
  double mass = 1.0;

  static cplx sh(cplx z) { return std::sinh(0.5 * z); }

  cplx base(cplx z) const {
    return -sh(z + PI * I / 3.0) * sh(z + 2.0 * PI * I / 3.0) /
           (sh(z - PI * I / 3.0) * sh(z - 2.0 * PI * I / 3.0));
  }
  cplx eps_part(cplx z) const {
    const double e = epsilon;
    cplx num = sh(z - PI * I / 6.0 - I * e) * sh(z - PI * I / 2.0 + I * e) *
               sh(z - PI * I / 2.0 - I * e) * sh(z - 5.0 * PI * I / 6.0 + I * e);
    cplx den = sh(z + PI * I / 6.0 + I * e) * sh(z + PI * I / 2.0 - I * e) *
               sh(z + PI * I / 2.0 + I * e) * sh(z + 5.0 * PI * I / 6.0 - I * e);
    return num / den;
  }
  cplx blaschke_part(cplx z) const {
    cplx p = 1;
    for (auto& f : blaschke)
      p *= f.phase * (std::exp(z) - std::exp(f.zero)) /
           (std::exp(z) - std::exp(std::conj(f.zero)));
    return p;
  }

  cplx eval(cplx z) const {
    if (std::abs(z - PI * I / 3.0) < 1e-12 || std::abs(z - 2.0 * PI * I / 3.0) < 1e-12)
      throw err("AtPole", "evaluation at a physical-strip pole");
    cplx v = base(z) * eps_part(z) * blaschke_part(z);
    if (!finite(v)) throw err("AtPole", "evaluation at a pole of a factor");
    return v;
  }
  cplx operator()(cplx z) const { return eval(z); }

  // S with the two physical-strip poles cleared: analytic in the open strip,
  // same zeros as S there
  cplx reg(cplx z) const {
    return -sh(z + PI * I / 3.0) * sh(z + 2.0 * PI * I / 3.0) * eps_part(z) *
           blaschke_part(z);
  }
};

inline ScatteringFunction make_scattering(double epsilon,
                                          std::vector<BlaschkeFactor> blaschke = {},
                                          double mass = 1.0) {
  if (!(epsilon > -PI / 6 && epsilon < PI / 6))
    throw err("OutOfRange", "epsilon must lie in (-pi/6, pi/6)");
  for (auto& f : blaschke) {
    if (!(f.zero.imag() >= 0.0 && f.zero.imag() <= PI))
      throw err("BadZero", "Blaschke zero outside the closed physical strip");
    if (std::abs(std::abs(f.phase) - 1.0) > 1e-12)
      throw err("BadZero", "Blaschke phase must be unimodular");
  }
  ScatteringFunction s;
  s.epsilon = epsilon;
  s.blaschke = std::move(blaschke);
  s.mass = mass;
  return s;
}

inline cplx eval_S(const ScatteringFunction& S, cplx z) { return S.eval(z); }

inline cplx residue_R(const ScatteringFunction& S, const QuadratureSettings& qs = {}) {
  return residue_at([&](cplx z) { return S.eval(z); }, 2.0 * PI * I / 3.0, 1e-2, qs);
}

inline std::vector<cplx> strip_zeros(const ScatteringFunction& S, int max_count = 64) {
  ComplexRect strip(-8.0, 8.0, 1e-4, PI - 1e-4);
  return locate_zeros([&](cplx z) { return S.reg(z); }, strip, max_count);
}

inline double kappa_of(const ScatteringFunction& S) {
  auto zeros = strip_zeros(S);
  if (zeros.empty()) throw err("BadZero", "no zeros found in the physical strip");
  double kappa = PI;
  for (auto z : zeros) kappa = std::min(kappa, z.imag());
  if (!(kappa < PI / 3))
    throw err("Inconsistent", "kappa must be below pi/3");
  return kappa;
}

struct AxiomEntry {
  std::string name;
  double residual = 0.0;
  cplx argmax = 0.0;
  bool pass = false;
  long samples = 0;
  std::string note;
};

struct AxiomReport {
  std::vector<AxiomEntry> entries;
  bool all_pass() const {
    for (auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
  const AxiomEntry& operator[](const std::string& name) const {
    for (auto& e : entries)
      if (e.name == name) return e;
    throw err("BadName", "no axiom entry " + name);
  }
};

namespace detail {

struct MaxTrack {
  double value = -1e300;
  cplx at = 0.0;
  long n = 0;
  void feed(double v, cplx z) {
    ++n;
    if (v > value) { value = v; at = z; }
  }
};

inline std::vector<cplx> pole_candidates(const ScatteringFunction& S) {
  // coarse scan of 1/|S| minima inside the strip, then Newton polish on 1/S
  std::vector<cplx> cands;
  int nx = 200, ny = 120;
  std::vector<std::vector<double>> inv(ny, std::vector<double>(nx, 1e300));
  for (int jy = 0; jy < ny; ++jy)
    for (int jx = 0; jx < nx; ++jx) {
      cplx z(-6.0 + 12.0 * (jx + 0.5) / nx, PI * (jy + 0.5) / ny);
      try {
        inv[jy][jx] = 1.0 / std::abs(S.eval(z));
      } catch (const Error&) {
        inv[jy][jx] = 0.0;  // on a pole
      }
    }
  // interior grid-local minima of 1/|S| can only sit near poles (maximum
  // modulus principle); Newton polish plus a residual check filters artifacts
  for (int jy = 1; jy + 1 < ny; ++jy)
    for (int jx = 1; jx + 1 < nx; ++jx) {
      bool local_min = true;
      for (int dy = -1; dy <= 1 && local_min; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (inv[jy + dy][jx + dx] < inv[jy][jx]) { local_min = false; break; }
      if (!local_min) continue;
      cplx z0(-6.0 + 12.0 * (jx + 0.5) / nx, PI * (jy + 0.5) / ny);
      auto recip = [&](cplx z) {
        return 1.0 / S.base(z) / S.eps_part(z) / S.blaschke_part(z);
      };
      cplx z = newton_polish(recip, z0, 1);
      if (std::abs(z - z0) > 0.3 || std::abs(recip(z)) > 1e-10) continue;
      bool dup = false;
      for (auto c : cands)
        if (std::abs(c - z) < 0.05) dup = true;
      if (!dup && z.imag() > 1e-6 && z.imag() < PI - 1e-6) cands.push_back(z);
    }
  std::sort(cands.begin(), cands.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
  return cands;
}

}  // namespace detail

inline AxiomReport check_axioms(const ScatteringFunction& S, const RapidityGrid& grid,
                                double tol = 1e-8) {
  if (!(tol > 0)) throw err("BadSettings", "tolerance must be positive");
  AxiomReport rep;
  const double theta_lo = -10.0, theta_hi = 10.0;
  const int n_re = 256, n_im = 64;
  (void)grid;
  auto real_node = [&](int j) { return theta_lo + (theta_hi - theta_lo) * (j + 0.5) / n_re; };
  auto strip_node = [&](int jx, int jy) {
    return cplx(real_node(jx), PI * (jy + 0.5) / n_im);
  };
  const cplx pole1 = PI * I / 3.0, pole2 = 2.0 * PI * I / 3.0;
  auto near_any = [&](cplx z, std::initializer_list<cplx> pts, double r) {
    for (auto p : pts)
      if (std::abs(z - p) < r) return true;
    return false;
  };

  {  // S1 unitarity, S2 hermitian analyticity on the real line
    detail::MaxTrack m1, m2;
    for (int j = 0; j < n_re; ++j) {
      double t = real_node(j);
      cplx v = S.eval(t);
      m1.feed(std::abs(std::abs(v) - 1.0), t);
      m2.feed(std::abs(S.eval(-t) * v - 1.0), t);
    }
    rep.entries.push_back({"S1", m1.value, m1.at, m1.value <= tol, m1.n, "max ||S|-1| on R"});
    rep.entries.push_back({"S2", m2.value, m2.at, m2.value <= tol, m2.n, "max |S(-t)S(t)-1|"});
  }
  {  // S3 crossing on the in-strip lattice
    detail::MaxTrack m;
    for (int jy = 0; jy < n_im; ++jy)
      for (int jx = 0; jx < n_re; ++jx) {
        cplx z = strip_node(jx, jy);
        if (near_any(z, {pole1, pole2}, 1e-3)) continue;
        m.feed(std::abs(S.eval(z) - S.eval(PI * I - z)), z);
      }
    rep.entries.push_back({"S3", m.value, m.at, m.value <= tol, m.n, "crossing |S(z)-S(pi i-z)|"});
  }
  {  // S4 bootstrap, avoiding every pole disk the three evaluations can hit
    detail::MaxTrack m;
    for (int jy = 0; jy < n_im; ++jy)
      for (int jx = 0; jx < n_re; ++jx) {
        cplx z = strip_node(jx, jy);
        if (near_any(z, {cplx(0), pole1, pole2, PI * I}, 1e-3)) continue;
        try {
          m.feed(std::abs(S.eval(z) - S.eval(z + PI * I / 3.0) * S.eval(z - PI * I / 3.0)), z);
        } catch (const Error&) { continue; }
      }
    rep.entries.push_back({"S4", m.value, m.at, m.value <= tol, m.n, "bootstrap residual"});
  }
  {  // S5 pole census and residue sign
    AxiomEntry e{"S5", 0.0, 0.0, false, 0, ""};
    try {
      auto zeros = strip_zeros(S);
      int w = winding_number([&](cplx z) { return S.eval(z); },
                             ComplexRect(-5.0, 5.0, 0.05, PI - 0.05));
      int n_poles = int(zeros.size()) - w;
      auto poles = detail::pole_candidates(S);
      double loc_err = 1e300;
      if (poles.size() == 2)
        loc_err = std::max(std::abs(poles[0] - pole1), std::abs(poles[1] - pole2));
      cplx R = residue_R(S);
      bool sign_ok = std::abs(R.real()) / std::abs(R) <= tol && R.imag() > 0;
      e.pass = (n_poles == 2) && poles.size() == 2 && loc_err < 1e-9 && sign_ok;
      e.residual = e.pass ? loc_err : 1.0;
      e.argmax = poles.size() == 2 ? poles[1] : cplx(0);
      e.samples = long(zeros.size());
      e.note = "poles=" + std::to_string(n_poles) + " R=(" + std::to_string(R.real()) +
               "," + std::to_string(R.imag()) + ")";
    } catch (const Error& ex) {
      e.note = ex.what();
    }
    rep.entries.push_back(e);
  }
  {  // S6 value at zero
    double r = std::abs(S.eval(0.0) + 1.0);
    rep.entries.push_back({"S6", r, 0.0, r <= tol, 1, "|S(0)+1|"});
  }
  {  // S7 real-part bound on the line Im = 2pi/3
    detail::MaxTrack m;  // tracks -Re S, so max = -min Re
    for (int j = 0; j < n_re; ++j) {
      double t = real_node(j);
      if (std::abs(t) < 1e-3) continue;
      m.feed(-S.eval(t + 2.0 * PI * I / 3.0).real(), t);
    }
    double clamped = std::max(0.0, m.value);
    rep.entries.push_back({"S7", clamped, m.at, clamped <= tol, m.n,
                           "min Re S(t+2pi i/3) = " + std::to_string(-m.value)});
  }
  {  // S8 modulus bound on the line Im = pi/6
    detail::MaxTrack m;
    for (int j = 0; j < n_re; ++j) {
      double t = real_node(j);
      m.feed(std::abs(S.eval(t + PI * I / 6.0)) - 1.0, t);
    }
    double clamped = std::max(0.0, m.value);
    rep.entries.push_back({"S8", clamped, m.at, clamped <= tol, m.n,
                           "max |S(t+pi i/6)|-1 = " + std::to_string(m.value)});
  }
  {  // S9 finitely many zeros, finite band sup
    AxiomEntry e{"S9", 0.0, 0.0, false, 0, ""};
    try {
      auto zeros = strip_zeros(S);
      double kappa = kappa_of(S);
      detail::MaxTrack m;
      for (int jy = 0; jy < 33; ++jy)
        for (int jx = 0; jx < n_re; ++jx) {
          cplx z(real_node(jx), 0.98 * kappa * (2.0 * (jy + 0.5) / 33 - 1.0));
          m.feed(std::abs(S.eval(z)), z);
        }
      e.pass = std::isfinite(m.value) && !zeros.empty();
      e.samples = long(zeros.size());
      e.argmax = m.at;
      e.note = "zeros=" + std::to_string(zeros.size()) + " kappa=" + std::to_string(kappa) +
               " band_sup=" + std::to_string(m.value);
    } catch (const Error& ex) {
      e.note = ex.what();
    }
    rep.entries.push_back(e);
  }
  return rep;
}

struct InequalityK {
  bool pass;
  double min_value;
  double argmin;
};

// min over the grid of Re[S(t + pi i/6) S(-t)]  (Konrady-input inequality)
inline InequalityK check_inequality_K(const ScatteringFunction& S, const RapidityGrid& grid,
                                      double tol = 1e-8) {
  double mn = 1e300, at = 0.0;
  for (double t : grid.nodes) {
    double v = (S.eval(t + PI * I / 6.0) * S.eval(-t)).real();
    if (v < mn) { mn = v; at = t; }
  }
  return {mn >= -tol, mn, at};
}

}  // namespace sb
