#pragma once
#include "core.hpp"
#include "grid.hpp"
#include "parallel.hpp"
#include "smatrix.hpp"
#include <array>
#include <numeric>

namespace sb {

// rank-n tensor over grid nodes; the S-symmetric sector is carved out by
// project_Pn, and the flag records that the pointwise exchange identity holds
struct WaveFunction {
  const RapidityGrid* grid = nullptr;
  int n = 0;
  std::vector<cplx> amp;  // size N^n, row-major, first index slowest
  bool s_symmetric = false;

  static WaveFunction vacuum(const RapidityGrid& g) {
    WaveFunction w;
    w.grid = &g;
    w.n = 0;
    w.amp = {cplx(1.0)};
    w.s_symmetric = true;
    return w;
  }
  static WaveFunction zero(const RapidityGrid& g, int n) {
    WaveFunction w;
    w.grid = &g;
    w.n = n;
    size_t sz = 1;
    for (int j = 0; j < n; ++j) sz *= g.n_points;
    w.amp.assign(sz, cplx(0.0));
    return w;
  }
  template <class F>
  static WaveFunction sample1(const RapidityGrid& g, F&& f) {
    WaveFunction w = zero(g, 1);
    for (int j = 0; j < g.n_points; ++j) w.amp[j] = f(g.nodes[j]);
    w.s_symmetric = true;
    return w;
  }
};

inline void check_rank(int n) {
  if (n < 0 || n > 3) throw err("ParticleCap", "particle number outside 0..3");
}

inline cplx fock_inner(const WaveFunction& a, const WaveFunction& b) {
  if (a.n != b.n || a.amp.size() != b.amp.size())
    throw err("BadSettings", "inner product of mismatched sectors");
  cplx s = 0;
  for (size_t j = 0; j < a.amp.size(); ++j) s += std::conj(a.amp[j]) * b.amp[j];
  double w = 1.0;
  for (int j = 0; j < a.n; ++j) w *= a.grid->h;
  return s * w;
}

inline double fock_norm(const WaveFunction& a) {
  return std::sqrt(std::abs(fock_inner(a, a).real()));
}

namespace detail {

// table of S(theta_b - theta_a) over the grid, shared by the D_n machinery
inline std::vector<cplx> s_table(const ScatteringFunction& S, const RapidityGrid& g) {
  int N = g.n_points;
  std::vector<cplx> t(size_t(N) * N);
  parallel_for(N, [&](int a) {
    for (int b = 0; b < N; ++b) t[size_t(a) * N + b] = S.eval(cplx(g.nodes[b] - g.nodes[a]));
  });
  return t;
}

// adjacent transposition tau_k (0-based, swaps slots k and k+1):
// (D_n(tau_k) Psi)(.., th_k, th_{k+1}, ..) = S(th_{k+1} - th_k) Psi(.., th_{k+1}, th_k, ..)
inline WaveFunction apply_tau(const std::vector<cplx>& st, const WaveFunction& psi, int k) {
  int n = psi.n, N = psi.grid->n_points;
  if (k < 0 || k + 1 >= n) throw err("BadPermutation", "transposition index out of range");
  WaveFunction out = WaveFunction::zero(*psi.grid, n);
  // strides: index = sum idx[j] * N^{n-1-j}
  size_t stride_k = 1;
  for (int j = k + 2; j < n; ++j) stride_k *= N;  // stride of slot k+1
  size_t sk1 = stride_k, sk = stride_k * N;
  size_t total = psi.amp.size();
  parallel_for(long(total / (sk * N)), [&](long blk) {
    size_t base = size_t(blk) * sk * N;
    for (int ia = 0; ia < N; ++ia)
      for (int ib = 0; ib < N; ++ib) {
        // remaining (faster) indices form contiguous runs of length sk1
        size_t src = base + size_t(ib) * sk + size_t(ia) * sk1;
        size_t dst = base + size_t(ia) * sk + size_t(ib) * sk1;
        cplx w = st[size_t(ia) * N + ib];  // S(th_b - th_a) with a = slot k index
        for (size_t r = 0; r < sk1; ++r) out.amp[dst + r] = w * psi.amp[src + r];
      }
  });
  out.s_symmetric = false;
  return out;
}

// decompose sigma (image form, 0-based) into adjacent transpositions acting
// left to right; D_n(sigma) = product of D_n(tau) over the word
inline std::vector<int> adjacent_word(std::vector<int> sigma) {
  int n = int(sigma.size());
  std::vector<int> seen(n, 0);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v]) throw err("BadPermutation", "not a permutation");
    seen[v] = 1;
  }
  std::vector<int> word;
  // bubble sort sigma to identity, recording swaps
  for (bool moved = true; moved;) {
    moved = false;
    for (int j = 0; j + 1 < n; ++j)
      if (sigma[j] > sigma[j + 1]) {
        std::swap(sigma[j], sigma[j + 1]);
        word.push_back(j);
        moved = true;
      }
  }
  return word;
}

}  // namespace detail

// D_n(sigma) via a reduced adjacent-transposition word; unitary by (S1)
inline WaveFunction apply_Dn(const ScatteringFunction& S, const WaveFunction& psi,
                             const std::vector<int>& sigma) {
  check_rank(psi.n);
  if (int(sigma.size()) != psi.n) throw err("BadPermutation", "length mismatch");
  auto word = detail::adjacent_word(sigma);
  if (word.empty()) return psi;
  auto st = detail::s_table(S, *psi.grid);
  WaveFunction out = psi;
  // sorting sigma to identity right-multiplies by tau_j; apply in reverse so
  // the operator product matches D(sigma) = D(tau_{w1}) ... D(tau_{wm})
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    out = detail::apply_tau(st, out, *it);
  return out;
}

// orthogonal projection onto the S-symmetric subspace: (1/n!) sum_sigma D_n(sigma)
inline WaveFunction project_Pn(const ScatteringFunction& S, const WaveFunction& psi) {
  check_rank(psi.n);
  int n = psi.n;
  if (n <= 1) {
    WaveFunction out = psi;
    out.s_symmetric = true;
    return out;
  }
  auto st = detail::s_table(S, *psi.grid);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  WaveFunction acc = WaveFunction::zero(*psi.grid, n);
  int count = 0;
  do {
    auto word = detail::adjacent_word(sigma);
    WaveFunction term = psi;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      term = detail::apply_tau(st, term, *it);
    for (size_t j = 0; j < acc.amp.size(); ++j) acc.amp[j] += term.amp[j];
    ++count;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  for (auto& v : acc.amp) v /= double(count);
  acc.s_symmetric = true;
  return acc;
}

// unsymmetrized creation: (a^dag(psi) Psi)_n = sqrt(n) psi(th_1) Psi_{n-1}(th_2..)
inline WaveFunction create_raw(const WaveFunction& one, const WaveFunction& psi) {
  int n = psi.n + 1;
  check_rank(n);
  int N = psi.grid->n_points;
  WaveFunction out = WaveFunction::zero(*psi.grid, n);
  size_t tail = psi.amp.size();
  double root = std::sqrt(double(n));
  parallel_for(N, [&](int j) {
    for (size_t r = 0; r < tail; ++r) out.amp[size_t(j) * tail + r] = root * one.amp[j] * psi.amp[r];
  });
  return out;
}

// unsymmetrized annihilation: adjoint of create_raw on the grid inner product
inline WaveFunction annihilate_raw(const WaveFunction& one, const WaveFunction& psi) {
  if (psi.n == 0) return WaveFunction::zero(*psi.grid, 0);
  int n = psi.n;
  int N = psi.grid->n_points;
  WaveFunction out = WaveFunction::zero(*psi.grid, n - 1);
  size_t tail = out.amp.size();
  double root = std::sqrt(double(n)) * psi.grid->h;
  for (int j = 0; j < N; ++j) {
    cplx w = root * std::conj(one.amp[j]);
    for (size_t r = 0; r < tail; ++r) out.amp[r] += w * psi.amp[size_t(j) * tail + r];
  }
  return out;
}

// symmetrized creation/annihilation z^dag = P a^dag P, z = P a P
inline WaveFunction create(const ScatteringFunction& S, const WaveFunction& one,
                           const WaveFunction& psi) {
  auto sym = psi.s_symmetric ? psi : project_Pn(S, psi);
  return project_Pn(S, create_raw(one, sym));
}

inline WaveFunction annihilate(const ScatteringFunction& S, const WaveFunction& one,
                               const WaveFunction& psi) {
  auto sym = psi.s_symmetric ? psi : project_Pn(S, psi);
  return project_Pn(S, annihilate_raw(one, sym));
}

// CPT: (J_n Psi)(th_1..th_n) = conj Psi(th_n..th_1)
inline WaveFunction cpt_J(const WaveFunction& psi) {
  int n = psi.n, N = psi.grid ? psi.grid->n_points : 0;
  WaveFunction out = psi;
  if (n <= 1) {
    for (auto& v : out.amp) v = std::conj(v);
    return out;
  }
  std::array<size_t, 3> stride{};
  size_t s = 1;
  for (int j = n - 1; j >= 0; --j) { stride[j] = s; s *= N; }
  for (size_t idx = 0; idx < psi.amp.size(); ++idx) {
    size_t rem = idx, rev = 0;
    for (int j = 0; j < n; ++j) {
      size_t ij = rem / stride[j];
      rem %= stride[j];
      rev += ij * stride[n - 1 - j];
    }
    out.amp[rev] = std::conj(psi.amp[idx]);
  }
  return out;
}

struct PoincareElement {
  double a0 = 0.0, a1 = 0.0;  // translation
  double lambda = 0.0;        // boost
};

namespace detail {
// cubic (Catmull-Rom) interpolation of grid samples, zero outside the window
inline cplx interp_cubic(const RapidityGrid& g, const std::vector<cplx>& v, double x) {
  double u = (x - g.nodes[0]) / g.h;
  long j = long(std::floor(u));
  double f = u - j;
  auto at = [&](long k) -> cplx {
    return (k >= 0 && k < long(v.size())) ? v[k] : cplx(0.0);
  };
  cplx p0 = at(j - 1), p1 = at(j), p2 = at(j + 1), p3 = at(j + 2);
  return p1 + 0.5 * f * (p2 - p0 + f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                        f * (3.0 * (p1 - p2) + p3 - p0)));
}
}  // namespace detail

// one-particle Poincare action (U(a,lambda) psi)(th) = e^{i p(th).a} psi(th - lambda)
inline WaveFunction poincare_one(const PoincareElement& g, const WaveFunction& psi,
                                 double mass = 1.0) {
  if (psi.n != 1) throw err("ParticleCap", "poincare_one acts on one-particle vectors");
  WaveFunction out = psi;
  const RapidityGrid& gr = *psi.grid;
  for (int j = 0; j < gr.n_points; ++j) {
    double th = gr.nodes[j];
    cplx v = (g.lambda == 0.0) ? psi.amp[j] : detail::interp_cubic(gr, psi.amp, th - g.lambda);
    double phase = mass * (g.a0 * std::cosh(th) - g.a1 * std::sinh(th));
    out.amp[j] = std::exp(I * phase) * v;
  }
  return out;
}

// graded vector with components up to the cap; the free field and the
// bound-state operators move between neighbouring sectors
struct FockVector {
  const RapidityGrid* grid = nullptr;
  std::array<WaveFunction, 4> comp;
  std::array<bool, 4> present{};

  static FockVector from(const WaveFunction& w) {
    FockVector v;
    v.grid = w.grid;
    v.comp[w.n] = w;
    v.present[w.n] = true;
    return v;
  }
  void add(const WaveFunction& w) {
    if (!grid) grid = w.grid;
    if (present[w.n]) {
      for (size_t j = 0; j < w.amp.size(); ++j) comp[w.n].amp[j] += w.amp[j];
    } else {
      comp[w.n] = w;
      present[w.n] = true;
    }
  }
};

inline cplx fock_inner(const FockVector& a, const FockVector& b) {
  cplx s = 0;
  for (int n = 0; n < 4; ++n)
    if (a.present[n] && b.present[n]) s += fock_inner(a.comp[n], b.comp[n]);
  return s;
}

// free field phi(xi) Psi = z^dag(xi) Psi + z(xi) Psi
inline FockVector phi_free(const ScatteringFunction& S, const WaveFunction& xi,
                           const WaveFunction& psi) {
  if (psi.n > 2) throw err("ParticleCap", "free field output would exceed the cap");
  FockVector out;
  out.grid = psi.grid;
  out.add(create(S, xi, psi));
  if (psi.n >= 1) out.add(annihilate(S, xi, psi));
  return out;
}

}  // namespace sb
