#pragma once
#include <functional>
#include <vector>

#include "smatrix.hpp"

namespace sb {

// one-particle closed forms: entire functions we can evaluate at complex
// rapidities, so every contour shift is exact rather than extrapolated
using OneFn = std::function<cplx(cplx)>;

inline OneFn gauss_fn(double width, double center, cplx slope = 0.0) {
  return [=](cplx z) {
    cplx x = z - center;
    return std::exp(-x * x / (2.0 * width * width) + slope * z);
  };
}

// closed form of the complex conjugate: conj(f(conj z)) agrees with conj(f)
// on the real line and is again entire
inline OneFn conj_fn(OneFn f) {
  return [f](cplx z) { return std::conj(f(std::conj(z))); };
}

inline OneFn shift_fn(OneFn f, cplx s) {
  return [f, s](cplx z) { return f(z + s); };
}

inline OneFn scale_fn(OneFn f, cplx c) {
  return [f, c](cplx z) { return c * f(z); };
}

inline OneFn sum_fn(OneFn f, OneFn g) {
  return [f, g](cplx z) { return f(z) + g(z); };
}

// exchange-symmetrized n-particle vector (n <= 3) built from one-particle
// factors.  The unsymmetrized seed is
//   F(t) = fac[0](t1) ... fac[n-1](tn)           (plain product), or for
//   n = 2 with the correction enabled
//   F(a,b) = f(a) g(b) - g(a - i pi/3) f(b + i pi/3),
// which kills the residue of the scattering pole under both the downward and
// the upward continuation by pi/3, so the vector stays in the operator
// domains (a plain product does not: the continued exchange factor picks up
// a non-square-integrable pole on the coincidence set)
struct NWave {
  const ScatteringFunction* S = nullptr;
  int n = 0;
  std::vector<OneFn> fac;
  bool corrected = false;

  cplx raw(const std::vector<cplx>& t) const {
    if (corrected) {
      if (n != 2) throw err("BadSettings", "correction is a two-particle device");
      const cplx third = PI * I / 3.0;
      return fac[0](t[0]) * fac[1](t[1]) - fac[1](t[0] - third) * fac[0](t[1] + third);
    }
    cplx p = 1.0;
    for (int j = 0; j < n; ++j) p *= fac[j](t[j]);
    return p;
  }

  // symmetrized value: average over permutations with the exchange weights
  // accumulated through adjacent transpositions
  cplx operator()(const std::vector<cplx>& t) const {
    if ((int)t.size() != n) throw err("BadSettings", "arity mismatch");
    if (n == 1) return raw(t);
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    cplx acc = 0.0;
    double count = 0;
    do {
      // build the adjacent word for perm, then walk it on the concrete tuple
      std::vector<int> p = perm, word;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j + 1 < n; ++j)
          if (p[j] > p[j + 1]) {
            std::swap(p[j], p[j + 1]);
            word.push_back(j);
          }
      std::vector<cplx> cur = t;
      cplx w = 1.0;
      for (int k : word) {
        w *= S->eval(cur[k + 1] - cur[k]);
        std::swap(cur[k], cur[k + 1]);
      }
      acc += w * raw(cur);
      count += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc / count;
  }

  cplx operator()(cplx a) const { return (*this)(std::vector<cplx>{a}); }
  cplx operator()(cplx a, cplx b) const { return (*this)(std::vector<cplx>{a, b}); }
};

inline NWave make_wave1(const ScatteringFunction& S, OneFn f) {
  return NWave{&S, 1, {std::move(f)}, false};
}

inline NWave make_wave2(const ScatteringFunction& S, OneFn f, OneFn g,
                        bool corrected = true) {
  return NWave{&S, 2, {std::move(f), std::move(g)}, corrected};
}

inline NWave make_wave3(const ScatteringFunction& S, OneFn f, OneFn g, OneFn h) {
  return NWave{&S, 3, {std::move(f), std::move(g), std::move(h)}, false};
}

}  // namespace sb
