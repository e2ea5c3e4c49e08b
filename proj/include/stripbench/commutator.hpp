#pragma once
#include <map>
#include <string>
#include <vector>

#include "chi.hpp"
#include "grid.hpp"

namespace sb {

// weak-commutator bookkeeping: named matrix elements, the pairwise
// cancellation residuals of the five term groups, and the grand total
struct CommutatorReport {
  int n = 1;
  std::map<std::string, cplx> terms;
  std::map<std::string, double> residuals;
  double scale = 0;        // largest absolute single term
  double quad_error = 0;   // half-resolution comparison of the grand total
  double total_residual = 0;
};

namespace detail {

inline cplx inner1(const RapidityGrid& g, const std::vector<cplx>& a,
                   const std::vector<cplx>& b) {
  cplx s = 0;
  for (int j = 0; j < g.n_points; ++j) s += std::conj(a[j]) * b[j];
  return s * g.h;
}

inline cplx inner2(const RapidityGrid& g, const std::vector<cplx>& a,
                   const std::vector<cplx>& b) {
  cplx s = 0;
  for (size_t j = 0; j < a.size(); ++j) s += std::conj(a[j]) * b[j];
  return s * g.h * g.h;
}

// the sector-preserving closed form of the free-field commutator: a
// multiplication operator; diagonal coincidences are removable (simple pole
// against the exchange zero of the wave)
inline cplx phiphi_weight1(const BoundStatePair& p, cplx th) {
  const cplx third = PI * I / 3.0, tthird = 2.0 * PI * I / 3.0;
  return -2.0 * PI * I *
         (p.R * p.eta(th - third) * p.xi(th + tthird) -
          p.R * p.eta(th - tthird) * p.xi(th + third));
}

}  // namespace detail

// [phi, phi'] acting on a closed-form wave, as a multiplication operator in
// closed form; returns grid samples (n = 1) or a row-major table (n = 2)
inline std::vector<cplx> phiphi_commutator_closed(const BoundStatePair& p,
                                                  const NWave& w,
                                                  const RapidityGrid& g) {
  const cplx third = PI * I / 3.0, tthird = 2.0 * PI * I / 3.0;
  int N = g.n_points;
  if (w.n == 1) {
    std::vector<cplx> out(N);
    for (int j = 0; j < N; ++j) {
      cplx th = g.nodes[j];
      out[j] = detail::phiphi_weight1(p, th) * w(th);
    }
    return out;
  }
  if (w.n != 2) throw err("ParticleCap", "closed form kept to two particles");
  std::vector<cplx> out((size_t)N * N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      cplx t1 = g.nodes[j], t2 = g.nodes[k], u = t2 - t1, c = 0.5 * (t1 + t2);
      // sum over the insertion slot; the exchange factor rides on the wave
      cplx acc = 0;
      for (int slot = 0; slot < 2; ++slot) {
        cplx tk = slot == 0 ? t1 : t2;
        cplx w1 = p.R * p.eta(tk - third) * p.xi(tk + tthird);
        cplx w2 = p.R * p.eta(tk - tthird) * p.xi(tk + third);
        double sgn = slot == 0 ? -1.0 : 1.0;  // u seen from the slot
        auto Bf = [&](cplx v, cplx shift) {
          cplx a = c - 0.5 * v, b = c + 0.5 * v;
          (void)shift;
          return w(a, b);
        };
        acc += w1 * pole_times_zero(*p.S, tthird, sgn * u,
                                    [&](cplx v) { return Bf(sgn * v, tthird); });
        acc -= w2 * pole_times_zero(*p.S, third, sgn * u,
                                    [&](cplx v) { return Bf(sgn * v, third); });
      }
      out[(size_t)j * N + k] = -2.0 * PI * I * acc;
    }
  return out;
}

namespace detail {

// all the per-grid tables the report needs, built once
struct CommCtx {
  const BoundStatePair* p;
  RapidityGrid g;
  int N;
  std::vector<cplx> xiT, etaT;                      // real-line kernels
  std::vector<cplx> F1, S1;                         // Phi_1, Psi_1 samples
  std::vector<cplx> cF1, cpF1, cS1, cpS1;           // chi / chi' on them
  std::vector<cplx> F2, S2, cF2, cpF2, cS2, cpS2;   // two-particle tables
  std::vector<double> sdiffRe;                      // S((j-k)h) cache
  std::vector<cplx> sdiff;

  cplx Sd(int j, int k) const { return sdiff[(size_t)(j - k + N - 1)]; }

  // sqrt(2) sym2(q (x) v); the mirrored creation sym2(v (x) q) is zdag(v, q)
  std::vector<cplx> zdag(const std::vector<cplx>& q, const std::vector<cplx>& v) const {
    std::vector<cplx> out((size_t)N * N);
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        out[(size_t)j * N + k] =
            (q[j] * v[k] + Sd(k, j) * q[k] * v[j]) / std::sqrt(2.0);
    return out;
  }

  // annihilation against the first slot; the mirrored operator integrates out
  // the last slot instead
  std::vector<cplx> annih(const std::vector<cplx>& q, const std::vector<cplx>& t2,
                          bool last_slot = false) const {
    std::vector<cplx> out(N, 0.0);
    for (int k = 0; k < N; ++k) {
      cplx s = 0;
      for (int j = 0; j < N; ++j)
        s += std::conj(q[j]) * t2[last_slot ? (size_t)k * N + j : (size_t)j * N + k];
      out[k] = std::sqrt(2.0) * g.h * s;
    }
    return out;
  }
};

// two-particle symmetrized evaluation that stays finite when the argument
// difference sits on the exchange pole shifted by i pi / 3, where the
// corrected seed supplies the cancelling zero
inline cplx wave2_eval_safe(const NWave& w, const ScatteringFunction& S, cplx a, cplx b) {
  const cplx third = PI * I / 3.0;
  cplx u = b - a - third;
  if (std::abs(u) > 1e-7) return w(a, b);
  auto F = [&](cplx x, cplx y) { return w.raw({x, y}); };
  return 0.5 * F(a, b) +
         0.5 * pole_times_zero(S, third, u, [&](cplx v) { return F(a + third + v, a); });
}

inline CommCtx make_ctx(const BoundStatePair& p, const RapidityGrid& g, const OneFn& f1,
                        const NWave& f2, const OneFn& s1, const NWave& s2) {
  CommCtx c{&p, g, g.n_points};
  int N = c.N;
  c.xiT.resize(N);
  c.etaT.resize(N);
  c.F1.resize(N);
  c.S1.resize(N);
  c.cF1.resize(N);
  c.cpF1.resize(N);
  c.cS1.resize(N);
  c.cpS1.resize(N);
  for (int j = 0; j < N; ++j) {
    cplx th = g.nodes[j];
    c.xiT[j] = p.xi(th);
    c.etaT[j] = p.eta(th);
    c.F1[j] = f1(th);
    c.S1[j] = s1(th);
    c.cF1[j] = chi1_point(p, f1, th);
    c.cpF1[j] = chi1p_point(p, f1, th);
    c.cS1[j] = chi1_point(p, s1, th);
    c.cpS1[j] = chi1p_point(p, s1, th);
  }
  c.sdiff.resize(2 * N - 1);
  for (int d = -(N - 1); d <= N - 1; ++d)
    c.sdiff[(size_t)(d + N - 1)] = p.S->eval(cplx(d * g.h));
  if (f2.n == 2) {
    c.F2.resize((size_t)N * N);
    c.S2.resize((size_t)N * N);
    c.cF2.resize((size_t)N * N);
    c.cpF2.resize((size_t)N * N);
    c.cS2.resize((size_t)N * N);
    c.cpS2.resize((size_t)N * N);
#pragma omp parallel for schedule(static)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        cplx a = g.nodes[j], b = g.nodes[k];
        size_t id = (size_t)j * N + k;
        c.F2[id] = f2(a, b);
        c.S2[id] = s2(a, b);
        c.cF2[id] = chi2_point(p, f2, a, b);
        c.cpF2[id] = chi2p_point(p, f2, a, b);
        c.cS2[id] = chi2_point(p, s2, a, b);
        c.cpS2[id] = chi2p_point(p, s2, a, b);
      }
  }
  return c;
}

// 3 <q (x) A2, sym3(r (x) B2)>: the only three-dimensional quadrature; the
// symmetrizer is expanded over the six permutations with cached exchange
// weights at node differences.  The append flags place the one-particle
// kernel in the last slot instead (mirrored creation).
inline cplx triple_create_inner(const CommCtx& c, const std::vector<cplx>& q,
                                const std::vector<cplx>& A2, bool q_append,
                                const std::vector<cplx>& r, const std::vector<cplx>& B2,
                                bool r_append) {
  int N = c.N;
  double h3 = c.g.h * c.g.h * c.g.h;
  double tre = 0, tim = 0;
#pragma omp parallel for schedule(static) reduction(+ : tre, tim)
  for (int j = 0; j < N; ++j) {
    cplx part = 0;
    for (int k = 0; k < N; ++k)
      for (int l = 0; l < N; ++l) {
        // sym3(r (x) B2)(j,k,l): average over permutations of (j,k,l) with
        // weights accumulated through adjacent swaps
        int idx[3] = {j, k, l};
        cplx sym = 0;
        int perm[3] = {0, 1, 2};
        for (int it = 0; it < 6; ++it) {
          int p0 = perm[0], p1 = perm[1], p2 = perm[2];
          // weight of the adjacent word sorting perm, walked on idx
          int cur[3] = {idx[0], idx[1], idx[2]};
          int pp[3] = {p0, p1, p2};
          cplx w = 1.0;
          for (int pass = 0; pass < 3; ++pass)
            for (int m = 0; m + 1 < 3; ++m)
              if (pp[m] > pp[m + 1]) {
                std::swap(pp[m], pp[m + 1]);
                w *= c.Sd(cur[m + 1], cur[m]);
                std::swap(cur[m], cur[m + 1]);
              }
          sym += w * (r_append ? B2[(size_t)cur[0] * N + cur[1]] * r[cur[2]]
                               : r[cur[0]] * B2[(size_t)cur[1] * N + cur[2]]);
          std::next_permutation(perm, perm + 3);
        }
        sym /= 6.0;
        part += std::conj(q_append ? A2[(size_t)j * N + k] * q[l]
                                   : q[j] * A2[(size_t)k * N + l]) *
                sym;
      }
    tre += part.real();
    tim += part.imag();
  }
  return 3.0 * h3 * cplx(tre, tim);
}

}  // namespace detail

// the weak-commutator report at top sector n (1 or 2).  The test vectors
// carry components n-1 and n; the two-particle components must be the
// corrected closed forms so every chi application is in-domain.
inline CommutatorReport weak_commutator_report(const BoundStatePair& p,
                                               const RapidityGrid& g, cplx phi0,
                                               const OneFn& phi1, const NWave& phi2,
                                               cplx psi0, const OneFn& psi1,
                                               const NWave& psi2, int n) {
  if (n < 1 || n > 2) throw err("ParticleCap", "report covers sectors one and two");
  const cplx third = PI * I / 3.0, tthird = 2.0 * PI * I / 3.0;
  NWave dummy2;  // unused at n = 1
  detail::CommCtx c = detail::make_ctx(p, g, phi1, n == 2 ? phi2 : dummy2, psi1,
                                       n == 2 ? psi2 : dummy2);
  int N = c.N;
  double h = g.h;
  CommutatorReport rep;
  rep.n = n;
  auto& T = rep.terms;

  auto scal = [&](const std::vector<cplx>& kern, const std::vector<cplx>& v) {
    cplx s = 0;
    for (int j = 0; j < N; ++j) s += std::conj(kern[j]) * v[j];
    return h * s;
  };

  if (n == 1) {
    // group 1: [chi, z'] + [z, chi'] against the vacuum component
    T["g1_chi_zp"] = std::conj(phi0) * (-scal(c.etaT, c.cS1));
    T["g1_z_chip"] = std::conj(phi0) * scal(c.xiT, c.cpS1);
    // group 2: [zdag, chi'] + [chi, z'dag] from the vacuum component of Psi
    std::vector<cplx> xiv = c.xiT, etav = c.etaT;
    std::vector<cplx> chip_of_xi(N), chi_of_eta(N);
    for (int j = 0; j < N; ++j) {
      cplx th = g.nodes[j];
      chip_of_xi[j] = p.prefactor * p.eta(th - third) * p.xi(th + third);
      chi_of_eta[j] = p.prefactor * p.xi(th + third) * p.eta(th - third);
    }
    T["g2_zdag_chip"] = -psi0 * detail::inner1(g, c.F1, chip_of_xi);
    T["g2_chi_zpdag"] = psi0 * detail::inner1(g, c.F1, chi_of_eta);
    // diagonal chi-chi' against the closed field commutator
    T["w_chi_chip"] = detail::inner1(g, c.cF1, c.cpS1);
    T["w_chip_chi"] = detail::inner1(g, c.cpF1, c.cS1);
    cplx D1 = 0, D2 = 0, P = 0;
    for (int j = 0; j < N; ++j) {
      cplx th = g.nodes[j], m = std::conj(c.F1[j]) * c.S1[j];
      D1 += 2.0 * PI * std::abs(p.R) * p.xi(th + tthird) * p.eta(th - third) * m;
      D2 += -2.0 * PI * I * p.R * p.eta(th - tthird) * p.xi(th + third) * m;
      P += detail::phiphi_weight1(p, th) * m;
    }
    T["diag_a"] = h * D1;
    T["diag_b"] = h * D2;
    T["phiphi"] = h * P;
    // free-field families against the closed form
    std::vector<cplx> zdx = c.zdag(c.xiT, c.F1), zde = c.zdag(c.S1, c.etaT);
    std::vector<cplx> zde_phi = c.zdag(c.F1, c.etaT), zdx_psi = c.zdag(c.xiT, c.S1);
    T["zz_up"] = detail::inner2(g, zdx, zde) - detail::inner2(g, zde_phi, zdx_psi);
    T["zz_dn"] = std::conj(scal(c.xiT, c.F1)) * scal(c.etaT, c.S1) -
                 std::conj(scal(c.etaT, c.F1)) * scal(c.xiT, c.S1);
    // grand total with both components
    cplx totA = std::conj(scal(c.xiT, c.F1)) * scal(c.etaT, c.S1);
    cplx totB = std::conj(scal(c.etaT, c.F1)) * scal(c.xiT, c.S1);
    std::vector<cplx> a1(N), b1(N), a1m(N), b1m(N);
    for (int j = 0; j < N; ++j) {
      a1[j] = phi0 * c.xiT[j] + c.cF1[j];
      b1[j] = psi0 * c.etaT[j] + c.cpS1[j];
      a1m[j] = phi0 * c.etaT[j] + c.cpF1[j];
      b1m[j] = psi0 * c.xiT[j] + c.cS1[j];
    }
    totA += detail::inner1(g, a1, b1) + detail::inner2(g, zdx, zde);
    totB += detail::inner1(g, a1m, b1m) + detail::inner2(g, zde_phi, zdx_psi);
    T["total_a"] = totA;
    T["total_b"] = totB;
  } else {
    // group 1 at output sector one: compositions with closed-form shifts
    std::vector<cplx> chi_zp(N), zp_chi(N), z_chip(N), chip_z(N);
    for (int k = 0; k < N; ++k) {
      cplx th = g.nodes[k], se = 0, sx = 0, se2 = 0, sx2 = 0;
      for (int j = 0; j < N; ++j) {
        // the mirrored annihilator integrates the last slot; the shifted
        // argument rides the exchange pole, killed by the corrected seed
        se += std::conj(c.etaT[j]) * detail::wave2_eval_safe(psi2, *p.S, th - third, cplx(g.nodes[j]));
        sx += std::conj(c.xiT[j]) * detail::wave2_eval_safe(psi2, *p.S, cplx(g.nodes[j]), th + third);
        se2 += std::conj(c.etaT[j]) * c.cS2[(size_t)k * N + j];
        sx2 += std::conj(c.xiT[j]) * c.cpS2[(size_t)j * N + k];
      }
      chi_zp[k] = p.prefactor * p.xi(th + third) * std::sqrt(2.0) * h * se;
      zp_chi[k] = std::sqrt(2.0) * h * se2;
      z_chip[k] = std::sqrt(2.0) * h * sx2;
      chip_z[k] = p.prefactor * p.eta(th - third) * std::sqrt(2.0) * h * sx;
    }
    std::vector<cplx> c1(N), c2(N);
    for (int k = 0; k < N; ++k) {
      c1[k] = chi_zp[k] - zp_chi[k];
      c2[k] = z_chip[k] - chip_z[k];
    }
    T["g1_chi_zp"] = detail::inner1(g, c.F1, c1);
    T["g1_z_chip"] = detail::inner1(g, c.F1, c2);
    // group 2 via adjoint moves so chi only ever acts on corrected waves
    std::vector<cplx> zXiF2 = c.annih(c.xiT, c.F2), zEtaF2 = c.annih(c.etaT, c.F2, true);
    std::vector<cplx> zdXiS1 = c.zdag(c.xiT, c.S1), zdEtaS1 = c.zdag(c.S1, c.etaT);
    T["g2_zdag_chip"] =
        detail::inner1(g, zXiF2, c.cpS1) - detail::inner2(g, c.cpF2, zdXiS1);
    T["g2_chi_zpdag"] =
        detail::inner2(g, c.cF2, zdEtaS1) - detail::inner1(g, zEtaF2, c.cS1);
    // chi-chi' on the top sector, split into the shifted diagonal displays
    T["w_chi_chip"] = detail::inner2(g, c.cF2, c.cpS2);
    T["w_chip_chi"] = detail::inner2(g, c.cpF2, c.cS2);
    cplx D1 = 0, D2 = 0;
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        if (j == k) continue;  // second-order exchange zero kills the pole
        cplx t1 = g.nodes[j], t2 = g.nodes[k];
        cplx m = std::conj(c.F2[(size_t)j * N + k]) * c.S2[(size_t)j * N + k];
        for (int slot = 0; slot < 2; ++slot) {
          cplx tk = slot == 0 ? t1 : t2, tl = slot == 0 ? t2 : t1;
          D1 += 2.0 * PI * std::abs(p.R) * p.S->eval(tk - tl + tthird) *
                p.xi(tk + tthird) * p.eta(tk - third) * m;
          D2 += -2.0 * PI * I * p.R * p.S->eval(tk - tl + third) *
                p.eta(tk - tthird) * p.xi(tk + third) * m;
        }
      }
    T["diag_a"] = h * h * D1;
    T["diag_b"] = h * h * D2;
    std::vector<cplx> pp = phiphi_commutator_closed(p, psi2, g);
    T["phiphi"] = detail::inner2(g, c.F2, pp);
    // free-field families
    std::vector<cplx> zXiS2 = c.annih(c.xiT, c.S2), zEtaS2 = c.annih(c.etaT, c.S2, true);
    T["zz_dn"] = detail::inner1(g, zXiF2, zEtaS2) - detail::inner1(g, zEtaF2, zXiS2);
    T["zz_up"] = detail::triple_create_inner(c, c.xiT, c.F2, false, c.etaT, c.S2, true) -
                 detail::triple_create_inner(c, c.etaT, c.F2, true, c.xiT, c.S2, false);
    // grand total with components one and two
    std::vector<cplx> s1A(N), s1B(N), s1Am(N), s1Bm(N);
    for (int k = 0; k < N; ++k) {
      s1A[k] = c.cF1[k] + zXiF2[k];
      s1B[k] = c.cpS1[k] + zEtaS2[k];
      s1Am[k] = c.cpF1[k] + zEtaF2[k];
      s1Bm[k] = c.cS1[k] + zXiS2[k];
    }
    std::vector<cplx> s2A((size_t)N * N), s2B((size_t)N * N), s2Am((size_t)N * N),
        s2Bm((size_t)N * N);
    std::vector<cplx> zdXiF1 = c.zdag(c.xiT, c.F1), zdEtaF1 = c.zdag(c.F1, c.etaT),
                      zdEtaS1b = c.zdag(c.S1, c.etaT), zdXiS1b = c.zdag(c.xiT, c.S1);
    for (size_t id = 0; id < (size_t)N * N; ++id) {
      s2A[id] = zdXiF1[id] + c.cF2[id];
      s2B[id] = zdEtaS1b[id] + c.cpS2[id];
      s2Am[id] = zdEtaF1[id] + c.cpF2[id];
      s2Bm[id] = zdXiS1b[id] + c.cS2[id];
    }
    cplx totA = std::conj(scal(c.xiT, c.F1)) * scal(c.etaT, c.S1) +
                detail::inner1(g, s1A, s1B) + detail::inner2(g, s2A, s2B) +
                detail::triple_create_inner(c, c.xiT, c.F2, false, c.etaT, c.S2, true);
    cplx totB = std::conj(scal(c.etaT, c.F1)) * scal(c.xiT, c.S1) +
                detail::inner1(g, s1Am, s1Bm) + detail::inner2(g, s2Am, s2Bm) +
                detail::triple_create_inner(c, c.etaT, c.F2, true, c.xiT, c.S2, false);
    T["total_a"] = totA;
    T["total_b"] = totB;
  }

  for (auto& kv : T)
    if (kv.first.rfind("total", 0) != 0)
      rep.scale = std::max(rep.scale, std::abs(kv.second));
  rep.scale = std::max(rep.scale, 1e-300);
  auto rel = [&](cplx v) { return std::abs(v) / rep.scale; };
  rep.residuals["group1"] = rel(T["g1_chi_zp"] + T["g1_z_chip"]);
  rep.residuals["group2"] = rel(T["g2_zdag_chip"] + T["g2_chi_zpdag"]);
  rep.residuals["diag_vs_phiphi"] = rel(T["diag_b"] - T["diag_a"] + T["phiphi"]);
  rep.residuals["offdiag"] =
      rel((T["w_chi_chip"] - T["diag_b"]) - (T["w_chip_chi"] - T["diag_a"]));
  rep.residuals["free_field"] = rel(T["zz_up"] + T["zz_dn"] - T["phiphi"]);
  rep.total_residual = rel(T["total_a"] - T["total_b"]);
  if (g.n_points >= 128) {
    RapidityGrid gc(g.theta_max, g.n_points / 2);
    CommutatorReport coarse =
        weak_commutator_report(p, gc, phi0, phi1, phi2, psi0, psi1, psi2, n);
    rep.quad_error = std::abs(rep.total_residual - coarse.total_residual) +
                     std::abs((T.at("total_a") - coarse.terms.at("total_a")) / rep.scale);
  }
  return rep;
}

}  // namespace sb
