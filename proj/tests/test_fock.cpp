#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <stripbench/family.hpp>
#include <stripbench/fock.hpp>

#include <random>

using namespace sb;

static RapidityGrid two_grid() { return RapidityGrid(6.0, 64); }
static RapidityGrid three_grid() { return RapidityGrid(5.0, 64); }

static WaveFunction random_wf(const RapidityGrid& g, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  WaveFunction w = WaveFunction::zero(g, n);
  // Gaussian envelope keeps the vectors decaying like the analytic family
  auto env = [&](size_t idx) {
    double p = 1.0;
    size_t N = g.n_points, rem = idx;
    for (int j = n - 1; j >= 0; --j) {
      double th = g.nodes[rem % N];
      rem /= N;
      p *= std::exp(-0.25 * th * th);
    }
    return p;
  };
  for (size_t j = 0; j < w.amp.size(); ++j) w.amp[j] = env(j) * cplx(nd(rng), nd(rng));
  return w;
}

TEST_CASE("apply_Dn basics and unitarity") {
  auto g = two_grid();
  auto S = make_scattering(0.1);
  auto psi = random_wf(g, 2, 11);

  auto id = apply_Dn(S, psi, {0, 1});
  for (size_t j = 0; j < psi.amp.size(); ++j) CHECK(id.amp[j] == psi.amp[j]);

  auto swapped = apply_Dn(S, psi, {1, 0});
  CHECK(std::abs(fock_norm(swapped) - fock_norm(psi)) < 1e-10 * fock_norm(psi));

  // tau^2 = identity by hermitian analyticity S(-th) = 1/S(th)
  auto twice = apply_Dn(S, swapped, {1, 0});
  double dev = 0;
  for (size_t j = 0; j < psi.amp.size(); ++j)
    dev = std::max(dev, std::abs(twice.amp[j] - psi.amp[j]));
  CHECK(dev < 1e-10);

  CHECK_THROWS_WITH_AS(apply_Dn(S, psi, {0, 0}), doctest::Contains("BadPermutation"), Error);
  CHECK_THROWS_WITH_AS(apply_Dn(S, psi, {0}), doctest::Contains("BadPermutation"), Error);
}

TEST_CASE("Dn is a representation and the braid words agree") {
  auto g = three_grid();
  auto S = make_scattering(-0.2, {{cplx(0.3, 2.0), cplx(1.0)}});
  auto psi = random_wf(g, 3, 23);

  // two reduced words for the order reversal: (t0 t1 t0) and (t1 t0 t1)
  std::vector<int> t0{1, 0, 2}, t1{0, 2, 1};
  auto lhs = apply_Dn(S, apply_Dn(S, apply_Dn(S, psi, t0), t1), t0);
  auto rhs = apply_Dn(S, apply_Dn(S, apply_Dn(S, psi, t1), t0), t1);
  double dev = 0;
  for (size_t j = 0; j < psi.amp.size(); ++j)
    dev = std::max(dev, std::abs(lhs.amp[j] - rhs.amp[j]));
  CHECK(dev < 1e-10);

  // D(s1) D(s2) = D(s1 s2) on a non-commuting pair
  std::vector<int> s1{2, 0, 1}, s2{1, 0, 2}, prod(3);
  for (int j = 0; j < 3; ++j) prod[j] = s2[s1[j]];
  auto a = apply_Dn(S, apply_Dn(S, psi, s2), s1);
  auto b = apply_Dn(S, psi, prod);
  dev = 0;
  for (size_t j = 0; j < psi.amp.size(); ++j) dev = std::max(dev, std::abs(a.amp[j] - b.amp[j]));
  CHECK(dev < 1e-10);
}

TEST_CASE("project_Pn is an orthogonal projection onto the exchange-symmetric sector") {
  auto g = two_grid();
  auto S = make_scattering(0.1);
  auto psi = random_wf(g, 2, 37);
  auto phi = random_wf(g, 2, 41);

  auto p = project_Pn(S, psi);
  CHECK(p.s_symmetric);
  auto pp = project_Pn(S, p);
  double dev = 0;
  for (size_t j = 0; j < p.amp.size(); ++j) dev = std::max(dev, std::abs(pp.amp[j] - p.amp[j]));
  CHECK(dev < 1e-10);

  // self-adjoint on the grid inner product
  CHECK(std::abs(fock_inner(project_Pn(S, phi), psi) - fock_inner(phi, p)) < 1e-10);

  // pointwise exchange identity Psi(a,b) = S(b-a) Psi(b,a)
  int N = g.n_points;
  dev = 0;
  for (int a = 0; a < N; a += 7)
    for (int b = 0; b < N; b += 5) {
      cplx lhs = p.amp[size_t(a) * N + b];
      cplx rhs = S.eval(cplx(g.nodes[b] - g.nodes[a])) * p.amp[size_t(b) * N + a];
      dev = std::max(dev, std::abs(lhs - rhs));
    }
  CHECK(dev < 1e-9);

  // n = 1 is the identity
  auto one = random_wf(g, 1, 43);
  auto pone = project_Pn(S, one);
  for (int j = 0; j < N; ++j) CHECK(pone.amp[j] == one.amp[j]);

  // three-particle projector is idempotent too
  auto g3 = three_grid();
  auto psi3 = random_wf(g3, 3, 47);
  auto p3 = project_Pn(S, psi3);
  auto pp3 = project_Pn(S, p3);
  dev = 0;
  for (size_t j = 0; j < p3.amp.size(); ++j)
    dev = std::max(dev, std::abs(pp3.amp[j] - p3.amp[j]));
  CHECK(dev < 1e-10);
}

TEST_CASE("creation and annihilation are adjoints with the right bound") {
  auto g = two_grid();
  auto S = make_scattering(0.15);
  auto xi = WaveFunction::sample1(g, [](double t) { return cplx(std::exp(-0.5 * (t - 0.3) * (t - 0.3))); });

  // vacuum actions
  auto vac = WaveFunction::vacuum(g);
  auto one = create(S, xi, vac);
  CHECK(one.n == 1);
  for (int j = 0; j < g.n_points; ++j) CHECK(std::abs(one.amp[j] - xi.amp[j]) < 1e-12);
  auto none = annihilate(S, xi, vac);
  CHECK(none.n == 0);
  CHECK(std::abs(none.amp[0]) < 1e-15);

  // adjoint pair on random symmetric vectors
  auto phi1 = project_Pn(S, random_wf(g, 1, 53));
  auto psi2 = project_Pn(S, random_wf(g, 2, 59));
  CHECK(std::abs(fock_inner(create(S, xi, phi1), psi2) -
                 fock_inner(phi1, annihilate(S, xi, psi2))) < 1e-10);

  // creation bound
  double lhs = fock_norm(create(S, xi, psi2));
  double rhs = std::sqrt(3.0) * fock_norm(xi) * fock_norm(psi2);
  CHECK(lhs <= rhs * (1 + 1e-12));

  CHECK_THROWS_WITH_AS(create(S, xi, random_wf(g, 3, 61)), doctest::Contains("ParticleCap"),
                       Error);

  // linearity in the created vector
  auto xi2 = WaveFunction::sample1(g, [](double t) { return cplx(std::exp(-0.3 * t * t), 0.1); });
  WaveFunction mix = xi;
  for (int j = 0; j < g.n_points; ++j) mix.amp[j] = 2.0 * xi.amp[j] + xi2.amp[j];
  auto direct = create(S, mix, psi2);
  auto split_a = create(S, xi, psi2), split_b = create(S, xi2, psi2);
  double dev = 0;
  for (size_t j = 0; j < direct.amp.size(); ++j)
    dev = std::max(dev, std::abs(direct.amp[j] - 2.0 * split_a.amp[j] - split_b.amp[j]));
  CHECK(dev < 1e-10);
}

TEST_CASE("cpt_J is an antiunitary involution commuting with the projector") {
  auto g = two_grid();
  auto S = make_scattering(-0.1);
  auto psi = random_wf(g, 2, 67);

  auto jj = cpt_J(cpt_J(psi));
  for (size_t j = 0; j < psi.amp.size(); ++j) CHECK(jj.amp[j] == psi.amp[j]);

  auto real1 = WaveFunction::sample1(g, [](double t) { return cplx(std::exp(-t * t)); });
  auto jr = cpt_J(real1);
  for (int j = 0; j < g.n_points; ++j) CHECK(jr.amp[j] == real1.amp[j]);

  auto a = cpt_J(project_Pn(S, psi));
  auto b = project_Pn(S, cpt_J(psi));
  double dev = 0;
  for (size_t j = 0; j < psi.amp.size(); ++j) dev = std::max(dev, std::abs(a.amp[j] - b.amp[j]));
  CHECK(dev < 1e-10);

  CHECK(std::abs(fock_norm(cpt_J(psi)) - fock_norm(psi)) < 1e-12);
}

TEST_CASE("poincare_one: multipliers, composition, boost interpolation") {
  RapidityGrid g(10.0, 1024);
  auto psi = WaveFunction::sample1(g, [](double t) { return std::exp(-0.5 * (t - 0.2) * (t - 0.2)) * std::exp(I * 0.3 * t); });

  auto idp = poincare_one({0.0, 0.0, 0.0}, psi);
  for (int j = 0; j < g.n_points; ++j) CHECK(idp.amp[j] == psi.amp[j]);

  auto tr = poincare_one({1.0, 0.0, 0.0}, psi);
  for (int j = 0; j < g.n_points; j += 17)
    CHECK(std::abs(std::abs(tr.amp[j]) - std::abs(psi.amp[j])) < 1e-14);

  // translation composition U(a,0) U(b,0) = U(a+b,0)
  auto ab = poincare_one({0.7, -0.2, 0.0}, poincare_one({0.4, 0.5, 0.0}, psi));
  auto sum = poincare_one({1.1, 0.3, 0.0}, psi);
  double dev = 0;
  for (int j = 0; j < g.n_points; ++j) dev = std::max(dev, std::abs(ab.amp[j] - sum.amp[j]));
  CHECK(dev < 1e-10);

  // boost: unitary within cubic interpolation error on a smooth vector
  auto boosted = poincare_one({0.0, 0.0, 0.37}, psi);
  CHECK(std::abs(fock_norm(boosted) - fock_norm(psi)) < 1e-6 * fock_norm(psi));
}

TEST_CASE("phi_free: vacuum action, adjoint symmetry, number commutator") {
  auto g = two_grid();
  auto S = make_scattering(0.1);
  auto xi = WaveFunction::sample1(g, [](double t) { return cplx(std::exp(-0.4 * (t + 0.1) * (t + 0.1))); });

  auto from_vac = phi_free(S, xi, WaveFunction::vacuum(g));
  REQUIRE(from_vac.present[1]);
  for (int j = 0; j < g.n_points; ++j) CHECK(std::abs(from_vac.comp[1].amp[j] - xi.amp[j]) < 1e-12);

  // symmetry of the field for real xi: <phi Phi, Psi> = <Phi, phi Psi>
  auto phi1 = project_Pn(S, random_wf(g, 1, 71));
  auto psi1 = project_Pn(S, random_wf(g, 1, 73));
  auto lhs = fock_inner(phi_free(S, xi, phi1), FockVector::from(psi1));
  // picks out the two-particle components on both sides
  auto psi2 = project_Pn(S, random_wf(g, 2, 79));
  cplx sym_l = fock_inner(phi_free(S, xi, phi1), FockVector::from(psi2));
  cplx sym_r = fock_inner(FockVector::from(phi1), phi_free(S, xi, psi2));
  CHECK(std::abs(sym_l - sym_r) < 1e-10);
  (void)lhs;

  // weak commutator with the number operator: [N, phi] = z^dag - z
  FockVector Phi;
  Phi.add(project_Pn(S, random_wf(g, 0, 83)));
  Phi.add(psi2);
  auto psi = phi1;
  auto phiPsi = phi_free(S, xi, psi);
  cplx n_phi = 0;
  for (int m = 0; m < 4; ++m)
    if (Phi.present[m] && phiPsi.present[m])
      n_phi += double(m) * fock_inner(Phi.comp[m], phiPsi.comp[m]);
  cplx phi_n = 0;
  {
    // phi Phi against N psi = 1 * psi
    FockVector phiPhi;
    phiPhi.grid = &g;
    if (Phi.present[0]) phiPhi.add(create(S, xi, Phi.comp[0]));
    if (Phi.present[2]) {
      phiPhi.add(create(S, xi, Phi.comp[2]));
      phiPhi.add(annihilate(S, xi, Phi.comp[2]));
    }
    if (phiPhi.present[1]) phi_n = fock_inner(phiPhi.comp[1], psi);
  }
  cplx rhs = fock_inner(Phi.comp[2], create(S, xi, psi)) -
             fock_inner(Phi.comp[0], annihilate(S, xi, psi));
  CHECK(std::abs((n_phi - phi_n) - rhs) < 1e-9);
}
