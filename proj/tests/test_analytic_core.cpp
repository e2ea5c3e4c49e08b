#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <stripbench/quadrature.hpp>
#include <stripbench/winding.hpp>

using namespace sb;

TEST_CASE("integrate_line basics") {
  auto one = [](cplx) { return cplx(1.0); };
  CHECK(std::abs(integrate_line(one, cplx(0), cplx(1)) - cplx(1)) < 1e-12);

  // unit circle of 1/z via contour
  auto c = Contour::circle(0.0, 1.0);
  cplx v = integrate_contour([](cplx z) { return 1.0 / z; }, c);
  CHECK(std::abs(v - 2.0 * PI * I) < 1e-10);

  // gaussian integral against the closed form
  cplx g = integrate_line([](cplx z) { return std::exp(-z * z); }, cplx(-20), cplx(20));
  CHECK(std::abs(g - std::sqrt(PI)) < 1e-10);
}

TEST_CASE("integrate_line error paths") {
  CHECK_THROWS_WITH_AS(
      integrate_line([](cplx z) { return 1.0 / z; }, cplx(-1), cplx(1)),
      doctest::Contains("NonFinite"), Error);
  // an impossible tolerance on a wild integrand exhausts the budget
  QuadratureSettings qs;
  qs.abs_tol = 1e-300;
  qs.rel_tol = 1e-300;
  qs.max_refinements = 2;
  CHECK_THROWS_WITH_AS(
      integrate_line([](cplx z) { return std::exp(-z * z) * std::sin(50.0 * z); },
                     cplx(-20), cplx(20), qs),
      doctest::Contains("NonConvergent"), Error);
}

TEST_CASE("closed contour of entire function is zero") {
  auto c = Contour::rectangle(ComplexRect(-2, 2, -1, 1));
  cplx v = integrate_contour([](cplx z) { return std::exp(z) * z * z; }, c);
  CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("winding_number basics") {
  Contour circle = Contour::circle(0.0, 1.0);
  CHECK(winding_number([](cplx z) { return z; }, circle) == 1);
  CHECK(winding_number([](cplx z) { return 1.0 / z; }, circle) == -1);
  CHECK(winding_number([](cplx z) { return (z - 0.3) * (z + 0.4 * I); }, circle) == 2);
  CHECK(winding_number([](cplx z) { return (z - 0.3) / (z + 0.2); }, circle) == 0);
  CHECK_THROWS_WITH_AS(
      winding_number([](cplx z) { return z - 1.0; }, circle),
      doctest::Contains("OnBoundary"), Error);
}

TEST_CASE("winding is additive over products") {
  Contour circle = Contour::circle(0.0, 2.0);
  auto f = [](cplx z) { return (z - 0.5) * (z + 0.5); };
  auto g = [](cplx z) { return (z - I) / (z + 0.3 * I); };
  int wf = winding_number(f, circle);
  int wg = winding_number(g, circle);
  int wfg = winding_number([&](cplx z) { return f(z) * g(z); }, circle);
  CHECK(wfg == wf + wg);
}

TEST_CASE("locate_zeros polynomials") {
  auto z2 = locate_zeros([](cplx z) { return z * z - 1.0; }, ComplexRect(-2, 2, -1, 1));
  REQUIRE(z2.size() == 2);
  CHECK(std::abs(z2[0] + 1.0) < 1e-10);
  CHECK(std::abs(z2[1] - 1.0) < 1e-10);

  // degree 6 with known roots
  std::vector<cplx> roots{-1.5, -0.5 + 0.5 * I, -0.5 - 0.5 * I, 0.25, 1.0 + 0.3 * I, 2.0};
  auto p = [&](cplx z) {
    cplx v = 1;
    for (auto r : roots) v *= (z - r);
    return v;
  };
  auto found = locate_zeros(p, ComplexRect(-3, 3, -2, 2), 16);
  REQUIRE(found.size() == roots.size());
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (std::abs(a.real() - b.real()) > 1e-12) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(found[i] - roots[i]) < 1e-10);
}

TEST_CASE("locate_zeros multiplicity and caps") {
  auto dbl = locate_zeros([](cplx z) { return (z - 0.3 * I) * (z - 0.3 * I); },
                          ComplexRect(-1, 1, -1, 1));
  REQUIRE(dbl.size() == 2);
  CHECK(std::abs(dbl[0] - 0.3 * I) < 1e-6);
  CHECK(std::abs(dbl[1] - 0.3 * I) < 1e-6);

  CHECK_THROWS_WITH_AS(
      locate_zeros([](cplx z) { return z * z - 0.25; }, ComplexRect(-1, 1, -1, 1), 1),
      doctest::Contains("TooManyZeros"), Error);
}

TEST_CASE("residue_at") {
  CHECK(std::abs(residue_at([](cplx z) { return 1.0 / (z - I); }, I) - 1.0) < 1e-9);
  // double pole with no simple part has zero residue
  CHECK(std::abs(residue_at([](cplx z) { return 3.0 / ((z - I) * (z - I)); }, I)) < 1e-9);
  // linearity on disjoint-singularity pairs
  auto f = [](cplx z) { return 2.0 / (z - 1.0); };
  auto g = [](cplx z) { return -0.5 * I / (z + 1.0); };
  cplx rf = residue_at(f, 1.0), rg = residue_at(g, -1.0);
  cplx rfg1 = residue_at([&](cplx z) { return 3.0 * f(z) + g(z); }, 1.0);
  CHECK(std::abs(rfg1 - 3.0 * rf) < 1e-10);
  cplx rfg2 = residue_at([&](cplx z) { return 3.0 * f(z) + g(z); }, -1.0);
  CHECK(std::abs(rfg2 - rg) < 1e-10);
}
