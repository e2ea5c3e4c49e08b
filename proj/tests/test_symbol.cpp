#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <stripbench/symbol.hpp>

using namespace sb;

TEST_CASE("left symbol, zero-free input") {
  auto S = make_scattering(0.1);
  auto xi_under = make_wedge_member(0.1, -0.7, 0.55, true);
  auto sym = build_symbol(xi_under, S);
  CHECK(sym.bzeros.empty());
  CHECK(symbol_unimodularity_residual(sym) < 1e-6);
  CHECK(symbol_identity_residual(sym) < 1e-6);
}

TEST_CASE("left symbol with an inserted zero pair") {
  auto S = make_scattering(0.0);
  cplx w(0.4, 1.3);  // inside the middle third; its reflection is too
  auto xi_under = make_wedge_member(0.0, -1.0, 0.6, true, {w});
  auto sym = build_symbol(xi_under, S);
  REQUIRE(sym.bzeros.size() == 2);  // the inserted zero and its reflection
  CHECK(std::abs(sym.bzeros[0] - w) < 1e-12);
  CHECK(std::abs(sym.bzeros[1] - (std::conj(w) + PI * I)) < 1e-12);
  CHECK(std::abs(sym(w)) < 1e-9);
  CHECK(std::abs(sym(std::conj(w) + PI * I)) < 1e-9);
  CHECK(symbol_unimodularity_residual(sym) < 1e-6);
  CHECK(symbol_identity_residual(sym) < 1e-6);
}

TEST_CASE("right symbol") {
  auto S = make_scattering(0.2);
  auto eta_under = make_wedge_member(-0.15, 0.85, 0.5, false);
  auto sym = build_symbol(eta_under, S);
  CHECK_FALSE(sym.left);
  CHECK(symbol_unimodularity_residual(sym) < 1e-6);
  CHECK(symbol_identity_residual(sym) < 1e-6);
}

TEST_CASE("right symbol with zeros") {
  auto S = make_scattering(0.1);
  auto eta_under = make_wedge_member(0.0, 1.0, 0.6, false, {cplx(-0.3, -1.4)});
  auto sym = build_symbol(eta_under, S);
  CHECK(sym.bzeros.size() == 2);
  CHECK(symbol_unimodularity_residual(sym) < 1e-6);
  CHECK(symbol_identity_residual(sym) < 1e-6);
}

TEST_CASE("covariance under wedge translation") {
  auto S = make_scattering(0.1);
  double b0 = 0.2, b1 = 0.9;  // translation in the right wedge
  auto eta_under = make_wedge_member(0.0, 1.0, 0.5, false);
  auto moved = eta_under;
  moved.a0 += 0.5 * b0;  // the squared function picks up the full phase
  moved.a1 += 0.5 * b1;
  auto sym0 = build_symbol(eta_under, S);
  auto sym1 = build_symbol(moved, S);
  // on the unimodular line the symbol picks up exactly e^{-i b.p(t)}
  for (double t = -3.0; t <= 3.0; t += 0.5) {
    cplx z(t, -2 * PI / 3);
    cplx expect = std::exp(-I * momentum_pair(b0, b1, cplx(t)));
    CHECK(std::abs(sym1(z) / sym0(z) - expect) < 1e-6);
  }
}

TEST_CASE("conjugation link between the two sides") {
  auto S = make_scattering(0.3);
  auto xi_under = make_wedge_member(0.05, -0.6, 0.45, true);
  auto left_sym = build_symbol(xi_under, S);
  auto right_sym = build_symbol(xi_under.reflected(), S);
  for (double t = -2.0; t <= 2.0; t += 0.5)
    for (double y : {-PI / 3, -PI / 2, -2 * PI / 3}) {
      cplx z(t, y);
      CHECK(std::abs(right_sym(z) - std::conj(left_sym(std::conj(z)))) < 1e-10);
    }
}
