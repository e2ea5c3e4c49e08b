#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <stripbench/smatrix.hpp>
#include <random>
#include <algorithm>

using namespace sb;

// admissible decoration pair with an interior negative-real-part line value;
// keeps unitarity, hermitian analyticity and S(0) = -1 intact
static std::vector<BlaschkeFactor> violating_pair() {
  cplx w(0.1, 2.2);
  return {{w, 1.0}, {-std::conj(w), std::polar(1.0, -2.0 * w.imag())}};
}

TEST_CASE("construction guards") {
  CHECK_THROWS_WITH_AS(make_scattering(0.6), doctest::Contains("OutOfRange"), Error);
  CHECK_THROWS_WITH_AS(make_scattering(-PI / 6), doctest::Contains("OutOfRange"), Error);
  CHECK_THROWS_WITH_AS(make_scattering(0.1, {{cplx(0.0, -0.5), 1.0}}),
                       doctest::Contains("BadZero"), Error);
  CHECK_NOTHROW(make_scattering(0.0));
}

TEST_CASE("eval_S point values") {
  auto S0 = make_scattering(0.0);
  CHECK(std::abs(S0.eval(0.0) + 1.0) < 1e-14);

  auto S1 = make_scattering(0.1);
  // frozen 50-digit multiprecision factor-by-factor evaluation at zeta = 1
  cplx oracle(0.49123025213399379493, -0.87102975803836511903);
  CHECK(std::abs(S1.eval(1.0) - oracle) < 1e-12 * std::abs(oracle));

  // crossing at a sample interior point
  cplx z(0.7, 0.4);
  CHECK(std::abs(S1.eval(z) - S1.eval(PI * I - z)) < 1e-12);

  CHECK_THROWS_WITH_AS(S1.eval(PI * I / 3.0), doctest::Contains("AtPole"), Error);

  // unimodularity on R with one admissible decoration pair
  auto Sb = make_scattering(0.1, violating_pair());
  for (int j = 0; j < 1000; ++j) {
    double t = -10.0 + 20.0 * (j + 0.5) / 1000;
    CHECK(std::abs(std::abs(Sb.eval(t)) - 1.0) < 1e-12);
  }
}

TEST_CASE("periodicity 2 pi i") {
  auto S = make_scattering(0.2);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ur(-5.0, 5.0), ui(0.1, PI - 0.1);
  for (int k = 0; k < 100; ++k) {
    cplx z(ur(rng), ui(rng));
    if (std::abs(z - PI * I / 3.0) < 1e-2 || std::abs(z - 2.0 * PI * I / 3.0) < 1e-2) continue;
    CHECK(std::abs(S.eval(z + 2.0 * PI * I) - S.eval(z)) < 1e-10 * std::abs(S.eval(z)) + 1e-10);
  }
}

TEST_CASE("winding and zeros at epsilon 0") {
  auto S = make_scattering(0.0);
  int w = winding_number([&](cplx z) { return S.eval(z); },
                         ComplexRect(-5.0, 5.0, 0.05, PI - 0.05));
  CHECK(w == 2);  // four zeros minus two simple poles

  auto zeros = strip_zeros(S);
  REQUIRE(zeros.size() == 4);
  CHECK(std::abs(zeros[0] - PI * I / 6.0) < 1e-8);
  CHECK(std::abs(zeros[1] - PI * I / 2.0) < 1e-6);  // double zero
  CHECK(std::abs(zeros[2] - PI * I / 2.0) < 1e-6);
  CHECK(std::abs(zeros[3] - 5.0 * PI * I / 6.0) < 1e-8);
}

TEST_CASE("zeros at epsilon 0.2") {
  auto S = make_scattering(0.2);
  auto zeros = strip_zeros(S);
  REQUIRE(zeros.size() == 4);
  CHECK(std::abs(zeros[0] - (PI / 6.0 + 0.2) * I) < 1e-8);
  CHECK(std::abs(zeros[1] - (PI / 2.0 - 0.2) * I) < 1e-8);
  CHECK(std::abs(zeros[2] - (PI / 2.0 + 0.2) * I) < 1e-8);
  CHECK(std::abs(zeros[3] - (5.0 * PI / 6.0 - 0.2) * I) < 1e-8);
}

TEST_CASE("kappa closed forms") {
  CHECK(std::abs(kappa_of(make_scattering(0.0)) - PI / 6.0) < 1e-9);
  CHECK(std::abs(kappa_of(make_scattering(0.2)) - (PI / 6.0 + 0.2)) < 1e-9);
  CHECK(std::abs(kappa_of(make_scattering(-0.1)) - (PI / 6.0 - 0.1)) < 1e-9);
}

TEST_CASE("residue oracle values") {
  // frozen multiprecision closed-form residues at 2 pi i/3
  struct { double eps; double imR; } oracle[] = {
      {0.0, 0.06664199358161926}, {0.1, 0.0467026028519371},
      {-0.1, 0.08553324465583361}, {0.4, 0.004376043311759093},
      {-0.4, 0.08009287283717453}, {0.3, 0.01406261447025779}};
  for (auto& o : oracle) {
    cplx R = residue_R(make_scattering(o.eps));
    CHECK(std::abs(R.real()) / std::abs(R) < 1e-8);
    CHECK(R.imag() > 0);
    CHECK(std::abs(R.imag() - o.imR) < 1e-9);
  }
  // calibration: i/(z - 2 pi i/3) has residue i
  cplx r = residue_at([](cplx z) { return I / (z - 2.0 * PI * I / 3.0); }, 2.0 * PI * I / 3.0);
  CHECK(std::abs(r - I) < 1e-10);
}

TEST_CASE("axiom suite for the plain family") {
  RapidityGrid grid(12.0, 2048);
  for (double eps : {0.0, 0.4}) {
    auto rep = check_axioms(make_scattering(eps), grid);
    for (auto& e : rep.entries) {
      INFO(e.name, " residual=", e.residual, " note=", e.note);
      CHECK(e.pass);
    }
  }
}

TEST_CASE("axiom verdicts stable under lattice refinement") {
  RapidityGrid g1(12.0, 2048), g2(12.0, 4096);
  auto r1 = check_axioms(make_scattering(0.1), g1);
  auto r2 = check_axioms(make_scattering(0.1), g2);
  REQUIRE(r1.entries.size() == r2.entries.size());
  for (size_t i = 0; i < r1.entries.size(); ++i)
    CHECK(r1.entries[i].pass == r2.entries[i].pass);
}

TEST_CASE("decorated family violates the real-part bound") {
  RapidityGrid grid(12.0, 2048);
  auto S = make_scattering(0.1, violating_pair());
  auto rep = check_axioms(S, grid);
  CHECK(rep["S1"].pass);
  CHECK(rep["S2"].pass);
  CHECK(rep["S6"].pass);
  CHECK_FALSE(rep["S7"].pass);
  // frozen scan: minimum of Re S(t + 2 pi i/3) near -0.342 at t near -2.82
  double min_re = -rep["S7"].residual;
  CHECK(min_re < -0.3);
  CHECK(std::abs(rep["S7"].argmax.real() + 2.82) < 0.2);
}

TEST_CASE("inequality K") {
  RapidityGrid grid(12.0, 2048);
  auto near_max = check_inequality_K(make_scattering(PI / 6.0 - 1e-3), grid);
  CHECK(near_max.pass);
  // exploratory value at 0: recorded, no assertion on sign
  auto at0 = check_inequality_K(make_scattering(0.0), grid);
  CHECK(std::isfinite(at0.min_value));
  // constant amplitude -1: min Re[(-1)(-1)] = 1
  RapidityGrid small(12.0, 64);
  double mn = 1e300;
  for (double t : small.nodes) mn = std::min(mn, ((-1.0) * (-1.0)));
  CHECK(mn == 1.0);
}

TEST_CASE("bootstrap residual shrinks with refinement") {
  // the identity is exact; the residual is floating noise and must stay tiny
  auto S = make_scattering(0.3);
  double worst = 0;
  for (int j = 0; j < 512; ++j) {
    cplx z(-10.0 + 20.0 * (j + 0.5) / 512, 0.41);
    worst = std::max(worst,
                     std::abs(S.eval(z) - S.eval(z + PI * I / 3.0) * S.eval(z - PI * I / 3.0)));
  }
  CHECK(worst < 1e-10);
}
