#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "distmul/error.hpp"
#include "distmul/mollifier.hpp"
#include "distmul/numerics.hpp"

#include <cmath>

using namespace distmul;

// Reference values computed independently at high precision.
TEST_CASE("normalization constants") {
  const std::pair<int, double> ref[] = {{0, 0.443993816168079},  {2, 0.0702014767529754},
                                        {4, 0.0235235995711448}, {6, 0.0102398235135444},
                                        {8, 0.00513546426233189}, {16, 0.000648998563060568}};
  for (auto [m, F] : ref) CHECK(make_mollifier(m).normalization() == doctest::Approx(F).epsilon(1e-12));
}

TEST_CASE("values and derivatives for m = 6") {
  const auto phi = make_mollifier(6);
  CHECK(phi(0.5) == doctest::Approx(0.402224245135703).epsilon(1e-12));
  CHECK(phi(0.5, 1) == doctest::Approx(4.11162561694274).epsilon(1e-12));
  CHECK(phi(0.5, 2) == doctest::Approx(29.0395973525135).epsilon(1e-12));
  CHECK(phi(1.0) == 0.0);
  CHECK(phi(-1.3, 4) == 0.0);
  CHECK(eval_phi(phi, 0.2, 3) == phi(0.2, 3));
}

TEST_CASE("inverse moments for m = 6") {
  const auto phi = make_mollifier(6);
  CHECK(phi.moment(2).value == doctest::Approx(2.29726611401354862).epsilon(1e-9));
  CHECK(phi.moment(4).value == doctest::Approx(6.85573112272086118).epsilon(1e-9));
  CHECK(moment(phi, 6).value == doctest::Approx(43.3595184116991463).epsilon(1e-9));
  CHECK(phi.moment(3).value == 0.0);
  CHECK(phi.moment(2).j == 2);
}

TEST_CASE("unit mass and symmetry for every supported even m") {
  for (int m = 0; m <= kMaxMollifierPower; m += 2) {
    const auto phi = make_mollifier(m);
    const auto mass = adaptive_quad([&](double x) { return phi(x); }, -1.0, 1.0, 1e-12);
    CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-10));
    for (double x : {0.1, 0.45, 0.9}) {
      CHECK(phi(-x) == doctest::Approx(phi(x)));
      CHECK(phi(-x, 1) == doctest::Approx(-phi(x, 1)));
    }
  }
}

TEST_CASE("odd inverse moments vanish and even ones are positive") {
  const auto phi = make_mollifier(8);
  for (int j = 1; j <= 7; j += 2) CHECK(phi.moment(j).value == 0.0);
  for (int j = 2; j <= 6; j += 2) CHECK(phi.moment(j).value > 0.0);
}

TEST_CASE("derivatives agree with finite differences") {
  const auto phi = make_mollifier(4);
  const double h = 1e-3;
  for (int r = 0; r < phi.max_deriv(); ++r)
    for (double x : {-0.7, -0.2, 0.05, 0.5, 0.8}) {
      const double fd =
          (-phi(x + 2 * h, r) + 8 * phi(x + h, r) - 8 * phi(x - h, r) + phi(x - 2 * h, r)) / (12 * h);
      const double scale = std::max(1.0, std::abs(phi(x, r + 1)));
      CHECK(std::abs(phi(x, r + 1) - fd) / scale < 1e-5);
    }
}

TEST_CASE("invalid mollifiers and moments") {
  try {
    make_mollifier(3);
    FAIL("odd m accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parity);
  }
  CHECK_THROWS_AS(make_mollifier(18), Error);
  CHECK_THROWS_AS(make_mollifier(-2), Error);
  const auto phi = make_mollifier(2);
  try {
    phi.moment(4);
    FAIL("divergent moment accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivergentMoment);
  }
  CHECK_THROWS_AS(phi(0.1, kMaxMollifierDerivative + 1), Error);
}

TEST_CASE("moments are cached and shared between copies") {
  const auto phi = make_mollifier(6);
  const auto copy = phi;
  CHECK(phi.moment(4).value == copy.moment(4).value);
}

TEST_CASE("reference mollifier examples") {
  const auto phi = make_mollifier(6);
  CHECK(make_mollifier(0).normalization() == doctest::Approx(0.443994).epsilon(1e-6));
  CHECK(phi(0.0) == 0.0);
  for (int m = 0; m <= 8; m += 2)
    for (int r = 0; r <= 3; ++r) CHECK(make_mollifier(m)(1.0, r) == 0.0);
  const double h = 1e-5;
  CHECK(phi(0.5, 1) == doctest::Approx((phi(0.5 + h) - phi(0.5 - h)) / (2 * h)).epsilon(1e-6));
  CHECK(phi.moment(1).value == 0.0);
}

TEST_CASE("derivatives at 20 interior points") {
  const auto phi = make_mollifier(6);
  const double h = 1e-3;
  for (int i = 0; i < 20; ++i) {
    const double x = -0.95 + 1.9 * (i + 0.5) / 20.0;
    for (int r = 0; r < 4; ++r) {
      const double fd =
          (-phi(x + 2 * h, r) + 8 * phi(x + h, r) - 8 * phi(x - h, r) + phi(x - 2 * h, r)) / (12 * h);
      const double exact = phi(x, r + 1);
      CHECK(std::abs(exact - fd) <= 1e-5 * std::max(1.0, std::abs(exact)));
    }
  }
}
