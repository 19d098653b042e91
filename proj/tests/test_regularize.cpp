#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "distmul/error.hpp"
#include "distmul/numerics.hpp"
#include "distmul/regularize.hpp"

#include <cmath>

using namespace distmul;

TEST_CASE("sequence parameters") {
  const SeqParams p(0.5, 16);
  CHECK(p.scale() == doctest::Approx(4.0));
  CHECK(p.radius() == doctest::Approx(0.25));
  CHECK_THROWS_AS(SeqParams(0.0, 4), Error);
  CHECK_THROWS_AS(SeqParams(1.0, 0), Error);
}

TEST_CASE("delta sequence has unit mass and shrinking support") {
  const auto phi = make_mollifier(4);
  for (long n : {2L, 8L, 64L}) {
    const SeqParams p(1.0, n);
    const double h = p.radius();
    const auto mass = adaptive_quad([&](double x) { return delta_seq(phi, p, x); }, -h, h, 1e-12);
    CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(delta_seq(phi, p, 1.01 * h) == 0.0);
  }
}

TEST_CASE("convolved delta derivatives pair like the distribution") {
  // int n^{(k+1)b} Phi^(k)(n^b x) psi(x) dx -> (-1)^k psi^(k)(0) as n grows.
  const auto phi = make_mollifier(6);
  auto psi = [](double x) { return std::cos(x) + x * x * x; };
  const double psi_k[] = {1.0, 0.0, -1.0};
  for (int k = 0; k < 3; ++k) {
    const SeqParams p(1.0, 4096);
    const double h = p.radius();
    const auto r = adaptive_quad([&](double x) { return conv_delta_deriv(k, phi, p, x) * psi(x); },
                                 -h, h, QuadOptions{1e-10, 1e-10, 4000, 1e-12});
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    CHECK(r.value == doctest::Approx(sign * psi_k[k]).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("convolution of continuous functions") {
  const auto phi = make_mollifier(2);
  const auto f = hat(0.0, 1.0);
  const SeqParams p(1.0, 100);
  // Away from kinks the hat is linear, so the even mollifier reproduces it.
  CHECK(conv_function(f, phi, p, 0.5) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(conv_function(f, phi, p, -0.4) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(conv_function(f, phi, p, 0.0) < 1.0);
  CHECK(conv_function(f, phi, p, 1.5) == 0.0);
  // Mass is preserved.
  const auto mass = adaptive_quad([&](double x) { return conv_function(f, phi, p, x); }, -1.02, 1.02,
                                  QuadOptions{1e-9, 1e-9, 4000, 0.0}, std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("reference sequence examples") {
  const auto phi = make_mollifier(6);
  for (double beta : {0.5, 1.0, 2.0})
    CHECK(delta_seq(phi, SeqParams(beta, 1), 0.3) == doctest::Approx(phi(0.3)));
  CHECK(delta_seq(phi, SeqParams(1.0, 4), 0.0) == 0.0);
  const SeqParams p(1.0, 2);
  CHECK(conv_delta_deriv(0, phi, p, 0.2) == delta_seq(phi, p, 0.2));
  CHECK(conv_delta_deriv(2, phi, p, 0.25) == doctest::Approx(8.0 * 29.0395973525135).epsilon(1e-12));
  CHECK(conv_delta_deriv(1, phi, SeqParams(1.0, 7), 0.0) == 0.0);
}

TEST_CASE("conv_delta_deriv is the derivative of the lower order") {
  const auto phi = make_mollifier(6);
  const SeqParams p(1.0, 3);
  const double h = 1e-4;
  for (int k = 0; k < 4; ++k)
    for (double x : {-0.25, -0.1, 0.05, 0.2}) {
      const double fd = (-conv_delta_deriv(k, phi, p, x + 2 * h) + 8 * conv_delta_deriv(k, phi, p, x + h) -
                         8 * conv_delta_deriv(k, phi, p, x - h) + conv_delta_deriv(k, phi, p, x - 2 * h)) /
                        (12 * h);
      const double exact = conv_delta_deriv(k + 1, phi, p, x);
      CHECK(std::abs(exact - fd) <= 1e-5 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("reference convolution examples") {
  const auto phi = make_mollifier(6);
  const SeqParams p(1.0, 10);
  const CompactContinuous one([](double) { return 1.0; }, -1.0, 1.0);
  CHECK(conv_function(one, phi, p, 0.5) == doctest::Approx(1.0).epsilon(1e-9));
  const CompactContinuous ident([](double x) { return x; }, -2.0, 2.0);
  CHECK(conv_function(ident, phi, p, 0.5) == doctest::Approx(0.5).epsilon(1e-9));
  const auto apex = hat(0.0, 1.0);
  CHECK(conv_function(apex, phi, p, 0.0) < 1.0);
}

TEST_CASE("convolution converges uniformly for Lipschitz functions") {
  const auto phi = make_mollifier(2);
  const auto f = hat(0.1, 0.8, 0.8);  // unit slope
  double last = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const SeqParams p(1.0, 1L << i);
    double worst = 0.0;
    for (int j = 0; j < 50; ++j) {
      const double x = -1.0 + 2.0 * (j + 0.5) / 50.0;
      worst = std::max(worst, std::abs(conv_function(f, phi, p, x) - f(x)));
    }
    last = worst;
  }
  CHECK(last < 1e-3);
}

TEST_CASE("pairing with conv_delta_deriv converges under extrapolation") {
  const auto phi = make_mollifier(6);
  const TestFunction psi(0.2, 1.0, {1.0, 0.5});
  for (int k = 0; k < 3; ++k) {
    std::vector<std::pair<double, double>> terms;
    for (long n = 4; n <= 2048; n *= 2) {
      const SeqParams p(1.0, n);
      const double h = p.radius();
      const auto r = adaptive_quad([&](double x) { return conv_delta_deriv(k, phi, p, x) * psi(x); }, -h, h,
                                   QuadOptions{1e-12, 1e-12, 4000, 1e-13}, std::vector<double>{0.0});
      terms.emplace_back(double(n), r.value);
    }
    const auto est = extrapolate(terms, 1e-4);
    const double expect = ((k % 2 == 0) ? 1.0 : -1.0) * psi(0.0, k);
    CHECK(est.value == doctest::Approx(expect).epsilon(1e-4));
  }
}
