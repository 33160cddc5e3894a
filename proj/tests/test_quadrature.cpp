#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spence_abel/errors.hpp"
#include "spence_abel/quadrature.hpp"

using namespace spence_abel;

namespace {
constexpr double kZeta2 = kPi * kPi / 6.0;
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(QuadConfig{}.with_abs_tol(0.0).validate(), DomainError);
  QuadConfig c;
  c.rel_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = QuadConfig{};
  c.max_subdivisions = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = QuadConfig{};
  c.max_levels = 1;
  CHECK_THROWS_AS(c.validate(), DomainError);
  CHECK_NOTHROW(QuadConfig{}.validate());
}

TEST_CASE("smooth integrals under both rules") {
  for (auto rule : {QuadRule::kGaussKronrod, QuadRule::kTanhSinh}) {
    const auto cfg = QuadConfig{}.with_abs_tol(1e-10).with_rule(rule);
    const auto s = integrate_adaptive<double>([](double x) { return std::sin(x); }, 0.0, kPi, cfg);
    CHECK(std::abs(s.value - 2.0) < 1e-10);
    CHECK(s.error_estimate <= 1e-10);
    const auto e = integrate_adaptive<double>([](double x) { return std::exp(x); }, 1.0, 0.0, cfg);
    CHECK(std::abs(e.value - (1.0 - std::exp(1.0))) < 1e-10);
  }
}

TEST_CASE("tanh-sinh counts the dropped end pieces in its estimate") {
  // f(0) + f(1) = 1 + e, so about 1e-12·(1 + e) per end is not integrated.
  const auto ts = QuadConfig{}.with_abs_tol(1e-12).with_rule(QuadRule::kTanhSinh);
  CHECK_THROWS_AS(integrate_adaptive<double>([](double x) { return std::exp(x); }, 0.0, 1.0, ts),
                  ToleranceNotMet);
}

TEST_CASE("logarithmic endpoint singularities") {
  QuadConfig cfg = QuadConfig{}.with_abs_tol(1e-11);
  cfg.singular_endpoints = SingularEnds::kBoth;
  const auto r = integrate_adaptive<double>([](double x) { return std::log(x) * std::log1p(-x); }, 0.0, 1.0, cfg);
  CHECK(std::abs(r.value - (2.0 - kZeta2)) < 1e-10);

  cfg.singular_endpoints = SingularEnds::kLeft;
  CHECK(std::abs(integrate_adaptive<double>([](double x) { return std::log(x); }, 0.0, 1.0, cfg).value + 1.0) < 1e-10);

  const auto ts = QuadConfig{}.with_abs_tol(1e-11).with_rule(QuadRule::kTanhSinh);
  CHECK(std::abs(integrate_adaptive<double>([](double x) { return std::log(x); }, 0.0, 1.0,
                                            ts.with_abs_tol(1e-9)).value + 1.0) < 1e-9);
  // An inverse square root loses 2·sqrt(1e-12) at the dropped end.
  const auto inv_sqrt = [](double x) { return 1.0 / std::sqrt(x); };
  CHECK_THROWS_AS(integrate_adaptive<double>(inv_sqrt, 0.0, 1.0, ts), ToleranceNotMet);
  CHECK(std::abs(integrate_adaptive<double>(inv_sqrt, 0.0, 1.0, ts.with_abs_tol(1e-5)).value - 2.0) < 1e-5);
}

TEST_CASE("breakpoints handle kinks") {
  const std::vector<double> bp{0.3};
  const auto r = integrate_adaptive<double>([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0,
                           QuadConfig{}.with_abs_tol(1e-13), bp);
  CHECK(r.value == doctest::Approx(0.29).epsilon(1e-13));
  CHECK(r.evaluations > 0);
}

TEST_CASE("complex integrals and circle averages") {
  const auto cfg = QuadConfig{}.with_abs_tol(1e-12);
  const std::function<std::complex<double>(double)> e = [](double t) {
    return std::polar(1.0, t);
  };
  CHECK(std::abs(circle_average(e, cfg).value) < 1e-12);
  const auto half = integrate(e, 0.0, kPi, cfg).value;
  CHECK(std::abs(half - std::complex<double>(0.0, 2.0)) < 1e-12);
  const std::vector<double> bp{1.0, 4.0};
  CHECK(circle_average_adaptive<double>([](double t) { return t > 1.0 && t < 4.0 ? 1.0 : 0.0; }, cfg, bp).value ==
        doctest::Approx(3.0 / kTwoPi).epsilon(1e-12));
}

TEST_CASE("exact averages of piecewise constant functions") {
  const std::vector<double> bp{4.0, 1.0 + kTwoPi};  // wrapped and unsorted
  const double avg = piecewise_constant_circle_average(
      [](double t) { return t > 1.0 && t < 4.0 ? 2.0 : -1.0; }, bp);
  CHECK(avg == doctest::Approx((2.0 * 3.0 - (kTwoPi - 3.0)) / kTwoPi).epsilon(1e-15));
  CHECK(piecewise_constant_circle_average([](double) { return 5.0; }, std::vector<double>{}) == 5.0);
}

TEST_CASE("an exhausted budget throws with the best estimate") {
  QuadConfig cfg = QuadConfig{}.with_abs_tol(1e-14);
  cfg.max_subdivisions = 2;
  try {
    integrate_adaptive<double>([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, cfg);
    FAIL("expected ToleranceNotMet");
  } catch (const ToleranceNotMet& e) {
    CHECK(std::isfinite(e.best_real()));
    CHECK(e.error_estimate() > 1e-14);
  }
}
