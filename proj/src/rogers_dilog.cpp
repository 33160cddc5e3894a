#include "spence_abel/rogers_dilog.hpp"

#include <cmath>
#include <string>

#include "spence_abel/config_coords.hpp"
#include "spence_abel/errors.hpp"

namespace spence_abel {

namespace {

constexpr int kSeriesTerms = 64;

void require_open_angle(double phi, const char* what) {
  if (!(phi > 0.0 && phi < kTwoPi)) {
    throw DomainError(std::string(what) + ": angle must lie in (0, 2π)");
  }
}

// Σ_{n≤N} xⁿ/n² for 0 ≤ x ≤ 1/2.
double li2_series(double x) {
  double term = x;
  double sum = 0.0;
  for (int n = 1; n <= kSeriesTerms; ++n) {
    sum += term / (static_cast<double>(n) * n);
    term *= x;
  }
  const double n1 = kSeriesTerms + 1.0;
  const double tail = term / (n1 * n1 * (1.0 - x));
  if (tail > 1e-17 * sum) {
    throw DomainError("li2_reference: series tail bound not met");
  }
  return sum;
}

}  // namespace

int orientation_sign(std::span<const double> angles) {
  if (angles.size() != 5) {
    throw DomainError("orientation_sign: expected five angles");
  }
  require_distinct(angles);
  return cyclic_sort(angles).sign;
}

Cocycle5 orientation_cocycle(double scale) {
  Cocycle5::Evaluator ev = [scale](std::span<const double, 5> a) {
    return scale * cyclic_sort(a).sign;
  };
  return Cocycle5(std::move(ev), "orientation cocycle", std::abs(scale))
      .as_piecewise_constant()
      .with_reflection_parity(1);
}

double I1(double theta0, double theta1, double theta2, double theta3) {
  if (!(0.0 <= theta0 && theta0 < theta1 && theta1 < theta2 &&
        theta2 < theta3 && theta3 < kTwoPi)) {
    throw DomainError("I1: expected 0 ≤ θ0 < θ1 < θ2 < θ3 < 2π");
  }
  return -kZeta2 / (2.0 * kPi) * (theta0 - theta1 + theta2 - theta3 + kPi);
}

std::complex<double> I2(double theta1, double theta2) {
  if (!(0.0 < theta1 && theta1 < theta2 && theta2 < kTwoPi)) {
    throw DomainError("I2: expected 0 < θ1 < θ2 < 2π");
  }
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> e1 = std::polar(1.0, theta1);
  const std::complex<double> e2 = std::polar(1.0, theta2);
  return -i * kZeta2 / (2.0 * kPi * kPi) *
         ((e2 - 1.0) * (theta1 - kPi) - (e1 - 1.0) * (theta2 - kPi) - kPi);
}

std::complex<double> I3(double theta) {
  require_open_angle(theta, "I3");
  const std::complex<double> i(0.0, 1.0);
  return -i * kZeta2 / (2.0 * kPi * kPi) *
         (2.0 * std::sin(theta) + theta - kPi);
}

std::complex<double> r_c_closed(double phi) {
  require_open_angle(phi, "r_c_closed");
  const double h = 0.5 * phi;
  const double bracket =
      (kPi - phi) * std::cos(h) / std::sin(h) + 6.0 * std::log(std::sin(h));
  return kZeta2 / (4.0 * kPi * kPi) * (1.0 - std::polar(1.0, phi)) * bracket;
}

std::string_view to_string(FormulaVariant v) {
  return v == FormulaVariant::kBody ? "body" : "intro";
}

FormulaVariant parse_formula_variant(std::string_view s) {
  if (s == "body") return FormulaVariant::kBody;
  if (s == "intro") return FormulaVariant::kIntro;
  throw InvalidInput("unknown formula variant '" + std::string(s) +
                     "' (expected body or intro)");
}

double f_flat_closed(double phi1, double phi2, FormulaVariant variant) {
  if (!(0.0 < phi1 && phi1 < phi2 && phi2 < kTwoPi)) {
    throw DomainError("f_flat_closed: expected 0 < φ1 < φ2 < 2π");
  }
  const double pi2 = kPi * kPi;
  const bool body = variant == FormulaVariant::kBody;
  const double lead = (body ? -1.0 : 1.0) * kZeta2 / (4.0 * pi2);
  const double log_coeff = 3.0 * kZeta2 / ((body ? 2.0 : 8.0) * pi2);
  const double s = std::sin(0.5 * (phi2 - phi1));
  const double poly = (3.0 * phi1 - 2.0 * kPi) * (std::cos(phi2) - 1.0) -
                      (3.0 * phi2 - 4.0 * kPi) * (std::cos(phi1) - 1.0);
  const double logs = std::sin(phi1) * std::log(s / std::sin(0.5 * phi1)) -
                      std::sin(phi2) * std::log(s / std::sin(0.5 * phi2));
  return lead * poly + log_coeff * logs;
}

double rogers_new_formula(double x, const QuadConfig& cfg,
                          FormulaVariant variant) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("rogers_new_formula: x must lie in (0, 1)");
  }
  // ∫₀^T F♭(n_t.2arccot(a), n_t.2arccot(-a)) dt, with the orbit written out.
  auto orbit_integral = [&](double T, double a) {
    auto f = [&](double t) {
      return f_flat_closed(2.0 * arccot(-t + a), 2.0 * arccot(-t - a), variant);
    };
    return integrate_adaptive<double>(f, 0.0, T, cfg).value;
  };
  const double at = std::atan(2.0 * x / (1.0 - x * x));
  const double first =
      variant == FormulaVariant::kBody
          ? kZeta2 / 2.0 + kZeta2 / (2.0 * kPi) * (at - kPi / 2.0)
          : kZeta2 / 2.0 - kZeta2 / (2.0 * kPi) * (at + kPi / 2.0);
  return first - orbit_integral((-x - 1.0) / (2.0 * x), (1.0 - x) / (2.0 * x)) +
         orbit_integral((x + 1.0) / 2.0, (1.0 - x) / 2.0) -
         orbit_integral(0.5, 0.5) + orbit_integral(x / 2.0, x / 2.0);
}

double li2_reference(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("li2_reference: x must lie in [0, 1]");
  }
  if (x == 1.0) return kZeta2;
  if (x <= 0.5) return li2_series(x);
  const double y = 1.0 - x;
  return kZeta2 - std::log(x) * std::log(y) - li2_series(y);
}

double rogers_reference(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("rogers_reference: x must lie in (0, 1)");
  }
  return 0.5 * (li2_reference(x) - li2_reference(1.0 - x) + kZeta2);
}

}  // namespace spence_abel
