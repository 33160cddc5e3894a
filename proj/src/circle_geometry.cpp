#include "spence_abel/circle_geometry.hpp"

#include <cmath>

#include "spence_abel/errors.hpp"

namespace spence_abel {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Chordal distance on the Riemann sphere.
double sphere_distance(const ExtComplex& z, const ExtComplex& w) {
  if (z.is_infinite() && w.is_infinite()) return 0.0;
  if (z.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(w.value()));
  if (w.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(z.value()));
  const auto a = z.value();
  const auto b = w.value();
  return 2.0 * std::abs(a - b) /
         std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

}  // namespace

std::complex<double> ExtComplex::value() const {
  if (infinite_) throw DomainError("ExtComplex::value: point at infinity");
  return value_;
}

CirclePoint::CirclePoint(double angle) : angle_(wrap_angle(angle)) {}

CirclePoint CirclePoint::from_complex(std::complex<double> w) {
  return CirclePoint(std::arg(w));
}

std::complex<double> CirclePoint::to_complex() const {
  return std::polar(1.0, angle_);
}

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double chordal_distance(double a, double b) {
  return 2.0 * std::abs(std::sin(0.5 * (a - b)));
}

double arccot(double u) {
  // atan(1/u) keeps full relative accuracy for large u.
  if (u > 0.0) return std::atan(1.0 / u);
  if (u < 0.0) return kPi + std::atan(1.0 / u);
  return 0.5 * kPi;
}

ExtComplex cross_ratio(const ExtComplex& z1, const ExtComplex& z2,
                       const ExtComplex& z3, const ExtComplex& z4) {
  const ExtComplex* pts[4] = {&z1, &z2, &z3, &z4};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (sphere_distance(*pts[i], *pts[j]) < kDistinctnessTolerance) {
        throw DegenerateConfiguration("cross_ratio: entries " +
                                      std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1) + " coincide");
      }
    }
  }
  // Each infinite entry removes the two factors it appears in.
  if (z1.is_infinite()) {
    return (z2.value() - z4.value()) / (z2.value() - z3.value());
  }
  if (z2.is_infinite()) {
    return (z1.value() - z3.value()) / (z1.value() - z4.value());
  }
  if (z3.is_infinite()) {
    return (z2.value() - z4.value()) / (z1.value() - z4.value());
  }
  if (z4.is_infinite()) {
    return (z1.value() - z3.value()) / (z2.value() - z3.value());
  }
  const auto a = z1.value(), b = z2.value(), c = z3.value(), d = z4.value();
  return ((a - c) * (b - d)) / ((b - c) * (a - d));
}

double circle_cross_ratio(double a, double b, double c, double d) {
  return (std::sin(0.5 * (a - c)) * std::sin(0.5 * (b - d))) /
         (std::sin(0.5 * (b - c)) * std::sin(0.5 * (a - d)));
}

ExtComplex cayley(const ExtComplex& z) {
  if (z.is_infinite()) return ExtComplex(1.0);
  const auto v = z.value();
  if (v == -kI) return ExtComplex::infinity();
  return (v - kI) / (v + kI);
}

ExtComplex cayley_inv(const ExtComplex& w) {
  if (w.is_infinite()) return ExtComplex(-kI);
  const auto v = w.value();
  if (v == std::complex<double>(1.0, 0.0)) return ExtComplex::infinity();
  return kI * (1.0 + v) / (1.0 - v);
}

CirclePoint theta_of_x(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("theta_of_x: x must lie in (0,1), got " +
                      std::to_string(x));
  }
  return CirclePoint(2.0 * std::atan(x) + kPi);
}

double nt_angle_action(double t, double phi) {
  if (!(phi > 0.0 && phi < kTwoPi)) {
    throw DomainError("nt_angle_action: angle must lie in (0,2π)");
  }
  const double h = 0.5 * phi;
  return 2.0 * arccot(-t + std::cos(h) / std::sin(h));
}

double NtElement::act(double phi) const { return nt_angle_action(t, phi); }

ExtComplex NtElement::apply(const ExtComplex& z) const {
  const std::complex<double> a = 1.0 + 0.5 * kI * t;
  const std::complex<double> b = -0.5 * kI * t;
  const std::complex<double> c = 0.5 * kI * t;
  const std::complex<double> d = 1.0 - 0.5 * kI * t;
  return MobiusMap{a, b, c, d}.apply(z);
}

Pu11Element Pu11Element::from_unnormalized(std::complex<double> a,
                                           std::complex<double> b) {
  const double det = std::norm(a) - std::norm(b);
  if (!(det > 0.0)) {
    throw DomainError("Pu11Element: requires |a| > |b|");
  }
  const double s = std::sqrt(det);
  return {a / s, b / s};
}

ExtComplex Pu11Element::apply(const ExtComplex& z) const {
  return MobiusMap{a, b, std::conj(b), std::conj(a)}.apply(z);
}

double Pu11Element::act_on_angle(double angle) const {
  const auto w = std::polar(1.0, angle);
  return wrap_angle(std::arg((a * w + b) / (std::conj(b) * w + std::conj(a))));
}

ExtComplex MobiusMap::apply(const ExtComplex& z) const {
  if (z.is_infinite()) {
    if (c == std::complex<double>(0.0, 0.0)) return ExtComplex::infinity();
    return a / c;
  }
  const auto v = z.value();
  const auto den = c * v + d;
  if (den == std::complex<double>(0.0, 0.0)) return ExtComplex::infinity();
  return (a * v + b) / den;
}

}  // namespace spence_abel
