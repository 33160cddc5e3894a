#pragma once

#include <complex>
#include <numbers>

namespace spence_abel {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Minimal chordal distance between points regarded as distinct.
inline constexpr double kDistinctnessTolerance = 1e-10;

/// A point of the extended complex plane. Infinity is a tagged sentinel and
/// never encoded as a large or non-finite float.
class ExtComplex {
 public:
  constexpr ExtComplex() = default;
  constexpr ExtComplex(std::complex<double> z) : value_(z) {}  // NOLINT
  constexpr ExtComplex(double x) : value_(x, 0.0) {}           // NOLINT

  static constexpr ExtComplex infinity() {
    ExtComplex z;
    z.infinite_ = true;
    return z;
  }

  constexpr bool is_infinite() const { return infinite_; }
  /// Finite part; throws DomainError on infinity.
  std::complex<double> value() const;

  friend bool operator==(const ExtComplex& a, const ExtComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  std::complex<double> value_{0.0, 0.0};
  bool infinite_ = false;
};

/// Point of the unit circle, stored by its angle in [0, 2π).
class CirclePoint {
 public:
  constexpr CirclePoint() = default;
  /// Any real angle; reduced modulo 2π.
  explicit CirclePoint(double angle);

  static CirclePoint from_complex(std::complex<double> w);

  constexpr double angle() const { return angle_; }
  std::complex<double> to_complex() const;
  ExtComplex to_ext() const { return ExtComplex(to_complex()); }

 private:
  double angle_ = 0.0;
};

/// Reduce an angle to [0, 2π).
double wrap_angle(double angle);

/// Chordal distance |e^{ia} - e^{ib}|.
double chordal_distance(double a, double b);

/// arccot with range (0, π).
double arccot(double u);

/// Cross ratio (z1-z3)(z2-z4) / ((z2-z3)(z1-z4)), normalized so that
/// [z:1:0:∞] = z. Entries equal to ∞ cancel their two factors exactly.
/// Throws DegenerateConfiguration when two entries coincide.
ExtComplex cross_ratio(const ExtComplex& z1, const ExtComplex& z2,
                       const ExtComplex& z3, const ExtComplex& z4);

/// Cross ratio of four circle points given by angles. It is real and equals
///   sin((a-c)/2) sin((b-d)/2) / (sin((b-c)/2) sin((a-d)/2)).
/// No distinctness check; this is the evaluation kernel of the coordinate
/// maps.
double circle_cross_ratio(double a, double b, double c, double d);

/// Cayley transform (z - i)/(z + i); maps the extended real line onto S¹.
ExtComplex cayley(const ExtComplex& z);
/// Inverse Cayley transform i(1 + w)/(1 - w).
ExtComplex cayley_inv(const ExtComplex& w);

/// Angle of the Cayley image of x ∈ (0,1): 2·arctan(x) + π ∈ (π, 3π/2).
CirclePoint theta_of_x(double x);

/// Element n_t of the parabolic one-parameter subgroup of PU(1,1).
struct NtElement {
  double t = 0.0;

  /// n_t acting on an angle φ ∈ (0, 2π): 2·arccot(-t + cot(φ/2)).
  double act(double phi) const;
  /// n_t as a Möbius map on the extended plane.
  ExtComplex apply(const ExtComplex& z) const;
  NtElement compose(const NtElement& other) const { return {t + other.t}; }
};

/// Angle action of n_t, 2·arccot(-t + cot(φ/2)), for φ ∈ (0, 2π).
double nt_angle_action(double t, double phi);

/// Element g_{a,b} = [[a, b], [conj(b), conj(a)]] of PU(1,1), |a|²-|b|² = 1.
/// Only used to move configurations around the circle.
struct Pu11Element {
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};

  /// Normalizes (a, b) so that |a|² - |b|² = 1; requires |a| > |b|.
  static Pu11Element from_unnormalized(std::complex<double> a,
                                       std::complex<double> b);

  ExtComplex apply(const ExtComplex& z) const;
  double act_on_angle(double angle) const;
};

/// General Möbius map (az + b)/(cz + d) on the extended plane.
struct MobiusMap {
  std::complex<double> a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};

  ExtComplex apply(const ExtComplex& z) const;
};

}  // namespace spence_abel
