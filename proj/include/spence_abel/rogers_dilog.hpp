#pragma once

// The orientation cocycle, its closed-form integrals, and the integral
// representation of the Rogers dilogarithm built from it. Also a classical
// series implementation of Li₂ and L₂ used as reference.

#include <complex>
#include <span>
#include <string_view>

#include "spence_abel/cocycle.hpp"
#include "spence_abel/quadrature.hpp"

namespace spence_abel {

inline constexpr double kZeta2 = kPi * kPi / 6.0;

/// Parity of any permutation sorting five distinct angles into cyclic order.
/// Throws DegenerateConfiguration.
int orientation_sign(std::span<const double> angles);

/// c(z) = scale·(-1)^z with scale = -ζ(2)/2 by default. Marked piecewise
/// constant, so slot averages are exact arc sums.
Cocycle5 orientation_cocycle(double scale = -kZeta2 / 2.0);

/// ⨍ c(e^{iψ}, e^{iθ0}, ..., e^{iθ3}) dψ for 0 ≤ θ0 < θ1 < θ2 < θ3 < 2π.
double I1(double theta0, double theta1, double theta2, double theta3);
/// ⨍⨍ e^{iψ} c(e^{iη}, e^{iψ}, 1, e^{iθ1}, e^{iθ2}) dη dψ, 0 < θ1 < θ2 < 2π.
std::complex<double> I2(double theta1, double theta2);
/// ⨍ e^{-iφ} I2(θ, φ) dφ with I2 extended alternatingly, 0 < θ < 2π.
std::complex<double> I3(double theta);

/// r_c for the orientation cocycle:
///   ζ(2)/(4π²)·(1 - e^{iφ})·((π - φ)cot(φ/2) + 6 log sin(φ/2)).
std::complex<double> r_c_closed(double phi);

enum class FormulaVariant { kBody, kIntro };

std::string_view to_string(FormulaVariant v);
/// Accepts "body" and "intro"; throws InvalidInput otherwise.
FormulaVariant parse_formula_variant(std::string_view s);

/// Closed form of F♭ for the orientation cocycle on 0 < φ1 < φ2 < 2π.
double f_flat_closed(double phi1, double phi2,
                     FormulaVariant variant = FormulaVariant::kBody);

/// L₂(x) from the elementary first term plus four integrals of F♭ along
/// N-orbits. Only the body variant reproduces L₂.
double rogers_new_formula(double x, const QuadConfig& cfg = pipeline_quad_config(),
                          FormulaVariant variant = FormulaVariant::kBody);

/// Li₂(x) on [0,1] by the power series, with the reflection formula for
/// x > 1/2.
double li2_reference(double x);
/// L₂(x) = ½(Li₂(x) - Li₂(1-x) + ζ(2)) on (0,1).
double rogers_reference(double x);

}  // namespace spence_abel
