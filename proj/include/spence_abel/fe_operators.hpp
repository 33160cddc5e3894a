#pragma once

#include <array>
#include <vector>

#include "spence_abel/config_coords.hpp"

namespace spence_abel {

/// Homogeneous differential: (δc)(z0,...,z_{n+1}) = Σ (-1)^j c(..., ẑ_j, ...).
/// The returned function accepts tuples of up to 8 points.
ConfigFunction delta(ConfigFunction c);

/// Five-term operator:
///   f(x) - f(y) - f(x/y) - f((y-1)/(x-1)) + f(x(y-1)/(y(x-1))).
/// The returned function throws DomainError outside 0 < x < y < 1.
AltFunction2 tau3(AltFunction1 f);

/// Six-term operator in the sign convention of the reduced differential:
///   -g(x,y) + g(x,z) - g(y,z) + g(x/z, y/z) + g((z-1)/(x-1), (z-1)/(y-1))
///   - g(x(z-1)/(z(x-1)), y(z-1)/(z(y-1))).
/// Throws DomainError outside 0 < x < y < z < 1.
AltFunction3 tau4(AltFunction2 g);

/// Left-hand side of the 6-term compatibility equation for a right-hand side
/// R; equal to -tau4(R).
AltFunction3 six_term_lhs(AltFunction2 r);

/// Unchecked evaluations of the two operators.
double five_term(const AltFunction1& f, double x, double y);
double six_term(const AltFunction2& g, double x, double y, double z);

/// Reflection relation of the 2-variable alternating space,
/// (x,y) ↦ (1-y, (1-y)/(1-x)).
std::array<double, 2> reflect_p2(double x, double y);

/// Tensor grids on the open simplices, kept at distance `margin` from the
/// boundary (including the diagonals). n^d points for an n-point axis.
std::vector<double> interval_margin_grid(int n, double margin = 1e-3);
std::vector<std::array<double, 2>> p2_margin_grid(int n, double margin = 1e-3);
std::vector<std::array<double, 3>> p3_margin_grid(int n, double margin = 1e-3);

struct ResidualSample {
  std::vector<double> point;
  double value = 0.0;
};

/// Sup-norm residual over a finite sample set.
struct Residual {
  double sup_abs = 0.0;            // max |value| over all samples
  double five_term_sup = 0.0;      // part from the 5-term equation
  double reflection_sup = 0.0;     // part from L(1-x) + L(x) - C
  std::vector<ResidualSample> samples;
};

/// Residual of the perturbed system
///   5-term(L)(x,y) = R(x,y) on the grid,  L(1-x) + L(x) = C
/// on the coordinates of the grid points.
Residual spence_abel_residual(const AltFunction1& L, const AltFunction2& R,
                              double C,
                              const std::vector<std::array<double, 2>>& grid);

}  // namespace spence_abel
