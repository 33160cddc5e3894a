#pragma once

// Hyers-Ulam experiments: admissible random right-hand sides, measured
// defects and deviations on finite grids, and the bounds they must obey.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "spence_abel/config_coords.hpp"
#include "spence_abel/primitive_solver.hpp"

namespace spence_abel {

inline constexpr double kHyersUlamEpsilonConstant = 11.0;
inline constexpr double kHyersUlamOffsetConstant = 6.0;
// 1 + 16/√3 and 1 + 8/√3.
inline const double kContinuityRhsConstant = 1.0 + 16.0 / std::sqrt(3.0);
inline const double kContinuityOffsetConstant = 1.0 + 8.0 / std::sqrt(3.0);

/// Finite stand-ins for the sup norms.
struct GridSpec {
  int interval_n = 200;  // points in (0,1)
  int p2_n = 60;         // axis points of the 𝓟₂ grid
  double margin = 1e-3;

  nlohmann::json to_json() const;
};

/// f(x) = Σ a_k cos((2k-1)πx), alternating for every choice of a_k.
AltFunction1 cosine_series(std::vector<double> coeffs);

struct GeneratedRhs {
  std::vector<double> coeffs;
  AltFunction1 f;
  AltFunction2 R;  // τ³f
  std::string description;
};

/// Coefficients uniform in [-amplitude, amplitude] from mt19937_64(seed),
/// built from the raw 64-bit output so they do not depend on the standard
/// library's distributions.
GeneratedRhs generate_admissible_rhs(std::uint64_t seed, double amplitude,
                                     int modes);

/// Uniform double in [-1, 1) from one draw of a 64-bit generator word.
double symmetric_unit(std::uint64_t word);

struct StabilityReport {
  /// sup |τ³L - τ³L₂| on the 𝓟₂ grid. L₂ itself has τ³L₂ = -ζ(2), so this
  /// is the defect that vanishes exactly at L₂.
  double epsilon = 0.0;
  double epsilon_literal = 0.0;  // sup |τ³L|
  double c_offset = 0.0;   // |C - ζ(2)|
  double deviation = 0.0;  // sup |L - L₂| on the interval grid
  double bound = 0.0;      // 11·ε + 6·offset
  double ratio = 0.0;      // deviation / bound (0 when both vanish)
  bool exact = false;      // bound and deviation both zero
  GridSpec grid;
  std::string metadata;

  bool passed() const { return ratio <= 1.0; }
  nlohmann::json to_json() const;
};

/// Measures one candidate L with reflection constant C. Throws InvalidInput
/// when L(1-x) + L(x) = C fails by more than 1e-9 on the grid.
StabilityReport run_stability_trial(const AltFunction1& L, double C,
                                    const GridSpec& grid = {},
                                    std::string metadata = "");

/// Trial i perturbs L₂ by a generated series (seed + i) and a constant shift
/// s, with C = ζ(2) + 2s.
std::vector<StabilityReport> run_stability_trials(std::uint64_t seed,
                                                  double amplitude, int modes,
                                                  int trials,
                                                  const GridSpec& grid = {});

struct ContinuityReport {
  double sup_difference = 0.0;  // sup |L1 - L2| over the x grid
  double rhs_distance = 0.0;    // sup |R1 - R2| over the 𝓟₂ grid
  double c_distance = 0.0;      // |C1 - C2|
  double bound = 0.0;
  double ratio = 0.0;
  std::vector<double> xs;

  bool passed() const { return ratio <= 1.0; }
  nlohmann::json to_json() const;
};

/// Solves both systems on `xs` and compares against the continuity bound.
ContinuityReport continuity_sweep(const SpenceAbelSolver& s1,
                                  const SpenceAbelSolver& s2,
                                  const std::vector<double>& xs,
                                  int p2_n = 60);
ContinuityReport continuity_sweep(const PerturbedSystem& sys1,
                                  const PerturbedSystem& sys2,
                                  const std::vector<double>& xs,
                                  const PipelineOptions& opts = {});

}  // namespace spence_abel
