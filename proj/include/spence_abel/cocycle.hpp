#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "spence_abel/config_coords.hpp"
#include "spence_abel/quadrature.hpp"

namespace spence_abel {

/// Alternating G-invariant function of five circle points, addressed by
/// angles. Alternation and invariance are spot-checked in tests, not
/// enforced per call.
class Cocycle5 {
 public:
  /// Evaluation on five pairwise distinct angles (not re-checked).
  using Evaluator = std::function<double(std::span<const double, 5>)>;
  /// Exact first-slot average ⨍ c(e^{iψ}, z0, ..., z3) dψ.
  using SlotAverage = std::function<double(std::span<const double, 4>)>;

  Cocycle5(Evaluator evaluator, std::string name,
           std::optional<double> sup_bound = std::nullopt);

  /// ext5(g). Set `piecewise_constant` when g is constant, which enables the
  /// exact arc-length path for slot averages.
  static Cocycle5 from_alt2(AltFunction2 g, std::string name,
                            std::optional<double> sup_bound = std::nullopt,
                            bool piecewise_constant = false);

  double operator()(std::span<const double, 5> angles) const {
    return evaluator_(angles);
  }
  /// Checked evaluation; throws DegenerateConfiguration.
  double evaluate(std::span<const double> angles) const;

  /// ⨍ c(e^{iψ}, e^{iθ0}, ..., e^{iθ3}) dψ. Uses, in order of preference, an
  /// installed exact average, the arc-length path for piecewise-constant
  /// cocycles, or adaptive quadrature split at the four angles.
  double average_first_slot(std::span<const double, 4> angles,
                            const QuadConfig& cfg) const;

  Cocycle5 with_slot_average(SlotAverage avg) const;
  Cocycle5 as_piecewise_constant() const;
  /// Declares c(-θ0, ..., -θ4) = parity·c(θ0, ..., θ4) (parity ±1).
  Cocycle5 with_reflection_parity(int parity) const;

  const std::string& name() const { return name_; }
  const std::optional<double>& sup_bound() const { return sup_bound_; }
  bool piecewise_constant() const { return piecewise_constant_; }
  bool has_exact_slot_average() const { return static_cast<bool>(slot_average_); }
  const std::optional<int>& reflection_parity() const { return reflection_parity_; }

  /// c1 - c2 (slot averages combine when both are exact).
  friend Cocycle5 operator-(const Cocycle5& c1, const Cocycle5& c2);
  friend Cocycle5 operator*(double s, const Cocycle5& c);

 private:
  Evaluator evaluator_;
  SlotAverage slot_average_;
  std::string name_;
  std::optional<double> sup_bound_;
  bool piecewise_constant_ = false;
  std::optional<int> reflection_parity_;
};

}  // namespace spence_abel
