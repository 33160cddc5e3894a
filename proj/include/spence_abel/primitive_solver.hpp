#pragma once

// Primitive of a bounded 4-cocycle by integration, and the resulting solver
// for the perturbed Spence-Abel system. The pipeline is
//   c ──► r_c ──► v♭_c ──► F♭_c ──► f₀ ──► p_c ──► L^{(R,C)} = res(p_c) + C/2.

#include <array>
#include <complex>
#include <memory>
#include <span>
#include <string>
#include <utility>

#include "spence_abel/cocycle.hpp"
#include "spence_abel/config_coords.hpp"
#include "spence_abel/quadrature.hpp"

namespace spence_abel {

/// Which variable the sin(η - ·) weight in the r_c triple average pairs with.
/// kSlotTwoVariable pairs it with the integration variable in the second
/// cocycle slot; kOuterArgument pairs it with the argument of r_c.
enum class RcWeightReading { kSlotTwoVariable, kOuterArgument };

struct PipelineOptions {
  /// Outer integrals (f₀ along N-orbits and solver terms).
  QuadConfig outer = pipeline_quad_config();
  /// Innermost first-slot averages. Their integrands are analytic on each
  /// arc but blow up in derivative at the arc ends, hence tanh-sinh.
  QuadConfig inner =
      QuadConfig{}.with_abs_tol(1e-9).with_rule(QuadRule::kTanhSinh);
  /// Middle-level averages (the φ-average in F♭ and the (η, φ') averages in
  /// the r_c kernel).
  QuadConfig middle =
      QuadConfig{}.with_abs_tol(1e-8).with_rule(QuadRule::kTanhSinh);
  RcWeightReading reading = RcWeightReading::kSlotTwoVariable;
  /// Chebyshev nodes per panel of the r_c kernel interpolant.
  int kernel_nodes = 10;
  /// Worker threads for kernel tabulation; 0 = SPENCE_ABEL_THREADS or the
  /// hardware concurrency.
  int threads = 0;
};

/// Number of worker threads honoring SPENCE_ABEL_THREADS.
int resolve_thread_count(int requested);

/// θ1 ⊖ θ2: representative of θ1 - θ2 in [0, 2π).
double ominus(double theta1, double theta2);

/// N-orbit coordinates: (φ1, φ2) = n_T.(Φ, 2π - Φ).
struct TPhi {
  double T = 0.0;
  double Phi = 0.0;
};
TPhi t_phi(double phi1, double phi2);

/// Evaluator of F♭ on Ω = {(φ1, φ2) ∈ (0,2π)², φ1 ≠ φ2}.
using FlatIntegrand = std::function<double(double, double)>;

/// f₀(φ1, φ2) = ∫₀^{T} F♭(n_t.Φ, n_t.(2π-Φ)) dt (oriented).
double f0(const FlatIntegrand& flat, double phi1, double phi2,
          const QuadConfig& cfg);

/// The construction for one cocycle. Copies share the lazily tabulated r_c
/// kernel; all members are safe to call concurrently.
class PrimitivePipeline {
 public:
  explicit PrimitivePipeline(Cocycle5 c, PipelineOptions opts = {});

  const Cocycle5& cocycle() const;
  const PipelineOptions& options() const;

  /// r_c(φ) from the tabulated kernel.
  std::complex<double> r_c(double phi) const;
  /// r_c(φ) by direct nested quadrature (no tabulation); the reference for
  /// the kernel interpolant.
  std::complex<double> r_c_direct(double phi) const;

  /// The r_c kernel W(ζ): the triple average with the sin weight, for the
  /// slot-two reading.
  double kernel(double zeta) const;

  double v_flat(double theta1, double theta2) const;
  /// First summand of F♭: ⨍⨍ sin(φ) c(e^{iη}, e^{iφ}, 1, e^{iφ1}, e^{iφ2}).
  double flat_double_average(double phi1, double phi2) const;
  double f_flat(double phi1, double phi2) const;
  FlatIntegrand flat_integrand() const;

  double f0(double phi1, double phi2) const;

  /// p_c(e^{iθ0}, ..., e^{iθ3}); differences reduced with ⊖.
  double primitive_p(std::span<const double, 4> angles) const;

  /// Tabulates the kernel now (otherwise done on first use).
  void prepare() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Right-hand side and reflection constant of the perturbed system.
class PerturbedSystem {
 public:
  /// Validates the 6-term equation on a 20³ 𝓟₃ margin grid and the
  /// reflection relation on a 60² 𝓟₂ margin grid, both to `tol`.
  /// Throws InvalidRhs naming the failing sample.
  PerturbedSystem(AltFunction2 R, double C, std::string description = "",
                  double tol = 1e-8);

  /// R ≡ r. The cocycle is then piecewise constant and its slot averages
  /// are exact arc sums.
  static PerturbedSystem constant(double r, double C,
                                  std::string description = "");

  const AltFunction2& R() const { return R_; }
  double C() const { return C_; }
  const std::string& description() const { return description_; }

  /// ext5(R - C/2).
  Cocycle5 cocycle() const;

  /// Largest residuals seen during validation.
  double six_term_residual() const { return six_term_residual_; }
  double symmetry_residual() const { return symmetry_residual_; }

 private:
  AltFunction2 R_;
  double C_;
  std::string description_;
  double six_term_residual_ = 0.0;
  double symmetry_residual_ = 0.0;
  bool constant_ = false;
};

/// Solver for L^{(R,C)} bound to one system; reuses the pipeline across x.
class SpenceAbelSolver {
 public:
  explicit SpenceAbelSolver(PerturbedSystem sys, PipelineOptions opts = {});

  /// L^{(R,C)}(x) for x ∈ (0,1) via the explicit five-term integral formula.
  double operator()(double x) const;
  /// C/2 - p_c(1, -1, C(x), -i), the same value assembled through p_c.
  double via_primitive(double x) const;

  const PerturbedSystem& system() const { return sys_; }
  const PrimitivePipeline& pipeline() const { return pipeline_; }

 private:
  PerturbedSystem sys_;
  PrimitivePipeline pipeline_;
};

/// Single-shot conveniences mirroring the pipeline stages. Each builds a
/// fresh pipeline, so repeated calls should go through PrimitivePipeline.
std::complex<double> r_c(const Cocycle5& c, double phi, const QuadConfig& cfg);
double v_flat(const Cocycle5& c, double theta1, double theta2,
              const QuadConfig& cfg);
double f_flat(const Cocycle5& c, double phi1, double phi2,
              const QuadConfig& cfg);
double primitive_p(const Cocycle5& c, std::span<const double, 4> angles,
                   const QuadConfig& cfg);
double solve_LRC(const PerturbedSystem& sys, double x, const QuadConfig& cfg);

}  // namespace spence_abel
