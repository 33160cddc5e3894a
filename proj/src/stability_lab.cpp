#include "spence_abel/stability_lab.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "spence_abel/errors.hpp"
#include "spence_abel/fe_operators.hpp"
#include "spence_abel/rogers_dilog.hpp"

namespace spence_abel {

namespace {

double guarded_ratio(double value, double bound, bool& exact) {
  exact = false;
  if (bound > 0.0) return value / bound;
  if (value == 0.0) {
    exact = true;
    return 0.0;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

nlohmann::json GridSpec::to_json() const {
  return {{"interval_n", interval_n}, {"p2_n", p2_n}, {"margin", margin}};
}

AltFunction1 cosine_series(std::vector<double> coeffs) {
  return [a = std::move(coeffs)](double x) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      sum += a[k] * std::cos((2.0 * static_cast<double>(k) + 1.0) * kPi * x);
    }
    return sum;
  };
}

double symmetric_unit(std::uint64_t word) {
  return 2.0 * std::ldexp(static_cast<double>(word >> 11), -53) - 1.0;
}

GeneratedRhs generate_admissible_rhs(std::uint64_t seed, double amplitude,
                                     int modes) {
  if (!(amplitude >= 0.0)) {
    throw InvalidInput("generate_admissible_rhs: amplitude must be >= 0");
  }
  if (modes < 1) throw InvalidInput("generate_admissible_rhs: modes must be >= 1");
  std::mt19937_64 gen(seed);
  GeneratedRhs out;
  out.coeffs.reserve(static_cast<std::size_t>(modes));
  for (int k = 0; k < modes; ++k) {
    out.coeffs.push_back(amplitude * symmetric_unit(gen()));
  }
  out.f = cosine_series(out.coeffs);
  out.R = [f = out.f](double x, double y) { return five_term(f, x, y); };
  std::ostringstream d;
  d << "tau3 of cosine series (seed " << seed << ", amplitude " << amplitude
    << ", modes " << modes << ")";
  out.description = d.str();
  return out;
}

nlohmann::json StabilityReport::to_json() const {
  return {{"epsilon", epsilon},     {"epsilon_literal", epsilon_literal},
          {"c_offset", c_offset},
          {"deviation", deviation}, {"bound", bound},
          {"ratio", ratio},         {"exact", exact},
          {"passed", passed()},     {"grid", grid.to_json()},
          {"metadata", metadata}};
}

StabilityReport run_stability_trial(const AltFunction1& L, double C,
                                    const GridSpec& grid, std::string metadata) {
  StabilityReport rep;
  rep.grid = grid;
  rep.metadata = std::move(metadata);
  const auto xs = interval_margin_grid(grid.interval_n, grid.margin);
  for (double x : xs) {
    const double lx = L(x);
    const double refl = L(1.0 - x) + lx - C;
    if (!(std::abs(refl) <= 1e-9)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "L(1-x) + L(x) = C fails at x = " << x << " (residual " << refl
          << ")";
      throw InvalidInput(msg.str());
    }
    rep.deviation = std::max(rep.deviation, std::abs(lx - rogers_reference(x)));
  }
  for (const auto& p : p2_margin_grid(grid.p2_n, grid.margin)) {
    const double d = five_term(L, p[0], p[1]);
    rep.epsilon_literal = std::max(rep.epsilon_literal, std::abs(d));
    rep.epsilon = std::max(rep.epsilon, std::abs(d - five_term(rogers_reference, p[0], p[1])));
  }
  rep.c_offset = std::abs(C - kZeta2);
  rep.bound = kHyersUlamEpsilonConstant * rep.epsilon +
              kHyersUlamOffsetConstant * rep.c_offset;
  rep.ratio = guarded_ratio(rep.deviation, rep.bound, rep.exact);
  return rep;
}

std::vector<StabilityReport> run_stability_trials(std::uint64_t seed,
                                                  double amplitude, int modes,
                                                  int trials,
                                                  const GridSpec& grid) {
  if (trials < 1) throw InvalidInput("run_stability_trials: trials must be >= 1");
  std::vector<StabilityReport> out;
  out.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const auto rhs = generate_admissible_rhs(s, amplitude, modes);
    // The shift uses a generator word past the coefficients.
    std::mt19937_64 gen(s);
    gen.discard(static_cast<unsigned long long>(modes));
    const double shift = 0.5 * amplitude * symmetric_unit(gen());
    AltFunction1 L = [f = rhs.f, shift](double x) {
      return rogers_reference(x) + f(x) + shift;
    };
    std::ostringstream meta;
    meta.precision(17);
    meta << "L2 + " << rhs.description << " + shift " << shift;
    out.push_back(
        run_stability_trial(L, kZeta2 + 2.0 * shift, grid, meta.str()));
  }
  return out;
}

nlohmann::json ContinuityReport::to_json() const {
  return {{"sup_difference", sup_difference},
          {"rhs_distance", rhs_distance},
          {"c_distance", c_distance},
          {"bound", bound},
          {"ratio", ratio},
          {"passed", passed()},
          {"xs", xs}};
}

ContinuityReport continuity_sweep(const SpenceAbelSolver& s1,
                                  const SpenceAbelSolver& s2,
                                  const std::vector<double>& xs, int p2_n) {
  ContinuityReport rep;
  rep.xs = xs;
  for (double x : xs) {
    rep.sup_difference = std::max(rep.sup_difference, std::abs(s1(x) - s2(x)));
  }
  const auto& R1 = s1.system().R();
  const auto& R2 = s2.system().R();
  for (const auto& p : p2_margin_grid(p2_n)) {
    rep.rhs_distance =
        std::max(rep.rhs_distance, std::abs(R1(p[0], p[1]) - R2(p[0], p[1])));
  }
  rep.c_distance = std::abs(s1.system().C() - s2.system().C());
  rep.bound = kContinuityRhsConstant * rep.rhs_distance +
              kContinuityOffsetConstant * rep.c_distance;
  bool exact = false;
  rep.ratio = guarded_ratio(rep.sup_difference, rep.bound, exact);
  return rep;
}

ContinuityReport continuity_sweep(const PerturbedSystem& sys1,
                                  const PerturbedSystem& sys2,
                                  const std::vector<double>& xs,
                                  const PipelineOptions& opts) {
  return continuity_sweep(SpenceAbelSolver(sys1, opts),
                          SpenceAbelSolver(sys2, opts), xs);
}

}  // namespace spence_abel
