#include "spence_abel/quadrature.hpp"

namespace spence_abel {

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("QuadConfig: abs_tol must be > 0");
  if (!(rel_tol >= 0.0)) throw DomainError("QuadConfig: rel_tol must be >= 0");
  if (max_subdivisions < 1) {
    throw DomainError("QuadConfig: max_subdivisions must be >= 1");
  }
  if (grading_depth < 0) throw DomainError("QuadConfig: grading_depth < 0");
  if (max_levels < 2) throw DomainError("QuadConfig: max_levels must be >= 2");
}

namespace detail {

std::vector<double> build_mesh(double lo, double hi,
                               std::span<const double> breakpoints,
                               bool grade_lo, bool grade_hi,
                               bool grade_breakpoints, int depth) {
  std::vector<double> knots = {lo, hi};
  for (double x : breakpoints) {
    if (x > lo && x < hi) knots.push_back(x);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<double> mesh;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i];
    const double b = knots[i + 1];
    const bool ga = (i == 0) ? grade_lo : grade_breakpoints;
    const bool gb = (i + 2 == knots.size()) ? grade_hi : grade_breakpoints;
    mesh.push_back(a);
    if (!ga && !gb) continue;
    const double w = b - a;
    // Geometric points toward graded ends; both ends meet at the midpoint.
    std::vector<double> inner;
    const double reach = (ga && gb) ? 0.5 * w : w;
    for (int k = 1; k <= depth; ++k) {
      const double d = reach * std::ldexp(1.0, -k);
      if (ga) inner.push_back(a + d);
      if (gb) inner.push_back(b - d);
    }
    if (ga && gb) inner.push_back(a + 0.5 * w);
    std::sort(inner.begin(), inner.end());
    for (double x : inner) {
      if (x > mesh.back() && x < b) mesh.push_back(x);
    }
  }
  mesh.push_back(knots.back());
  return mesh;
}

}  // namespace detail

QuadResult<double> integrate(const std::function<double(double)>& f, double a,
                             double b, const QuadConfig& cfg,
                             std::span<const double> breakpoints) {
  return integrate_adaptive<double>(f, a, b, cfg, breakpoints);
}

QuadResult<std::complex<double>> integrate(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadConfig& cfg, std::span<const double> breakpoints) {
  return integrate_adaptive<std::complex<double>>(f, a, b, cfg, breakpoints);
}

QuadResult<double> circle_average(const std::function<double(double)>& f,
                                  const QuadConfig& cfg,
                                  std::span<const double> breakpoints) {
  return circle_average_adaptive<double>(f, cfg, breakpoints);
}

QuadResult<std::complex<double>> circle_average(
    const std::function<std::complex<double>(double)>& f, const QuadConfig& cfg,
    std::span<const double> breakpoints) {
  return circle_average_adaptive<std::complex<double>>(f, cfg, breakpoints);
}

}  // namespace spence_abel
