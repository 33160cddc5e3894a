#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature with forced breakpoints, graded
// meshes toward integrable endpoint singularities, and an exact path for
// piecewise-constant circle averages. A level-refined tanh-sinh rule is
// available for integrands whose singularities sit exactly at the panel ends.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <sstream>
#include <type_traits>
#include <vector>

#include "spence_abel/circle_geometry.hpp"
#include "spence_abel/errors.hpp"

namespace spence_abel {

enum class SingularEnds : std::uint8_t { kNone = 0, kLeft = 1, kRight = 2, kBoth = 3 };

enum class QuadRule : std::uint8_t {
  kGaussKronrod,  // adaptive bisection with the 7/15 pair
  kTanhSinh,      // double-exponential rule per panel, step halved per level
};

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  /// Budget of adaptive bisections beyond the initial mesh.
  int max_subdivisions = 400;
  /// Endpoints of [a, b] (in the given orientation) carrying an integrable
  /// singularity; each gets a geometric mesh of `grading_depth` levels.
  SingularEnds singular_endpoints = SingularEnds::kNone;
  /// Also grade the mesh toward every interior breakpoint.
  bool grade_breakpoints = false;
  int grading_depth = 20;
  QuadRule rule = QuadRule::kGaussKronrod;
  /// Finest tanh-sinh level; the step at level k is 2^-k.
  int max_levels = 7;

  void validate() const;

  QuadConfig with_abs_tol(double tol) const {
    QuadConfig c = *this;
    c.abs_tol = tol;
    return c;
  }
  QuadConfig with_rule(QuadRule r) const {
    QuadConfig c = *this;
    c.rule = r;
    return c;
  }
};

/// Default for closed-form cross-checks.
inline QuadConfig closed_form_quad_config() { return QuadConfig{}; }
/// Default for the nested primitive pipeline.
inline QuadConfig pipeline_quad_config() {
  QuadConfig c;
  c.abs_tol = 1e-8;
  return c;
}

template <class T>
struct QuadResult {
  T value{};
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

namespace detail {

inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
};

template <class T>
struct PanelOrder {
  bool operator()(const Panel<T>& x, const Panel<T>& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

template <class T, class F>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double dhalf = std::abs(half);
  T fv1[7], fv2[7];
  const T fc = f(center);
  T resg = fc * kWg[3];
  T resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kXgk[jtw];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kXgk[jtwm1];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const T reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  resabs *= dhalf;
  resasc *= dhalf;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {a, b, resk * half, err};
}

// Tanh-sinh on [a, b] (a < b). Nodes closer than 1e-12·max(1, |a|, |b|) to
// an end are dropped: nested averages use the outer nodes as inner panel
// ends, and closer nodes would make points coincide in floating point. The
// error estimate extrapolates the quadratic convergence of successive levels,
// e_k = d_k² / d_{k-1} capped at d_k, plus the size of the dropped end pieces.
// Integrands blowing up faster than a logarithm therefore cannot meet tight
// tolerances.
template <class T, class F>
Panel<T> tanh_sinh(F& f, double a, double b, double abs_tol, double rel_tol,
                   int max_levels, bool& met, std::int64_t& evaluations) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kHalfPi = 1.5707963267948966;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double floor = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});

  // Sum of w(t)·(f(a + half·d) + f(b - half·d)) over t = t0, t0 + step, ...
  // The dropped end pieces have width about `floor` each; `edge` holds
  // |f| at the innermost kept nodes so the estimate can account for them.
  double d_min = 2.0;
  double edge = 0.0;
  auto tail_sum = [&](double t0, double step) {
    T sum{};
    for (double t = t0;; t += step) {
      const double u = kHalfPi * std::sinh(t);
      const double d = 2.0 / (std::exp(2.0 * u) + 1.0);  // 1 - tanh(u)
      if (half * d < floor) break;
      const double cu = std::cosh(u);
      const double w = kHalfPi * std::cosh(t) / (cu * cu);
      const T fa = f(a + half * d);
      const T fb = f(b - half * d);
      sum += w * (fa + fb);
      evaluations += 2;
      if (d < d_min) {
        d_min = d;
        edge = std::abs(fa) + std::abs(fb);
      }
    }
    return sum;
  };

  T S = kHalfPi * f(mid) + tail_sum(1.0, 1.0);
  evaluations += 1;
  double h = 1.0;
  T prev = half * h * S;
  double d_prev = 0.0;
  Panel<T> out{a, b, prev, std::abs(prev)};
  met = false;
  for (int level = 1; level <= max_levels; ++level) {
    h *= 0.5;
    S += tail_sum(h, 2.0 * h);
    const T cur = half * h * S;
    const double d = std::abs(cur - prev);
    double est = d;
    if (level >= 2 && d_prev > 0.0) est = std::min(d, d * d / d_prev);
    est = std::max(est, 4.0 * kEps * std::abs(cur));
    out.value = cur;
    out.error = est + 2.0 * floor * edge;
    // The dropped pieces do not shrink with the level; they are left to the
    // caller's total.
    if (level >= 2 && est <= std::max(abs_tol, rel_tol * std::abs(cur))) {
      met = true;
      break;
    }
    prev = cur;
    d_prev = d;
  }
  return out;
}

// Initial mesh on [lo, hi] (lo < hi): breakpoints plus optional grading.
std::vector<double> build_mesh(double lo, double hi,
                               std::span<const double> breakpoints,
                               bool grade_lo, bool grade_hi,
                               bool grade_breakpoints, int depth);

}  // namespace detail

/// Adaptive integral of f over the oriented interval from a to b.
/// Breakpoints strictly between a and b become forced mesh points.
/// Throws ToleranceNotMet when the bisection budget is exhausted.
template <class T, class F>
QuadResult<T> integrate_adaptive(F&& f, double a, double b,
                                 const QuadConfig& cfg,
                                 std::span<const double> breakpoints = {}) {
  cfg.validate();
  QuadResult<T> out;
  if (a == b) return out;
  const bool reversed = a > b;
  const double lo = reversed ? b : a;
  const double hi = reversed ? a : b;
  const bool sing_a = (static_cast<int>(cfg.singular_endpoints) &
                       static_cast<int>(SingularEnds::kLeft)) != 0;
  const bool sing_b = (static_cast<int>(cfg.singular_endpoints) &
                       static_cast<int>(SingularEnds::kRight)) != 0;
  const bool grade_lo = reversed ? sing_b : sing_a;
  const bool grade_hi = reversed ? sing_a : sing_b;
  if (cfg.rule == QuadRule::kTanhSinh) {
    // Singular ends are handled by the rule itself; no grading.
    const auto knots =
        detail::build_mesh(lo, hi, breakpoints, false, false, false, 0);
    T total{};
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const double share = (knots[i + 1] - knots[i]) / (hi - lo);
      bool met = false;
      auto p = detail::tanh_sinh<T>(f, knots[i], knots[i + 1],
                                    cfg.abs_tol * share, cfg.rel_tol,
                                    cfg.max_levels, met, out.evaluations);
      total += p.value;
      total_err += p.error;
    }
    out.value = reversed ? -total : total;
    out.error_estimate = total_err;
    // Panels that stopped at max_levels are acceptable when the others
    // leave enough room.
    if (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
      std::ostringstream msg;
      msg << "integrate: tanh-sinh tolerance " << cfg.abs_tol
          << " not met on [" << a << ", " << b << "] after " << cfg.max_levels
          << " levels, error estimate " << total_err;
      double re = 0.0, im = 0.0;
      if constexpr (std::is_same_v<T, std::complex<double>>) {
        re = out.value.real();
        im = out.value.imag();
      } else {
        re = out.value;
      }
      throw ToleranceNotMet(msg.str(), re, im, total_err);
    }
    return out;
  }
  const auto mesh = detail::build_mesh(lo, hi, breakpoints, grade_lo, grade_hi,
                                       cfg.grade_breakpoints, cfg.grading_depth);

  std::priority_queue<detail::Panel<T>, std::vector<detail::Panel<T>>,
                      detail::PanelOrder<T>>
      heap;
  T total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    auto p = detail::gauss_kronrod_15<T>(f, mesh[i], mesh[i + 1]);
    out.evaluations += 15;
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  int subdivisions = 0;
  bool stalled = false;
  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
  while (total_err > target() && subdivisions < cfg.max_subdivisions) {
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e-14 * std::max(1.0, std::abs(mid))) {
      stalled = true;
      break;
    }
    heap.pop();
    auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
    out.evaluations += 30;
    total += (left.value + right.value) - worst.value;
    total_err += (left.error + right.error) - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // Re-sum in a fixed order to avoid drift from the running updates.
  std::vector<detail::Panel<T>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  total = T{};
  total_err = 0.0;
  for (const auto& p : panels) {
    total += p.value;
    total_err += p.error;
  }
  out.value = reversed ? -total : total;
  out.error_estimate = total_err;
  if (total_err > target()) {
    std::ostringstream msg;
    msg << "integrate: tolerance " << target() << " not met on [" << a << ", "
        << b << "], error estimate " << total_err
        << (stalled ? " (interval too narrow)" : " (subdivision budget spent)");
    double re = 0.0, im = 0.0;
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      re = out.value.real();
      im = out.value.imag();
    } else {
      re = out.value;
    }
    throw ToleranceNotMet(msg.str(), re, im, total_err);
  }
  return out;
}

QuadResult<double> integrate(const std::function<double(double)>& f, double a,
                             double b, const QuadConfig& cfg,
                             std::span<const double> breakpoints = {});

QuadResult<std::complex<double>> integrate(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadConfig& cfg, std::span<const double> breakpoints = {});

/// Average (1/2π)∫₀^{2π} f over the circle, splitting at the given angles.
template <class T, class F>
QuadResult<T> circle_average_adaptive(F&& f, const QuadConfig& cfg,
                                      std::span<const double> breakpoints = {}) {
  std::vector<double> bp;
  bp.reserve(breakpoints.size());
  for (double x : breakpoints) bp.push_back(wrap_angle(x));
  QuadConfig scaled = cfg;
  scaled.abs_tol = cfg.abs_tol * kTwoPi;
  auto r = integrate_adaptive<T>(f, 0.0, kTwoPi, scaled, bp);
  r.value = r.value / kTwoPi;
  r.error_estimate /= kTwoPi;
  return r;
}

QuadResult<double> circle_average(const std::function<double(double)>& f,
                                  const QuadConfig& cfg,
                                  std::span<const double> breakpoints = {});

QuadResult<std::complex<double>> circle_average(
    const std::function<std::complex<double>(double)>& f, const QuadConfig& cfg,
    std::span<const double> breakpoints = {});

/// Exact circle average of a function that is constant on each arc between
/// consecutive breakpoints: a signed sum of arc lengths. `f` is sampled at the
/// arc midpoints.
template <class F>
double piecewise_constant_circle_average(F&& f,
                                         std::span<const double> breakpoints) {
  std::vector<double> bp;
  bp.reserve(breakpoints.size());
  for (double x : breakpoints) bp.push_back(wrap_angle(x));
  if (bp.empty()) return f(kPi);
  std::sort(bp.begin(), bp.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    const double start = bp[i];
    const double end = (i + 1 < bp.size()) ? bp[i + 1] : bp[0] + kTwoPi;
    const double len = end - start;
    if (len <= 0.0) continue;
    sum += len * f(wrap_angle(start + 0.5 * len));
  }
  return sum / kTwoPi;
}

}  // namespace spence_abel
