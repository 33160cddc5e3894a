#include "spence_abel/primitive_solver.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "spence_abel/circle_geometry.hpp"
#include "spence_abel/errors.hpp"
#include "spence_abel/fe_operators.hpp"

namespace spence_abel {

namespace {

// Piecewise Chebyshev interpolant (first-kind nodes, barycentric form).
class PanelInterpolant {
 public:
  PanelInterpolant() = default;
  PanelInterpolant(std::vector<double> edges, int nodes)
      : edges_(std::move(edges)), n_(nodes) {
    weights_.resize(static_cast<std::size_t>(n_));
    unit_nodes_.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      const double angle = (2.0 * j + 1.0) * kPi / (2.0 * n_);
      unit_nodes_[static_cast<std::size_t>(j)] = std::cos(angle);
      weights_[static_cast<std::size_t>(j)] =
          ((j % 2 == 0) ? 1.0 : -1.0) * std::sin(angle);
    }
    values_.assign((edges_.size() - 1) * static_cast<std::size_t>(n_), 0.0);
  }

  std::size_t panel_count() const { return edges_.size() - 1; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& edges() const { return edges_; }

  double node(std::size_t k) const {
    const std::size_t p = k / static_cast<std::size_t>(n_);
    const std::size_t j = k % static_cast<std::size_t>(n_);
    const double a = edges_[p], b = edges_[p + 1];
    return 0.5 * (a + b) + 0.5 * (b - a) * unit_nodes_[j];
  }
  void set_value(std::size_t k, double v) { values_[k] = v; }

  double operator()(double x) const {
    std::size_t p = 0;
    while (p + 2 < edges_.size() && x > edges_[p + 1]) ++p;
    const double a = edges_[p], b = edges_[p + 1];
    const double u = (2.0 * x - a - b) / (b - a);
    const double* vals = values_.data() + p * static_cast<std::size_t>(n_);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n_; ++j) {
      const double diff = u - unit_nodes_[static_cast<std::size_t>(j)];
      if (diff == 0.0) return vals[j];
      const double w = weights_[static_cast<std::size_t>(j)] / diff;
      num += w * vals[j];
      den += w;
    }
    return num / den;
  }

 private:
  std::vector<double> edges_;
  int n_ = 0;
  std::vector<double> unit_nodes_;
  std::vector<double> weights_;
  std::vector<double> values_;
};

std::vector<double> kernel_panel_edges() {
  std::vector<double> e = {0.0};
  for (int k = 5; k >= 1; --k) e.push_back(kPi * std::ldexp(1.0, -k));
  e.push_back(kPi);
  for (int k = 1; k <= 5; ++k) e.push_back(kTwoPi - kPi * std::ldexp(1.0, -k));
  e.push_back(kTwoPi);
  return e;
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Nested levels: a missed tolerance happens at outer nodes a few ulps from a
// collision, where the coordinates are ill-conditioned and the outer weight
// is negligible. The best estimate is kept. Outer levels see the resulting
// noise and keep their best estimate too.
template <class T, class F, std::size_t N>
T nested_average(F&& f, const QuadConfig& cfg,
                 const std::array<double, N>& breakpoints) {
  try {
    return circle_average_adaptive<T>(f, cfg, breakpoints).value;
  } catch (const ToleranceNotMet& e) {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
      return T(e.best_real(), e.best_imag()) / kTwoPi;
    } else {
      return e.best_real() / kTwoPi;
    }
  }
}

double half_cot(double phi) {
  const double h = 0.5 * phi;
  return std::cos(h) / std::sin(h);
}

}  // namespace

int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("SPENCE_ABEL_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) return std::min(cap, hw);
  }
  return hw;
}

double ominus(double theta1, double theta2) { return wrap_angle(theta1 - theta2); }

TPhi t_phi(double phi1, double phi2) {
  if (!(phi1 > 0.0 && phi1 < kTwoPi && phi2 > 0.0 && phi2 < kTwoPi) ||
      phi1 == phi2) {
    throw DomainError("t_phi: (φ1, φ2) must lie in (0,2π)² off the diagonal");
  }
  const double c1 = half_cot(phi1);
  const double c2 = half_cot(phi2);
  return {-0.5 * (c1 + c2), 2.0 * arccot(0.5 * (c1 - c2))};
}

double f0(const FlatIntegrand& flat, double phi1, double phi2,
          const QuadConfig& cfg) {
  const auto [T, Phi] = t_phi(phi1, phi2);
  if (T == 0.0) return 0.0;
  const double Phi2 = kTwoPi - Phi;
  auto integrand = [&](double t) {
    return flat(nt_angle_action(t, Phi), nt_angle_action(t, Phi2));
  };
  return integrate_adaptive<double>(integrand, 0.0, T, cfg).value;
}

struct PrimitivePipeline::State {
  State(Cocycle5 c, PipelineOptions o) : cocycle(std::move(c)), opts(o) {}

  Cocycle5 cocycle;
  PipelineOptions opts;

  std::once_flag tabulated;
  // Slot-two reading: kernel_main = W. Outer reading: kernel_main = W_sin,
  // kernel_aux = W_cos.
  PanelInterpolant kernel_main;
  PanelInterpolant kernel_aux;

  std::mutex memo_mutex;
  std::map<std::pair<double, double>, double> f0_memo;

  double slot_average(double a0, double a1, double a2, double a3) const {
    const std::array<double, 4> a = {a0, a1, a2, a3};
    try {
      return cocycle.average_first_slot(a, opts.inner);
    } catch (const ToleranceNotMet& e) {
      return e.best_real() / kTwoPi;
    }
  }

  // ⨍_φ' sin(η-φ') ⨍_ψ c(ψ, η, φ', 1, e^{iζ}); the first-slot average moves
  // ψ from slot three to slot one by an even permutation.
  double slot_two_inner(double eta, double zeta) const {
    auto f = [&](double phi) {
      return std::sin(eta - phi) * slot_average(eta, phi, 0.0, zeta);
    };
    const std::array<double, 3> bp = {0.0, eta, zeta};
    return nested_average<double>(f, opts.middle, bp);
  }

  double plain_inner(double eta, double zeta) const {
    auto f = [&](double phi) { return slot_average(eta, phi, 0.0, zeta); };
    const std::array<double, 3> bp = {0.0, eta, zeta};
    return nested_average<double>(f, opts.middle, bp);
  }

  double kernel_slot_two(double zeta) const {
    auto f = [&](double eta) { return slot_two_inner(eta, zeta); };
    const std::array<double, 2> bp = {0.0, zeta};
    return nested_average<double>(f, opts.middle, bp);
  }

  std::pair<double, double> kernel_outer(double zeta) const {
    auto f = [&](double eta) {
      const double m = plain_inner(eta, zeta);
      return std::complex<double>(std::sin(eta) * m, std::cos(eta) * m);
    };
    const std::array<double, 2> bp = {0.0, zeta};
    const auto r = nested_average<std::complex<double>>(f, opts.middle, bp);
    return {r.real(), r.imag()};
  }

  void tabulate() {
    std::call_once(tabulated, [this] {
      kernel_main = PanelInterpolant(kernel_panel_edges(), opts.kernel_nodes);
      if (opts.reading == RcWeightReading::kOuterArgument) {
        kernel_aux = PanelInterpolant(kernel_panel_edges(), opts.kernel_nodes);
      }
      const int threads = resolve_thread_count(opts.threads);
      // Node N-1-k is 2π minus node k, and W(2π - ζ) = -parity·W(ζ).
      const auto& parity = cocycle.reflection_parity();
      if (parity && opts.reading == RcWeightReading::kSlotTwoVariable) {
        const std::size_t n = kernel_main.size();
        parallel_for((n + 1) / 2, threads, [this, n, s = -*parity](std::size_t k) {
          const double w = kernel_slot_two(kernel_main.node(k));
          kernel_main.set_value(k, w);
          if (n - 1 - k != k) kernel_main.set_value(n - 1 - k, s * w);
        });
        return;
      }
      parallel_for(kernel_main.size(), threads, [this](std::size_t k) {
        const double zeta = kernel_main.node(k);
        if (opts.reading == RcWeightReading::kSlotTwoVariable) {
          kernel_main.set_value(k, kernel_slot_two(zeta));
        } else {
          const auto [ws, wc] = kernel_outer(zeta);
          kernel_main.set_value(k, ws);
          kernel_aux.set_value(k, wc);
        }
      });
    });
  }

  // ∫_π^φ K(ζ)/(1 - cos ζ) dζ for a tabulated kernel.
  double weighted_integral(const PanelInterpolant& kern, double phi) const {
    auto f = [&](double zeta) { return kern(zeta) / (1.0 - std::cos(zeta)); };
    QuadConfig cfg;
    cfg.abs_tol = 1e-14;
    cfg.rel_tol = 1e-13;
    cfg.max_subdivisions = 2000;
    const auto& e = kern.edges();
    return integrate_adaptive<double>(f, kPi, phi, cfg,
                                      std::span<const double>(e))
        .value;
  }

  std::complex<double> r_c(double phi) {
    if (!(phi > 0.0 && phi < kTwoPi)) {
      throw DomainError("r_c: argument must lie in (0,2π)");
    }
    tabulate();
    double k = 0.0;
    if (opts.reading == RcWeightReading::kSlotTwoVariable) {
      k = weighted_integral(kernel_main, phi);
    } else {
      k = std::cos(phi) * weighted_integral(kernel_main, phi) -
          std::sin(phi) * weighted_integral(kernel_aux, phi);
    }
    const std::complex<double> pre = -0.5 * (1.0 - std::polar(1.0, phi));
    return pre * k;
  }

  std::complex<double> r_c_direct(double phi) const {
    if (!(phi > 0.0 && phi < kTwoPi)) {
      throw DomainError("r_c: argument must lie in (0,2π)");
    }
    double k = 0.0;
    if (opts.reading == RcWeightReading::kSlotTwoVariable) {
      auto f = [&](double zeta) {
        return kernel_slot_two(zeta) / (1.0 - std::cos(zeta));
      };
      k = integrate_adaptive<double>(f, kPi, phi, opts.outer).value;
    } else {
      auto f = [&](double zeta) {
        const auto [ws, wc] = kernel_outer(zeta);
        return (std::cos(phi) * ws - std::sin(phi) * wc) /
               (1.0 - std::cos(zeta));
      };
      k = integrate_adaptive<double>(f, kPi, phi, opts.outer).value;
    }
    const std::complex<double> pre = -0.5 * (1.0 - std::polar(1.0, phi));
    return pre * k;
  }

  double v_flat(double theta1, double theta2) {
    const double d = ominus(theta2, theta1);
    if (d == 0.0) throw DomainError("v_flat: θ1 and θ2 must differ");
    return (std::polar(1.0, theta1) * r_c(d)).imag();
  }

  double flat_double_average(double phi1, double phi2) const {
    auto f = [&](double phi) {
      return std::sin(phi) * slot_average(phi, 0.0, phi1, phi2);
    };
    const std::array<double, 3> bp = {0.0, phi1, phi2};
    return nested_average<double>(f, opts.middle, bp);
  }

  double f_flat(double phi1, double phi2) {
    if (!(phi1 > 0.0 && phi1 < kTwoPi && phi2 > 0.0 && phi2 < kTwoPi) ||
        phi1 == phi2) {
      throw DomainError("f_flat: (φ1, φ2) must lie in (0,2π)² off the diagonal");
    }
    return flat_double_average(phi1, phi2) + v_flat(phi1, phi2) -
           v_flat(0.0, phi2) + v_flat(0.0, phi1);
  }
};

PrimitivePipeline::PrimitivePipeline(Cocycle5 c, PipelineOptions opts)
    : state_(std::make_shared<State>(std::move(c), opts)) {
  opts.outer.validate();
  opts.inner.validate();
  opts.middle.validate();
  if (opts.kernel_nodes < 2) {
    throw DomainError("PipelineOptions: kernel_nodes must be >= 2");
  }
}

const Cocycle5& PrimitivePipeline::cocycle() const { return state_->cocycle; }
const PipelineOptions& PrimitivePipeline::options() const { return state_->opts; }

void PrimitivePipeline::prepare() const { state_->tabulate(); }

std::complex<double> PrimitivePipeline::r_c(double phi) const {
  return state_->r_c(phi);
}

std::complex<double> PrimitivePipeline::r_c_direct(double phi) const {
  return state_->r_c_direct(phi);
}

double PrimitivePipeline::kernel(double zeta) const {
  return state_->kernel_slot_two(zeta);
}

double PrimitivePipeline::v_flat(double theta1, double theta2) const {
  return state_->v_flat(theta1, theta2);
}

double PrimitivePipeline::flat_double_average(double phi1, double phi2) const {
  return state_->flat_double_average(phi1, phi2);
}

double PrimitivePipeline::f_flat(double phi1, double phi2) const {
  return state_->f_flat(phi1, phi2);
}

FlatIntegrand PrimitivePipeline::flat_integrand() const {
  return [s = state_](double p1, double p2) { return s->f_flat(p1, p2); };
}

double PrimitivePipeline::f0(double phi1, double phi2) const {
  return spence_abel::f0(flat_integrand(), phi1, phi2, state_->opts.outer);
}

double PrimitivePipeline::primitive_p(std::span<const double, 4> angles) const {
  const double t0 = wrap_angle(angles[0]);
  const double t1 = wrap_angle(angles[1]);
  const double t2 = wrap_angle(angles[2]);
  const double t3 = wrap_angle(angles[3]);
  require_distinct(std::array<double, 4>{t0, t1, t2, t3});
  const double avg = state_->slot_average(t0, t1, t2, t3);
  return avg + f0(ominus(t2, t1), ominus(t3, t1)) -
         f0(ominus(t2, t0), ominus(t3, t0)) +
         f0(ominus(t1, t0), ominus(t3, t0)) -
         f0(ominus(t1, t0), ominus(t2, t0));
}

PerturbedSystem::PerturbedSystem(AltFunction2 R, double C,
                                 std::string description, double tol)
    : R_(std::move(R)), C_(C), description_(std::move(description)) {
  for (const auto& p : p3_margin_grid(20)) {
    const double v = six_term(R_, p[0], p[1], p[2]);
    six_term_residual_ = std::max(six_term_residual_, std::abs(v));
    if (!(std::abs(v) <= tol)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "right-hand side violates the 6-term equation at (" << p[0]
          << ", " << p[1] << ", " << p[2] << "): residual " << v;
      throw InvalidRhs(msg.str());
    }
  }
  for (const auto& p : p2_margin_grid(60)) {
    const auto q = reflect_p2(p[0], p[1]);
    const double v = R_(q[0], q[1]) - R_(p[0], p[1]);
    symmetry_residual_ = std::max(symmetry_residual_, std::abs(v));
    if (!(std::abs(v) <= tol)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "right-hand side violates R(1-y, (1-y)/(1-x)) = R(x,y) at ("
          << p[0] << ", " << p[1] << "): residual " << v;
      throw InvalidRhs(msg.str());
    }
  }
}

PerturbedSystem PerturbedSystem::constant(double r, double C,
                                          std::string description) {
  PerturbedSystem sys([r](double, double) { return r; }, C,
                      std::move(description));
  sys.constant_ = true;
  return sys;
}

Cocycle5 PerturbedSystem::cocycle() const {
  const double half_c = 0.5 * C_;
  AltFunction2 g = [R = R_, half_c](double x, double y) {
    return R(x, y) - half_c;
  };
  // R passed the reflection check, which makes ext5(R - C/2) even under
  // θ ↦ -θ.
  return Cocycle5::from_alt2(std::move(g), "ext5(R - C/2) for " + description_,
                             std::nullopt, constant_)
      .with_reflection_parity(1);
}

SpenceAbelSolver::SpenceAbelSolver(PerturbedSystem sys, PipelineOptions opts)
    : sys_(std::move(sys)), pipeline_(sys_.cocycle(), opts) {}

double SpenceAbelSolver::operator()(double x) const {
  const double theta = theta_of_x(x).angle();
  const std::array<double, 4> slots = {0.0, kPi, theta, 1.5 * kPi};
  const double avg =
      pipeline_.cocycle().average_first_slot(slots, pipeline_.options().inner);
  return 0.5 * sys_.C() - avg - pipeline_.f0(theta - kPi, 0.5 * kPi) +
         pipeline_.f0(theta, 1.5 * kPi) - pipeline_.f0(kPi, 1.5 * kPi) +
         pipeline_.f0(kPi, theta);
}

double SpenceAbelSolver::via_primitive(double x) const {
  const double theta = theta_of_x(x).angle();
  const std::array<double, 4> slots = {0.0, kPi, theta, 1.5 * kPi};
  return 0.5 * sys_.C() - pipeline_.primitive_p(slots);
}

std::complex<double> r_c(const Cocycle5& c, double phi, const QuadConfig& cfg) {
  PipelineOptions opts;
  opts.outer = cfg;
  return PrimitivePipeline(c, opts).r_c_direct(phi);
}

double v_flat(const Cocycle5& c, double theta1, double theta2,
              const QuadConfig& cfg) {
  PipelineOptions opts;
  opts.outer = cfg;
  return PrimitivePipeline(c, opts).v_flat(theta1, theta2);
}

double f_flat(const Cocycle5& c, double phi1, double phi2,
              const QuadConfig& cfg) {
  PipelineOptions opts;
  opts.outer = cfg;
  return PrimitivePipeline(c, opts).f_flat(phi1, phi2);
}

double primitive_p(const Cocycle5& c, std::span<const double, 4> angles,
                   const QuadConfig& cfg) {
  PipelineOptions opts;
  opts.outer = cfg;
  return PrimitivePipeline(c, opts).primitive_p(angles);
}

double solve_LRC(const PerturbedSystem& sys, double x, const QuadConfig& cfg) {
  PipelineOptions opts;
  opts.outer = cfg;
  return SpenceAbelSolver(sys, opts)(x);
}

}  // namespace spence_abel
