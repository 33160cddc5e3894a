// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status counts failures that are not listed as known conflicts.

#include <algorithm>
#include <chrono>
#include <complex>
#include <memory>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spence_abel/circle_geometry.hpp"
#include "spence_abel/config_coords.hpp"
#include "spence_abel/fe_operators.hpp"
#include "spence_abel/primitive_solver.hpp"
#include "spence_abel/rogers_dilog.hpp"
#include "spence_abel/stability_lab.hpp"
#include "support.hpp"

using namespace spence_abel;
using Clock = std::chrono::steady_clock;

namespace {

int g_unexpected = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void detail(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  std::printf("    ");
  std::printf(fmt, a, b, c);
  std::printf("\n");
  std::fflush(stdout);
}

void verdict(int id, bool ok, const std::string& what, const char* known_conflict = nullptr) {
  std::printf("%s criterion %d: %s", ok ? "PASS" : "FAIL", id, what.c_str());
  if (!ok && known_conflict) std::printf(" [known conflict: %s]", known_conflict);
  std::printf("\n");
  std::fflush(stdout);
  if (!ok && !known_conflict) ++g_unexpected;
}

std::vector<double> twentieths() {
  std::vector<double> xs;
  for (int i = 1; i <= 19; ++i) xs.push_back(0.05 * i);
  return xs;
}

std::vector<double> ninths() {
  std::vector<double> xs;
  for (int i = 1; i <= 9; ++i) xs.push_back(0.1 * i);
  return xs;
}

// ---------------------------------------------------------------------------

void criterion1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double x : twentieths()) {
    worst = std::max(worst, std::abs(rogers_new_formula(x) - rogers_reference(x)));
  }
  const double secs = seconds_since(t0);
  // The other sign convention must fail somewhere on the same grid.
  double intro_worst = 0.0;
  for (double x : twentieths()) {
    intro_worst = std::max(intro_worst,
                           std::abs(rogers_new_formula(x, pipeline_quad_config(), FormulaVariant::kIntro) -
                                    rogers_reference(x)));
    if (intro_worst > 1e-4) break;
  }
  detail("body variant: max |new - reference| = %.3e over 19 points in %.1f s", worst, secs);
  detail("intro variant: max |new - reference| >= %.3e", intro_worst);
  verdict(1, worst <= 1e-4 && intro_worst > 1e-4 && secs < 60.0,
          "new integral formula matches L2 to 1e-4; exactly one variant passes");
}

void criterion2() {
  const AltFunction1 L = [](double x) { return rogers_reference(x); };
  double literal = 0.0, shifted = 0.0;
  for (const auto& [x, y] : p2_margin_grid(60)) {
    const double v = five_term(L, x, y);
    literal = std::max(literal, std::abs(v));
    shifted = std::max(shifted, std::abs(v + kZeta2));
  }
  double refl = 0.0;
  for (double x : interval_margin_grid(200)) {
    refl = std::max(refl, std::abs(rogers_reference(x) + rogers_reference(1 - x) - kZeta2));
  }
  detail("five-term residual with right-hand side 0: %.3e (tolerance 1e-12)", literal);
  detail("five-term residual with right-hand side -zeta(2): %.3e (tolerance 1e-12)", shifted);
  detail("reflection residual: %.3e (tolerance 1e-13)", refl);
  if (shifted > 1e-12 || refl > 1e-13) ++g_unexpected;
  verdict(2, literal <= 1e-12 && refl <= 1e-13,
          "five-term and reflection identities of L2",
          "L2 satisfies the five-term equation with constant -zeta(2), verified to 1e-12 above");
}

void criterion3() {
  std::mt19937_64 gen(101);
  double w1 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = test_support::random_angles(gen, 4, 1e-3);
    w1 = std::max(w1, std::abs(I1(a[0], a[1], a[2], a[3]) - oracle::I1_arcs(a[0], a[1], a[2], a[3])));
  }
  std::uniform_real_distribution<double> u(0.02, kTwoPi - 0.02);
  double w2 = 0.0, w3 = 0.0;
  for (int i = 0; i < 50;) {
    double a = u(gen), b = u(gen);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-2) continue;
    w2 = std::max(w2, std::abs(I2(a, b) - oracle::I2_nested(a, b)));
    ++i;
  }
  for (int i = 0; i < 50; ++i) {
    const double t = u(gen);
    w3 = std::max(w3, std::abs(I3(t) - oracle::I3_nested(t)));
  }
  const PrimitivePipeline pipe(orientation_cocycle());
  double wf = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double a = kTwoPi * (i + 0.5) / 10.5;
    for (int j = 0; j < 10; ++j) {
      const double b = a + (kTwoPi - a) * (j + 0.5) / 10.5;
      wf = std::max(wf, std::abs(pipe.f_flat(a, b) - f_flat_closed(a, b)));
    }
  }
  detail("I1 vs arc sums (100 tuples): %.3e", w1);
  detail("I2 vs nested quadrature (50): %.3e; I3 vs nested quadrature (50): %.3e", w2, w3);
  detail("pipeline F-flat vs closed form on 10x10 ordered pairs: %.3e", wf);
  verdict(3, w1 <= 1e-12 && w2 <= 1e-8 && w3 <= 1e-8 && wf <= 1e-5,
          "closed-form kernels against independent oracles");
}

struct RoundTrip {
  std::unique_ptr<SpenceAbelSolver> solver;
  AltFunction2 R;
};

std::vector<RoundTrip> criterion4() {
  std::vector<RoundTrip> out;
  bool ok = true;
  for (int k : {1, 3}) {
    const AltFunction1 f = [k](double x) { return std::cos(k * kPi * x); };
    const AltFunction2 R = tau3(f);
    const auto t0 = Clock::now();
    auto solver = std::make_unique<SpenceAbelSolver>(PerturbedSystem(R, 0.0, "tau3 cos"));
    double worst = 0.0;
    for (double x : ninths()) worst = std::max(worst, std::abs((*solver)(x) - f(x)));
    const double secs = seconds_since(t0);
    detail("f = cos(%.0f pi x): max |L - f| = %.3e in %.1f s", k, worst, secs);
    ok = ok && worst <= 1e-4 && secs < 300.0;
    out.push_back({std::move(solver), R});
  }
  verdict(4, ok, "solver recovers f from R = tau3 f, C = 0");
  return out;
}

void criterion5() {
  std::mt19937_64 gen(103);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  const AltFunction1 f = [](double x) { return std::cos(kPi * x) + 0.3 * std::sin(kTwoPi * x); };
  const AltFunction2 g = symmetrize2([](double x, double y) { return std::exp(x) * y - std::sin(3 * y); });
  const auto d3 = res5(delta(make_ext4(f)));
  const auto d4 = res6(delta(make_ext5(g)));
  const auto t3 = tau3(f);
  const auto t4 = tau4(g);
  const auto t43 = tau4(t3);
  double w3 = 0.0, w4 = 0.0, w43 = 0.0;
  for (int i = 0; i < 200;) {
    double x = u(gen), y = u(gen);
    if (x > y) std::swap(x, y);
    if (y - x < 1e-3) continue;
    w3 = std::max(w3, std::abs(d3(x, y) - t3(x, y)));
    ++i;
  }
  for (int i = 0; i < 200;) {
    std::array<double, 3> p{u(gen), u(gen), u(gen)};
    std::sort(p.begin(), p.end());
    if (p[1] - p[0] < 1e-3 || p[2] - p[1] < 1e-3) continue;
    w4 = std::max(w4, std::abs(d4(p[0], p[1], p[2]) - t4(p[0], p[1], p[2])));
    w43 = std::max(w43, std::abs(t43(p[0], p[1], p[2])));
    ++i;
  }
  detail("res delta ext vs tau3: %.3e; vs tau4: %.3e; tau4 tau3: %.3e", w3, w4, w43);
  verdict(5, w3 <= 1e-11 && w4 <= 1e-11 && w43 <= 1e-11,
          "dictionary commutes with the explicit operators");
}

// sup over the 𝓟₂ grid of |g1 - g2|; equals ‖ext5 g1 - ext5 g2‖ up to grid resolution.
double rhs_sup(const AltFunction2& g1, const AltFunction2& g2) {
  double s = 0.0;
  for (const auto& [x, y] : p2_margin_grid(60)) s = std::max(s, std::abs(g1(x, y) - g2(x, y)));
  return s;
}

void criterion6(const std::vector<RoundTrip>& generic) {
  bool ok = true;
  std::mt19937_64 gen(107);

  // F♭ Lipschitz constant.
  double lip = 0.0;
  {
    const double s1 = -kZeta2 / 2, s2 = 0.3;
    const PrimitivePipeline p1(orientation_cocycle(s1)), p2(orientation_cocycle(s2));
    double num = 0.0;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const double a = kTwoPi * (i + 0.5) / 10.5, b = a + (kTwoPi - a) * (j + 0.5) / 10.5;
        num = std::max(num, std::abs(p1.f_flat(a, b) - p2.f_flat(a, b)));
      }
    }
    lip = std::max(lip, num / std::abs(s1 - s2));
    detail("F-flat ratio, two orientation cocycles: %.4f", num / std::abs(s1 - s2));
  }
  if (generic.size() == 2) {
    const auto& pa = generic[0].solver->pipeline();
    const auto& pb = generic[1].solver->pipeline();
    double num = 0.0;
    for (auto [a, b] : std::vector<std::array<double, 2>>{{0.5, 1.5}, {1.0, 2.5}, {2.0, 5.0}, {3.0, 3.5}, {0.3, 6.0}, {4.0, 5.5}}) {
      num = std::max(num, std::abs(pa.f_flat(a, b) - pb.f_flat(a, b)));
    }
    const double den = rhs_sup(generic[0].R, generic[1].R);
    lip = std::max(lip, num / den);
    detail("F-flat ratio, tau3 cos(pi x) vs tau3 cos(3 pi x): %.4f", num / den);
  }
  ok = ok && lip <= 4.0;

  // Continuity of the solution map.
  std::uniform_real_distribution<double> ur(-0.5, 0.5), uc(-1.0, 3.0);
  double worst_ratio = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double r1 = ur(gen), r2 = ur(gen), c1 = uc(gen), c2 = uc(gen);
    const auto rep = continuity_sweep(PerturbedSystem::constant(r1, c1), PerturbedSystem::constant(r2, c2), ninths());
    worst_ratio = std::max(worst_ratio, rep.ratio);
    ok = ok && rep.passed();
  }
  detail("continuity, 10 seeded constant-rhs pairs: worst ratio %.4f", worst_ratio);
  if (generic.size() == 2) {
    const auto rep = continuity_sweep(*generic[0].solver, *generic[1].solver, ninths());
    detail("continuity, tau3 cos pair: diff %.4f, bound %.4f, ratio %.4f", rep.sup_difference, rep.bound, rep.ratio);
    ok = ok && rep.passed();
  }

  // Hyers-Ulam trials.
  const auto trials = run_stability_trials(7, 0.01, 3, 20);
  double worst = 0.0;
  for (const auto& t : trials) {
    worst = std::max(worst, t.ratio);
    ok = ok && t.passed();
  }
  detail("Hyers-Ulam, 20 seeded trials: worst ratio %.4f", worst);
  detail("F-flat Lipschitz ratio max %.4f (bound 4)", lip);
  verdict(6, ok, "Lipschitz, continuity and stability bounds hold on samples");
}

void criterion7() {
  std::mt19937_64 gen(109);
  std::normal_distribution<double> n(0.0, 1.5);
  using cd = std::complex<double>;
  double norm = 0.0, coc = 0.0;
  for (int i = 0; i < 500; ++i) {
    const cd z(n(gen), n(gen));
    norm = std::max(norm, std::abs(cross_ratio(z, 1.0, 0.0, ExtComplex::infinity()).value() - z) /
                              std::max(1.0, std::abs(z)));
    const cd z1(n(gen), n(gen)), z2(n(gen), n(gen)), z3(n(gen), n(gen)), z4(n(gen), n(gen)), w(n(gen), n(gen));
    const cd lhs = cross_ratio(z1, z2, z3, z4).value();
    const cd rhs = cross_ratio(z1, w, z3, z4).value() * cross_ratio(w, z2, z3, z4).value();
    coc = std::max(coc, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }

  double round = 0.0, rot = 0.0;
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> xs{u(gen), u(gen), u(gen)};
    std::sort(xs.begin(), xs.end());
    if (xs[1] - xs[0] < 1e-3 || xs[2] - xs[1] < 1e-3) continue;
    const ParamPoint p{std::span<const double>(xs)};
    const auto q = lambda_coords(canonical_config(p));
    for (int j = 0; j < 3; ++j) round = std::max(round, std::abs(q[j] - p[j]));

    for (int k = 4; k <= 6; ++k) {
      const auto a = test_support::random_angles(gen, k);
      std::vector<double> r{a.back()};
      r.insert(r.end(), a.begin(), a.end() - 1);
      const auto lhs = lambda_coords(Config(std::span<const double>(r)));
      const auto rhs = rotate_coords(lambda_coords(Config(std::span<const double>(a))));
      for (std::size_t j = 0; j < lhs.size(); ++j) rot = std::max(rot, std::abs(lhs[j] - rhs[j]));
    }
  }

  const AltFunction2 g = symmetrize2([](double x, double y) { return std::sin(5 * x) + y * y * x; });
  const AltFunction1 f = [](double x) { return x - 0.5 + std::sin(kTwoPi * x); };
  const auto c5 = make_ext5(g);
  const auto c4 = make_ext4(f);
  const auto G = Pu11Element::from_unnormalized({1.1, -0.3}, {0.4, 0.6});
  double alt = 0.0, inv = 0.0, rr = 0.0;
  for (int i = 0; i < 200; ++i) {
    auto a = test_support::random_angles(gen, 5);
    std::shuffle(a.begin(), a.end(), gen);
    const double v = c5(a);
    auto b = a;
    std::swap(b[i % 5], b[(i + 2) % 5]);
    alt = std::max(alt, std::abs(c5(b) + v));
    std::vector<double> ga;
    for (double t : a) ga.push_back(G.act_on_angle(t));
    inv = std::max(inv, std::abs(c5(ga) - v));
    std::vector<double> a4(a.begin(), a.begin() + 4), g4;
    for (double t : a4) g4.push_back(G.act_on_angle(t));
    inv = std::max(inv, std::abs(c4(g4) - c4(a4)));
    const double w4 = c4(a4);
    std::swap(a4[1], a4[2]);
    alt = std::max(alt, std::abs(c4(a4) + w4));
  }
  const auto g2 = res5(c5);
  const auto f2 = res4(c4);
  for (int i = 0; i < 100; ++i) {
    double x = u(gen), y = u(gen);
    if (x > y) std::swap(x, y);
    if (y - x < 1e-3) continue;
    rr = std::max({rr, std::abs(g2(x, y) - g(x, y)), std::abs(f2(x) - f(x))});
  }
  detail("cross-ratio normalization %.3e, cocycle identity %.3e", norm, coc);
  detail("Lambda round trip %.3e, rotation law %.3e", round, rot);
  detail("ext alternation %.3e, G-invariance %.3e, res ext = id %.3e", alt, inv, rr);
  verdict(7, norm <= 1e-12 && coc <= 1e-12 && round <= 1e-12 && rot <= 1e-12 && alt <= 1e-10 &&
                 inv <= 1e-10 && rr <= 1e-10,
          "geometry and coordinate suite");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion1();
  criterion2();
  criterion3();
  const auto generic = criterion4();
  criterion5();
  criterion6(generic);
  criterion7();
  std::printf("total %.1f s; unexpected failures: %d\n", seconds_since(t0), g_unexpected);
  return g_unexpected == 0 ? 0 : 1;
}
