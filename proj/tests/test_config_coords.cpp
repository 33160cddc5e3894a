#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "spence_abel/config_coords.hpp"
#include "spence_abel/errors.hpp"
#include "support.hpp"

using namespace spence_abel;

namespace {

const auto kG = Pu11Element::from_unnormalized({0.9, 0.4}, {0.2, 0.5});

// A 2-variable function with no symmetry; symmetrize2 makes it alternating.
double raw2(double x, double y) { return std::sin(3 * x) + x * y * y - std::log(1 + y); }

}  // namespace

TEST_CASE("ParamPoint enforces the open simplex") {
  CHECK_NOTHROW(ParamPoint({0.2, 0.7}));
  CHECK_THROWS(ParamPoint({0.7, 0.2}));
  CHECK_THROWS(ParamPoint({0.0, 0.5}));
  CHECK_THROWS(ParamPoint({0.5, 1.0}));
  CHECK_THROWS(ParamPoint({0.1, 0.2, 0.3, 0.4}));
}

TEST_CASE("cyclic sort parity and orientation") {
  const std::array<double, 4> a{0.5, 2.0, 1.0, 4.0};
  const auto s = cyclic_sort(a);
  CHECK(s.sign == -1);
  CHECK(s.angles[1] == 1.0);
  CHECK(is_cyclically_oriented(std::array<double, 4>{0.5, 1.0, 2.0, 4.0}));
  // Rotations of an oriented tuple stay oriented.
  CHECK(is_cyclically_oriented(std::array<double, 4>{2.0, 4.0, 0.5, 1.0}));
  CHECK_FALSE(is_cyclically_oriented(a));
  CHECK_THROWS_AS(require_distinct(std::array<double, 3>{0.1, 0.1, 2.0}),
                  DegenerateConfiguration);
  CHECK_THROWS_AS(Config({0.3, 0.3 + kTwoPi, 1.0, 2.0}), DegenerateConfiguration);
}

TEST_CASE("Lambda round trip through the canonical configuration") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int i = 0; i < 100; ++i) {
      std::vector<double> xs(n);
      for (auto& x : xs) x = u(gen);
      std::sort(xs.begin(), xs.end());
      if (n > 1 && xs[1] - xs[0] < 1e-3) continue;
      if (n > 2 && xs[2] - xs[1] < 1e-3) continue;
      const ParamPoint p{std::span<const double>(xs)};
      const Config cfg = canonical_config(p);
      CHECK(cfg.size() == static_cast<std::size_t>(n + 3));
      CHECK(cfg.is_cyclically_oriented());
      const ParamPoint q = lambda_coords(cfg);
      for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(q[j] - p[j]));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Lambda coordinates transform by the rotation law") {
  std::mt19937_64 gen(23);
  double worst = 0.0;
  for (int k = 4; k <= 6; ++k) {
    for (int i = 0; i < 100; ++i) {
      const auto a = test_support::random_angles(gen, k);
      std::vector<double> rot{a.back()};
      rot.insert(rot.end(), a.begin(), a.end() - 1);
      const ParamPoint lhs = lambda_coords(Config(std::span<const double>(rot)));
      const ParamPoint rhs = rotate_coords(lambda_coords(Config(std::span<const double>(a))));
      for (std::size_t j = 0; j < lhs.size(); ++j) {
        worst = std::max(worst, std::abs(lhs[j] - rhs[j]));
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Lambda coordinates are G-invariant") {
  std::mt19937_64 gen(29);
  for (int i = 0; i < 50; ++i) {
    const auto a = test_support::random_angles(gen, 5);
    std::vector<double> b;
    for (double t : a) b.push_back(kG.act_on_angle(t));
    const auto p = lambda_coords(Config(std::span<const double>(a)));
    const auto q = lambda_coords(Config(std::span<const double>(b)));
    CHECK(std::abs(p[0] - q[0]) < 1e-11);
    CHECK(std::abs(p[1] - q[1]) < 1e-11);
  }
}

TEST_CASE("lambda_coords rejects unoriented tuples") {
  CHECK_THROWS_AS(lambda_coords(Config({0.5, 2.0, 1.0, 4.0})), DomainError);
}

TEST_CASE("symmetrizers produce alternating functions") {
  const auto f = symmetrize1([](double x) { return std::exp(x) * x; });
  const auto g = symmetrize2(raw2);
  const auto h = symmetrize3([](double x, double y, double z) { return x + 2 * y * y + std::cos(z); });
  for (double x : {0.1, 0.37, 0.6}) CHECK(std::abs(f(x) + f(1 - x)) < 1e-14);
  for (auto [x, y] : std::vector<std::array<double, 2>>{{0.1, 0.4}, {0.3, 0.9}}) {
    CHECK(std::abs(g(x, y) - g(1 - y, (1 - y) / (1 - x))) < 1e-13);
  }
  const double x = 0.2, y = 0.5, z = 0.8;
  CHECK(std::abs(h(x, y, z) + h(1 - z, (1 - z) / (1 - x), (1 - z) / (1 - y))) < 1e-13);
}

TEST_CASE("ext/res dictionary: round trip, alternation and invariance") {
  const AltFunction1 f = [](double x) { return x - 0.5 + 0.3 * std::sin(kTwoPi * x); };
  const AltFunction2 g = symmetrize2(raw2);
  const auto c4 = make_ext4(f);
  const auto c5 = make_ext5(g);

  SUBCASE("res after ext is the identity") {
    const auto f2 = res4(c4);
    const auto g2 = res5(c5);
    for (double x : {0.05, 0.3, 0.71}) CHECK(std::abs(f2(x) - f(x)) < 1e-10);
    for (auto [x, y] : std::vector<std::array<double, 2>>{{0.1, 0.4}, {0.3, 0.9}, {0.5, 0.55}}) {
      CHECK(std::abs(g2(x, y) - g(x, y)) < 1e-10);
    }
  }

  SUBCASE("alternation under transpositions and G-invariance") {
    std::mt19937_64 gen(31);
    double alt = 0.0, inv = 0.0;
    for (int i = 0; i < 100; ++i) {
      auto a = test_support::random_angles(gen, 5);
      std::shuffle(a.begin(), a.end(), gen);
      const double v = c5(a);
      for (int p = 0; p < 5; ++p) {
        for (int q = p + 1; q < 5; ++q) {
          auto b = a;
          std::swap(b[p], b[q]);
          alt = std::max(alt, std::abs(c5(b) + v));
        }
      }
      std::vector<double> ga;
      for (double t : a) ga.push_back(kG.act_on_angle(t));
      inv = std::max(inv, std::abs(c5(ga) - v));

      std::vector<double> a4(a.begin(), a.begin() + 4);
      const double w = c4(a4);
      std::swap(a4[0], a4[3]);
      alt = std::max(alt, std::abs(c4(a4) + w));
    }
    CHECK(alt <= 1e-10);
    CHECK(inv <= 1e-10);
  }

  SUBCASE("ext5 matches its unchecked variant and rejects degenerate tuples") {
    const std::array<double, 5> a{0.3, 1.1, 2.0, 3.5, 5.0};
    CHECK(ext5(g, a) == doctest::Approx(ext5_unchecked(g, a)).epsilon(1e-14));
    CHECK_THROWS_AS(ext5(g, std::array<double, 5>{0.3, 0.3, 2.0, 3.5, 5.0}),
                    DegenerateConfiguration);
  }
}
