#include "spence_abel/config_coords.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "spence_abel/errors.hpp"

namespace spence_abel {

namespace {

bool triple_oriented(double a, double b, double c) {
  return wrap_angle(b - a) < wrap_angle(c - a);
}

// Canonical angles of (-i, 1, -1).
constexpr double kMinusI = 1.5 * kPi;
constexpr double kOne = 0.0;
constexpr double kMinusOne = kPi;

double theta(double x) { return theta_of_x(x).angle(); }

}  // namespace

ParamPoint::ParamPoint(std::initializer_list<double> coords)
    : ParamPoint(std::span<const double>(coords.begin(), coords.size())) {}

ParamPoint::ParamPoint(std::span<const double> coords) {
  if (coords.empty() || coords.size() > 3) {
    throw DomainError("ParamPoint: dimension must be 1, 2 or 3");
  }
  size_ = coords.size();
  for (std::size_t i = 0; i < size_; ++i) coords_[i] = coords[i];
  validate();
}

void ParamPoint::validate() const {
  double prev = 0.0;
  for (std::size_t i = 0; i < size_; ++i) {
    if (!(coords_[i] > prev)) {
      throw DomainError("ParamPoint: coordinates must satisfy 0 < x1 < ... < 1");
    }
    prev = coords_[i];
  }
  if (!(prev < 1.0)) {
    throw DomainError("ParamPoint: coordinates must satisfy 0 < x1 < ... < 1");
  }
}

Config::Config(std::initializer_list<double> angles)
    : angles_(angles.begin(), angles.end()) {
  init();
}

Config::Config(std::span<const double> angles)
    : angles_(angles.begin(), angles.end()) {
  init();
}

Config::Config(std::span<const CirclePoint> points) {
  angles_.reserve(points.size());
  for (const auto& p : points) angles_.push_back(p.angle());
  init();
}

void Config::init() {
  if (angles_.size() < 3 || angles_.size() > 6) {
    throw DomainError("Config: size must be between 3 and 6, got " +
                      std::to_string(angles_.size()));
  }
  for (double& a : angles_) a = wrap_angle(a);
  require_distinct(angles_);
  oriented_ = spence_abel::is_cyclically_oriented(std::span<const double>(angles_));
}

CyclicSort cyclic_sort(std::span<const double> angles) {
  CyclicSort out;
  out.size = angles.size();
  int swaps = 0;
  for (std::size_t i = 0; i < out.size; ++i) {
    double a = wrap_angle(angles[i]);
    std::size_t j = i;
    while (j > 0 && out.angles[j - 1] > a) {
      out.angles[j] = out.angles[j - 1];
      --j;
      ++swaps;
    }
    out.angles[j] = a;
  }
  out.sign = (swaps % 2 == 0) ? 1 : -1;
  return out;
}

void require_distinct(std::span<const double> angles) {
  for (std::size_t i = 0; i < angles.size(); ++i) {
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      if (chordal_distance(angles[i], angles[j]) < kDistinctnessTolerance) {
        throw DegenerateConfiguration(
            "configuration points " + std::to_string(i + 1) + " and " +
            std::to_string(j + 1) + " coincide");
      }
    }
  }
}

bool is_cyclically_oriented(std::span<const double> angles) {
  if (angles.size() < 3) throw DomainError("orientation needs at least 3 points");
  require_distinct(angles);
  if (!triple_oriented(angles[0], angles[1], angles[2])) return false;
  double prev = 0.0;
  for (std::size_t j = 3; j < angles.size(); ++j) {
    const double lambda =
        circle_cross_ratio(angles[1], angles[2], angles[0], angles[j]);
    if (!(lambda > prev)) return false;
    prev = lambda;
  }
  return prev < 1.0;
}

bool is_cyclically_oriented(const Config& cfg) {
  return cfg.is_cyclically_oriented();
}

ParamPoint lambda_coords(const Config& cfg) {
  if (cfg.size() < 4) throw DomainError("lambda_coords: needs k >= 4 points");
  if (!cfg.is_cyclically_oriented()) {
    throw DomainError("lambda_coords: configuration is not cyclically oriented");
  }
  std::array<double, 3> lambda{};
  for (std::size_t j = 3; j < cfg.size(); ++j) {
    lambda[j - 3] = circle_cross_ratio(cfg[1], cfg[2], cfg[0], cfg[j]);
  }
  return ParamPoint(std::span<const double>(lambda.data(), cfg.size() - 3));
}

Config canonical_config(const ParamPoint& p) {
  std::vector<double> angles = {kMinusI, kOne, kMinusOne};
  for (double x : p.coords()) angles.push_back(theta(x));
  return Config(std::span<const double>(angles));
}

ParamPoint rotate_coords(const ParamPoint& p) {
  const std::size_t n = p.size();
  std::array<double, 3> out{};
  const double last = 1.0 - p[n - 1];
  out[0] = last;
  for (std::size_t j = 1; j < n; ++j) out[j] = last / (1.0 - p[j - 1]);
  return ParamPoint(std::span<const double>(out.data(), n));
}

double ext4(const AltFunction1& f, std::span<const double> angles) {
  if (angles.size() != 4) throw DomainError("ext4: needs 4 points");
  require_distinct(angles);
  const auto s = cyclic_sort(angles);
  const double x =
      circle_cross_ratio(s.angles[1], s.angles[2], s.angles[0], s.angles[3]);
  return s.sign * f(x);
}

double ext5_unchecked(const AltFunction2& g,
                      std::span<const double, 5> angles) {
  const auto s = cyclic_sort(angles);
  const auto& a = s.angles;
  // λ_j = [a1:a2:a0:a_{j+2}]; the shared factors are computed once.
  const double s10 = std::sin(0.5 * (a[1] - a[0]));
  const double s20 = std::sin(0.5 * (a[2] - a[0]));
  const double ratio = s10 / s20;
  const double x = ratio * std::sin(0.5 * (a[2] - a[3])) /
                   std::sin(0.5 * (a[1] - a[3]));
  const double y = ratio * std::sin(0.5 * (a[2] - a[4])) /
                   std::sin(0.5 * (a[1] - a[4]));
  // Coordinates rounded onto the boundary come from (near-)coincident points,
  // a null set; g is never called off the open simplex.
  if (!(x > 0.0 && x < y && y < 1.0)) return 0.0;
  return s.sign * g(x, y);
}

double ext5(const AltFunction2& g, std::span<const double> angles) {
  if (angles.size() != 5) throw DomainError("ext5: needs 5 points");
  require_distinct(angles);
  return ext5_unchecked(g, std::span<const double, 5>(angles.data(), 5));
}

ConfigFunction make_ext4(AltFunction1 f) {
  return [f = std::move(f)](std::span<const double> a) { return ext4(f, a); };
}

ConfigFunction make_ext5(AltFunction2 g) {
  return [g = std::move(g)](std::span<const double> a) { return ext5(g, a); };
}

AltFunction1 res4(ConfigFunction c) {
  return [c = std::move(c)](double x) {
    const std::array<double, 4> a = {kMinusI, kOne, kMinusOne, theta(x)};
    return c(a);
  };
}

AltFunction2 res5(ConfigFunction c) {
  return [c = std::move(c)](double x, double y) {
    const std::array<double, 5> a = {kMinusI, kOne, kMinusOne, theta(x),
                                     theta(y)};
    return c(a);
  };
}

AltFunction3 res6(ConfigFunction c) {
  return [c = std::move(c)](double x, double y, double z) {
    const std::array<double, 6> a = {kMinusI,  kOne,     kMinusOne,
                                     theta(x), theta(y), theta(z)};
    return c(a);
  };
}

AltFunction1 symmetrize1(AltFunction1 f0) {
  return [f0 = std::move(f0)](double x) { return 0.5 * (f0(x) - f0(1.0 - x)); };
}

AltFunction2 symmetrize2(AltFunction2 g0) {
  return [g0 = std::move(g0)](double x, double y) {
    double sum = 0.0;
    for (int j = 0; j < 5; ++j) {
      sum += g0(x, y);
      const double nx = 1.0 - y;
      const double ny = (1.0 - y) / (1.0 - x);
      x = nx;
      y = ny;
    }
    return sum / 5.0;
  };
}

AltFunction3 symmetrize3(AltFunction3 h0) {
  return [h0 = std::move(h0)](double x, double y, double z) {
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 0; j < 6; ++j) {
      sum += sign * h0(x, y, z);
      const double nx = 1.0 - z;
      const double ny = (1.0 - z) / (1.0 - x);
      const double nz = (1.0 - z) / (1.0 - y);
      x = nx;
      y = ny;
      z = nz;
      sign = -sign;
    }
    return sum / 6.0;
  };
}

}  // namespace spence_abel
