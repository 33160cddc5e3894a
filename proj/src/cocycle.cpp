#include "spence_abel/cocycle.hpp"

#include <cmath>
#include <utility>

#include "spence_abel/errors.hpp"

namespace spence_abel {

Cocycle5::Cocycle5(Evaluator evaluator, std::string name,
                   std::optional<double> sup_bound)
    : evaluator_(std::move(evaluator)),
      name_(std::move(name)),
      sup_bound_(sup_bound) {}

Cocycle5 Cocycle5::from_alt2(AltFunction2 g, std::string name,
                             std::optional<double> sup_bound,
                             bool piecewise_constant) {
  Cocycle5 c(
      [g = std::move(g)](std::span<const double, 5> a) {
        return ext5_unchecked(g, a);
      },
      std::move(name), sup_bound);
  c.piecewise_constant_ = piecewise_constant;
  return c;
}

double Cocycle5::evaluate(std::span<const double> angles) const {
  if (angles.size() != 5) throw DomainError("Cocycle5: needs 5 points");
  require_distinct(angles);
  return evaluator_(std::span<const double, 5>(angles.data(), 5));
}

double Cocycle5::average_first_slot(std::span<const double, 4> angles,
                                    const QuadConfig& cfg) const {
  if (slot_average_) return slot_average_(angles);
  auto integrand = [&](double psi) {
    const std::array<double, 5> z = {psi, angles[0], angles[1], angles[2],
                                     angles[3]};
    const double v = evaluator_(z);
    // Near-collisions (nested quadrature nodes a few ulps apart) can turn the
    // cross-ratio coordinates into 0/0. Such nodes carry negligible weight.
    return std::isfinite(v) ? v : 0.0;
  };
  if (piecewise_constant_) {
    return piecewise_constant_circle_average(integrand, angles);
  }
  return circle_average_adaptive<double>(integrand, cfg, angles).value;
}

Cocycle5 Cocycle5::with_slot_average(SlotAverage avg) const {
  Cocycle5 c = *this;
  c.slot_average_ = std::move(avg);
  return c;
}

Cocycle5 Cocycle5::as_piecewise_constant() const {
  Cocycle5 c = *this;
  c.piecewise_constant_ = true;
  return c;
}

Cocycle5 Cocycle5::with_reflection_parity(int parity) const {
  if (parity != 1 && parity != -1) {
    throw DomainError("with_reflection_parity: parity must be +1 or -1");
  }
  Cocycle5 c = *this;
  c.reflection_parity_ = parity;
  return c;
}

Cocycle5 operator-(const Cocycle5& c1, const Cocycle5& c2) {
  Cocycle5 out(
      [e1 = c1.evaluator_, e2 = c2.evaluator_](std::span<const double, 5> a) {
        return e1(a) - e2(a);
      },
      "(" + c1.name_ + ") - (" + c2.name_ + ")");
  if (c1.sup_bound_ && c2.sup_bound_) {
    out.sup_bound_ = *c1.sup_bound_ + *c2.sup_bound_;
  }
  out.piecewise_constant_ = c1.piecewise_constant_ && c2.piecewise_constant_;
  if (c1.reflection_parity_ == c2.reflection_parity_) {
    out.reflection_parity_ = c1.reflection_parity_;
  }
  if (c1.slot_average_ && c2.slot_average_) {
    out.slot_average_ = [s1 = c1.slot_average_,
                         s2 = c2.slot_average_](std::span<const double, 4> a) {
      return s1(a) - s2(a);
    };
  }
  return out;
}

Cocycle5 operator*(double s, const Cocycle5& c) {
  Cocycle5 out(
      [s, e = c.evaluator_](std::span<const double, 5> a) { return s * e(a); },
      std::to_string(s) + "*(" + c.name_ + ")");
  if (c.sup_bound_) out.sup_bound_ = std::abs(s) * *c.sup_bound_;
  out.piecewise_constant_ = c.piecewise_constant_;
  out.reflection_parity_ = c.reflection_parity_;
  if (c.slot_average_) {
    out.slot_average_ = [s, a0 = c.slot_average_](std::span<const double, 4> a) {
      return s * a0(a);
    };
  }
  return out;
}

}  // namespace spence_abel
