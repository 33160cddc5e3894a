#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "spence_abel/circle_geometry.hpp"

namespace spence_abel {

/// Alternating functions in cross-ratio coordinates. Membership in the
/// alternating spaces is a documented contract, checked by sampling in tests:
///   AltFunction1: f(x) = -f(1-x)
///   AltFunction2: g(x,y) = g(1-y, (1-y)/(1-x))
///   AltFunction3: h(x,y,z) = -h(1-z, (1-z)/(1-x), (1-z)/(1-y))
/// Callables must be safe to invoke concurrently.
using AltFunction1 = std::function<double(double)>;
using AltFunction2 = std::function<double(double, double)>;
using AltFunction3 = std::function<double(double, double, double)>;

/// Real function on tuples of circle points given by their angles.
using ConfigFunction = std::function<double(std::span<const double>)>;

/// Point of the open simplex 0 < x1 < ... < xn < 1, n ∈ {1,2,3}.
class ParamPoint {
 public:
  ParamPoint(std::initializer_list<double> coords);
  explicit ParamPoint(std::span<const double> coords);

  std::size_t size() const { return size_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return {coords_.data(), size_}; }

 private:
  void validate() const;

  std::array<double, 3> coords_{};
  std::size_t size_ = 0;
};

/// Tuple of k ∈ {3,...,6} pairwise distinct circle points with a cached
/// cyclic-orientation flag.
class Config {
 public:
  Config(std::initializer_list<double> angles);
  explicit Config(std::span<const double> angles);
  explicit Config(std::span<const CirclePoint> points);

  std::size_t size() const { return angles_.size(); }
  std::span<const double> angles() const { return angles_; }
  double operator[](std::size_t i) const { return angles_[i]; }
  bool is_cyclically_oriented() const { return oriented_; }

 private:
  void init();

  std::vector<double> angles_;
  bool oriented_ = false;
};

/// Result of sorting a tuple into cyclic order by increasing angle.
struct CyclicSort {
  std::array<double, 6> angles{};
  std::size_t size = 0;
  int sign = 1;  // parity of the sorting permutation
};

/// Sort up to six angles (reduced to [0,2π)) increasingly; `sign` is the
/// parity of the sorting permutation. No distinctness check.
CyclicSort cyclic_sort(std::span<const double> angles);

/// Throws DegenerateConfiguration when two angles are closer than
/// kDistinctnessTolerance in chordal distance.
void require_distinct(std::span<const double> angles);

/// True iff the (distinct) tuple admits a lift θ1 < ... < θk < θ1 + 2π.
/// Decided by the triple orientation of the first three points and the
/// cross-ratio chain 0 < [z2:z3:z1:z4] < ... < [z2:z3:z1:zk] < 1.
bool is_cyclically_oriented(std::span<const double> angles);
bool is_cyclically_oriented(const Config& cfg);

/// Cross-ratio coordinates λ_j = [z2:z3:z1:z_{j+3}] of a cyclically oriented
/// configuration with k ≥ 4 points. Throws DomainError if not oriented.
ParamPoint lambda_coords(const Config& cfg);

/// The configuration (-i, 1, -1, C(λ1), ..., C(λn)), cyclically oriented with
/// coordinates λ.
Config canonical_config(const ParamPoint& p);

/// Coordinates of the rotated tuple (z_k, z1, ..., z_{k-1}) in terms of the
/// coordinates of (z1, ..., zk).
ParamPoint rotate_coords(const ParamPoint& p);

/// Alternating G-invariant extension of f to 4- and 5-point configurations:
/// sign(σ)·f(Λ(sorted)) where σ sorts the tuple into cyclic order.
double ext4(const AltFunction1& f, std::span<const double> angles);
double ext5(const AltFunction2& g, std::span<const double> angles);

/// As ext5, without the distinctness check. For quadrature inner loops whose
/// nodes never reach the breakpoints. Returns 0 when the coordinates round
/// onto the boundary of 𝓟₂.
double ext5_unchecked(const AltFunction2& g, std::span<const double, 5> angles);

ConfigFunction make_ext4(AltFunction1 f);
ConfigFunction make_ext5(AltFunction2 g);

/// Restrictions c ↦ c(-i, 1, -1, C(λ1), ...).
AltFunction1 res4(ConfigFunction c);
AltFunction2 res5(ConfigFunction c);
AltFunction3 res6(ConfigFunction c);

/// Projections onto the alternating subspaces by averaging over the orbit of
/// the coordinate rotation.
AltFunction1 symmetrize1(AltFunction1 f0);
AltFunction2 symmetrize2(AltFunction2 g0);
AltFunction3 symmetrize3(AltFunction3 h0);

}  // namespace spence_abel
