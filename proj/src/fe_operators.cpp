#include "spence_abel/fe_operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "spence_abel/errors.hpp"

namespace spence_abel {

ConfigFunction delta(ConfigFunction c) {
  return [c = std::move(c)](std::span<const double> z) {
    const std::size_t m = z.size();
    if (m < 2 || m > 8) throw DomainError("delta: tuple size must be in [2, 8]");
    std::array<double, 8> buf{};
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (i != j) buf[k++] = z[i];
      }
      const double term = c(std::span<const double>(buf.data(), m - 1));
      sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
  };
}

double five_term(const AltFunction1& f, double x, double y) {
  return f(x) - f(y) - f(x / y) - f((y - 1.0) / (x - 1.0)) +
         f(x * (y - 1.0) / (y * (x - 1.0)));
}

double six_term(const AltFunction2& g, double x, double y, double z) {
  return -g(x, y) + g(x, z) - g(y, z) + g(x / z, y / z) +
         g((z - 1.0) / (x - 1.0), (z - 1.0) / (y - 1.0)) -
         g(x * (z - 1.0) / (z * (x - 1.0)), y * (z - 1.0) / (z * (y - 1.0)));
}

AltFunction2 tau3(AltFunction1 f) {
  return [f = std::move(f)](double x, double y) {
    if (!(x > 0.0 && x < y && y < 1.0)) {
      throw DomainError("tau3: (x,y) must satisfy 0 < x < y < 1");
    }
    return five_term(f, x, y);
  };
}

AltFunction3 tau4(AltFunction2 g) {
  return [g = std::move(g)](double x, double y, double z) {
    if (!(x > 0.0 && x < y && y < z && z < 1.0)) {
      throw DomainError("tau4: (x,y,z) must satisfy 0 < x < y < z < 1");
    }
    return six_term(g, x, y, z);
  };
}

AltFunction3 six_term_lhs(AltFunction2 r) {
  auto t = tau4(std::move(r));
  return [t = std::move(t)](double x, double y, double z) { return -t(x, y, z); };
}

std::array<double, 2> reflect_p2(double x, double y) {
  return {1.0 - y, (1.0 - y) / (1.0 - x)};
}

std::vector<double> interval_margin_grid(int n, double margin) {
  if (n < 2) throw DomainError("grid needs at least 2 points per axis");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double lo = margin;
  const double hi = 1.0 - margin;
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

std::vector<std::array<double, 2>> p2_margin_grid(int n, double margin) {
  // (u, v) ∈ [0,1]² ↦ margin ≤ x, x + margin ≤ y ≤ 1 - margin.
  const auto u = interval_margin_grid(n, 0.0);
  const double lo = margin;
  const double hi = 1.0 - margin;
  std::vector<std::array<double, 2>> out;
  out.reserve(u.size() * u.size());
  for (double a : u) {
    const double x = lo + (hi - lo - margin) * a;
    for (double b : u) {
      const double y = x + margin + (hi - x - margin) * b;
      out.push_back({x, y});
    }
  }
  return out;
}

std::vector<std::array<double, 3>> p3_margin_grid(int n, double margin) {
  const auto u = interval_margin_grid(n, 0.0);
  const double lo = margin;
  const double hi = 1.0 - margin;
  std::vector<std::array<double, 3>> out;
  out.reserve(u.size() * u.size() * u.size());
  for (double a : u) {
    const double x = lo + (hi - lo - 2.0 * margin) * a;
    for (double b : u) {
      const double y = x + margin + (hi - x - 2.0 * margin) * b;
      for (double c : u) {
        const double z = y + margin + (hi - y - margin) * c;
        out.push_back({x, y, z});
      }
    }
  }
  return out;
}

Residual spence_abel_residual(const AltFunction1& L, const AltFunction2& R,
                              double C,
                              const std::vector<std::array<double, 2>>& grid) {
  Residual res;
  std::vector<double> coords;
  coords.reserve(2 * grid.size());
  for (const auto& p : grid) {
    const double v = five_term(L, p[0], p[1]) - R(p[0], p[1]);
    res.samples.push_back({{p[0], p[1]}, v});
    res.five_term_sup = std::max(res.five_term_sup, std::abs(v));
    coords.push_back(p[0]);
    coords.push_back(p[1]);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  for (double x : coords) {
    const double v = L(1.0 - x) + L(x) - C;
    res.samples.push_back({{x}, v});
    res.reflection_sup = std::max(res.reflection_sup, std::abs(v));
  }
  res.sup_abs = std::max(res.five_term_sup, res.reflection_sup);
  return res;
}

}  // namespace spence_abel
