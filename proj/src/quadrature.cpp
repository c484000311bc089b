#include "alphadpp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace alphadpp {

namespace {

// Newton iteration on P_n with the usual cosine initial guess.
GaussLegendre compute_rule(int n) {
  GaussLegendre rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    Real z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    Real pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      Real p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const Real p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const Real z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[n - 1 - i] = rule.w[i];
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  if (order < 2) throw contract_error("gauss_legendre: order must be >= 2");
  if (order > 256) throw resource_error("gauss_legendre: order guard exceeded");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

CompositeRule composite_rule(Real a, Real b, int level, int order) {
  if (!(b > a)) throw contract_error("composite_rule: empty interval");
  if (level < 1 || level > 48) throw contract_error("composite_rule: level out of range");
  const Real h = std::ldexp(1.0, 1 - level);
  const Real cells_f = (b - a) / h;
  const auto cells = static_cast<std::int64_t>(std::llround(cells_f));
  if (std::abs(cells_f - static_cast<Real>(cells)) > 1e-9 || cells <= 0)
    throw contract_error("composite_rule: interval not aligned to the cell grid");
  if (cells * order > (std::int64_t{1} << 22))
    throw resource_error("composite_rule: node-count guard exceeded");
  const GaussLegendre& gl = gauss_legendre(order);
  CompositeRule rule;
  rule.x.resize(cells * order);
  rule.w.resize(cells * order);
  for (std::int64_t c = 0; c < cells; ++c) {
    const Real lo = a + static_cast<Real>(c) * h;
    for (int q = 0; q < order; ++q) {
      rule.x[c * order + q] = lo + 0.5 * h * (gl.x[q] + 1.0);
      rule.w[c * order + q] = 0.5 * h * gl.w[q];
    }
  }
  return rule;
}

}  // namespace alphadpp
