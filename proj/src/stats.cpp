#include "alphadpp/stats.hpp"

#include <algorithm>
#include <cmath>

namespace alphadpp {

namespace {

// Lower regularized gamma P(a,x) by power series; valid for x < a + 1.
Real gamma_p_series(Real a, Real x) {
  Real ap = a;
  Real sum = 1.0 / a;
  Real del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma Q(a,x) by Lentz continued fraction; x >= a + 1.
Real gamma_q_cf(Real a, Real x) {
  const Real tiny = 1e-300;
  Real b = x + 1.0 - a;
  Real c = 1.0 / tiny;
  Real d = 1.0 / b;
  Real h = d;
  for (int i = 1; i < 500; ++i) {
    const Real an = -static_cast<Real>(i) * (static_cast<Real>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Real del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

Real gamma_q(Real a, Real x) {
  if (a <= 0 || x < 0) throw contract_error("gamma_q: need a > 0 and x >= 0");
  if (x == 0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

Real chi_square_pvalue(Real stat, int dof) {
  if (dof <= 0) throw contract_error("chi_square_pvalue: dof must be positive");
  if (stat <= 0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * stat);
}

Real ks_uniform_statistic(std::vector<Real> samples, Real lo, Real hi) {
  if (samples.empty()) throw contract_error("ks: empty sample");
  if (!(hi > lo)) throw contract_error("ks: degenerate interval");
  std::sort(samples.begin(), samples.end());
  const Real n = static_cast<Real>(samples.size());
  Real d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Real f = (samples[i] - lo) / (hi - lo);
    d = std::max(d, std::abs(f - static_cast<Real>(i) / n));
    d = std::max(d, std::abs(static_cast<Real>(i + 1) / n - f));
  }
  return d;
}

Real chi_square_statistic(const std::vector<Real>& observed, const std::vector<Real>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw contract_error("chi_square_statistic: bin mismatch");
  Real stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0) throw contract_error("chi_square_statistic: non-positive expected bin");
    const Real d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

MomentEstimate mean_and_stderr(const std::vector<Real>& values) {
  if (values.empty()) throw contract_error("mean_and_stderr: empty sample");
  const Real n = static_cast<Real>(values.size());
  Real mean = 0;
  for (Real v : values) mean += v;
  mean /= n;
  Real var = 0;
  for (Real v : values) var += (v - mean) * (v - mean);
  var = values.size() > 1 ? var / (n - 1) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace alphadpp
