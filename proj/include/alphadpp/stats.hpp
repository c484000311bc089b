#pragma once

#include <vector>

#include "alphadpp/types.hpp"

namespace alphadpp {

// Regularized upper incomplete gamma Q(a, x); series / continued fraction.
Real gamma_q(Real a, Real x);

// Upper-tail p-value of a chi-square statistic with dof degrees of freedom.
Real chi_square_pvalue(Real stat, int dof);

// Kolmogorov-Smirnov sup-distance of samples against the uniform law on
// [lo, hi).  Asymptotic 1% critical value for sqrt(n)*D is ~1.6276.
Real ks_uniform_statistic(std::vector<Real> samples, Real lo, Real hi);

// Pearson chi-square of observed counts against expected (same bins, expected
// all positive); bins with tiny expectation should be merged by the caller.
Real chi_square_statistic(const std::vector<Real>& observed, const std::vector<Real>& expected);

struct MomentEstimate {
  Real mean = 0;
  Real std_error = 0;
};

// Mean and standard error of an i.i.d. sample.
MomentEstimate mean_and_stderr(const std::vector<Real>& values);

}  // namespace alphadpp
