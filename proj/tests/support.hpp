#pragma once

// Shared oracles and generators for the test binaries.  Everything here is
// deliberately independent of the library's own algorithms: permanents come
// from Ryser's formula, determinants from Eigen's LU, basis enumeration from
// the raw membership rule, and inner products from midpoint sums that are
// exact for dyadic step functions.

#include <doctest.h>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "alphadpp/kernel.hpp"
#include "alphadpp/tree.hpp"
#include "alphadpp/types.hpp"

namespace testsupport {

using alphadpp::BasisIndex;
using alphadpp::Complex;
using alphadpp::MatrixXc;
using alphadpp::Real;
using alphadpp::TreeIndex;
using alphadpp::Window;

// Ryser: perm(A) = (-1)^n sum_{S subset [n]} (-1)^{|S|} prod_i sum_{j in S} a_ij.
inline Complex ryser_permanent(const MatrixXc& A) {
  const int n = static_cast<int>(A.rows());
  REQUIRE(A.cols() == n);
  REQUIRE(n <= 20);
  if (n == 0) return Complex(1.0);
  Complex total(0.0);
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    Complex prod(1.0);
    for (int i = 0; i < n; ++i) {
      Complex row(0.0);
      for (int j = 0; j < n; ++j)
        if (s & (1u << j)) row += A(i, j);
      prod *= row;
    }
    const int bits = std::popcount(s);
    total += ((n - bits) % 2 ? -prod : prod);
  }
  return total;
}

inline Complex lu_determinant(const MatrixXc& A) { return A.determinant(); }

inline MatrixXc random_complex_matrix(std::mt19937_64& gen, int n, Real scale = 1.0) {
  std::uniform_real_distribution<Real> u(-scale, scale);
  MatrixXc A(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) A(r, c) = Complex(u(gen), u(gen));
  return A;
}

inline MatrixXc random_real_matrix(std::mt19937_64& gen, int n, Real scale = 1.0) {
  std::uniform_real_distribution<Real> u(-scale, scale);
  MatrixXc A(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) A(r, c) = Complex(u(gen), 0.0);
  return A;
}

inline MatrixXc random_hermitian(std::mt19937_64& gen, int n, Real scale = 1.0) {
  const MatrixXc A = random_complex_matrix(gen, n, scale);
  return 0.5 * (A + A.adjoint());
}

// Direct enumeration of the level-l family from the membership rule alone:
// an unshifted index u belongs iff its support sits inside the window and
// either u.rank() == level (rank-1 labels) or u ends in a 0 bit.  Returned in
// whatever order the scan produces; callers compare as sets.
inline std::vector<BasisIndex> brute_force_family(int level, int max_rank, const Window& window) {
  std::vector<BasisIndex> out;
  std::function<void(const TreeIndex&)> scan = [&](const TreeIndex& u) {
    const BasisIndex cand(level, u);
    const int r = cand.rank();
    if (r >= 1 && r <= max_rank && window.interval().contains(cand.support()) &&
        (r == 1 || u.last_bit() == 0))
      out.push_back(cand);
    if (u.rank() - level + 1 < max_rank) {
      scan(u.child(0));
      scan(u.child(1));
    }
  };
  const std::int64_t lo = static_cast<std::int64_t>(std::floor(window.a)) - 1;
  const std::int64_t hi = static_cast<std::int64_t>(std::ceil(window.b)) + 1;
  for (std::int64_t root = lo; root <= hi; ++root) {
    std::function<void(const TreeIndex&)> descend = [&](const TreeIndex& c) {
      if (c.rank() == level) {
        scan(c);
        return;
      }
      descend(c.child(0));
      descend(c.child(1));
    };
    if (level >= 1) descend(TreeIndex::cell(root));
  }
  return out;
}

// Integral over the window of f*g for functions piecewise constant on the
// level-`resolution` cells: midpoint sum, exact up to rounding.
inline Real dyadic_inner(const std::function<Real(Real)>& f, const std::function<Real(Real)>& g,
                         int resolution, const Window& window) {
  REQUIRE(window.aligned(resolution));
  Real acc = 0;
  const Real h = std::ldexp(1.0, 1 - resolution);
  const std::int64_t n = window.cell_count(resolution);
  for (std::int64_t k = 0; k < n; ++k) {
    const Real mid = window.a + (static_cast<Real>(k) + 0.5) * h;
    acc += f(mid) * g(mid) * h;
  }
  return acc;
}

// Rank-2 kernel on [0, 1) used across the suites: eigenvalues 0.7 and 0.3 on
// the sum/difference of the two level-2 cell indicators.  Pointwise it equals
// 1 on matching half-cells and 0.4 across them.
inline alphadpp::KernelSpec two_mode_kernel(Real scale = 1.0) {
  const Real r = std::sqrt(0.5);
  const BasisIndex left(2, TreeIndex::parse("(0;0)"));
  const BasisIndex right(2, TreeIndex::parse("(0;1)"));
  alphadpp::FiniteRankMode sum{0.7 * scale, {{left, r}, {right, r}}};
  alphadpp::FiniteRankMode diff{0.3 * scale, {{left, r}, {right, -r}}};
  return alphadpp::KernelSpec::finite_rank(2, {sum, diff});
}

inline bool close(Real a, Real b, Real tol) { return std::abs(a - b) <= tol; }

inline Real rel_gap(Complex a, Complex b) {
  const Real scale = std::max({std::abs(a), std::abs(b), Real(1)});
  return std::abs(a - b) / scale;
}

}  // namespace testsupport
