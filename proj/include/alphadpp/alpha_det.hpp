#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "alphadpp/alpha.hpp"
#include "alphadpp/types.hpp"

namespace alphadpp {

// Number of cycles of a permutation of {0..n-1}.
inline int cycle_count(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<bool> seen(n, false);
  int cycles = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++cycles;
    int t = s;
    while (!seen[t]) {
      seen[t] = true;
      if (sigma[t] < 0 || sigma[t] >= n) throw contract_error("cycle_count: not a permutation");
      t = sigma[t];
    }
  }
  // cycle walking alone cannot detect duplicate images; verify bijectivity
  std::vector<bool> hit(n, false);
  for (int s = 0; s < n; ++s) {
    if (hit[sigma[s]]) throw contract_error("cycle_count: not a permutation");
    hit[sigma[s]] = true;
  }
  return cycles;
}

// det_alpha(A) = sum over permutations sigma of alpha^{n - nu(sigma)} * prod_i a_{i,sigma(i)},
// nu = number of cycles.  Direct enumeration; exact reference for small n.
template <typename Derived>
typename Derived::Scalar det_alpha_naive(const Eigen::MatrixBase<Derived>& A,
                                         const AlphaParam& alpha, int max_n = 10) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(A.rows());
  if (A.rows() != A.cols()) throw contract_error("det_alpha: matrix must be square");
  if (n > max_n) throw resource_error("det_alpha_naive: dimension exceeds guard (n! growth)");
  if (n == 0) return Scalar(1);

  const Real a = alpha.value();
  std::vector<Real> apow(n + 1);
  apow[0] = 1.0;
  for (int k = 1; k <= n; ++k) apow[k] = apow[k - 1] * a;

  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  Scalar total(0);
  do {
    Scalar prod(1);
    for (int i = 0; i < n; ++i) prod *= A(i, sigma[i]);
    total += prod * apow[n - cycle_count(sigma)];
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

namespace detail {

// Subset-DP evaluation of det_alpha via the cycle expansion rooted at the
// smallest live index r = min(S):
//   det_alpha(A|S) = sum over cycles C = (r, i2, .., ik) inside S of
//                    alpha^{k-1} a_{r,i2} a_{i2,i3} ... a_{ik,r} det_alpha(A | S \ C).
// Open paths are folded into a second memoized table g(r, M, j) = value of all
// completions given remaining set M, current path endpoint j and cycle root r.
// O(2^n poly(n)) states; masks fit 22 bits, r and j 5 bits each.
template <typename Scalar, typename Mat>
struct AlphaDetDp {
  const Mat& A;
  Real alpha;
  std::unordered_map<std::uint32_t, Scalar> f_memo;
  std::unordered_map<std::uint64_t, Scalar> g_memo;

  Scalar f(std::uint32_t mask) {
    if (mask == 0) return Scalar(1);
    auto it = f_memo.find(mask);
    if (it != f_memo.end()) return it->second;
    const int r = std::countr_zero(mask);
    const Scalar v = g(r, mask & (mask - 1), r);
    f_memo.emplace(mask, v);
    return v;
  }

  Scalar g(int r, std::uint32_t mask, int j) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(mask) << 10) | (static_cast<std::uint64_t>(r) << 5) |
        static_cast<std::uint64_t>(j);
    auto it = g_memo.find(key);
    if (it != g_memo.end()) return it->second;
    Scalar v = A(j, r) * f(mask);  // close the cycle back to its root
    std::uint32_t rest = mask;
    while (rest) {
      const int t = std::countr_zero(rest);
      rest &= rest - 1;
      v += alpha * A(j, t) * g(r, mask & ~(std::uint32_t{1} << t), t);
    }
    g_memo.emplace(key, v);
    return v;
  }
};

}  // namespace detail

// Exact det_alpha by subset dynamic programming; agrees with det_alpha_naive
// and extends the reachable dimension to ~22 (memory is the binding guard).
template <typename Derived>
typename Derived::Scalar det_alpha_dp(const Eigen::MatrixBase<Derived>& A,
                                      const AlphaParam& alpha, int max_n = 22) {
  using Scalar = typename Derived::Scalar;
  const int n = static_cast<int>(A.rows());
  if (A.rows() != A.cols()) throw contract_error("det_alpha: matrix must be square");
  if (n > max_n || n > 22)
    throw resource_error("det_alpha_dp: dimension exceeds subset-DP guard");
  if (n == 0) return Scalar(1);
  detail::AlphaDetDp<Scalar, Eigen::MatrixBase<Derived>> dp{A, alpha.value(), {}, {}};
  return dp.f((n == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
}

}  // namespace alphadpp
