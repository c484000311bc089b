#pragma once

#include <cstdint>
#include <vector>

#include "alphadpp/correlation.hpp"
#include "alphadpp/projection.hpp"
#include "alphadpp/rng.hpp"
#include "alphadpp/stats.hpp"
#include "alphadpp/types.hpp"

namespace alphadpp {

// A discrete configuration: finite multiset of basis labels, kept sorted.
struct DiscreteConfiguration {
  std::vector<BasisIndex> indices;
  std::size_t size() const { return indices.size(); }
};

// Discrete configuration plus one mark per label occurrence.
struct LiftedConfiguration {
  std::vector<BasisIndex> indices;
  std::vector<Real> points;  // points[k] lies in indices[k].support()
};

// Sampler for the discrete alpha-determinantal law of a projected kernel.
//   alpha = -1/m: superposition of m determinantal samples with kernel P/m
//                 (spectral Bernoulli selection + sequential subspace draw);
//   alpha =  2/m: superposition of m Gaussian-square Cox samples: g ~ N(0, P/m)
//                 and independent Poisson(g_i^2) counts per label.
// The spectrum of P must satisfy the admissibility bounds for alpha; tiny
// negative eigenvalues (>= -1e-10) are clipped to zero.
class DiscreteSampler {
 public:
  DiscreteSampler(const ProjectedKernel& proj, const AlphaParam& alpha);

  DiscreteConfiguration sample(CounterRng& rng) const;

  const VectorXr& spectrum() const { return evals_; }  // of P, descending order not guaranteed
  int superposition_order() const { return order_; }
  bool determinantal() const { return negative_; }

  // Exact law of the total point count: convolution of Bernoulli(lambda_k/m)
  // laws, m-fold.  Determinantal branch only.
  std::vector<Real> total_count_pmf() const;

 private:
  std::vector<BasisIndex> labels_;
  AlphaParam alpha_;
  bool negative_;
  int order_;               // m in the branch descriptions
  VectorXr evals_;          // eigenvalues of P
  VectorXr comp_evals_;     // eigenvalues of P/m, clipped into [0, 1]
  MatrixXc evecs_;          // unitary columns
  MatrixXr cox_transport_;  // L with L L^T = Re(P)/m (Cox branch)
};

DiscreteConfiguration sample_discrete(const ProjectedKernel& proj, const AlphaParam& alpha,
                                      CounterRng& rng);

// Independent uniform mark on each label's support.
LiftedConfiguration attach_marks(const DiscreteConfiguration& config, CounterRng& rng);

// Forget labels; canonical (sorted) point multiset.
std::vector<Real> unlabel(const LiftedConfiguration& lifted);

// Occupancy of the level-`level` cells of the window, in cell order.  Points
// outside the window are ignored.
std::vector<std::int64_t> cell_counts(const std::vector<Real>& points, int level,
                                      const Window& window);

// Mean/stderr over samples of prod_i falling_factorial(count[cell_i], k_i);
// `targets` pairs a position in the count vector with its order k (positions
// distinct).  The falling factorial s(s-1)..(s-k+1) vanishes for s < k.
MomentEstimate estimate_factorial_moments(const std::vector<std::vector<std::int64_t>>& counts,
                                          const std::vector<std::pair<int, int>>& targets);

struct LiftReport {
  int m = 0;
  std::string alpha;
  int level = 1;
  int max_rank = 1;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  Real analytic = 0;     // integral of rho^m over the query cells (exact kernel)
  Real discrete_rhs = 0; // the projected series (truncation reference)
  Real truncation_gap = 0;
  Real empirical = 0;
  Real std_error = 0;
  bool pass = false;     // |empirical - analytic| <= 3 stderr + truncation_gap
};

// End-to-end Monte Carlo check: sample the discrete law, lift with uniform
// marks, unlabel, count level cells and compare factorial moments against the
// correlation integrals of the exact kernel.
LiftReport verify_lift(const KernelSpec& kernel, const AlphaParam& alpha, int level, int max_rank,
                       const Window& window, const CorrelationQuery& query,
                       std::int64_t n_samples, std::uint64_t seed,
                       const QuadratureSpec& quad = {});

}  // namespace alphadpp
