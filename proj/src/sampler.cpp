#include "alphadpp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "alphadpp/parallel.hpp"

namespace alphadpp {

namespace {
constexpr Real kClip = 1e-10;   // negative eigenvalue tolerance
constexpr Real kSlack = 1e-8;   // admissibility slack on the upper bound
}  // namespace

DiscreteSampler::DiscreteSampler(const ProjectedKernel& proj, const AlphaParam& alpha)
    : labels_(proj.indices), alpha_(alpha), negative_(alpha.negative()),
      order_(alpha.superposition_order()) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(proj.matrix);
  if (es.info() != Eigen::Success) throw validation_error("sampler: eigensolver failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
  const Real m = static_cast<Real>(order_);

  for (int k = 0; k < evals_.size(); ++k) {
    if (evals_[k] < -kClip)
      throw validation_error("sampler: kernel has a negative eigenvalue, admissibility fails");
    if (negative_ && evals_[k] > m * (1.0 + kSlack))
      throw validation_error("sampler: eigenvalue exceeds the determinantal bound -1/alpha");
  }

  if (negative_) {
    comp_evals_ = (evals_ / m).cwiseMax(0.0).cwiseMin(1.0);
  } else {
    // Cox branch works with the real part; complex Hermitian kernels with a
    // genuinely complex eigenbasis are outside this sampler's contract.
    if (proj.matrix.imag().cwiseAbs().maxCoeff() > 1e-9)
      throw validation_error("sampler: Gaussian-square branch requires a real kernel matrix");
    MatrixXr pr = proj.matrix.real();
    pr = 0.5 * (pr + pr.transpose().eval());
    Eigen::SelfAdjointEigenSolver<MatrixXr> esr(pr / m);
    if (esr.info() != Eigen::Success) throw validation_error("sampler: eigensolver failed");
    cox_transport_ =
        esr.eigenvectors() * esr.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  }
}

DiscreteConfiguration DiscreteSampler::sample(CounterRng& rng) const {
  const int dim = static_cast<int>(labels_.size());
  std::vector<int> counts(dim, 0);

  if (negative_) {
    for (int rep = 0; rep < order_; ++rep) {
      // spectral determinantal sampler: Bernoulli mode selection, then one
      // point per selected mode by sequential subspace projection
      std::vector<int> sel;
      for (int k = 0; k < comp_evals_.size(); ++k)
        if (rng.bernoulli(comp_evals_[k])) sel.push_back(k);
      if (sel.empty()) continue;
      MatrixXc W(dim, sel.size());
      for (std::size_t c = 0; c < sel.size(); ++c) W.col(c) = evecs_.col(sel[c]);
      int remaining = static_cast<int>(sel.size());
      while (remaining > 0) {
        VectorXr p(dim);
        for (int a = 0; a < dim; ++a) p[a] = W.leftCols(remaining).row(a).squaredNorm();
        const int a = rng.pick(p);
        ++counts[a];
        if (remaining == 1) break;
        int piv = 0;
        for (int c = 1; c < remaining; ++c)
          if (std::abs(W(a, c)) > std::abs(W(a, piv))) piv = c;
        const VectorXc pivot = W.col(piv);
        W.col(piv) = W.col(remaining - 1);
        --remaining;
        for (int c = 0; c < remaining; ++c)
          W.col(c) -= pivot * (W(a, c) / pivot[a]);
        // re-orthonormalize the reduced frame
        Eigen::HouseholderQR<MatrixXc> qr(W.leftCols(remaining));
        MatrixXc q = qr.householderQ() * MatrixXc::Identity(dim, remaining);
        W.leftCols(remaining) = q;
      }
    }
  } else {
    const int n = static_cast<int>(cox_transport_.cols());
    VectorXr z(n);
    for (int rep = 0; rep < order_; ++rep) {
      for (int i = 0; i < n; ++i) z[i] = rng.normal();
      const VectorXr g = cox_transport_ * z;
      for (int a = 0; a < dim; ++a) {
        const std::int64_t c = rng.poisson(g[a] * g[a]);
        counts[a] += static_cast<int>(c);
      }
    }
  }

  DiscreteConfiguration config;
  for (int a = 0; a < dim; ++a)
    for (int c = 0; c < counts[a]; ++c) config.indices.push_back(labels_[a]);
  std::sort(config.indices.begin(), config.indices.end());
  return config;
}

std::vector<Real> DiscreteSampler::total_count_pmf() const {
  if (!negative_)
    throw contract_error("total_count_pmf: determinantal branch only");
  std::vector<Real> pmf{1.0};
  for (int rep = 0; rep < order_; ++rep) {
    for (int k = 0; k < comp_evals_.size(); ++k) {
      const Real q = comp_evals_[k];
      std::vector<Real> next(pmf.size() + 1, 0.0);
      for (std::size_t c = 0; c < pmf.size(); ++c) {
        next[c] += pmf[c] * (1.0 - q);
        next[c + 1] += pmf[c] * q;
      }
      pmf = std::move(next);
    }
  }
  return pmf;
}

DiscreteConfiguration sample_discrete(const ProjectedKernel& proj, const AlphaParam& alpha,
                                      CounterRng& rng) {
  return DiscreteSampler(proj, alpha).sample(rng);
}

LiftedConfiguration attach_marks(const DiscreteConfiguration& config, CounterRng& rng) {
  LiftedConfiguration lifted;
  lifted.indices = config.indices;
  lifted.points.reserve(config.indices.size());
  for (const BasisIndex& i : config.indices) lifted.points.push_back(sample_mark(i, rng));
  return lifted;
}

std::vector<Real> unlabel(const LiftedConfiguration& lifted) {
  std::vector<Real> pts = lifted.points;
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<std::int64_t> cell_counts(const std::vector<Real>& points, int level,
                                      const Window& window) {
  const std::int64_t n = window.cell_count(level);
  const Real h = std::ldexp(1.0, 1 - level);
  std::vector<std::int64_t> counts(n, 0);
  for (Real x : points) {
    if (!(x >= window.a && x < window.b)) continue;
    const auto c = static_cast<std::int64_t>(std::floor((x - window.a) / h));
    ++counts[std::min(c, n - 1)];
  }
  return counts;
}

MomentEstimate estimate_factorial_moments(const std::vector<std::vector<std::int64_t>>& counts,
                                          const std::vector<std::pair<int, int>>& targets) {
  if (counts.empty()) throw contract_error("estimate_factorial_moments: no samples");
  for (std::size_t p = 0; p < targets.size(); ++p) {
    if (targets[p].second < 1) throw contract_error("estimate_factorial_moments: order < 1");
    for (std::size_t q = p + 1; q < targets.size(); ++q)
      if (targets[p].first == targets[q].first)
        throw contract_error("estimate_factorial_moments: duplicate cell position");
  }
  std::vector<Real> values;
  values.reserve(counts.size());
  for (const auto& sample : counts) {
    Real v = 1;
    for (const auto& [pos, k] : targets) {
      if (pos < 0 || pos >= static_cast<int>(sample.size()))
        throw contract_error("estimate_factorial_moments: position out of range");
      const std::int64_t s = sample[pos];
      for (int j = 0; j < k; ++j) v *= static_cast<Real>(s - j);  // 0 when s < k
    }
    values.push_back(v);
  }
  return mean_and_stderr(values);
}

LiftReport verify_lift(const KernelSpec& kernel, const AlphaParam& alpha, int level, int max_rank,
                       const Window& window, const CorrelationQuery& query,
                       std::int64_t n_samples, std::uint64_t seed, const QuadratureSpec& quad) {
  if (n_samples < 1) throw contract_error("verify_lift: need at least one sample");
  const ProjectedKernel proj = project_kernel(kernel, level, max_rank, window, quad);
  const DiscreteSampler sampler(proj, alpha);

  LiftReport report;
  report.m = query.order();
  report.alpha = alpha.str();
  report.level = level;
  report.max_rank = max_rank;
  report.n_samples = n_samples;
  report.seed = seed;
  report.analytic = lhs_parseval(kernel, alpha, level, query, quad);
  report.discrete_rhs = rhs_parseval(proj, alpha, query);
  report.truncation_gap = std::abs(report.analytic - report.discrete_rhs);

  // map the query's (possibly repeated) cells to count positions and orders
  const Real h = std::ldexp(1.0, 1 - level);
  std::map<std::int64_t, int> orders;
  for (const TreeIndex& c : query.cells) {
    if (c.rank() != level) throw contract_error("verify_lift: query cell rank must equal level");
    if (!window.interval().contains(c.cell_interval()))
      throw contract_error("verify_lift: query cell outside the window");
    ++orders[std::llround((c.lower() - window.a) / h)];
  }
  std::vector<std::pair<int, int>> targets;
  for (const auto& [pos, k] : orders) targets.emplace_back(static_cast<int>(pos), k);

  const CounterRng base(seed);
  std::vector<std::vector<std::int64_t>> counts(n_samples);
  std::atomic<bool> mark_violation{false};
  parallel_for(n_samples, [&](std::int64_t s) {
    CounterRng rng = base.split(static_cast<std::uint64_t>(s));
    const DiscreteConfiguration config = sampler.sample(rng);
    const LiftedConfiguration lifted = attach_marks(config, rng);
    for (std::size_t k = 0; k < lifted.indices.size(); ++k)
      if (!lifted.indices[k].support().contains(lifted.points[k]))
        mark_violation.store(true);
    counts[s] = cell_counts(unlabel(lifted), level, window);
  });
  if (mark_violation.load()) throw validation_error("verify_lift: mark escaped its support");

  const MomentEstimate est = estimate_factorial_moments(counts, targets);
  report.empirical = est.mean;
  report.std_error = est.std_error;
  report.pass =
      std::abs(report.empirical - report.analytic) <= 3 * report.std_error + report.truncation_gap;
  return report;
}

}  // namespace alphadpp
