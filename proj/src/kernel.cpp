#include "alphadpp/kernel.hpp"

#include <cmath>
#include <sstream>

#include "alphadpp/projection.hpp"

namespace alphadpp {

namespace {

// Smallest level whose cell grid contains both endpoints, if any.
std::optional<int> dyadic_level_of(const Interval& s) {
  for (int level = 1; level <= 48; ++level) {
    const Real h = std::ldexp(1.0, 1 - level);
    const Real na = s.lo / h, nb = s.hi / h;
    if (std::abs(na - std::round(na)) < 1e-12 && std::abs(nb - std::round(nb)) < 1e-12)
      return level;
  }
  return std::nullopt;
}

Real haar_eval(const std::vector<std::pair<BasisIndex, Real>>& coeffs, Real x) {
  Real v = 0;
  for (const auto& [idx, c] : coeffs) v += c * eval_basis(idx, x);
  return v;
}

}  // namespace

KernelSpec KernelSpec::rank_one_indicator(Interval support, Real weight) {
  if (!(support.hi > support.lo))
    throw contract_error("rank_one_indicator: empty support interval");
  if (!(weight >= 0) || !std::isfinite(weight))
    throw contract_error("rank_one_indicator: weight must be finite and >= 0");
  KernelSpec k;
  k.kind_ = KernelKind::RankOneIndicator;
  k.support_ = support;
  k.weight_ = weight;
  return k;
}

KernelSpec KernelSpec::finite_rank(int level, std::vector<FiniteRankMode> modes) {
  if (modes.empty()) throw contract_error("finite_rank: no modes");
  for (const auto& m : modes) {
    if (!(m.eigenvalue >= 0) || !std::isfinite(m.eigenvalue))
      throw contract_error("finite_rank: eigenvalues must be finite and >= 0");
    if (m.coefficients.empty()) throw contract_error("finite_rank: empty coefficient vector");
    for (const auto& [idx, c] : m.coefficients) {
      if (idx.level() != level) throw contract_error("finite_rank: label level mismatch");
      if (!idx.in_family()) throw contract_error("finite_rank: label outside the family");
      if (!std::isfinite(c)) throw contract_error("finite_rank: non-finite coefficient");
    }
  }
  // orthonormality of the coefficient vectors (labels are orthonormal)
  const auto dot = [](const FiniteRankMode& a, const FiniteRankMode& b) {
    Real s = 0;
    for (const auto& [ia, ca] : a.coefficients)
      for (const auto& [ib, cb] : b.coefficients)
        if (ia == ib) s += ca * cb;
    return s;
  };
  for (std::size_t p = 0; p < modes.size(); ++p)
    for (std::size_t q = p; q < modes.size(); ++q) {
      const Real want = p == q ? 1.0 : 0.0;
      if (std::abs(dot(modes[p], modes[q]) - want) > 1e-10)
        throw validation_error("finite_rank: eigenfunction coefficients are not orthonormal");
    }
  KernelSpec k;
  k.kind_ = KernelKind::FiniteRank;
  k.mode_level_ = level;
  k.modes_ = std::move(modes);
  return k;
}

KernelSpec KernelSpec::gaussian(Real gamma, Real amplitude) {
  if (!(gamma > 0) || !std::isfinite(gamma))
    throw contract_error("gaussian: gamma must be finite and > 0");
  if (!(amplitude >= 0) || !std::isfinite(amplitude))
    throw contract_error("gaussian: amplitude must be finite and >= 0");
  KernelSpec k;
  k.kind_ = KernelKind::Gaussian;
  k.gamma_ = gamma;
  k.amplitude_ = amplitude;
  return k;
}

KernelSpec KernelSpec::sine_window(Real band) {
  if (!(band > 0) || !std::isfinite(band))
    throw contract_error("sine_window: band must be finite and > 0");
  KernelSpec k;
  k.kind_ = KernelKind::SineWindow;
  k.band_ = band;
  return k;
}

Complex KernelSpec::eval(Real x, Real y) const {
  switch (kind_) {
    case KernelKind::RankOneIndicator:
      return (support_.contains(x) && support_.contains(y)) ? Complex(weight_) : Complex(0);
    case KernelKind::FiniteRank: {
      Real v = 0;
      for (const auto& m : modes_) v += m.eigenvalue * haar_eval(m.coefficients, x) * haar_eval(m.coefficients, y);
      return Complex(v);
    }
    case KernelKind::Gaussian:
      return Complex(amplitude_ * std::exp(-gamma_ * (x - y) * (x - y)));
    case KernelKind::SineWindow: {
      const Real d = x - y;
      if (std::abs(d) < 1e-12) return Complex(band_ / M_PI);
      return Complex(std::sin(band_ * d) / (M_PI * d));
    }
  }
  throw contract_error("KernelSpec: unknown kind");
}

std::optional<int> KernelSpec::resolution_level() const {
  switch (kind_) {
    case KernelKind::RankOneIndicator:
      return dyadic_level_of(support_);
    case KernelKind::FiniteRank: {
      int level = 1;
      for (const auto& m : modes_)
        for (const auto& [idx, c] : m.coefficients)
          level = std::max(level, idx.unshifted().rank());  // constant on level-rank(u) cells
      return level;
    }
    default:
      return std::nullopt;
  }
}

Interval KernelSpec::support() const {
  if (kind_ != KernelKind::RankOneIndicator) throw contract_error("kernel: no support interval");
  return support_;
}
Real KernelSpec::weight() const {
  if (kind_ != KernelKind::RankOneIndicator) throw contract_error("kernel: no weight");
  return weight_;
}
Real KernelSpec::gamma() const {
  if (kind_ != KernelKind::Gaussian) throw contract_error("kernel: no gamma");
  return gamma_;
}
Real KernelSpec::amplitude() const {
  if (kind_ != KernelKind::Gaussian) throw contract_error("kernel: no amplitude");
  return amplitude_;
}
Real KernelSpec::band() const {
  if (kind_ != KernelKind::SineWindow) throw contract_error("kernel: no band");
  return band_;
}
int KernelSpec::mode_level() const {
  if (kind_ != KernelKind::FiniteRank) throw contract_error("kernel: no mode level");
  return mode_level_;
}
const std::vector<FiniteRankMode>& KernelSpec::modes() const {
  if (kind_ != KernelKind::FiniteRank) throw contract_error("kernel: no modes");
  return modes_;
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case KernelKind::RankOneIndicator:
      os << "rank-one-indicator([" << support_.lo << ", " << support_.hi << "), " << weight_ << ")";
      break;
    case KernelKind::FiniteRank:
      os << "finite-rank(level " << mode_level_ << ", " << modes_.size() << " modes)";
      break;
    case KernelKind::Gaussian:
      os << "gaussian(gamma=" << gamma_ << ", c=" << amplitude_ << ")";
      break;
    case KernelKind::SineWindow:
      os << "sine-window(band=" << band_ << ")";
      break;
  }
  return os.str();
}

Real trace_on_window(const KernelSpec& kernel, const Window& window, const QuadratureSpec& quad) {
  int level = std::max(1, quad.refinement_level);
  if (auto rl = kernel.resolution_level()) level = std::max(level, *rl);
  while (!window.aligned(level)) {
    ++level;  // a window aligned at some level is aligned at all finer ones
    if (level > 48) throw contract_error("trace_on_window: window not dyadically aligned");
  }
  const CompositeRule rule = composite_rule(window.a, window.b, level, quad.order);
  Real tr = 0;
  for (int i = 0; i < rule.x.size(); ++i)
    tr += rule.w[i] * kernel.eval(rule.x[i], rule.x[i]).real();
  return tr;
}

A1Report validate_a1(const KernelSpec& kernel, const AlphaParam& alpha, const Window& window,
                     int level, int max_rank, const QuadratureSpec& quad) {
  const ProjectedKernel proj = project_kernel(kernel, level, max_rank, window, quad);
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(proj.matrix);
  if (es.info() != Eigen::Success) throw validation_error("validate_a1: eigensolver failed");
  A1Report report;
  report.eigenvalues = es.eigenvalues().reverse();
  const Real lo_bound = -report.tolerance;
  const Real hi_bound =
      alpha.negative() ? static_cast<Real>(alpha.superposition_order()) + report.tolerance
                       : std::numeric_limits<Real>::infinity();
  report.pass = true;
  for (int i = 0; i < report.eigenvalues.size(); ++i) {
    const Real ev = report.eigenvalues[i];
    if (ev < lo_bound || ev > hi_bound) {
      report.pass = false;
      std::ostringstream os;
      os << "eigenvalue " << ev << " outside [0, "
         << (alpha.negative() ? std::to_string(alpha.superposition_order()) : "inf")
         << "] for alpha = " << alpha.str();
      report.detail = os.str();
      break;
    }
  }
  return report;
}

}  // namespace alphadpp
