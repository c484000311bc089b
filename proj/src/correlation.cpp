#include "alphadpp/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "alphadpp/alpha_det.hpp"

namespace alphadpp {

namespace {

Real real_part_checked(Complex v, const char* who) {
  if (std::abs(v.imag()) > 1e-9 * std::max(Real(1), std::abs(v.real())))
    throw validation_error(std::string(who) + ": non-real value from a Hermitian kernel");
  return v.real();
}

}  // namespace

Real rho_m(const KernelSpec& kernel, const AlphaParam& alpha, const std::vector<Real>& points) {
  const int m = static_cast<int>(points.size());
  if (m == 0) return 1.0;
  if (m > 10) throw resource_error("rho_m: order guard exceeded");
  MatrixXc A(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) A(p, q) = kernel.eval(points[p], points[q]);
  return real_part_checked(det_alpha_dp(A, alpha), "rho_m");
}

Real rho_F_m(const ProjectedKernel& proj, const AlphaParam& alpha,
             const std::vector<int>& positions) {
  const int m = static_cast<int>(positions.size());
  if (m == 0) return 1.0;
  if (m > 10) throw resource_error("rho_F_m: order guard exceeded");
  for (int p : positions)
    if (p < 0 || p >= proj.dim()) throw contract_error("rho_F_m: position out of range");
  MatrixXc A(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) A(p, q) = proj.matrix(positions[p], positions[q]);
  return real_part_checked(det_alpha_dp(A, alpha), "rho_F_m");
}

namespace {

template <typename CycleFn>
Real alpha_weighted_permutation_sum(int m, const AlphaParam& alpha, CycleFn&& cyc) {
  std::vector<int> sigma(m);
  std::iota(sigma.begin(), sigma.end(), 0);
  const Real a = alpha.value();
  Real total = 0;
  do {
    const int nu = cycle_count(sigma);
    total += std::pow(a, m - nu) * cyc(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

}  // namespace

Real lhs_parseval(const KernelSpec& kernel, const AlphaParam& alpha, int level,
                  const CorrelationQuery& query, const QuadratureSpec& quad) {
  const int m = query.order();
  if (m < 1) throw contract_error("lhs_parseval: empty query");
  if (m > 4) throw resource_error("lhs_parseval: order guard (m! quadratures)");
  return alpha_weighted_permutation_sum(m, alpha, [&](const std::vector<int>& sigma) {
    return real_part_checked(cycle_integral(kernel, level, query.cells, sigma, quad),
                             "lhs_parseval");
  });
}

Real rhs_parseval(const ProjectedKernel& proj, const AlphaParam& alpha,
                  const CorrelationQuery& query) {
  const int m = query.order();
  if (m < 1) throw contract_error("rhs_parseval: empty query");
  if (m > 4) throw resource_error("rhs_parseval: order guard");
  std::vector<std::vector<int>> blocks;
  blocks.reserve(m);
  double tuples = 1;
  for (const TreeIndex& c : query.cells) {
    blocks.push_back(proj.positions_in_cell(c));
    tuples *= static_cast<double>(blocks.back().size());
  }
  if (tuples > double(1 << 20)) throw resource_error("rhs_parseval: tuple guard exceeded");

  std::vector<int> pick(m, 0), positions(m);
  Real total = 0;
  while (true) {
    for (int n = 0; n < m; ++n) positions[n] = blocks[n][pick[n]];
    total += rho_F_m(proj, alpha, positions);
    int n = m - 1;
    while (n >= 0) {
      if (++pick[n] < static_cast<int>(blocks[n].size())) break;
      pick[n] = 0;
      --n;
    }
    if (n < 0) break;
  }
  return total;
}

ParsevalReport verify_parseval(const KernelSpec& kernel, const ProjectedKernel& proj,
                               const AlphaParam& alpha, const CorrelationQuery& query,
                               Real tolerance, const QuadratureSpec& quad) {
  ParsevalReport report;
  report.m = query.order();
  report.level = proj.level;
  report.max_rank = proj.max_rank;
  report.tolerance = tolerance;
  report.lhs = lhs_parseval(kernel, alpha, proj.level, query, quad);
  report.rhs = rhs_parseval(proj, alpha, query);
  report.gap = std::abs(report.lhs - report.rhs);
  const Real tail = std::max(Real(0), proj.tail_trace());
  if (report.m == 1) {
    report.tail_bound = tail;
  } else {
    Real mf = 1;
    for (int k = 2; k <= report.m; ++k) mf *= k;
    const Real scale = std::max(Real(1), proj.matrix.cwiseAbs().maxCoeff());
    report.tail_bound = mf * report.m * tail * std::pow(scale, report.m - 1);
  }
  report.pass = report.gap <= tolerance;
  return report;
}

}  // namespace alphadpp
