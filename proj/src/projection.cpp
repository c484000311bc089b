#include "alphadpp/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alphadpp/parallel.hpp"

namespace alphadpp {

namespace {

int effective_refinement(const KernelSpec& kernel, int level, int max_rank,
                         const QuadratureSpec& quad) {
  const int needed = level + max_rank - 1;
  if (quad.refinement_level != 0 && quad.refinement_level < needed)
    throw contract_error(
        "quadrature refinement_level must be >= level + max_rank - 1 "
        "(finest basis function must be resolved)");
  int eff = std::max(needed, quad.refinement_level);
  if (auto rl = kernel.resolution_level()) eff = std::max(eff, *rl);
  return eff;
}

// Cycles of sigma as index sequences.
std::vector<std::vector<int>> cycles_of(const std::vector<int>& sigma) {
  const int m = static_cast<int>(sigma.size());
  std::vector<bool> seen(m, false);
  std::vector<std::vector<int>> cycles;
  for (int s = 0; s < m; ++s) {
    if (seen[s]) continue;
    std::vector<int> cyc;
    int t = s;
    while (!seen[t]) {
      seen[t] = true;
      cyc.push_back(t);
      if (sigma[t] < 0 || sigma[t] >= m) throw contract_error("cycle_integral: bad permutation");
      t = sigma[t];
    }
    if (t != s) throw contract_error("cycle_integral: bad permutation");
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace

std::vector<int> ProjectedKernel::positions_in_cell(const TreeIndex& cell) const {
  if (cell.rank() != level)
    throw contract_error("positions_in_cell: cell rank must equal the projection level");
  const Interval c = cell.cell_interval();
  if (!window.interval().contains(c))
    throw contract_error("positions_in_cell: cell outside the window");
  std::vector<int> out;
  for (int p = 0; p < dim(); ++p)
    if (c.contains(indices[p].support())) out.push_back(p);
  return out;
}

ProjectedKernel project_kernel(const KernelSpec& kernel, int level, int max_rank,
                               const Window& window, const QuadratureSpec& quad) {
  if (!window.aligned(level))
    throw contract_error("project_kernel: window endpoints not aligned to the level grid");
  ProjectedKernel proj;
  proj.level = level;
  proj.max_rank = max_rank;
  proj.window = window;
  proj.indices = basis_indices(level, max_rank, window);
  const int dim = proj.dim();
  if (dim > 4096) throw resource_error("project_kernel: dimension guard exceeded");

  const int ref = effective_refinement(kernel, level, max_rank, quad);
  const CompositeRule rule = composite_rule(window.a, window.b, ref, quad.order);
  const auto n = static_cast<int>(rule.x.size());
  if (n > 4096) throw resource_error("project_kernel: quadrature node guard exceeded");

  // Basis values at the quadrature nodes (basis functions are constant on
  // every integration cell by the refinement contract).
  MatrixXr B(dim, n);
  for (int p = 0; p < dim; ++p)
    for (int g = 0; g < n; ++g) B(p, g) = eval_basis(proj.indices[p], rule.x[g]);

  // G(g, h) = w_g w_h K(x_g, x_h); assembled in parallel by row.
  MatrixXc G(n, n);
  parallel_for(n, [&](std::int64_t g) {
    for (int h = 0; h < n; ++h)
      G(g, h) = rule.w[g] * rule.w[h] * kernel.eval(rule.x[g], rule.x[h]);
  });

  proj.matrix = B.cast<Complex>() * G * B.transpose().cast<Complex>();
  proj.matrix = Complex(0.5) * (proj.matrix + proj.matrix.adjoint().eval());  // kill quadrature asymmetry
  proj.kernel_trace = trace_on_window(kernel, window, quad);
  return proj;
}

Complex truncated_kernel_eval(const ProjectedKernel& proj, Real x, Real y) {
  VectorXr bx(proj.dim()), by(proj.dim());
  for (int p = 0; p < proj.dim(); ++p) {
    bx[p] = eval_basis(proj.indices[p], x);
    by[p] = eval_basis(proj.indices[p], y);
  }
  return bx.cast<Complex>().dot(proj.matrix * by.cast<Complex>());
}

Complex cycle_integral(const KernelSpec& kernel, int level, const std::vector<TreeIndex>& cells,
                       const std::vector<int>& sigma, const QuadratureSpec& quad) {
  if (cells.empty() || cells.size() != sigma.size())
    throw contract_error("cycle_integral: cells/sigma size mismatch");
  if (cells.size() > 6) throw resource_error("cycle_integral: m guard exceeded");
  for (const TreeIndex& c : cells)
    if (c.rank() != level) throw contract_error("cycle_integral: cell rank must equal level");

  int ref = level;
  if (auto rl = kernel.resolution_level()) ref = std::max(ref, *rl);
  if (quad.refinement_level != 0) ref = std::max(ref, quad.refinement_level);

  std::vector<CompositeRule> rules;
  rules.reserve(cells.size());
  for (const TreeIndex& c : cells) {
    const Interval iv = c.cell_interval();
    rules.push_back(composite_rule(iv.lo, iv.hi, ref, quad.order));
  }

  Complex total(1);
  for (const auto& cyc : cycles_of(sigma)) {
    const int k = static_cast<int>(cyc.size());
    const auto n0 = static_cast<int>(rules[cyc[0]].x.size());
    MatrixXc P = MatrixXc::Identity(n0, n0);
    for (int t = 0; t < k; ++t) {
      const CompositeRule& ra = rules[cyc[t]];
      const CompositeRule& rb = rules[cyc[(t + 1) % k]];
      MatrixXc step(ra.x.size(), rb.x.size());
      for (int g = 0; g < ra.x.size(); ++g)
        for (int h = 0; h < rb.x.size(); ++h)
          step(g, h) = ra.w[g] * kernel.eval(ra.x[g], rb.x[h]);
      P = (P * step).eval();
    }
    total *= P.trace();
  }
  return total;
}

Complex cycle_integral(const ProjectedKernel& proj, const std::vector<TreeIndex>& cells,
                       const std::vector<int>& sigma) {
  if (cells.empty() || cells.size() != sigma.size())
    throw contract_error("cycle_integral: cells/sigma size mismatch");
  std::vector<std::vector<int>> blocks;
  blocks.reserve(cells.size());
  for (const TreeIndex& c : cells) blocks.push_back(proj.positions_in_cell(c));

  Complex total(1);
  for (const auto& cyc : cycles_of(sigma)) {
    const int k = static_cast<int>(cyc.size());
    const auto& first = blocks[cyc[0]];
    MatrixXc P = MatrixXc::Identity(first.size(), first.size());
    for (int t = 0; t < k; ++t) {
      const auto& ra = blocks[cyc[t]];
      const auto& rb = blocks[cyc[(t + 1) % k]];
      MatrixXc step(ra.size(), rb.size());
      for (std::size_t g = 0; g < ra.size(); ++g)
        for (std::size_t h = 0; h < rb.size(); ++h) step(g, h) = proj.matrix(ra[g], rb[h]);
      P = (P * step).eval();
    }
    total *= P.trace();
  }
  return total;
}

VectorXr nystrom_eigenvalues(const KernelSpec& kernel, const Window& window, int grid_n) {
  if (grid_n < 2) throw contract_error("nystrom_eigenvalues: grid too small");
  if (grid_n > 4096) throw resource_error("nystrom_eigenvalues: grid guard exceeded");
  // composite grid: dyadic cells fine enough for any piecewise-constant
  // structure, Gauss-Legendre within each cell, >= grid_n nodes total
  int level = 1;
  while (!window.aligned(level)) {
    ++level;
    if (level > 48) throw contract_error("nystrom: window not dyadically aligned");
  }
  if (auto rl = kernel.resolution_level()) level = std::max(level, *rl);
  int order = 8;
  while (window.cell_count(level) * order < grid_n) {
    if (order < 16) order *= 2;
    else ++level;
  }
  const CompositeRule rule = composite_rule(window.a, window.b, level, order);
  const auto n = static_cast<int>(rule.x.size());
  MatrixXc A(n, n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      A(g, h) = std::sqrt(rule.w[g]) * kernel.eval(rule.x[g], rule.x[h]) * std::sqrt(rule.w[h]);
  A = Complex(0.5) * (A + A.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(A);
  if (es.info() != Eigen::Success) throw validation_error("nystrom: eigensolver failed");
  return es.eigenvalues().reverse();
}

namespace {

Real hausdorff_leading(const VectorXr& a, const VectorXr& b, Real floor) {
  std::vector<Real> sa{0.0}, sb{0.0};
  for (int i = 0; i < a.size(); ++i)
    if (a[i] > floor) sa.push_back(a[i]);
  for (int i = 0; i < b.size(); ++i)
    if (b[i] > floor) sb.push_back(b[i]);
  Real d = 0;
  for (Real x : sa) {
    Real best = std::numeric_limits<Real>::infinity();
    for (Real y : sb) best = std::min(best, std::abs(x - y));
    d = std::max(d, best);
  }
  for (Real y : sb) {
    Real best = std::numeric_limits<Real>::infinity();
    for (Real x : sa) best = std::min(best, std::abs(x - y));
    d = std::max(d, best);
  }
  return d;
}

}  // namespace

SpectrumReport spectrum_check(const KernelSpec& kernel, const ProjectedKernel& proj, int grid_n,
                              Real tolerance) {
  SpectrumReport report;
  report.tolerance = tolerance;
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(proj.matrix);
  if (es.info() != Eigen::Success) throw validation_error("spectrum_check: eigensolver failed");
  report.projected = es.eigenvalues().reverse();
  report.nystrom = nystrom_eigenvalues(kernel, proj.window, grid_n);
  report.hausdorff = hausdorff_leading(report.projected, report.nystrom, report.floor);
  report.pass = report.hausdorff < tolerance;
  return report;
}

}  // namespace alphadpp
