#pragma once

#include <vector>

#include "alphadpp/kernel.hpp"
#include "alphadpp/quadrature.hpp"
#include "alphadpp/tree.hpp"
#include "alphadpp/types.hpp"

namespace alphadpp {

// The kernel compressed onto the level-l family restricted to rank <= max_rank
// and supports inside the window:
//   matrix(p, q) = ∫∫ K(x, y) f_{i_p}(x) f_{i_q}(y) dx dy.
// Hermitian; unitarily equivalent to the windowed kernel as max_rank -> inf.
struct ProjectedKernel {
  int level = 1;
  int max_rank = 1;
  Window window;
  std::vector<BasisIndex> indices;  // as returned by basis_indices
  MatrixXc matrix;
  Real kernel_trace = 0;  // trace of K itself on the window

  int dim() const { return static_cast<int>(indices.size()); }
  // Trace mass lost to the rank truncation; >= 0 for positive kernels up to
  // quadrature error.
  Real tail_trace() const { return kernel_trace - matrix.trace().real(); }
  // Positions of the indices supported inside the given level-`level` cell.
  std::vector<int> positions_in_cell(const TreeIndex& cell) const;
};

ProjectedKernel project_kernel(const KernelSpec& kernel, int level, int max_rank,
                               const Window& window, const QuadratureSpec& quad = {});

// Evaluation of the rank-truncated kernel K_R(x, y) = sum_{p,q} M(p,q) f_p(x) f_q(y).
Complex truncated_kernel_eval(const ProjectedKernel& proj, Real x, Real y);

// ∫_{A_1 x .. x A_m} prod_n K(x_n, x_{sigma(n)}) dx over level-l cells A_n.
// Quadrature route (the integrand factorizes over the cycles of sigma, each
// factor a trace of a product of cell-to-cell kernel matrices).
Complex cycle_integral(const KernelSpec& kernel, int level, const std::vector<TreeIndex>& cells,
                       const std::vector<int>& sigma, const QuadratureSpec& quad = {});

// Same integral for the truncated kernel, evaluated algebraically from the
// projected matrix: support-orthogonality collapses the integrals to sums of
// matrix entries over the per-cell index blocks.
Complex cycle_integral(const ProjectedKernel& proj, const std::vector<TreeIndex>& cells,
                       const std::vector<int>& sigma);

// Descending spectrum of the symmetrized Nystrom discretization on the window
// with at least grid_n nodes.
VectorXr nystrom_eigenvalues(const KernelSpec& kernel, const Window& window, int grid_n);

struct SpectrumReport {
  VectorXr projected;  // descending
  VectorXr nystrom;    // descending
  Real hausdorff = 0;  // between leading spectra (entries > floor, 0 adjoined)
  Real floor = 1e-4;
  Real tolerance = 1e-2;
  bool pass = false;
};

SpectrumReport spectrum_check(const KernelSpec& kernel, const ProjectedKernel& proj, int grid_n,
                              Real tolerance = 1e-2);

}  // namespace alphadpp
