#pragma once

#include <vector>

#include "alphadpp/alpha.hpp"
#include "alphadpp/projection.hpp"
#include "alphadpp/types.hpp"

namespace alphadpp {

// An order-m correlation query: m cells of the projection level, repetitions
// allowed (repeated cells probe factorial moments of higher order).
struct CorrelationQuery {
  std::vector<TreeIndex> cells;
  int order() const { return static_cast<int>(cells.size()); }
};

// m-point correlation density rho^m(x_1..x_m) = det_alpha [K(x_p, x_q)].
// Hermitian kernels give real values; the tiny imaginary residue is checked.
Real rho_m(const KernelSpec& kernel, const AlphaParam& alpha, const std::vector<Real>& points);

// Discrete analogue on basis labels: det_alpha of the projected matrix minor
// at the given index positions (repetitions allowed).
Real rho_F_m(const ProjectedKernel& proj, const AlphaParam& alpha,
             const std::vector<int>& positions);

// ∫_{A_1 x .. x A_m} rho^m dm^m = sum over sigma of alpha^{m - nu(sigma)} times
// the cycle integral of the exact kernel; quadrature route, m <= 4.
Real lhs_parseval(const KernelSpec& kernel, const AlphaParam& alpha, int level,
                  const CorrelationQuery& query, const QuadratureSpec& quad = {});

// The discrete side: sum of rho_F^m over all label tuples drawn from the
// per-cell index blocks (the literal series the identity equates to the
// integral above).
Real rhs_parseval(const ProjectedKernel& proj, const AlphaParam& alpha,
                  const CorrelationQuery& query);

struct ParsevalReport {
  int m = 0;
  int level = 1;
  int max_rank = 1;
  Real lhs = 0;
  Real rhs = 0;
  Real gap = 0;
  Real tail_bound = 0;  // heuristic scale for the truncation error, see below
  Real tolerance = 0;
  bool pass = false;
};

// Evaluates both sides and their gap.  tail_bound is tail_trace for m == 1
// (exact for positive kernels) and a crude m! * m * tail * max(1, |K_F|)^{m-1}
// scale otherwise; it is diagnostic, the pass verdict uses `tolerance`.
ParsevalReport verify_parseval(const KernelSpec& kernel, const ProjectedKernel& proj,
                               const AlphaParam& alpha, const CorrelationQuery& query,
                               Real tolerance, const QuadratureSpec& quad = {});

}  // namespace alphadpp
