#pragma once

#include <vector>

#include "alphadpp/types.hpp"

namespace alphadpp {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  VectorXr x;
  VectorXr w;
};

// Nodes and weights for a given order (>= 2); cached per order.
const GaussLegendre& gauss_legendre(int order);

// Quadrature configuration for kernel integrals.
//   order            Gauss-Legendre points per integration cell (>= 2)
//   refinement_level dyadic level of the integration cells; 0 = automatic
//                    (the finest level needed by the basis and the kernel).
// project_kernel requires refinement_level >= level + max_rank - 1 whenever it
// is set explicitly, so the finest basis function is resolved exactly.
struct QuadratureSpec {
  int order = 8;
  int refinement_level = 0;
};

// Composite rule: Gauss-Legendre of the given order on every dyadic cell of
// the given level intersecting [a, b); a and b must be level-aligned.
struct CompositeRule {
  VectorXr x;
  VectorXr w;
};

CompositeRule composite_rule(Real a, Real b, int level, int order);

}  // namespace alphadpp
