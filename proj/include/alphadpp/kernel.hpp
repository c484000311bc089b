#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alphadpp/alpha.hpp"
#include "alphadpp/quadrature.hpp"
#include "alphadpp/tree.hpp"
#include "alphadpp/types.hpp"

namespace alphadpp {

enum class KernelKind { RankOneIndicator, FiniteRank, Gaussian, SineWindow };

// One spectral mode of a finite-rank kernel.  The eigenfunction is given by
// its coefficients in the level-`level` orthonormal family, so projections of
// such kernels are exact once the projection resolves every listed label.
struct FiniteRankMode {
  Real eigenvalue = 0;
  std::vector<std::pair<BasisIndex, Real>> coefficients;
};

// The kernel library: K(x, y) on the line, Hermitian (here: real symmetric).
//   rank_one_indicator(S, w):  w * 1_S(x) 1_S(y)
//   finite_rank(l, modes):     sum_k lambda_k phi_k(x) phi_k(y)
//   gaussian(gamma, c):        c * exp(-gamma (x-y)^2)
//   sine_window(b):            sin(b (x-y)) / (pi (x-y)),   b/pi on the diagonal
class KernelSpec {
 public:
  static KernelSpec rank_one_indicator(Interval support, Real weight);
  // Coefficient vectors must be orthonormal within 1e-10 and eigenvalues
  // non-negative finite; labels must live at `level` and be family members.
  static KernelSpec finite_rank(int level, std::vector<FiniteRankMode> modes);
  static KernelSpec gaussian(Real gamma, Real amplitude);
  static KernelSpec sine_window(Real band);

  KernelKind kind() const { return kind_; }
  Complex eval(Real x, Real y) const;

  // Finest dyadic level on which the kernel is piecewise constant in each
  // variable, when that is the case (indicator / finite-rank kernels).
  std::optional<int> resolution_level() const;

  // Accessors for the active kind.
  Interval support() const;
  Real weight() const;
  Real gamma() const;
  Real amplitude() const;
  Real band() const;
  int mode_level() const;
  const std::vector<FiniteRankMode>& modes() const;

  std::string describe() const;

 private:
  KernelSpec() = default;
  KernelKind kind_ = KernelKind::Gaussian;
  Interval support_{};
  Real weight_ = 0;
  Real gamma_ = 0;
  Real amplitude_ = 0;
  Real band_ = 0;
  int mode_level_ = 1;
  std::vector<FiniteRankMode> modes_;
};

// Integral of K(x, x) over the window (composite Gauss-Legendre; exact for
// piecewise-constant kernels once the rule resolves them).
Real trace_on_window(const KernelSpec& kernel, const Window& window,
                     const QuadratureSpec& quad = {});

// Admissibility report for the pair (K, alpha): Hermitian projected spectrum
// inside [0, inf) and, for alpha < 0, inside [0, -1/alpha].
struct A1Report {
  VectorXr eigenvalues;  // of the level/rank projection, descending
  bool pass = false;
  Real tolerance = 1e-8;
  std::string detail;
};

A1Report validate_a1(const KernelSpec& kernel, const AlphaParam& alpha, const Window& window,
                     int level, int max_rank, const QuadratureSpec& quad = {});

}  // namespace alphadpp
