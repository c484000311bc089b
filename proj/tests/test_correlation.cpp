#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "alphadpp/alpha_det.hpp"
#include "alphadpp/correlation.hpp"
#include "support.hpp"

using namespace alphadpp;
using namespace testsupport;

namespace {

const Window kUnit{0.0, 1.0};

const std::vector<AlphaParam> kAlphaGrid = {
    AlphaParam::of(-1, 1), AlphaParam::of(-1, 2), AlphaParam::of(-1, 3),
    AlphaParam::of(2, 1),  AlphaParam::of(1, 1),  AlphaParam::of(2, 3)};

MatrixXc gram(const KernelSpec& k, const std::vector<Real>& pts) {
  const int m = static_cast<int>(pts.size());
  MatrixXc A(m, m);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) A(p, q) = k.eval(pts[p], pts[q]);
  return A;
}

}  // namespace

TEST_CASE("one-point density is the kernel diagonal for every alpha") {
  for (const auto& a : kAlphaGrid) {
    CHECK(rho_m(two_mode_kernel(), a, {0.2}) == doctest::Approx(1.0));
    CHECK(rho_m(KernelSpec::gaussian(1.0, 0.5), a, {0.7}) == doctest::Approx(0.5));
    CHECK(rho_m(two_mode_kernel(), a, {}) == 1.0);
  }
}

TEST_CASE("density reduces to determinant and permanent at the endpoints") {
  const KernelSpec g = KernelSpec::gaussian(1.0, 0.5);
  const std::vector<Real> pts = {0.1, 0.45, 0.8};
  const MatrixXc A = gram(g, pts);
  CHECK(rho_m(g, AlphaParam::of(-1, 1), pts) ==
        doctest::Approx(lu_determinant(A).real()).epsilon(1e-12));
  CHECK(rho_m(g, AlphaParam::of(1, 1), pts) ==
        doctest::Approx(ryser_permanent(A).real()).epsilon(1e-12));
}

TEST_CASE("repulsion versus bunching at coinciding points") {
  const KernelSpec k = two_mode_kernel();
  CHECK(rho_m(k, AlphaParam::of(-1, 1), {0.2, 0.2}) == doctest::Approx(0.0));
  // positive alpha piles mass on the diagonal: rho_2(x, x) = (1 + alpha) K(x,x)^2
  CHECK(rho_m(k, AlphaParam::of(2, 1), {0.2, 0.2}) == doctest::Approx(3.0));
  CHECK(rho_m(k, AlphaParam::of(1, 1), {0.2, 0.2}) == doctest::Approx(2.0));
  CHECK(rho_m(k, AlphaParam::of(-1, 2), {0.2, 0.2}) == doctest::Approx(0.5));
}

TEST_CASE("discrete density equals the alpha-determinant of the selected minor") {
  const ProjectedKernel p = project_kernel(two_mode_kernel(), 2, 2, kUnit);
  for (const auto& a : kAlphaGrid) {
    for (const std::vector<int>& pos :
         {std::vector<int>{0}, {0, 1}, {1, 0, 1}, {0, 0}}) {
      MatrixXc A(pos.size(), pos.size());
      for (std::size_t r = 0; r < pos.size(); ++r)
        for (std::size_t c = 0; c < pos.size(); ++c) A(r, c) = p.matrix(pos[r], pos[c]);
      CHECK(rho_F_m(p, a, pos) == doctest::Approx(det_alpha_naive(A, a).real()).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(rho_F_m(p, kAlphaGrid[0], {99}), contract_error);
}

TEST_CASE("integrated correlations: reference values on the two-mode kernel") {
  const KernelSpec k = two_mode_kernel();
  const TreeIndex a = TreeIndex::parse("(0;0)"), b = TreeIndex::parse("(0;1)");
  // m = 1: integral of the diagonal over a half cell
  for (const auto& al : kAlphaGrid)
    CHECK(lhs_parseval(k, al, 2, {{a}}) == doctest::Approx(0.5).epsilon(1e-12));
  // m = 2, distinct cells: 0.25 + alpha * 0.04
  CHECK(lhs_parseval(k, AlphaParam::of(-1, 1), 2, {{a, b}}) == doctest::Approx(0.21));
  CHECK(lhs_parseval(k, AlphaParam::of(2, 1), 2, {{a, b}}) == doctest::Approx(0.33));
  // m = 2, repeated cell: 0.25 + alpha * 0.25 (K is flat on the cell square)
  CHECK(lhs_parseval(k, AlphaParam::of(-1, 1), 2, {{a, a}}) == doctest::Approx(0.0));
  CHECK(lhs_parseval(k, AlphaParam::of(1, 1), 2, {{a, a}}) == doctest::Approx(0.5));
}

TEST_CASE("series side matches a hand-rolled tuple enumeration") {
  const ProjectedKernel p = project_kernel(two_mode_kernel(), 2, 3, kUnit);
  const TreeIndex a = TreeIndex::parse("(0;0)"), b = TreeIndex::parse("(0;1)");
  const auto ba = p.positions_in_cell(a), bb = p.positions_in_cell(b);
  for (const auto& al : kAlphaGrid) {
    Real want = 0;
    for (int i : ba) {
      for (int j : bb) {
        MatrixXc M(2, 2);
        M << p.matrix(i, i), p.matrix(i, j), p.matrix(j, i), p.matrix(j, j);
        want += det_alpha_naive(M, al).real();
      }
    }
    CHECK(rhs_parseval(p, al, {{a, b}}) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("the identity holds exactly for span kernels") {
  const KernelSpec k = two_mode_kernel();
  const ProjectedKernel p = project_kernel(k, 2, 2, kUnit);
  const TreeIndex a = TreeIndex::parse("(0;0)"), b = TreeIndex::parse("(0;1)");
  for (const auto& al : kAlphaGrid) {
    for (const CorrelationQuery& q :
         {CorrelationQuery{{a}}, {{a, b}}, {{a, a}}, {{b, a, b}}}) {
      const ParsevalReport r = verify_parseval(k, p, al, q, 1e-10);
      CHECK(r.pass);
      CHECK(r.gap < 1e-12);
      CHECK(r.m == q.order());
    }
  }
}

TEST_CASE("the identity converges for the smooth kernel as the rank grows") {
  const KernelSpec k = KernelSpec::gaussian(1.0, 0.5);
  const CorrelationQuery q{{TreeIndex::cell(0)}};
  Real prev = 1e100;
  for (int R : {1, 3, 6}) {
    const ProjectedKernel p = project_kernel(k, 1, R, kUnit);
    const ParsevalReport r = verify_parseval(k, p, AlphaParam::of(-1, 2), q, 1e-3);
    CHECK(r.gap <= prev + 1e-12);
    CHECK(r.tail_bound >= r.gap - 1e-12);  // m = 1: the tail bound is exact
    prev = r.gap;
  }
  CHECK(prev < 1e-3);

  const ProjectedKernel coarse = project_kernel(k, 1, 1, kUnit);
  CHECK(!verify_parseval(k, coarse, AlphaParam::of(-1, 2), q, 1e-9).pass);
}

TEST_CASE("order guards") {
  const ProjectedKernel p = project_kernel(two_mode_kernel(), 2, 1, kUnit);
  const TreeIndex a = TreeIndex::parse("(0;0)");
  const CorrelationQuery q5{{a, a, a, a, a}};
  CHECK_THROWS_AS(lhs_parseval(two_mode_kernel(), AlphaParam::of(-1, 1), 2, q5), resource_error);
  CHECK_THROWS_AS(rhs_parseval(p, AlphaParam::of(-1, 1), q5), resource_error);
  CHECK_THROWS_AS(lhs_parseval(two_mode_kernel(), AlphaParam::of(-1, 1), 2, {}), contract_error);
  CHECK_THROWS_AS(rhs_parseval(p, AlphaParam::of(-1, 1), {}), contract_error);
}
