#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "alphadpp/sampler.hpp"
#include "alphadpp/stats.hpp"
#include "support.hpp"

using namespace alphadpp;
using namespace testsupport;

namespace {

const Window kUnit{0.0, 1.0};

ProjectedKernel two_mode_projection() { return project_kernel(two_mode_kernel(), 2, 1, kUnit); }

std::vector<Real> empirical_count_hist(const DiscreteSampler& s, int n, std::uint64_t seed,
                                       int bins) {
  std::vector<Real> hist(bins, 0.0);
  const CounterRng base(seed);
  for (int rep = 0; rep < n; ++rep) {
    CounterRng rng = base.split(rep);
    const auto config = s.sample(rng);
    const int c = std::min(static_cast<int>(config.size()), bins - 1);
    hist[c] += 1.0;
  }
  return hist;
}

}  // namespace

TEST_CASE("sampling is a pure function of (seed, stream)") {
  const ProjectedKernel p = two_mode_projection();
  for (const auto& a : {AlphaParam::of(-1, 2), AlphaParam::of(2, 1)}) {
    const DiscreteSampler s1(p, a), s2(p, a);
    for (int rep = 0; rep < 50; ++rep) {
      CounterRng r1 = CounterRng(42).split(rep), r2 = CounterRng(42).split(rep);
      const auto c1 = s1.sample(r1), c2 = s2.sample(r2);
      REQUIRE(c1.indices == c2.indices);
      CHECK(std::is_sorted(c1.indices.begin(), c1.indices.end()));
    }
  }
}

TEST_CASE("sampler reports its branch and superposition order") {
  const ProjectedKernel p = two_mode_projection();
  CHECK(DiscreteSampler(p, AlphaParam::of(-1, 1)).determinantal());
  CHECK(DiscreteSampler(p, AlphaParam::of(-1, 2)).superposition_order() == 2);
  CHECK(!DiscreteSampler(p, AlphaParam::of(2, 1)).determinantal());
  CHECK(DiscreteSampler(p, AlphaParam::of(1, 1)).superposition_order() == 2);
}

TEST_CASE("admissibility is enforced at construction") {
  const ProjectedKernel big = project_kernel(two_mode_kernel(3.0), 2, 1, kUnit);
  CHECK_THROWS_AS(DiscreteSampler(big, AlphaParam::of(-1, 1)), validation_error);
  CHECK_THROWS_AS(DiscreteSampler(big, AlphaParam::of(-1, 2)), validation_error);
  CHECK_NOTHROW(DiscreteSampler(big, AlphaParam::of(-1, 3)));
  CHECK_NOTHROW(DiscreteSampler(big, AlphaParam::of(2, 1)));
  // tiny negative rounding eigenvalues from a smooth projection are clipped
  const ProjectedKernel pg = project_kernel(KernelSpec::gaussian(1.0, 0.5), 1, 4, kUnit);
  CHECK_NOTHROW(DiscreteSampler(pg, AlphaParam::of(-1, 2)));
}

TEST_CASE("exact law of the total count, determinantal branch") {
  const ProjectedKernel p = two_mode_projection();
  const auto pmf1 = DiscreteSampler(p, AlphaParam::of(-1, 1)).total_count_pmf();
  REQUIRE(pmf1.size() == 3);  // Bernoulli(0.7) + Bernoulli(0.3)
  CHECK(pmf1[0] == doctest::Approx(0.21));
  CHECK(pmf1[1] == doctest::Approx(0.58));
  CHECK(pmf1[2] == doctest::Approx(0.21));

  const auto pmf2 = DiscreteSampler(p, AlphaParam::of(-1, 2)).total_count_pmf();
  REQUIRE(pmf2.size() == 5);
  CHECK(std::accumulate(pmf2.begin(), pmf2.end(), 0.0) == doctest::Approx(1.0));
  Real mean = 0;
  for (std::size_t k = 0; k < pmf2.size(); ++k) mean += k * pmf2[k];
  CHECK(mean == doctest::Approx(1.0));  // trace is preserved by the superposition

  CHECK_THROWS_AS(DiscreteSampler(p, AlphaParam::of(2, 1)).total_count_pmf(), contract_error);
}

TEST_CASE("empirical counts match the exact law (chi-square, 1% level)") {
  const ProjectedKernel p = two_mode_projection();
  const int n = 20000;
  for (const auto& a : {AlphaParam::of(-1, 1), AlphaParam::of(-1, 2)}) {
    const DiscreteSampler s(p, a);
    const auto pmf = s.total_count_pmf();
    const auto hist = empirical_count_hist(s, n, 99, static_cast<int>(pmf.size()));
    std::vector<Real> expected(pmf.size());
    for (std::size_t k = 0; k < pmf.size(); ++k) expected[k] = n * pmf[k];
    // merge the sparse tail so every expected bin stays comfortably positive
    while (expected.size() > 2 && expected.back() < 10.0) {
      expected[expected.size() - 2] += expected.back();
      expected.pop_back();
    }
    std::vector<Real> observed(hist.begin(), hist.begin() + expected.size());
    for (std::size_t k = expected.size(); k < hist.size(); ++k) observed.back() += hist[k];
    const Real stat = chi_square_statistic(observed, expected);
    CHECK(chi_square_pvalue(stat, static_cast<int>(expected.size()) - 1) > 0.01);
  }
}

TEST_CASE("gaussian-square branch has the right mean occupation") {
  const ProjectedKernel p = two_mode_projection();
  const int n = 20000;
  for (const auto& a : {AlphaParam::of(2, 1), AlphaParam::of(1, 1), AlphaParam::of(2, 3)}) {
    const DiscreteSampler s(p, a);
    std::vector<Real> totals(n);
    const CounterRng base(5);
    for (int rep = 0; rep < n; ++rep) {
      CounterRng rng = base.split(rep);
      totals[rep] = static_cast<Real>(s.sample(rng).size());
    }
    const MomentEstimate est = mean_and_stderr(totals);
    CHECK(std::abs(est.mean - 1.0) < 3.5 * est.std_error);  // E[N] = trace = 1
  }
}

TEST_CASE("marks stay in their supports and pool to the right intensity") {
  const ProjectedKernel p = two_mode_projection();
  const DiscreteSampler s(p, AlphaParam::of(-1, 1));
  const CounterRng base(17);
  std::vector<Real> pooled;
  for (int rep = 0; rep < 8000; ++rep) {
    CounterRng rng = base.split(rep);
    const auto lifted = attach_marks(s.sample(rng), rng);
    REQUIRE(lifted.points.size() == lifted.indices.size());
    for (std::size_t k = 0; k < lifted.points.size(); ++k)
      REQUIRE(lifted.indices[k].support().contains(lifted.points[k]));
    for (Real x : lifted.points) pooled.push_back(x);
  }
  // intensity K(x, x) = 1 on [0, 1): pooled marks are uniform
  const Real d = ks_uniform_statistic(pooled, 0.0, 1.0);
  CHECK(std::sqrt(static_cast<Real>(pooled.size())) * d < 1.6276);
}

TEST_CASE("unlabel sorts, cell_counts buckets and ignores outsiders") {
  LiftedConfiguration lifted;
  lifted.points = {0.6, 0.1, 0.3};
  const auto pts = unlabel(lifted);
  CHECK(pts == std::vector<Real>{0.1, 0.3, 0.6});
  CHECK(cell_counts({0.1, 0.3, 0.6, 1.2}, 2, kUnit) == std::vector<std::int64_t>{2, 1});
  CHECK(cell_counts({0.1, 0.3, 0.6, 1.2}, 2, Window{0.0, 2.0}) ==
        std::vector<std::int64_t>{2, 1, 1, 0});
  CHECK(cell_counts({}, 1, kUnit) == std::vector<std::int64_t>{0});
}

TEST_CASE("factorial moment estimator on hand-built samples") {
  const std::vector<std::vector<std::int64_t>> counts = {{2, 0}, {1, 1}, {0, 3}};
  CHECK(estimate_factorial_moments(counts, {{0, 1}}).mean == doctest::Approx(1.0));
  CHECK(estimate_factorial_moments(counts, {{0, 1}}).std_error ==
        doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(estimate_factorial_moments(counts, {{0, 1}, {1, 1}}).mean == doctest::Approx(1.0 / 3));
  CHECK(estimate_factorial_moments(counts, {{1, 2}}).mean == doctest::Approx(2.0));
  CHECK_THROWS_AS(estimate_factorial_moments(counts, {{0, 1}, {0, 1}}), contract_error);
  CHECK_THROWS_AS(estimate_factorial_moments(counts, {{0, 0}}), contract_error);
  CHECK_THROWS_AS(estimate_factorial_moments(counts, {{7, 1}}), contract_error);
  CHECK_THROWS_AS(estimate_factorial_moments({}, {{0, 1}}), contract_error);
}

TEST_CASE("end-to-end lift check against the correlation integrals") {
  const KernelSpec k = two_mode_kernel();
  const TreeIndex a = TreeIndex::parse("(0;0)"), b = TreeIndex::parse("(0;1)");
  for (const auto& al : {AlphaParam::of(-1, 1), AlphaParam::of(2, 1)}) {
    const LiftReport r1 = verify_lift(k, al, 2, 1, kUnit, {{a}}, 4000, 11);
    CHECK(r1.pass);
    CHECK(r1.analytic == doctest::Approx(0.5));
    CHECK(r1.truncation_gap < 1e-12);
    CHECK(r1.std_error > 0);
  }
  const LiftReport r2 = verify_lift(k, AlphaParam::of(-1, 1), 2, 1, kUnit, {{a, b}}, 20000, 12);
  CHECK(r2.pass);
  CHECK(r2.analytic == doctest::Approx(0.21));
  CHECK(r2.m == 2);
}

TEST_CASE("lift check input contracts") {
  const KernelSpec k = two_mode_kernel();
  const TreeIndex a = TreeIndex::parse("(0;0)");
  CHECK_THROWS_AS(verify_lift(k, AlphaParam::of(-1, 1), 2, 1, kUnit, {{TreeIndex::cell(0)}}, 10, 1),
                  contract_error);
  CHECK_THROWS_AS(
      verify_lift(k, AlphaParam::of(-1, 1), 2, 1, kUnit, {{TreeIndex::parse("(3;0)")}}, 10, 1),
      contract_error);
  CHECK_THROWS_AS(verify_lift(k, AlphaParam::of(-1, 1), 2, 1, kUnit, {{a}}, 0, 1), contract_error);
}
