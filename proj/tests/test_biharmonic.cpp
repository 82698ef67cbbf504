#include <doctest.h>

#include <cmath>

#include "biharm/biharmonic.hpp"
#include "biharm/error.hpp"
#include "test_support.hpp"

using namespace biharm;

namespace {

const double kHalf = 1.0 / std::sqrt(2.0);

Family graph_in_minkowski() {
  // x3 = 0.3 exp(-|u|^2): space-like, not CMC.
  return Family("bump", 2, SpaceForm::parse("R3_1"), {}, [](const Eigen::VectorXd& u) {
    ChartJet jet(3, 2);
    const double e = 0.3 * std::exp(-u.squaredNorm());
    jet.point << u(0), u(1), e;
    jet.jacobian(0, 0) = jet.jacobian(1, 1) = 1.0;
    jet.jacobian(2, 0) = -2 * u(0) * e;
    jet.jacobian(2, 1) = -2 * u(1) * e;
    jet.hessians[2] = e * (4 * u * u.transpose() - 2 * Eigen::Matrix2d::Identity());
    return jet;
  }, true);
}

// Independent oracle: with Delta_t the trace Laplacian applied componentwise in the
// flat ambient space, Delta_t x is normal to M and the tangent part of Delta_t(Delta_t x)
// is -m (2 W grad f + m eps f grad f). Returns the worst relative mismatch at interior
// points near the centre.
double bitension_oracle_mismatch(const Family& fam) {
  const GridSpec spec{41, -0.4, 0.4};
  const SurfaceGrid sg = sample_grid(fam, spec);
  const Grid& grid = sg.grid;
  const int m = fam.dimension();
  const Signature sig = fam.space().ambient_signature();
  const Eigen::VectorXd diag = sig.diagonal();
  const int N = sig.dimension();

  std::vector<ScalarField> comps(N, ScalarField{grid, std::vector<double>(grid.size()), {}});
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto jet = fam.jet(grid.point(p));
    const Eigen::MatrixXd& g = sg.samples[p].metric;
    const Eigen::MatrixXd ginv = g.inverse();
    Eigen::VectorXd v = Eigen::VectorXd::Zero(N);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) v += ginv(i, j) * jet.second_derivative(i, j);
    const Eigen::VectorXd tangential = jet.jacobian * (ginv * (jet.jacobian.transpose() * diag.asDiagonal() * v));
    v -= tangential;
    for (int a = 0; a < N; ++a) {
      comps[a].values[p] = v(a);
      comps[a].metrics.push_back(g);
    }
  }
  std::vector<ScalarField> laps;
  for (const auto& c : comps) laps.push_back(laplace_beltrami(c));
  const ScalarField f = sg.mean_curvature_field();

  double worst = 0.0;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (grid.point(p).cwiseAbs().maxCoeff() > 0.2 + 1e-12) continue;
    Eigen::VectorXd bilap(N);
    for (int a = 0; a < N; ++a) bilap(a) = -laps[a].values[p];
    const auto jet = fam.jet(grid.point(p));
    const Eigen::VectorXd lowered = jet.jacobian.transpose() * diag.asDiagonal() * bilap;
    const auto& s = sg.samples[p];
    const Eigen::VectorXd expected = -m * (s.metric * tangent_bitension(s, coordinate_gradient(f, p)));
    worst = std::max(worst, (lowered - expected).norm() / std::max(expected.norm(), 1e-3));
  }
  return worst;
}

}  // namespace

TEST_CASE("normal residual on slices") {
  const auto half = verify(hyperbolic_slice(2, kHalf));
  CHECK(half.normal_residual <= 1e-8);
  CHECK(half.tangent_residual <= 1e-8);
  CHECK(half.classification == Classification::proper_biharmonic);
  CHECK(half.normal_sign == -1.0);

  const auto geodesic = verify(hyperbolic_slice(2, 0.0));
  CHECK(geodesic.normal_residual <= 1e-8);
  CHECK(geodesic.max_abs_f <= 1e-12);
  CHECK(geodesic.classification == Classification::maximal);

  // |A|^2 = 1.125 and f = 0.75: |(|A|^2 - 2) f| = 0.65625.
  const auto off = verify(hyperbolic_slice(2, 0.6));
  CHECK(off.normal_residual == doctest::Approx(0.65625).epsilon(1e-9));
  CHECK(off.classification == Classification::not_biharmonic);
}

TEST_CASE("tangent residual vanishes on CMC families and the flat plane") {
  for (const auto& fam : {hyperbolic_slice(2, 0.3), hyperbolic_slice(3, 0.8), clifford_product(1, 2, 0.4),
                          clifford_product(2, 2, 0.6)}) {
    CAPTURE(fam.name());
    CHECK(verify(fam).tangent_residual <= 1e-8);
  }
  const auto plane = verify(chart_family("plane.chart"));
  CHECK(plane.tangent_residual == 0.0);
  CHECK(plane.normal_residual == 0.0);
  CHECK(plane.classification == Classification::maximal);
}

TEST_CASE("full and reduced surface forms agree on a warped chart") {
  const Family fam = chart_family("warped_slice.chart");
  const GridSpec grid;
  const SurfaceGrid sg = sample_grid(fam, grid);
  const ScalarField f = sg.mean_curvature_field();
  const double c = fam.space().curvature();
  const double tangent = tangent_residual(sg, f);
  const double normal = normal_residual(sg, f, c, 2);
  const auto reduced = reduced_residuals(sg, f, c);
  CHECK(tangent > 1e-3);
  CHECK(std::abs(tangent - kTangentConventionFactor * reduced.tangent) <= 1e-9);
  CHECK(std::abs(normal - reduced.normal) <= 1e-9);

  for (std::size_t p = 0; p < sg.samples.size(); ++p) {
    if (!sg.grid.is_interior(p)) continue;
    const Eigen::VectorXd df = coordinate_gradient(f, p);
    const Eigen::VectorXd full = tangent_bitension(sg.samples[p], df);
    const Eigen::VectorXd red = reduced_tangent(sg.samples[p], df);
    CHECK((full - kTangentConventionFactor * red).norm() <= 1e-12 * std::max(1.0, full.norm()));
  }
  const auto rep = verify(fam, grid);
  CHECK(rep.classification == Classification::not_biharmonic);
  REQUIRE(rep.reduced.has_value());
}

TEST_CASE("reduced form needs a time-like normal surface") {
  const Family sphere_slice = hyperbolic_slice(2, 0.5, SpaceForm::parse("S3(1)"));
  const SurfaceGrid sg = sample_grid(sphere_slice, {});
  CHECK_THROWS_AS(reduced_residuals(sg, sg.mean_curvature_field(), 1.0), ContractError);
  const SurfaceGrid cube = sample_grid(hyperbolic_slice(3, 0.5), {5, -1, 1});
  CHECK_THROWS_AS(reduced_residuals(cube, cube.mean_curvature_field(), -1.0), ContractError);
}

TEST_CASE("tangent bitension matches the ambient bi-Laplacian of the position vector") {
  CHECK(bitension_oracle_mismatch(chart_family("warped_slice.chart")) <= 2e-3);
  CHECK(bitension_oracle_mismatch(graph_in_minkowski()) <= 2e-3);
}

TEST_CASE("classification tolerances") {
  CHECK(Tolerances::defaults_for(hyperbolic_slice(2, 0.5)).residual == kAnalyticResidualTol);
  CHECK(Tolerances::defaults_for(chart_family("slice_half.chart")).residual == kChartResidualTol);
  for (auto c : {Classification::proper_biharmonic, Classification::maximal, Classification::harmonic_only,
                 Classification::not_biharmonic}) {
    CHECK(parse_classification(to_string(c)) == c);
  }
  CHECK(!parse_classification("proper"));

  const auto chart = verify(chart_family("slice_half.chart"));
  CHECK(chart.classification == Classification::proper_biharmonic);
  CHECK(chart.tolerances.residual == kChartResidualTol);
}

TEST_CASE("f vanishing on part of the grid is harmonic_only, not proper") {
  // Odd in u1: f changes sign across u1 = 0 while the residuals are forced below tolerance.
  const Family fam = chart_family("warped_slice.chart");
  Tolerances loose{1e3, 1e-6};
  const Family tilted("tilted", 2, SpaceForm::parse("R3_1"), {}, [](const Eigen::VectorXd& u) {
    ChartJet jet(3, 2);
    jet.point << u(0), u(1), 0.1 * u(0) * u(0) * u(0);
    jet.jacobian(0, 0) = jet.jacobian(1, 1) = 1.0;
    jet.jacobian(2, 0) = 0.3 * u(0) * u(0);
    jet.hessians[2](0, 0) = 0.6 * u(0);
    return jet;
  }, true);
  CHECK(verify(tilted, GridSpec{9, -1, 1}, loose).classification == Classification::harmonic_only);
  CHECK(verify(fam, GridSpec{9, -1, 1}, loose).classification == Classification::proper_biharmonic);
}

TEST_CASE("cmc dichotomy") {
  CHECK(cmc_dichotomy(-2.0, 2, -1.0) == CmcVerdict::proper_condition);
  CHECK(cmc_dichotomy(-1.0, 2, -1.0) == CmcVerdict::maximal_forced);
  for (double b : {-10.0, -2.0, -1e-6}) {
    CHECK(cmc_dichotomy(b, 2, 1.0) == CmcVerdict::maximal_forced);
    CHECK(cmc_dichotomy(b, 2, 0.0) == CmcVerdict::maximal_forced);
  }
}

TEST_CASE("clifford quadratic") {
  const auto q12 = clifford_quadratic(1, 2);
  REQUIRE(q12.roots.size() == 2);
  CHECK(*q12.roots[0].exact == Rational(1));
  CHECK(*q12.roots[1].exact == Rational(2));
  CHECK(!q12.roots[0].maximal);
  CHECK(q12.roots[1].maximal);
  CHECK(q12.roots[0].r == doctest::Approx(kHalf));
  CHECK(q12.roots[1].r == doctest::Approx(1.0 / std::sqrt(3.0)));

  const auto q33 = clifford_quadratic(3, 3);
  REQUIRE(q33.roots.size() == 2);
  CHECK(*q33.roots[0].exact == Rational(1));
  CHECK(*q33.roots[1].exact == Rational(1));
  CHECK(q33.roots[0].maximal);

  const auto q21 = clifford_quadratic(2, 1);
  REQUIRE(q21.roots.size() == 2);
  CHECK(*q21.roots[0].exact == Rational(1, 2));
  CHECK(*q21.roots[1].exact == Rational(1));
  CHECK(q21.roots[0].maximal);
  CHECK(!q21.roots[1].maximal);

  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) {
      const auto q = clifford_quadratic(m, n);
      REQUIRE(q.roots.size() == 2);
      const Rational t1 = *q.roots[0].exact, t2 = *q.roots[1].exact;
      CHECK(t1 * t2 == Rational(n, m));
      CHECK(t1 + t2 == Rational(m + n, m));
    }
  }
}

TEST_CASE("scans rediscover the biharmonic parameters") {
  const auto slice = scan_family([](double s) { return hyperbolic_slice(2, s); }, "s", 0.1, 0.9);
  REQUIRE(slice.roots.size() == 1);
  CHECK(std::abs(slice.roots[0].param - kHalf) <= 1e-10);
  CHECK(slice.roots[0].converged);
  CHECK(slice.roots[0].report.classification == Classification::proper_biharmonic);
  CHECK(slice.values.size() == 33);

  const auto cliff = scan_family([](double r) { return clifford_product(1, 2, r); }, "r", 0.3, 0.9);
  REQUIRE(cliff.roots.size() == 2);
  CHECK(std::abs(cliff.roots[0].param - 1.0 / std::sqrt(3.0)) <= 1e-10);
  CHECK(std::abs(cliff.roots[1].param - kHalf) <= 1e-10);
  CHECK(cliff.proper_root_count() == 1);

  const SpaceForm sphere = SpaceForm::parse("S3(1)");
  const auto riem = scan_family([sphere](double s) { return hyperbolic_slice(2, s, sphere); }, "s", 0.1, 0.9);
  REQUIRE(riem.roots.size() == 1);
  CHECK(std::abs(riem.roots[0].param - kHalf) <= 1e-10);
  CHECK(riem.roots[0].report.classification == Classification::proper_biharmonic);

  const auto none = scan_family([](double s) { return hyperbolic_slice(2, s); }, "s", 0.1, 0.5);
  CHECK(none.roots.empty());
}

TEST_CASE("grid sampling is independent of the worker count") {
  const Family fam = chart_family("warped_slice.chart");
  setenv("BIHARM_THREADS", "1", 1);
  const auto one = verify(fam);
  setenv("BIHARM_THREADS", "7", 1);
  const auto many = verify(fam);
  unsetenv("BIHARM_THREADS");
  CHECK(one.normal_residual == many.normal_residual);
  CHECK(one.tangent_residual == many.tangent_residual);
  CHECK(one.min_abs_f == many.min_abs_f);
}
