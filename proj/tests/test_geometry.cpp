#include <doctest.h>

#include <cmath>
#include <random>

#include "biharm/error.hpp"
#include "biharm/geometry.hpp"
#include "biharm/immersion.hpp"
#include "test_support.hpp"

using namespace biharm;

namespace {

SurfaceSample sample_at(const Family& fam, const Eigen::VectorXd& u) { return sample_surface(fam.jet(u), u, fam.space()); }

Family affine_chart(const Eigen::MatrixXd& frame, const SpaceForm& space) {
  const int m = static_cast<int>(frame.cols());
  return Family("affine", m, space, {}, [frame](const Eigen::VectorXd& u) {
    ChartJet jet(static_cast<int>(frame.rows()), static_cast<int>(frame.cols()));
    jet.point = frame * u;
    jet.jacobian = frame;
    return jet;
  }, true);
}

// H^2(1) as a graph over its spatial coordinates: x = (u, sqrt(1 + |u|^2)).
ScalarField hyperboloid_field(int n, const std::function<double(const Eigen::VectorXd&)>& phi, double lo, double hi) {
  Grid grid(2, n, lo, hi);
  ScalarField field{grid, std::vector<double>(grid.size()), std::vector<Eigen::MatrixXd>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd u = grid.point(i);
    const double w2 = 1.0 + u.squaredNorm();
    field.values[i] = phi(u);
    field.metrics[i] = Eigen::Matrix2d::Identity() - u * u.transpose() / w2;
  }
  return field;
}

double value_at(const ScalarField& f, const Eigen::Vector2d& u) {
  const Grid& g = f.grid;
  std::vector<int> idx(2);
  for (int k = 0; k < 2; ++k) idx[k] = static_cast<int>(std::lround((u(k) - g.lower()) / g.spacing()));
  return f.values[g.flat_index(idx)];
}

}  // namespace

TEST_CASE("flat plane has identity metric") {
  Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(3, 2);
  frame(0, 0) = frame(1, 1) = 1.0;
  const Family plane = affine_chart(frame, SpaceForm::parse("R3_1"));
  const auto s = sample_at(plane, Eigen::Vector2d(0.4, -0.2));
  CHECK(s.metric.isApprox(Eigen::Matrix2d::Identity()));
  CHECK(s.sff.isZero(1e-15));
  CHECK(s.mean_f == 0.0);
  CHECK(s.normal.isApprox(Eigen::Vector3d(0, 0, 1)));
}

TEST_CASE("time-like tangent is not space-like") {
  Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(3, 2);
  frame(1, 0) = frame(2, 1) = 1.0;
  const Family fam = affine_chart(frame, SpaceForm::parse("R3_1"));
  const auto jet = fam.jet(Eigen::Vector2d(0.1, 0.2));
  const auto ind = first_fundamental_form(jet, Signature(2, 1));
  CHECK(!ind.space_like);
  CHECK_THROWS_AS(sample_surface(jet, Eigen::Vector2d(0.1, 0.2), fam.space()), GeometryError);

  Eigen::MatrixXd null_frame = Eigen::MatrixXd::Zero(3, 2);
  null_frame(0, 0) = 1.0;
  null_frame(1, 1) = null_frame(2, 1) = 1.0;
  const Family degenerate = affine_chart(null_frame, SpaceForm::parse("R3_1"));
  CHECK_THROWS_AS(first_fundamental_form(degenerate.jet(Eigen::Vector2d::Zero()), Signature(2, 1)), GeometryError);
}

TEST_CASE("slice metric scales by 1 - s^2") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  const double s = 0.6;
  const Family unit = hyperbolic_slice(2, 0.0), scaled = hyperbolic_slice(2, s);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Vector2d u(box(rng), box(rng));
    const auto g0 = first_fundamental_form(unit.jet(u), unit.space().ambient_signature()).g;
    const auto g1 = first_fundamental_form(scaled.jet(u), scaled.space().ambient_signature()).g;
    CHECK((g1 - (1 - s * s) * g0).norm() <= 1e-13);
  }
}

TEST_CASE("normal of the totally geodesic slice") {
  const Family fam = hyperbolic_slice(2, 0.0);
  const auto s = sample_at(fam, Eigen::Vector2d(0.3, 0.5));
  CHECK((s.normal - Eigen::Vector4d(0, 0, 0, 1)).norm() <= 1e-12);
  CHECK(s.normal_sign == -1.0);
}

TEST_CASE("slice normal has constant fourth component") {
  const Family fam = hyperbolic_slice(2, 0.45);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  const double ref = sample_at(fam, Eigen::Vector2d::Zero()).normal(3);
  for (int i = 0; i < 10; ++i) {
    const auto s = sample_at(fam, Eigen::Vector2d(box(rng), box(rng)));
    CHECK(s.normal(3) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("flat clifford torus") {
  const Family fam = clifford_product(1, 1, 1.0 / std::sqrt(2.0));
  const Signature sig = fam.space().ambient_signature();
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Vector2d u(box(rng), box(rng));
    const auto jet = fam.jet(u);
    const auto s = sample_surface(jet, u, fam.space());
    for (int k = 0; k < 2; ++k) CHECK(std::abs(inner_product(s.normal, jet.jacobian.col(k), sig)) <= 1e-10);
    CHECK(std::abs(s.mean_f) <= 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es((s.shape + s.shape.transpose()) / 2);
    CHECK(std::abs(es.eigenvalues()(0) + 1.0) <= 1e-12);
    CHECK(std::abs(es.eigenvalues()(1) - 1.0) <= 1e-12);
    // Gauss equation K = c - det A on a flat surface.
    CHECK(std::abs(fam.space().curvature() - s.shape.determinant()) <= 1e-12);
  }
}

TEST_CASE("shape operator of the biharmonic slice") {
  const Family fam = hyperbolic_slice(2, 1.0 / std::sqrt(2.0));
  const auto s = sample_at(fam, Eigen::Vector2d(0.2, -0.7));
  CHECK(s.shape.cwiseAbs().isApprox(Eigen::Matrix2d::Identity(), 1e-12));
  CHECK(std::abs(s.shape(0, 0) - s.shape(1, 1)) <= 1e-12);
  CHECK(s.normsq_A == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.normsq_B == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("|B|^2 of the slice") {
  const Family fam = hyperbolic_slice(2, 0.6);
  const auto s = sample_at(fam, Eigen::Vector2d(0.5, 0.5));
  CHECK(s.normsq_B == doctest::Approx(-1.125).epsilon(1e-12));
  for (int n : {2, 3, 4}) {
    for (double t : {0.1, 0.35, 0.8}) {
      const Family f = hyperbolic_slice(n, t);
      const auto x = sample_at(f, f.box_center());
      CHECK(x.normsq_B == doctest::Approx(n * t * t / (t * t - 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sample invariants hold on every grid point of the built-in families") {
  const std::vector<Family> families{hyperbolic_slice(2, 0.3),
                                     hyperbolic_slice(3, -0.6),
                                     clifford_product(1, 2, 0.4),
                                     clifford_product(2, 1, 0.8),
                                     hyperbolic_slice(2, 0.5, SpaceForm::parse("S3_1(1)")),
                                     hyperbolic_slice(2, 2.0, SpaceForm::parse("R3_1")),
                                     clifford_product(1, 1, 1.4, SpaceForm::parse("S3_1(1)")),
                                     clifford_product(1, 1, 0.7, SpaceForm::parse("R3_1")),
                                     chart_family("warped_slice.chart")};
  for (const auto& fam : families) {
    CAPTURE(fam.name());
    const Grid grid(fam.dimension(), 5, -1.0, 1.0);
    const Signature sig = fam.space().ambient_signature();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Eigen::VectorXd u = grid.point(i);
      const auto jet = fam.jet(u);
      const auto s = sample_surface(jet, u, fam.space());
      CHECK(s.metric.llt().info() == Eigen::Success);
      CHECK(std::abs(inner_product(s.normal, s.normal, sig) + 1.0) <= 1e-9);
      for (int k = 0; k < fam.dimension(); ++k) CHECK(std::abs(inner_product(s.normal, jet.jacobian.col(k), sig)) <= 1e-9);
      if (!fam.space().is_flat()) CHECK(std::abs(inner_product(s.normal, s.point, sig)) <= 1e-9);
      CHECK(std::abs(s.normsq_B + s.normsq_A) <= 1e-9);
      CHECK(std::abs(s.normsq_A - (s.shape * s.shape).trace()) <= 1e-9);
    }
  }
}

TEST_CASE("slices are umbilic") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  for (double s : {0.2, 0.5, 0.9}) {
    const Family fam = hyperbolic_slice(3, s);
    for (int i = 0; i < 5; ++i) {
      const Eigen::Vector3d u(box(rng), box(rng), box(rng));
      const auto x = sample_at(fam, u);
      CHECK((x.shape - x.mean_f * Eigen::Matrix3d::Identity()).norm() <= 1e-9);
    }
  }
}

TEST_CASE("index-0 ambient gives a space-like normal") {
  const Family fam = hyperbolic_slice(2, 0.5, SpaceForm::parse("S3(1)"));
  const auto s = sample_at(fam, Eigen::Vector2d(0.1, 0.2));
  CHECK(s.normal_sign == 1.0);
  CHECK(s.normsq_B == doctest::Approx(s.normsq_A));
}

TEST_CASE("Weingarten equation: d_i eta = -W^k_i d_k x") {
  const std::vector<Family> families{chart_family("warped_slice.chart"), clifford_product(1, 2, 0.55),
                                     hyperbolic_slice(2, 0.4, SpaceForm::parse("S3_1(1)"))};
  const double h = 1e-5;
  for (const auto& fam : families) {
    CAPTURE(fam.name());
    const int m = fam.dimension();
    const std::vector<Eigen::VectorXd> points{Eigen::VectorXd::Constant(m, 0.1), Eigen::VectorXd::LinSpaced(m, -0.6, 0.4)};
    for (const Eigen::VectorXd& u : points) {
      const auto jet = fam.jet(u);
      const auto s = sample_surface(jet, u, fam.space());
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd up = u, um = u;
        up(i) += h;
        um(i) -= h;
        const Eigen::VectorXd deta = (sample_at(fam, up).normal - sample_at(fam, um).normal) / (2 * h);
        const Eigen::VectorXd expected = -jet.jacobian * s.weingarten.col(i);
        CHECK((deta - expected).norm() <= 1e-8 * std::max(1.0, expected.norm()) + 1e-8);
      }
    }
  }
}

TEST_CASE("laplace-beltrami on simple fields") {
  Grid grid(2, 9, -1.0, 1.0);
  ScalarField field{grid, std::vector<double>(grid.size(), 3.5), std::vector<Eigen::MatrixXd>(grid.size(), Eigen::Matrix2d::Identity())};
  auto lap = laplace_beltrami(field);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.is_interior(i)) {
      CHECK(lap.values[i] == 0.0);
    } else {
      CHECK(std::isnan(lap.values[i]));
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) field.values[i] = grid.point(i)(0) * grid.point(i)(0);
  lap = laplace_beltrami(field);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.is_interior(i)) CHECK(lap.values[i] == doctest::Approx(-2.0).epsilon(1e-12));
  }

  Grid tiny(2, 2, -1.0, 1.0);
  ScalarField small{tiny, std::vector<double>(tiny.size()), std::vector<Eigen::MatrixXd>(tiny.size(), Eigen::Matrix2d::Identity())};
  CHECK_THROWS_AS(laplace_beltrami(small), StencilError);
}

TEST_CASE("laplace-beltrami converges at second order on the hyperbolic plane") {
  // On H^2(1) the ambient coordinates are eigenfunctions: Delta x = -2 x (minus-trace sign).
  const Eigen::Vector2d probe(0.5, 0.25);
  for (int which : {0, 2}) {
    auto phi = [which](const Eigen::VectorXd& u) { return which == 0 ? u(0) : std::sqrt(1.0 + u.squaredNorm()); };
    const double exact = -2.0 * phi(probe);
    std::vector<double> errors;
    for (int n : {9, 17, 33}) {
      const auto lap = laplace_beltrami(hyperboloid_field(n, phi, -1.0, 1.0));
      errors.push_back(std::abs(value_at(lap, probe) - exact));
    }
    CAPTURE(which);
    CHECK(std::log2(errors[0] / errors[1]) >= 1.9);
    CHECK(std::log2(errors[1] / errors[2]) >= 1.9);
  }
}
