#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "biharm/ambient.hpp"
#include "biharm/chart_jet.hpp"

namespace biharm {

struct InducedMetric {
  Eigen::MatrixXd g;
  bool space_like = false;  // g positive definite
};

/// g_ij = <d_i x, d_j x>. Throws GeometryError when |det g| < tol.
InducedMetric first_fundamental_form(const ChartJet& jet, const Signature& sig, double tol = 1e-12);

/// Unit normal of a hypersurface of `sf`: orthogonal to every d_i x and, for a
/// hyperquadric, to the position vector. Space-like hypersurfaces of an index-1
/// form get <eta,eta> = -1; of an index-0 form <eta,eta> = +1.
///
/// Orientation: the last ambient component is positive; if it vanishes, the first
/// nonzero component is positive.
AmbientVector unit_normal(const ChartJet& jet, const SpaceForm& sf);

struct SecondFundamentalForm {
  Eigen::MatrixXd b;  // coefficients of B against eta: B(d_i, d_j) = b_ij eta
  Eigen::MatrixXd A;  // g^{-1} b
  double f = 0.0;     // H = f eta, f = trace(A) / m
};

/// b_ij = eps * <P(d_ij x), eta> where eps = <eta,eta> and P removes the
/// position-vector component of the flat Hessian (Gauss formula on the quadric).
SecondFundamentalForm second_fundamental_form(const ChartJet& jet, const AmbientVector& eta, const Eigen::MatrixXd& g,
                                              const SpaceForm& sf);

/// Pointwise extrinsic data of a space-like hypersurface.
///
/// `weingarten` is the shape operator in the direction of eta, <W X, Y> = <B(X,Y), eta>,
/// so W = eps * A. It is the operator that appears in the tangent part of the
/// bitension field.
struct SurfaceSample {
  Eigen::VectorXd u;
  AmbientVector point;
  Eigen::MatrixXd metric;
  AmbientVector normal;
  double normal_sign = -1.0;  // <eta, eta>
  Eigen::MatrixXd sff;
  Eigen::MatrixXd shape;
  Eigen::MatrixXd weingarten;
  double mean_f = 0.0;
  double normsq_A = 0.0;  // trace(A A), >= 0
  double normsq_B = 0.0;  // eps * normsq_A
  double quadric_residual = 0.0;  // zero for flat space forms
};

/// Full pointwise pipeline. Throws GeometryError if the sample is not space-like.
SurfaceSample sample_surface(const ChartJet& jet, const Eigen::VectorXd& u, const SpaceForm& sf);

/// Tensor-product lattice with uniform spacing per axis. Point index is
/// row-major with the last axis fastest.
class Grid {
 public:
  Grid(int dim, int points_per_axis, double lower, double upper);

  int dimension() const { return dim_; }
  int points_per_axis() const { return n_; }
  std::size_t size() const { return size_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double spacing() const { return h_; }

  std::vector<int> multi_index(std::size_t flat) const;
  std::size_t flat_index(const std::vector<int>& idx) const;
  Eigen::VectorXd point(std::size_t flat) const;
  /// Flat index of the neighbour offset by `step` along `axis`.
  std::size_t neighbour(std::size_t flat, int axis, int step) const;
  bool is_interior(std::size_t flat) const;

 private:
  int dim_;
  int n_;
  double lower_;
  double upper_;
  double h_;
  std::size_t size_;
  std::vector<std::size_t> strides_;
};

/// Per-point values on a grid together with the metric at each point.
struct ScalarField {
  Grid grid;
  std::vector<double> values;
  std::vector<Eigen::MatrixXd> metrics;
};

/// Delta phi = -(1/sqrt(det g)) d_i (sqrt(det g) g^{ij} d_j phi), the positive
/// ("minus trace") Laplace-Beltrami operator, by second-order central
/// differences. Boundary points carry NaN. Throws StencilError for grids with
/// fewer than 3 points per axis.
ScalarField laplace_beltrami(const ScalarField& field);

/// Coordinate partials d_i phi at an interior point by central differences.
Eigen::VectorXd coordinate_gradient(const ScalarField& field, std::size_t flat);

}  // namespace biharm
