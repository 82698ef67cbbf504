#include "biharm/geometry.hpp"

#include <cmath>
#include <limits>

#include "biharm/error.hpp"

namespace biharm {

InducedMetric first_fundamental_form(const ChartJet& jet, const Signature& sig, double tol) {
  InducedMetric out;
  out.g = gram_matrix(jet.jacobian, sig);
  out.g = 0.5 * (out.g + out.g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.g, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  if (lambda.cwiseAbs().minCoeff() <= tol * scale) {
    throw GeometryError("degenerate induced metric (smallest |eigenvalue| " + std::to_string(lambda.cwiseAbs().minCoeff()) +
                        ")");
  }
  out.space_like = lambda.minCoeff() > 0.0;
  return out;
}

AmbientVector unit_normal(const ChartJet& jet, const SpaceForm& sf) {
  const Signature sig = sf.ambient_signature();
  const int N = jet.ambient_dimension();
  const int m = jet.params();
  if (N != sig.dimension()) {
    throw ContractError("unit_normal: jet has " + std::to_string(N) + " components, " + sf.name() + " needs " +
                        std::to_string(sig.dimension()));
  }
  const int constraints = sf.is_flat() ? m : m + 1;
  if (N - constraints != 1) {
    throw ContractError("unit_normal: a " + std::to_string(m) + "-dimensional chart is not a hypersurface of " +
                        sf.name());
  }
  const Eigen::VectorXd d = sig.diagonal();
  Eigen::MatrixXd c(constraints, N);
  for (int i = 0; i < m; ++i) c.row(i) = d.cwiseProduct(jet.jacobian.col(i)).transpose();
  if (!sf.is_flat()) c.row(m) = d.cwiseProduct(jet.point).transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  AmbientVector eta = svd.matrixV().col(N - 1);
  const double q = inner_product(eta, eta, sig);
  if (std::abs(q) < 1e-10) throw GeometryError("unit_normal: normal direction is null");
  const double expected = sf.index() == 0 ? 1.0 : -1.0;
  if (q * expected < 0.0) {
    throw GeometryError(std::string("unit_normal: not a space-like hypersurface (normal is ") +
                        (q > 0 ? "space-like" : "time-like") + ")");
  }
  eta /= std::sqrt(std::abs(q));

  constexpr double zero = 1e-12;
  double sign_ref = eta(N - 1);
  if (std::abs(sign_ref) <= zero) {
    sign_ref = 0.0;
    for (int a = 0; a < N; ++a) {
      if (std::abs(eta(a)) > zero) {
        sign_ref = eta(a);
        break;
      }
    }
  }
  if (sign_ref < 0.0) eta = -eta;
  return eta;
}

SecondFundamentalForm second_fundamental_form(const ChartJet& jet, const AmbientVector& eta, const Eigen::MatrixXd& g,
                                              const SpaceForm& sf) {
  const Signature sig = sf.ambient_signature();
  const int m = jet.params();
  if (g.rows() != m || g.cols() != m || eta.size() != sig.dimension() || jet.ambient_dimension() != sig.dimension()) {
    throw ContractError("second_fundamental_form: inconsistent dimensions");
  }
  const double eps = inner_product(eta, eta, sig);
  const double xx = sf.is_flat() ? 0.0 : inner_product(jet.point, jet.point, sig);

  SecondFundamentalForm out;
  out.b.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      AmbientVector v = jet.second_derivative(i, j);
      if (!sf.is_flat()) v -= (inner_product(v, jet.point, sig) / xx) * jet.point;
      out.b(i, j) = out.b(j, i) = inner_product(v, eta, sig) / eps;
    }
  }
  out.A = g.llt().solve(out.b);
  out.f = out.A.trace() / m;
  return out;
}

SurfaceSample sample_surface(const ChartJet& jet, const Eigen::VectorXd& u, const SpaceForm& sf) {
  const Signature sig = sf.ambient_signature();
  InducedMetric metric = first_fundamental_form(jet, sig);
  if (!metric.space_like) throw GeometryError("sample is not space-like (induced metric is indefinite)");

  SurfaceSample s;
  s.u = u;
  s.point = jet.point;
  s.metric = std::move(metric.g);
  s.normal = unit_normal(jet, sf);
  s.normal_sign = inner_product(s.normal, s.normal, sig) > 0.0 ? 1.0 : -1.0;
  SecondFundamentalForm sff = second_fundamental_form(jet, s.normal, s.metric, sf);
  s.sff = std::move(sff.b);
  s.shape = std::move(sff.A);
  s.mean_f = sff.f;
  s.weingarten = s.normal_sign * s.shape;
  s.normsq_A = (s.shape * s.shape).trace();
  s.normsq_B = s.normal_sign * s.normsq_A;
  s.quadric_residual = sf.is_flat() ? 0.0 : quadric_residual(jet.point, sf);
  return s;
}

// ---------------------------------------------------------------- grids

Grid::Grid(int dim, int points_per_axis, double lower, double upper)
    : dim_(dim), n_(points_per_axis), lower_(lower), upper_(upper) {
  if (dim < 1) throw ContractError("Grid: dimension must be >= 1");
  if (points_per_axis < 2) throw ContractError("Grid: need at least 2 points per axis");
  if (!(lower < upper)) throw ContractError("Grid: need lower < upper");
  h_ = (upper - lower) / (points_per_axis - 1);
  strides_.assign(static_cast<std::size_t>(dim), 1);
  size_ = 1;
  for (int a = dim - 1; a >= 0; --a) {
    strides_[static_cast<std::size_t>(a)] = size_;
    size_ *= static_cast<std::size_t>(points_per_axis);
  }
}

std::vector<int> Grid::multi_index(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a) {
    idx[a] = static_cast<int>(flat / strides_[a]);
    flat %= strides_[a];
  }
  return idx;
}

std::size_t Grid::flat_index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) flat += static_cast<std::size_t>(idx[a]) * strides_[a];
  return flat;
}

Eigen::VectorXd Grid::point(std::size_t flat) const {
  const std::vector<int> idx = multi_index(flat);
  Eigen::VectorXd u(dim_);
  for (int a = 0; a < dim_; ++a) {
    // Endpoints exact; interior points evenly spaced.
    u(a) = idx[a] == n_ - 1 ? upper_ : lower_ + idx[a] * h_;
  }
  return u;
}

std::size_t Grid::neighbour(std::size_t flat, int axis, int step) const {
  const auto delta = static_cast<std::ptrdiff_t>(strides_[axis]) * step;
  return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(flat) + delta);
}

bool Grid::is_interior(std::size_t flat) const {
  for (int i : multi_index(flat)) {
    if (i == 0 || i == n_ - 1) return false;
  }
  return true;
}

Eigen::VectorXd coordinate_gradient(const ScalarField& field, std::size_t flat) {
  const Grid& grid = field.grid;
  const double h = grid.spacing();
  Eigen::VectorXd grad(grid.dimension());
  for (int i = 0; i < grid.dimension(); ++i) {
    grad(i) = (field.values[grid.neighbour(flat, i, 1)] - field.values[grid.neighbour(flat, i, -1)]) / (2.0 * h);
  }
  return grad;
}

ScalarField laplace_beltrami(const ScalarField& field) {
  const Grid& grid = field.grid;
  if (grid.points_per_axis() < 3) throw StencilError("laplace_beltrami: need at least 3 points per axis");
  if (field.values.size() != grid.size() || field.metrics.size() != grid.size()) {
    throw ContractError("laplace_beltrami: field size does not match grid");
  }
  const int m = grid.dimension();
  const double h = grid.spacing();

  std::vector<double> sqrt_det(grid.size());
  std::vector<Eigen::MatrixXd> k(grid.size());  // sqrt(det g) g^{-1}
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Eigen::MatrixXd& g = field.metrics[p];
    sqrt_det[p] = std::sqrt(g.determinant());
    k[p] = sqrt_det[p] * g.inverse();
  }

  ScalarField out{grid, std::vector<double>(grid.size(), std::numeric_limits<double>::quiet_NaN()), field.metrics};
  const auto& phi = field.values;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (!grid.is_interior(p)) continue;
    const Eigen::VectorXd dphi = coordinate_gradient(field, p);
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
      const std::size_t ip = grid.neighbour(p, i, 1);
      const std::size_t im = grid.neighbour(p, i, -1);
      const Eigen::MatrixXd dk = (k[ip] - k[im]) / (2.0 * h);
      for (int j = 0; j < m; ++j) {
        double d2;
        if (i == j) {
          d2 = (phi[ip] - 2.0 * phi[p] + phi[im]) / (h * h);
        } else {
          d2 = (phi[grid.neighbour(ip, j, 1)] - phi[grid.neighbour(ip, j, -1)] - phi[grid.neighbour(im, j, 1)] +
                phi[grid.neighbour(im, j, -1)]) /
               (4.0 * h * h);
        }
        acc += k[p](i, j) * d2 + dk(i, j) * dphi(j);
      }
    }
    out.values[p] = -acc / sqrt_det[p];
  }
  return out;
}

}  // namespace biharm
