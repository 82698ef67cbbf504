#pragma once

#include <vector>

#include <Eigen/Dense>

#include "biharm/ambient.hpp"

namespace biharm {

/// Value and first/second partial derivatives of an immersion u -> x(u) at
/// one parameter point.
struct ChartJet {
  AmbientVector point;               // x(u), length N
  Eigen::MatrixXd jacobian;          // N x m, column i is d x / d u_i
  std::vector<Eigen::MatrixXd> hessians;  // N entries, each m x m: d^2 x^a / du_i du_j

  ChartJet() = default;
  ChartJet(int ambient_dim, int params)
      : point(AmbientVector::Zero(ambient_dim)),
        jacobian(Eigen::MatrixXd::Zero(ambient_dim, params)),
        hessians(ambient_dim, Eigen::MatrixXd::Zero(params, params)) {}

  int ambient_dimension() const { return static_cast<int>(point.size()); }
  int params() const { return static_cast<int>(jacobian.cols()); }

  /// Ambient vector d^2 x / du_i du_j.
  AmbientVector second_derivative(int i, int j) const {
    AmbientVector v(ambient_dimension());
    for (int a = 0; a < ambient_dimension(); ++a) v(a) = hessians[a](i, j);
    return v;
  }
};

}  // namespace biharm
