#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "biharm/error.hpp"

namespace biharm {

/// Signature of a flat pseudo-Euclidean space R^{p+q}_q. Coordinates carry +
/// on the first `positive_count` slots and - on the last `negative_count`.
struct Signature {
  int positive_count = 0;
  int negative_count = 0;

  Signature() = default;
  Signature(int positive, int negative);

  int dimension() const { return positive_count + negative_count; }
  /// Diagonal of the metric: +1 repeated p times, then -1 repeated q times.
  Eigen::VectorXd diagonal() const;

  friend bool operator==(const Signature&, const Signature&) = default;
};

using AmbientVector = Eigen::VectorXd;

/// <v, w> = sum_{i<p} v_i w_i - sum_{i>=p} v_i w_i.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner_product(const Eigen::MatrixBase<DerivedA>& v,
                                        const Eigen::MatrixBase<DerivedB>& w,
                                        const Signature& sig) {
  if (v.size() != sig.dimension() || w.size() != sig.dimension()) {
    throw ContractError("inner_product: vector length does not match signature dimension " +
                        std::to_string(sig.dimension()));
  }
  const auto p = sig.positive_count;
  const auto q = sig.negative_count;
  return v.head(p).dot(w.head(p)) - v.tail(q).dot(w.tail(q));
}

/// Gram matrix J^T G J of the columns of `frame` under the ambient metric.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> gram_matrix(
    const Eigen::MatrixBase<Derived>& frame, const Signature& sig) {
  if (frame.rows() != sig.dimension()) {
    throw ContractError("gram_matrix: frame row count does not match signature dimension");
  }
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d = sig.diagonal().template cast<Scalar>();
  return frame.transpose() * d.asDiagonal() * frame;
}

enum class CausalCharacter { space_like, time_like, null };

std::string_view to_string(CausalCharacter c);

inline constexpr double kDefaultCausalTolerance = 1e-9;

CausalCharacter causal_character(const AmbientVector& v, const Signature& sig,
                                 double tol = kDefaultCausalTolerance);

/// Hyperquadric space forms and the flat space itself.
///
///   pseudo_sphere      S^d_nu(r) = {<x,x> =  r^2} in R^{d+1}_nu,     c = +1/r^2
///   pseudo_hyperbolic  H^d_nu(r) = {<x,x> = -r^2} in R^{d+1}_{nu+1}, c = -1/r^2
///   flat               R^d_nu,                                       c = 0
class SpaceForm {
 public:
  enum class Kind { pseudo_sphere, pseudo_hyperbolic, flat };

  static SpaceForm pseudo_sphere(int dim, int index, double radius);
  static SpaceForm pseudo_hyperbolic(int dim, int index, double radius);
  static SpaceForm flat(int dim, int index);

  /// Parses the compact names "H3_1(1)", "S3_1(1)", "R3_1", "S3(1)", "H3(1)":
  /// kind dim[_index](radius), radius omitted for the flat kind.
  static SpaceForm parse(std::string_view text);

  Kind kind() const { return kind_; }
  int dimension() const { return dim_; }
  int index() const { return index_; }
  /// Zero for flat space forms.
  double radius() const { return radius_; }
  double curvature() const;
  bool is_flat() const { return kind_ == Kind::flat; }
  /// +1 for pseudo_sphere, -1 for pseudo_hyperbolic; 0 for flat.
  int quadric_sign() const;
  Signature ambient_signature() const;
  int ambient_dimension() const { return ambient_signature().dimension(); }

  std::string name() const;

  friend bool operator==(const SpaceForm&, const SpaceForm&) = default;

 private:
  SpaceForm(Kind kind, int dim, int index, double radius);

  Kind kind_ = Kind::flat;
  int dim_ = 1;
  int index_ = 0;
  double radius_ = 0.0;
};

/// <x,x> - eps r^2; zero iff x lies on the hyperquadric.
double quadric_residual(const AmbientVector& x, const SpaceForm& sf);

}  // namespace biharm
