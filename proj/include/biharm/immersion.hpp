#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "biharm/ambient.hpp"
#include "biharm/chart_jet.hpp"
#include "biharm/chartlang.hpp"

namespace biharm {

/// Axis-aligned chart box [lower, upper]^m.
struct ChartBox {
  double lower = -1.0;
  double upper = 1.0;
};

/// A parametrized immersion into a space form, producing jets on demand.
class Family {
 public:
  using Evaluator = std::function<ChartJet(const Eigen::VectorXd&)>;
  using Params = std::vector<std::pair<std::string, double>>;

  Family(std::string name, int dim, SpaceForm space, Params params, Evaluator eval, bool analytic,
         ChartBox box = {});

  const std::string& name() const { return name_; }
  int dimension() const { return dim_; }
  const SpaceForm& space() const { return space_; }
  const Params& params() const { return params_; }
  const ChartBox& box() const { return box_; }
  /// True for closed-form families; false for families backed by a chart file.
  bool analytic() const { return analytic_; }

  Family with_box(ChartBox box) const;

  ChartJet jet(const Eigen::VectorXd& u) const;
  Eigen::VectorXd box_center() const { return Eigen::VectorXd::Constant(dim_, 0.5 * (box_.lower + box_.upper)); }

 private:
  std::string name_;
  int dim_;
  SpaceForm space_;
  Params params_;
  Evaluator eval_;
  bool analytic_;
  ChartBox box_;
};

/// x_{n+2} = s slice of H^{n+1}_1(R): the hyperbolic space H^n(sqrt(R^2 - s^2)),
/// charted as rho * (u, sqrt(1 + |u|^2), .) with the last coordinate fixed at s.
///
/// The same slice is defined in the other supported ambient forms:
///   S^{n+1}_1(R)  (de Sitter)   x = (sqrt(R^2 + s^2) sigma(u), s), any real s
///   S^{n+1}(R)    (round sphere) x = (sqrt(R^2 - s^2) sigma(u), s), |s| < R
///   R^{n+1}_1     (Minkowski)    hyperboloid of radius s > 0
/// where sigma is the inverse stereographic chart of the unit sphere.
Family hyperbolic_slice(int n, double s);
Family hyperbolic_slice(int n, double s, const SpaceForm& space);

/// H^m(r) x H^n(s), r^2 + s^2 = R^2, in H^{m+n+1}_1(R). Ambient coordinates are
/// ordered (u_space, v_space, u_time, v_time).
///
/// Other supported ambient forms:
///   S^{m+n+1}_1(R)  S^m(r) x H^n(s), r^2 - s^2 = R^2, needs r > R
///   R^{m+n+1}_1     R^m x H^n(r), r > 0
Family clifford_product(int m, int n, double r);
Family clifford_product(int m, int n, double r, const SpaceForm& space);

/// Family whose jets come from a parsed chart program.
Family from_chart(chartlang::ChartProgram prog);

namespace charts {

/// rho * (u, sqrt(1 + |u|^2)): hyperbolic space of radius rho as a graph over
/// its spatial coordinates. Returns an (m+1)-component jet.
ChartJet hyperbolic_graph(const Eigen::VectorXd& u, double rho);

/// rho * (2u, 1 - |u|^2) / (1 + |u|^2): inverse stereographic projection onto
/// the round sphere of radius rho. Returns an (m+1)-component jet.
ChartJet stereographic_sphere(const Eigen::VectorXd& u, double rho);

}  // namespace charts

}  // namespace biharm
