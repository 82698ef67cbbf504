#include "biharm/immersion.hpp"

#include <cmath>
#include <memory>
#include <numeric>

#include "biharm/format.hpp"

namespace biharm {

Family::Family(std::string name, int dim, SpaceForm space, Params params, Evaluator eval, bool analytic,
               ChartBox box)
    : name_(std::move(name)),
      dim_(dim),
      space_(std::move(space)),
      params_(std::move(params)),
      eval_(std::move(eval)),
      analytic_(analytic),
      box_(box) {
  if (dim_ < 1) throw ContractError("Family: intrinsic dimension must be >= 1");
  if (!(box_.lower < box_.upper)) throw ContractError("Family: chart box must have lower < upper");
}

Family Family::with_box(ChartBox box) const {
  Family copy = *this;
  if (!(box.lower < box.upper)) throw ContractError("Family: chart box must have lower < upper");
  copy.box_ = box;
  return copy;
}

ChartJet Family::jet(const Eigen::VectorXd& u) const {
  if (u.size() != dim_) {
    throw ContractError("Family '" + name_ + "': parameter point has " + std::to_string(u.size()) +
                        " components, expected " + std::to_string(dim_));
  }
  return eval_(u);
}

namespace charts {

ChartJet hyperbolic_graph(const Eigen::VectorXd& u, double rho) {
  const int m = static_cast<int>(u.size());
  ChartJet j(m + 1, m);
  const double w = std::sqrt(1.0 + u.squaredNorm());
  j.point.head(m) = rho * u;
  j.point(m) = rho * w;
  j.jacobian.topRows(m) = rho * Eigen::MatrixXd::Identity(m, m);
  j.jacobian.row(m) = (rho / w) * u.transpose();
  j.hessians[m] = rho * (Eigen::MatrixXd::Identity(m, m) / w - u * u.transpose() / (w * w * w));
  return j;
}

ChartJet stereographic_sphere(const Eigen::VectorXd& u, double rho) {
  const int m = static_cast<int>(u.size());
  ChartJet j(m + 1, m);
  const double q = 1.0 + u.squaredNorm();
  const double q2 = q * q;
  const double q3 = q2 * q;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  for (int i = 0; i < m; ++i) {
    j.point(i) = rho * 2.0 * u(i) / q;
    j.jacobian.row(i) = rho * (2.0 * id.row(i) / q - 4.0 * u(i) * u.transpose() / q2);
    Eigen::MatrixXd h = -4.0 * (id.col(i) * u.transpose() + u * id.row(i)) / q2 - 4.0 * u(i) * id / q2 +
                        16.0 * u(i) * u * u.transpose() / q3;
    j.hessians[i] = rho * h;
  }
  j.point(m) = rho * (2.0 / q - 1.0);
  j.jacobian.row(m) = -4.0 * rho * u.transpose() / q2;
  j.hessians[m] = rho * (-4.0 * id / q2 + 16.0 * u * u.transpose() / q3);
  return j;
}

}  // namespace charts

namespace {

// Copies `block` into `out`, block parameters at [param_offset, param_offset + block.params())
// and block component a at ambient coordinate coords[a].
void place(ChartJet& out, const ChartJet& block, int param_offset, const std::vector<int>& coords) {
  const int bm = block.params();
  for (int a = 0; a < block.ambient_dimension(); ++a) {
    const int c = coords[static_cast<std::size_t>(a)];
    out.point(c) = block.point(a);
    out.jacobian.block(c, param_offset, 1, bm) = block.jacobian.row(a);
    out.hessians[c].block(param_offset, param_offset, bm, bm) = block.hessians[a];
  }
}

std::vector<int> iota(int first, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), first);
  return v;
}

[[noreturn]] void unsupported(const std::string& family, const SpaceForm& space) {
  throw ContractError(family + ": unsupported ambient space form " + space.name() +
                      " (supported: H_1(R), S_1(R), S(R) for slices; H_1(R), S_1(R), R_1 for products)");
}

}  // namespace

Family hyperbolic_slice(int n, double s) { return hyperbolic_slice(n, s, SpaceForm::pseudo_hyperbolic(n + 1, 1, 1.0)); }

Family hyperbolic_slice(int n, double s, const SpaceForm& space) {
  if (n < 2) throw ContractError("hyperbolic_slice: n must be >= 2");
  if (space.dimension() != n + 1) {
    throw ContractError("hyperbolic_slice: space form " + space.name() + " must have dimension n+1 = " +
                        std::to_string(n + 1));
  }
  if (!std::isfinite(s)) throw ParameterError("hyperbolic_slice: s must be finite");
  const double big_r = space.radius();
  const int N = space.ambient_dimension();
  Family::Evaluator eval;
  switch (space.kind()) {
    case SpaceForm::Kind::pseudo_hyperbolic: {
      if (space.index() != 1) unsupported("hyperbolic_slice", space);
      if (!(std::abs(s) < big_r)) throw ParameterError("hyperbolic_slice: need |s| < " + format_shortest(big_r));
      const double rho = std::sqrt(big_r * big_r - s * s);
      eval = [n, N, rho, s](const Eigen::VectorXd& u) {
        ChartJet j(N, n);
        place(j, charts::hyperbolic_graph(u, rho), 0, iota(0, n + 1));
        j.point(n + 1) = s;
        return j;
      };
      break;
    }
    case SpaceForm::Kind::pseudo_sphere: {
      double rho = 0.0;
      if (space.index() == 1) {
        rho = std::sqrt(big_r * big_r + s * s);
      } else if (space.index() == 0) {
        if (!(std::abs(s) < big_r)) throw ParameterError("hyperbolic_slice: need |s| < " + format_shortest(big_r));
        rho = std::sqrt(big_r * big_r - s * s);
      } else {
        unsupported("hyperbolic_slice", space);
      }
      eval = [n, N, rho, s](const Eigen::VectorXd& u) {
        ChartJet j(N, n);
        place(j, charts::stereographic_sphere(u, rho), 0, iota(0, n + 1));
        j.point(n + 1) = s;
        return j;
      };
      break;
    }
    case SpaceForm::Kind::flat: {
      if (space.index() != 1) unsupported("hyperbolic_slice", space);
      if (!(s > 0.0)) throw ParameterError("hyperbolic_slice: Minkowski hyperboloid radius s must be > 0");
      eval = [n, N, s](const Eigen::VectorXd& u) {
        ChartJet j(N, n);
        place(j, charts::hyperbolic_graph(u, s), 0, iota(0, n + 1));
        return j;
      };
      break;
    }
  }
  return Family("hyperbolic_slice", n, space, {{"s", s}}, std::move(eval), true);
}

Family clifford_product(int m, int n, double r) {
  return clifford_product(m, n, r, SpaceForm::pseudo_hyperbolic(m + n + 1, 1, 1.0));
}

Family clifford_product(int m, int n, double r, const SpaceForm& space) {
  if (m < 1 || n < 1) throw ContractError("clifford_product: m and n must be >= 1");
  if (space.dimension() != m + n + 1) {
    throw ContractError("clifford_product: space form " + space.name() + " must have dimension m+n+1 = " +
                        std::to_string(m + n + 1));
  }
  if (space.index() != 1) unsupported("clifford_product", space);
  if (!std::isfinite(r)) throw ParameterError("clifford_product: r must be finite");
  const double big_r = space.radius();
  const int N = space.ambient_dimension();
  const int dim = m + n;
  Family::Evaluator eval;
  Family::Params params;
  switch (space.kind()) {
    case SpaceForm::Kind::pseudo_hyperbolic: {
      if (!(r > 0.0 && r < big_r)) throw ParameterError("clifford_product: need 0 < r < " + format_shortest(big_r));
      const double s = std::sqrt(big_r * big_r - r * r);
      std::vector<int> ucoords = iota(0, m);
      ucoords.push_back(m + n);
      std::vector<int> vcoords = iota(m, n);
      vcoords.push_back(m + n + 1);
      eval = [=](const Eigen::VectorXd& u) {
        ChartJet j(N, dim);
        place(j, charts::hyperbolic_graph(u.head(m), r), 0, ucoords);
        place(j, charts::hyperbolic_graph(u.tail(n), s), m, vcoords);
        return j;
      };
      params = {{"r", r}, {"s", s}};
      break;
    }
    case SpaceForm::Kind::pseudo_sphere: {
      if (!(r > big_r)) throw ParameterError("clifford_product: de Sitter product needs r > " + format_shortest(big_r));
      const double s = std::sqrt(r * r - big_r * big_r);
      std::vector<int> ucoords = iota(0, m + 1);
      std::vector<int> vcoords = iota(m + 1, n);
      vcoords.push_back(m + n + 1);
      eval = [=](const Eigen::VectorXd& u) {
        ChartJet j(N, dim);
        place(j, charts::stereographic_sphere(u.head(m), r), 0, ucoords);
        place(j, charts::hyperbolic_graph(u.tail(n), s), m, vcoords);
        return j;
      };
      params = {{"r", r}, {"s", s}};
      break;
    }
    case SpaceForm::Kind::flat: {
      if (!(r > 0.0)) throw ParameterError("clifford_product: Minkowski product needs r > 0");
      std::vector<int> vcoords = iota(m, n + 1);
      eval = [=](const Eigen::VectorXd& u) {
        ChartJet j(N, dim);
        j.point.head(m) = u.head(m);
        j.jacobian.block(0, 0, m, m).setIdentity();
        place(j, charts::hyperbolic_graph(u.tail(n), r), m, vcoords);
        return j;
      };
      params = {{"r", r}};
      break;
    }
  }
  Family f("clifford", dim, space, std::move(params), std::move(eval), true);
  return f;
}

Family from_chart(chartlang::ChartProgram prog) {
  auto shared = std::make_shared<const chartlang::ChartProgram>(std::move(prog));
  const int m = shared->param_count;
  const SpaceForm space = shared->space;
  return Family("chart", m, space, {}, [shared](const Eigen::VectorXd& u) { return chartlang::eval_jet2(*shared, u); },
                false);
}

}  // namespace biharm
