#include "biharm/biharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biharm/parallel.hpp"

namespace biharm {

Tolerances Tolerances::defaults_for(const Family& family) {
  Tolerances t;
  t.residual = family.analytic() ? kAnalyticResidualTol : kChartResidualTol;
  return t;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::proper_biharmonic: return "proper_biharmonic";
    case Classification::maximal: return "maximal";
    case Classification::harmonic_only: return "harmonic_only";
    case Classification::not_biharmonic: return "not_biharmonic";
  }
  return "not_biharmonic";
}

std::optional<Classification> parse_classification(std::string_view text) {
  for (auto c : {Classification::proper_biharmonic, Classification::maximal, Classification::harmonic_only,
                 Classification::not_biharmonic}) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

ScalarField SurfaceGrid::mean_curvature_field() const {
  ScalarField field{grid, {}, {}};
  field.values.reserve(samples.size());
  field.metrics.reserve(samples.size());
  for (const auto& s : samples) {
    field.values.push_back(s.mean_f);
    field.metrics.push_back(s.metric);
  }
  return field;
}

SurfaceGrid sample_grid(const Family& family, const GridSpec& spec) {
  Grid grid(family.dimension(), spec.points_per_axis, spec.lower, spec.upper);
  std::vector<SurfaceSample> samples(grid.size());
  parallel_for(grid.size(), [&](std::size_t p) {
    const Eigen::VectorXd u = grid.point(p);
    samples[p] = sample_surface(family.jet(u), u, family.space());
  });
  return SurfaceGrid{std::move(grid), std::move(samples)};
}

Eigen::VectorXd tangent_bitension(const SurfaceSample& s, const Eigen::VectorXd& df) {
  const auto m = static_cast<double>(s.metric.rows());
  const Eigen::VectorXd grad = s.metric.llt().solve(df);
  return 2.0 * s.weingarten * grad + m * s.normal_sign * s.mean_f * grad;
}

Eigen::VectorXd reduced_tangent(const SurfaceSample& s, const Eigen::VectorXd& df) {
  const Eigen::VectorXd grad = s.metric.llt().solve(df);
  return s.weingarten * grad - s.mean_f * grad;
}

namespace {

double g_norm(const Eigen::MatrixXd& g, const Eigen::VectorXd& v) { return std::sqrt(std::max(0.0, v.dot(g * v))); }

void check_field(const SurfaceGrid& samples, const ScalarField& f_field) {
  if (f_field.values.size() != samples.samples.size()) {
    throw ContractError("residual: mean-curvature field does not match the sample grid");
  }
  if (samples.grid.points_per_axis() < 3) throw StencilError("residual: need at least 3 points per axis");
}

}  // namespace

double normal_residual(const SurfaceGrid& samples, const ScalarField& f_field, double c, int m) {
  check_field(samples, f_field);
  const ScalarField lap = laplace_beltrami(f_field);
  double sup = 0.0;
  for (std::size_t p = 0; p < samples.samples.size(); ++p) {
    if (!samples.grid.is_interior(p)) continue;
    const SurfaceSample& s = samples.samples[p];
    const double f = f_field.values[p];
    sup = std::max(sup, std::abs(lap.values[p] - (m * c - s.normsq_B) * f));
  }
  return sup;
}

double tangent_residual(const SurfaceGrid& samples, const ScalarField& f_field) {
  check_field(samples, f_field);
  double sup = 0.0;
  for (std::size_t p = 0; p < samples.samples.size(); ++p) {
    if (!samples.grid.is_interior(p)) continue;
    const SurfaceSample& s = samples.samples[p];
    sup = std::max(sup, g_norm(s.metric, tangent_bitension(s, coordinate_gradient(f_field, p))));
  }
  return sup;
}

ReducedResiduals reduced_residuals(const SurfaceGrid& samples, const ScalarField& f_field, double c) {
  check_field(samples, f_field);
  if (samples.grid.dimension() != 2) throw ContractError("reduced_residuals: surfaces only (m = 2)");
  const ScalarField lap = laplace_beltrami(f_field);
  ReducedResiduals out;
  for (std::size_t p = 0; p < samples.samples.size(); ++p) {
    if (!samples.grid.is_interior(p)) continue;
    const SurfaceSample& s = samples.samples[p];
    if (s.normal_sign > 0.0) throw ContractError("reduced_residuals: needs a time-like normal");
    const double f = f_field.values[p];
    out.normal = std::max(out.normal, std::abs(lap.values[p] - (s.normsq_A + 2.0 * c) * f));
    out.tangent = std::max(out.tangent, g_norm(s.metric, reduced_tangent(s, coordinate_gradient(f_field, p))));
  }
  return out;
}

ResidualReport verify(const Family& family, const GridSpec& grid) {
  return verify(family, grid, Tolerances::defaults_for(family));
}

ResidualReport verify(const Family& family, const GridSpec& grid, const Tolerances& tol) {
  if (!(tol.residual > 0.0) || !(tol.f_tol > 0.0)) throw ContractError("verify: tolerances must be positive");
  const SurfaceGrid samples = sample_grid(family, grid);
  const ScalarField f = samples.mean_curvature_field();
  const int m = family.dimension();
  const double c = family.space().curvature();

  ResidualReport rep;
  rep.tolerances = tol;
  rep.grid = grid;
  rep.dimension = m;
  rep.curvature = c;
  rep.normal_sign = samples.samples.front().normal_sign;
  rep.normal_residual = normal_residual(samples, f, c, m);
  rep.tangent_residual = tangent_residual(samples, f);
  if (m == 2 && rep.normal_sign < 0.0) rep.reduced = reduced_residuals(samples, f, c);

  rep.min_abs_f = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < samples.samples.size(); ++p) {
    const SurfaceSample& s = samples.samples[p];
    rep.max_quadric_residual = std::max(rep.max_quadric_residual, std::abs(s.quadric_residual));
    if (!samples.grid.is_interior(p)) continue;
    rep.min_abs_f = std::min(rep.min_abs_f, std::abs(s.mean_f));
    rep.max_abs_f = std::max(rep.max_abs_f, std::abs(s.mean_f));
    rep.max_normsq_A = std::max(rep.max_normsq_A, s.normsq_A);
    rep.max_abs_normsq_B = std::max(rep.max_abs_normsq_B, std::abs(s.normsq_B));
  }

  const bool biharmonic = rep.normal_residual <= tol.residual && rep.tangent_residual <= tol.residual;
  if (!biharmonic) {
    rep.classification = Classification::not_biharmonic;
  } else if (rep.min_abs_f > tol.f_tol) {
    rep.classification = Classification::proper_biharmonic;
  } else if (rep.max_abs_f <= tol.f_tol) {
    rep.classification = Classification::maximal;
  } else {
    rep.classification = Classification::harmonic_only;
  }
  return rep;
}

// ---------------------------------------------------------------- CMC reduction

std::string_view to_string(CmcVerdict v) {
  return v == CmcVerdict::proper_condition ? "proper_condition" : "maximal_forced";
}

CmcVerdict cmc_dichotomy(double normsq_B, int m, double c, double tol) {
  return std::abs(normsq_B - m * c) <= tol ? CmcVerdict::proper_condition : CmcVerdict::maximal_forced;
}

namespace {

// Exact square root of a non-negative rational, if it is a rational square.
std::optional<Rational> exact_sqrt(const Rational& q) {
  using boost::multiprecision::cpp_int;
  if (q < 0) return std::nullopt;
  const cpp_int num = boost::multiprecision::numerator(q);
  const cpp_int den = boost::multiprecision::denominator(q);
  const cpp_int rn = boost::multiprecision::sqrt(num);
  const cpp_int rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

}  // namespace

CliffordQuadratic clifford_quadratic(int m, int n, const Rational& c, double f_tol) {
  if (m < 1 || n < 1) throw ContractError("clifford_quadratic: m, n must be >= 1");
  CliffordQuadratic out;
  out.m = m;
  out.n = n;
  out.c = c;
  out.a = m;
  out.b = Rational(m + n) * c;
  out.c0 = n;
  const Rational disc = out.b * out.b - 4 * out.a * out.c0;
  if (disc < 0) return out;

  std::vector<QuadraticRoot> roots;
  if (auto root = exact_sqrt(disc)) {
    for (int sign : {-1, 1}) {
      const Rational t = (-out.b + sign * *root) / (2 * out.a);
      QuadraticRoot q;
      q.exact = t;
      q.t = static_cast<double>(t);
      roots.push_back(q);
    }
  } else {
    const double a = static_cast<double>(out.a);
    const double b = static_cast<double>(out.b);
    const double sq = std::sqrt(static_cast<double>(disc));
    for (int sign : {-1, 1}) {
      QuadraticRoot q;
      q.t = (-b + sign * sq) / (2.0 * a);
      roots.push_back(q);
    }
  }

  const double cd = static_cast<double>(c);
  for (auto& q : roots) {
    if (!(q.t > 0.0) || !(cd < 0.0)) continue;
    const double big_r = 1.0 / std::sqrt(-cd);
    q.r = big_r / std::sqrt(1.0 + q.t);
    const Family fam = clifford_product(m, n, q.r, SpaceForm::pseudo_hyperbolic(m + n + 1, 1, big_r));
    const Eigen::VectorXd u0 = fam.box_center();
    q.mean_f = sample_surface(fam.jet(u0), u0, fam.space()).mean_f;
    q.maximal = std::abs(q.mean_f) <= f_tol;
    out.roots.push_back(q);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
  return out;
}

// ---------------------------------------------------------------- scans

std::size_t ScanResult::proper_root_count() const {
  return static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [](const ScanRoot& r) {
    return r.report.classification == Classification::proper_biharmonic;
  }));
}

double cmc_objective(const Family& family) {
  const Eigen::VectorXd u0 = family.box_center();
  const SurfaceSample s = sample_surface(family.jet(u0), u0, family.space());
  return s.normsq_B - family.dimension() * family.space().curvature();
}

ScanResult scan_family(const FamilyMaker& make, std::string param_name, double lower, double upper,
                       const ScanOptions& options) {
  if (!(lower < upper)) throw ContractError("scan_family: need lower < upper");
  if (options.samples < 2) throw ContractError("scan_family: need at least 2 samples");

  ScanResult out;
  out.param_name = std::move(param_name);
  out.lower = lower;
  out.upper = upper;
  const auto count = static_cast<std::size_t>(options.samples);
  out.values.resize(count);
  out.objectives.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.values[i] = i + 1 == count ? upper : lower + (upper - lower) * static_cast<double>(i) / (count - 1);
  }
  parallel_for(count, [&](std::size_t i) { out.objectives[i] = cmc_objective(make(out.values[i])); });

  auto objective = [&](double p) { return cmc_objective(make(p)); };

  std::vector<std::pair<double, double>> found;  // (param, objective)
  for (std::size_t i = 0; i < count; ++i) {
    const double fi = out.objectives[i];
    if (fi == 0.0) {
      found.emplace_back(out.values[i], 0.0);
      continue;
    }
    if (i + 1 == count) break;
    const double fj = out.objectives[i + 1];
    if (fj == 0.0 || (fi < 0.0) == (fj < 0.0)) continue;
    double lo = out.values[i], hi = out.values[i + 1], flo = fi;
    double mid = 0.5 * (lo + hi), fmid = objective(mid);
    for (int it = 0; it < options.max_bisections; ++it) {
      if (fmid == 0.0) break;
      if ((fmid < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
      }
      const double next = 0.5 * (lo + hi);
      if (next <= lo || next >= hi) break;
      mid = next;
      fmid = objective(mid);
    }
    found.emplace_back(mid, fmid);
  }

  out.roots.resize(found.size());
  for (std::size_t k = 0; k < found.size(); ++k) {
    const Family fam = make(found[k].first);
    ScanRoot& root = out.roots[k];
    root.param = found[k].first;
    root.objective = found[k].second;
    root.converged = std::abs(root.objective) <= options.root_tol;
    root.report = verify(fam, options.grid, options.tolerances.value_or(Tolerances::defaults_for(fam)));
  }
  return out;
}

}  // namespace biharm
