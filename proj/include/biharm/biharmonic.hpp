#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "biharm/geometry.hpp"
#include "biharm/immersion.hpp"
#include "biharm/rational_poly.hpp"

namespace biharm {

inline constexpr double kAnalyticResidualTol = 1e-7;
inline constexpr double kChartResidualTol = 1e-4;
inline constexpr double kMeanCurvatureTol = 1e-6;
inline constexpr double kRootTol = 1e-12;

struct Tolerances {
  double residual = kAnalyticResidualTol;
  double f_tol = kMeanCurvatureTol;

  /// 1e-7 for closed-form families, 1e-4 for chart-file families.
  static Tolerances defaults_for(const Family& family);
};

/// proper_biharmonic: both residuals pass and |f| > f_tol at every interior point.
/// maximal:           both residuals pass and |f| <= f_tol everywhere (harmonic).
/// harmonic_only:     both residuals pass but f vanishes on part of the grid only.
/// not_biharmonic:    a residual exceeds its tolerance.
enum class Classification { proper_biharmonic, maximal, harmonic_only, not_biharmonic };

std::string_view to_string(Classification c);
std::optional<Classification> parse_classification(std::string_view text);

struct GridSpec {
  int points_per_axis = 9;
  double lower = -1.0;
  double upper = 1.0;
};

/// Surface samples on a full tensor grid over the family's parameters.
struct SurfaceGrid {
  Grid grid;
  std::vector<SurfaceSample> samples;

  /// f as a scalar field carrying the induced metric.
  ScalarField mean_curvature_field() const;
};

SurfaceGrid sample_grid(const Family& family, const GridSpec& spec);

/// Pointwise tangent part of the bitension field of H = f eta:
///   2 W(grad f) + (m/2) grad |H|^2,  |H|^2 = eps f^2,
/// with W the Weingarten operator of eta and grad f = g^{-1} df.
Eigen::VectorXd tangent_bitension(const SurfaceSample& s, const Eigen::VectorXd& df);

/// Reduced surface form (m = 2, time-like normal): W(grad f) - f grad f.
/// Equals tangent_bitension / 2 in that setting.
Eigen::VectorXd reduced_tangent(const SurfaceSample& s, const Eigen::VectorXd& df);

/// Ratio tangent_bitension / reduced_tangent used to compare the two forms.
inline constexpr double kTangentConventionFactor = 2.0;

/// sup over interior points of |Delta f - (m c - |B|^2) f|. For a space-like
/// hypersurface with time-like normal this is |Delta f - (|A|^2 + m c) f|.
double normal_residual(const SurfaceGrid& samples, const ScalarField& f_field, double c, int m);

/// sup over interior points of the g-norm of tangent_bitension.
double tangent_residual(const SurfaceGrid& samples, const ScalarField& f_field);

struct ReducedResiduals {
  double normal = 0.0;   // sup |Delta f - (|A|^2 + 2c) f|
  double tangent = 0.0;  // sup g-norm of W(grad f) - f grad f
};

/// The m = 2 reduced pair. Throws ContractError unless m = 2 and the normal is time-like.
ReducedResiduals reduced_residuals(const SurfaceGrid& samples, const ScalarField& f_field, double c);

struct ResidualReport {
  double normal_residual = 0.0;
  double tangent_residual = 0.0;
  std::optional<ReducedResiduals> reduced;
  Classification classification = Classification::not_biharmonic;
  Tolerances tolerances;
  GridSpec grid;
  int dimension = 0;
  double curvature = 0.0;
  double normal_sign = -1.0;
  double min_abs_f = 0.0;
  double max_abs_f = 0.0;
  double max_normsq_A = 0.0;
  double max_abs_normsq_B = 0.0;
  double max_quadric_residual = 0.0;
};

ResidualReport verify(const Family& family, const GridSpec& grid, const Tolerances& tol);
ResidualReport verify(const Family& family, const GridSpec& grid = {});

// ---------------------------------------------------------------- CMC reduction

enum class CmcVerdict { maximal_forced, proper_condition };

std::string_view to_string(CmcVerdict v);

/// Under constant f the normal equation reads (m c - |B|^2) f = 0: a proper
/// solution needs |B|^2 = m c, which a time-like normal (|B|^2 < 0) only allows
/// for c < 0.
CmcVerdict cmc_dichotomy(double normsq_B, int m, double c, double tol = 1e-9);

struct QuadraticRoot {
  std::optional<Rational> exact;  // set when the discriminant is a rational square
  double t = 0.0;
  double r = 0.0;       // first-factor radius realising t
  double mean_f = 0.0;  // measured on the product surface
  bool maximal = false; // f = 0 there
};

struct CliffordQuadratic {
  int m = 0;
  int n = 0;
  Rational c;
  // m t^2 + (m+n) c t + n = 0, i.e. |B|^2 = (m+n) c with |B|^2 = -(m t + n / t), t = s^2 / r^2.
  Rational a, b, c0;
  std::vector<QuadraticRoot> roots;  // positive real roots, ascending
};

/// Solves the CMC condition of H^m(r) x H^n(s) in t = s^2/r^2 and labels each
/// root by evaluating f on the product surface at that t (maximal iff |f| <= f_tol).
CliffordQuadratic clifford_quadratic(int m, int n, const Rational& c = Rational(-1),
                                     double f_tol = kMeanCurvatureTol);

// ---------------------------------------------------------------- scans

struct ScanOptions {
  int samples = 33;
  double root_tol = kRootTol;
  int max_bisections = 200;
  GridSpec grid;
  std::optional<Tolerances> tolerances;  // defaults per family when unset
};

struct ScanRoot {
  double param = 0.0;
  double objective = 0.0;
  bool converged = false;  // |objective| <= root_tol
  ResidualReport report;
};

struct ScanResult {
  std::string param_name;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> values;
  std::vector<double> objectives;
  std::vector<ScanRoot> roots;

  std::size_t proper_root_count() const;
};

using FamilyMaker = std::function<Family(double)>;

/// CMC objective |B|^2 - m c evaluated at the chart-box centre.
double cmc_objective(const Family& family);

/// Sweeps [lower, upper], brackets sign changes of the CMC objective, refines
/// each by bisection and classifies every root with a full residual check.
ScanResult scan_family(const FamilyMaker& make, std::string param_name, double lower, double upper,
                       const ScanOptions& options = {});

}  // namespace biharm
