#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biharm/rational_poly.hpp"

namespace biharm::profile {

// Reduced system of a non-CMC biharmonic space-like surface in E^3_1(c), with
// f = f(u) along the arc parameter u of the grad f direction.

enum class Branch {
  codazzi,  // 4 f f'' = 3 f'^2 - 40 f^4 - 8 c f^2
  gauss,    // f'' = -28 f^3 - (10c/3) f, the u-derivative of f'^2 = -14 f^4 - (10c/3) f^2
};

std::string_view to_string(Branch b);
std::optional<Branch> parse_branch(std::string_view text);

struct ProfileState {
  double u = 0.0;
  double f = 0.0;
  double fp = 0.0;
  Branch branch = Branch::codazzi;
  double C = 0.0;  // codazzi first-integral constant at this state
};

struct FrameData {
  double f = 0.0;
  double fp = 0.0;
  double omega12_over_omega2 = 0.0;  // -3 f' / (4 f)
  double K = 0.0;                    // c + 3 f^2
};

FrameData frame_data(double f, double fp, double c);

/// 3 f'^2 - 4 f f'' - 40 f^4 - 8 c f^2. Throws DomainError for f <= 0.
double codazzi_ode_residual(double f, double fp, double fpp, double c);

/// C = (f'^2 + 8 f^4 + 8 c f^2) f^{-3/2}, constant along codazzi solutions.
double codazzi_first_integral_C(double f, double fp, double c);

/// 4 f f'' - 7 f'^2 - 16 f^4 - (16c/3) f^2.
double gauss_ode_residual(double f, double fp, double fpp, double c);

/// f'^2 + 14 f^4 + (10c/3) f^2, zero on the gauss branch curve.
double gauss_first_integral_residual(double f, double fp, double c);

/// f'' prescribed by the branch.
double branch_fpp(Branch branch, double f, double fp, double c);

inline constexpr double kMinProfile = 1e-6;

struct Trajectory {
  Branch branch = Branch::codazzi;
  double c = 0.0;
  double step = 0.0;
  std::vector<ProfileState> states;
  bool terminated_early = false;  // f fell below kMinProfile
};

/// Classic fixed-step RK4 on (f, f'). Stops early, without error, when f drops
/// below kMinProfile.
Trajectory integrate_branch(Branch branch, double f0, double fp0, double c, double u0, double u1, double step);

struct SffProfile {
  double b11 = 0.0, b12 = 0.0, b22 = 0.0;
  double normsq_A = 0.0;
};

/// Coefficients of B against eta in the frame X1 = grad f / |grad f|.
SffProfile sff_profile(double f);

// ---------------------------------------------------------------- exact identities

/// z y_z - 3 y + 40 z^8 + 8 c z^4 with y = -8 z^8 - 8 c z^4 + C z^3 in the
/// variables (z, c, C), z^2 = f. The zero polynomial iff the codazzi constant C
/// is a first integral of the codazzi ODE.
Poly codazzi_first_integral_identity();

/// f'^2 obtained by eliminating f f'' between the codazzi and gauss ODEs, as a
/// polynomial in (f, c).
Poly gauss_curve_by_elimination();

/// Codazzi residual evaluated on the gauss branch (f'^2 and f'' taken from the
/// gauss curve), as a polynomial in (f, c).
Poly incompatibility_polynomial();

struct Certificate {
  double c = 0.0;
  Rational fsq_over_c;           // forced f^2 = fsq_over_c * c
  double forced_fsq = 0.0;
  bool admissible = false;       // forced f^2 > 0
  bool symbolic_identity_ok = false;
  std::string polynomial;        // printed incompatibility polynomial
  // Numeric corroboration along a non-constant gauss trajectory (c < 0 only;
  // for c >= 0 the branch has no real non-trivial states).
  bool branch_empty = true;
  std::optional<double> numeric_C_drift;
  std::optional<double> gauss_drift;
  double witness_f0 = 0.0;
  double witness_fp0 = 0.0;
};

inline constexpr double kCertificateDriftThreshold = 1e-3;

/// Symbolic elimination of the two branches plus the numeric C-drift witness.
Certificate incompatibility_certificate(double c, double step = 1e-4);

struct ConstantFSurface {
  std::optional<double> lambda1, lambda2;  // B(X_i, X_i) = lambda_i eta
  std::string label;
  bool proper = false;
};

/// Constant-f biharmonic surfaces: |A|^2 = -2c with the umbilic and flat Codazzi
/// cases, Gauss K = c - det A. For c >= 0 only the maximal case survives.
std::vector<ConstantFSurface> classify_constant_f(double c);

}  // namespace biharm::profile
