#include "biharm/profile_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biharm/error.hpp"
#include "biharm/format.hpp"

namespace biharm::profile {

std::string_view to_string(Branch b) { return b == Branch::codazzi ? "codazzi" : "gauss"; }

std::optional<Branch> parse_branch(std::string_view text) {
  if (text == "codazzi") return Branch::codazzi;
  if (text == "gauss") return Branch::gauss;
  return std::nullopt;
}

namespace {

void require_positive(double f, const char* where) {
  if (!(f > 0.0)) throw DomainError(std::string(where) + ": f must be > 0, got " + format_shortest(f));
}

}  // namespace

FrameData frame_data(double f, double fp, double c) {
  require_positive(f, "frame_data");
  return FrameData{f, fp, -3.0 * fp / (4.0 * f), c + 3.0 * f * f};
}

double codazzi_ode_residual(double f, double fp, double fpp, double c) {
  require_positive(f, "codazzi_ode_residual");
  const double f2 = f * f;
  return 3.0 * fp * fp - 4.0 * f * fpp - 40.0 * f2 * f2 - 8.0 * c * f2;
}

double codazzi_first_integral_C(double f, double fp, double c) {
  require_positive(f, "codazzi_first_integral_C");
  const double f2 = f * f;
  return (fp * fp + 8.0 * f2 * f2 + 8.0 * c * f2) / (f * std::sqrt(f));
}

double gauss_ode_residual(double f, double fp, double fpp, double c) {
  require_positive(f, "gauss_ode_residual");
  const double f2 = f * f;
  return 4.0 * f * fpp - 7.0 * fp * fp - 16.0 * f2 * f2 - (16.0 * c / 3.0) * f2;
}

double gauss_first_integral_residual(double f, double fp, double c) {
  require_positive(f, "gauss_first_integral_residual");
  const double f2 = f * f;
  return fp * fp + 14.0 * f2 * f2 + (10.0 * c / 3.0) * f2;
}

double branch_fpp(Branch branch, double f, double fp, double c) {
  require_positive(f, "branch_fpp");
  const double f2 = f * f;
  if (branch == Branch::codazzi) return (3.0 * fp * fp - 40.0 * f2 * f2 - 8.0 * c * f2) / (4.0 * f);
  return -28.0 * f2 * f - (10.0 * c / 3.0) * f;
}

Trajectory integrate_branch(Branch branch, double f0, double fp0, double c, double u0, double u1, double step) {
  if (!(step > 0.0)) throw ContractError("integrate_branch: step must be > 0");
  if (!(u1 > u0)) throw ContractError("integrate_branch: empty span");
  require_positive(f0, "integrate_branch");

  Trajectory traj;
  traj.branch = branch;
  traj.c = c;
  const auto steps = static_cast<long>(std::ceil((u1 - u0) / step - 1e-9));
  const double h = (u1 - u0) / static_cast<double>(steps);
  traj.step = h;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);

  auto push = [&](double u, double f, double fp) {
    traj.states.push_back(ProfileState{u, f, fp, branch, codazzi_first_integral_C(f, fp, c)});
  };
  auto rhs = [&](double f, double fp) {
    if (!(f > 0.0)) return std::pair{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    return std::pair{fp, branch_fpp(branch, f, fp, c)};
  };

  double f = f0, fp = fp0;
  push(u0, f, fp);
  for (long k = 1; k <= steps; ++k) {
    const auto [k1f, k1p] = rhs(f, fp);
    const auto [k2f, k2p] = rhs(f + 0.5 * h * k1f, fp + 0.5 * h * k1p);
    const auto [k3f, k3p] = rhs(f + 0.5 * h * k2f, fp + 0.5 * h * k2p);
    const auto [k4f, k4p] = rhs(f + h * k3f, fp + h * k3p);
    const double nf = f + h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
    const double nfp = fp + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    if (!(nf >= kMinProfile) || !std::isfinite(nfp)) {
      traj.terminated_early = true;
      break;
    }
    f = nf;
    fp = nfp;
    push(k == steps ? u1 : u0 + static_cast<double>(k) * h, f, fp);
  }
  return traj;
}

SffProfile sff_profile(double f) {
  SffProfile s{-f, 0.0, 3.0 * f, 0.0};
  s.normsq_A = s.b11 * s.b11 + 2.0 * s.b12 * s.b12 + s.b22 * s.b22;
  return s;
}

// ---------------------------------------------------------------- exact identities

namespace {

// Drops variable `which` (which must not occur) from a polynomial.
Poly drop_variable(const Poly& p, int which) {
  Poly out(p.variables() - 1);
  for (const auto& [e, coeff] : p.terms()) {
    if (e[static_cast<std::size_t>(which)] != 0) throw ContractError("drop_variable: variable still present");
    Poly::Exponents reduced = e;
    reduced.erase(reduced.begin() + which);
    out += Poly::monomial(out.variables(), coeff, reduced);
  }
  return out;
}

}  // namespace

Poly codazzi_first_integral_identity() {
  // Variables (z, c, C) with f = z^2, so f^{3/2} = z^3 and 2 f d/df = z d/dz.
  const Poly z = Poly::variable(3, 0);
  const Poly c = Poly::variable(3, 1);
  const Poly big_c = Poly::variable(3, 2);
  const Poly z3 = z * z * z;
  const Poly z4 = z3 * z;
  const Poly z8 = z4 * z4;
  const Poly y = Rational(-8) * z8 - Rational(8) * c * z4 + big_c * z3;
  // 4 f f'' = 2 f dy/df = z dy/dz
  return Rational(3) * y - z * y.derivative(0) - Rational(40) * z8 - Rational(8) * c * z4;
}

Poly gauss_curve_by_elimination() {
  // Variables (f, c, y), y = f'^2; the product 4 f f'' is eliminated.
  const Poly f = Poly::variable(3, 0);
  const Poly c = Poly::variable(3, 1);
  const Poly y = Poly::variable(3, 2);
  const Poly f2 = f * f;
  const Poly f4 = f2 * f2;
  const Poly four_f_fpp = Rational(3) * y - Rational(40) * f4 - Rational(8) * c * f2;  // codazzi
  const Poly gauss = four_f_fpp - Rational(7) * y - Rational(16) * f4 - Rational(16, 3) * c * f2;

  // gauss = alpha y + beta(f, c)
  const Rational alpha = gauss.coefficient({0, 0, 1});
  Poly beta(3);
  for (const auto& [e, coeff] : gauss.terms()) {
    if (e[2] == 0) beta += Poly::monomial(3, coeff, e);
    else if (e != Poly::Exponents{0, 0, 1}) throw ContractError("gauss elimination: not linear in f'^2");
  }
  if (alpha == 0) throw ContractError("gauss elimination: f'^2 cancels");
  return drop_variable(beta * Rational(-1 / alpha), 2);
}

Poly incompatibility_polynomial() {
  // Variables (f, c).
  const Poly y = gauss_curve_by_elimination();
  const Poly f = Poly::variable(2, 0);
  const Poly c = Poly::variable(2, 1);
  const Poly f2 = f * f;
  const Poly fpp = Rational(1, 2) * y.derivative(0);  // d(f'^2)/du = 2 f' f''
  return Rational(3) * y - Rational(4) * f * fpp - Rational(40) * f2 * f2 - Rational(8) * c * f2;
}

Certificate incompatibility_certificate(double c, double step) {
  Certificate cert;
  cert.c = c;

  const Poly p = incompatibility_polynomial();
  cert.polynomial = p.to_string({"f", "c"});
  const Rational quartic = p.coefficient({4, 0});
  const Rational mixed = p.coefficient({2, 1});
  bool shape_ok = quartic != 0 && p.terms().size() == (mixed == 0 ? 1u : 2u);
  cert.symbolic_identity_ok = shape_ok && codazzi_first_integral_identity().is_zero();
  if (shape_ok) {
    cert.fsq_over_c = -mixed / quartic;
    cert.forced_fsq = static_cast<double>(cert.fsq_over_c) * c;
  }
  cert.admissible = cert.forced_fsq > 0.0;

  // Gauss-branch states exist only where -14 f^4 - (10c/3) f^2 >= 0, i.e. f^2 <= -5c/21.
  if (c < 0.0) {
    cert.branch_empty = false;
    const double f_turn = std::sqrt(-5.0 * c / 21.0);
    cert.witness_f0 = 0.9 * f_turn;
    const double f2 = cert.witness_f0 * cert.witness_f0;
    cert.witness_fp0 = std::sqrt(-14.0 * f2 * f2 - (10.0 * c / 3.0) * f2);
    const Trajectory traj = integrate_branch(Branch::gauss, cert.witness_f0, cert.witness_fp0, c, 0.0, 1.0, step);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, drift = 0.0;
    for (const auto& s : traj.states) {
      lo = std::min(lo, s.C);
      hi = std::max(hi, s.C);
      drift = std::max(drift, std::abs(gauss_first_integral_residual(s.f, s.fp, c)));
    }
    cert.numeric_C_drift = hi - lo;
    cert.gauss_drift = drift;
  }
  return cert;
}

std::vector<ConstantFSurface> classify_constant_f(double c) {
  std::vector<ConstantFSurface> out;
  // With f constant and nonzero the normal equation forces |A|^2 = -2c.
  const double normsq = -2.0 * c;
  if (!(normsq > 0.0)) {
    out.push_back(ConstantFSurface{std::nullopt, std::nullopt, "maximal (f = 0)", false});
    return out;
  }

  // Umbilic case: lambda1 = lambda2, 2 lambda^2 = |A|^2.
  const double lam = std::sqrt(normsq / 2.0);
  // Intrinsic curvature c - lambda^2 = 2c: hyperbolic plane of radius 1/sqrt(-2c).
  const std::string umbilic = "H2(1/sqrt(" + format_shortest(-2.0 * c) + ")) umbilic, proper";
  for (double sgn : {1.0, -1.0}) out.push_back(ConstantFSurface{sgn * lam, sgn * lam, umbilic, true});

  // Flat case: K = c - lambda1 lambda2 = 0 together with lambda1^2 + lambda2^2 = |A|^2.
  const double product = c;
  const double sum = std::sqrt(std::max(0.0, normsq + 2.0 * product));
  const double diff = std::sqrt(std::max(0.0, normsq - 2.0 * product));
  const std::string flat = "flat (Clifford type), maximal, excluded";
  for (double sgn : {1.0, -1.0}) {
    const double l1 = 0.5 * (sum + sgn * diff);
    const double l2 = 0.5 * (sum - sgn * diff);
    const bool proper = std::abs(l1 + l2) > 1e-12;
    out.push_back(ConstantFSurface{l1, l2, flat, proper});
  }
  return out;
}

}  // namespace biharm::profile
