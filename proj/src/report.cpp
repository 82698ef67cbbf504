#include "biharm/report.hpp"

#include <cmath>

#include "biharm/format.hpp"

namespace biharm {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const GridSpec& grid) {
  return Json{{"points_per_axis", grid.points_per_axis}, {"box", Json::array({grid.lower, grid.upper})}};
}

Json to_json(const Tolerances& tol) { return Json{{"residual", tol.residual}, {"f_tol", tol.f_tol}}; }

Json conventions_json() {
  return Json{
      {"laplacian", "Delta = -(1/sqrt(det g)) d_i(sqrt(det g) g^ij d_j), minus the trace Laplacian"},
      {"second_fundamental_form", "b_ij = <eta,eta> <P d_ij x, eta>, H = f eta, f = trace(g^-1 b)/m"},
      {"weingarten", "W = <eta,eta> g^-1 b, <W X, Y> = <B(X,Y), eta>"},
      {"normal_equation", "Delta f - (m c - |B|^2) f, |B|^2 = <eta,eta> |A|^2"},
      {"tangent_equation", "2 W(grad f) + (m/2) grad(<eta,eta> f^2)"},
      {"reduced_tangent_equation", "W(grad f) - f grad f (m = 2, time-like normal)"},
      {"tangent_over_reduced_factor", kTangentConventionFactor},
      {"normal_orientation", "last ambient component positive, else first nonzero component positive"},
      {"residual_norm", "sup over interior grid points; vectors measured in the induced metric"},
  };
}

Json to_json(const ResidualReport& r) {
  Json reduced = nullptr;
  if (r.reduced) {
    reduced = Json{{"normal", r.reduced->normal}, {"tangent", r.reduced->tangent}};
  }
  return Json{
      {"normal_residual", r.normal_residual},
      {"tangent_residual", r.tangent_residual},
      {"reduced_residuals", reduced},
      {"classification", std::string(to_string(r.classification))},
      {"tolerances", to_json(r.tolerances)},
      {"grid", to_json(r.grid)},
      {"dimension", r.dimension},
      {"curvature", r.curvature},
      {"normal_sign", r.normal_sign},
      {"min_abs_f", number_or_null(r.min_abs_f)},
      {"max_abs_f", r.max_abs_f},
      {"max_normsq_A", r.max_normsq_A},
      {"max_abs_normsq_B", r.max_abs_normsq_B},
      {"max_quadric_residual", r.max_quadric_residual},
  };
}

Json to_json(const ScanResult& scan) {
  Json samples = Json::array();
  for (std::size_t i = 0; i < scan.values.size(); ++i) {
    samples.push_back(Json{{"value", scan.values[i]}, {"objective", number_or_null(scan.objectives[i])}});
  }
  Json roots = Json::array();
  for (const auto& root : scan.roots) {
    roots.push_back(Json{{"param", root.param},
                         {"objective", root.objective},
                         {"converged", root.converged},
                         {"classification", std::string(to_string(root.report.classification))},
                         {"report", to_json(root.report)}});
  }
  return Json{{"param", scan.param_name},
              {"range", Json::array({scan.lower, scan.upper})},
              {"objective", "|B|^2 - m c at the chart-box centre"},
              {"samples", samples},
              {"roots", roots},
              {"proper_root_count", scan.proper_root_count()}};
}

Json to_json(const CliffordQuadratic& q) {
  Json roots = Json::array();
  for (const auto& root : q.roots) {
    roots.push_back(Json{{"t", root.t},
                         {"t_exact", root.exact ? Json(to_string(*root.exact)) : Json(nullptr)},
                         {"r", root.r},
                         {"mean_f", root.mean_f},
                         {"label", root.maximal ? "maximal" : "biharmonic_proper"}});
  }
  return Json{{"m", q.m},
              {"n", q.n},
              {"c", to_string(q.c)},
              {"coefficients", Json::array({to_string(q.a), to_string(q.b), to_string(q.c0)})},
              {"roots", roots}};
}

Json to_json(const profile::Certificate& cert) {
  Json numeric = nullptr;
  if (cert.numeric_C_drift) {
    numeric = *cert.numeric_C_drift;
  }
  return Json{{"c", cert.c},
              {"forced_fsq", cert.forced_fsq},
              {"forced_fsq_over_c", to_string(cert.fsq_over_c)},
              {"admissible", cert.admissible},
              {"symbolic_identity_ok", cert.symbolic_identity_ok},
              {"incompatibility_polynomial", cert.polynomial},
              {"branch_empty", cert.branch_empty},
              {"numeric_C_drift", numeric},
              {"numeric_threshold", profile::kCertificateDriftThreshold},
              {"gauss_drift", cert.gauss_drift ? Json(*cert.gauss_drift) : Json(nullptr)},
              {"witness", cert.branch_empty ? Json(nullptr) : Json{{"f0", cert.witness_f0}, {"fp0", cert.witness_fp0}}},
              {"verdict", "constant_f"}};
}

Json to_json(const std::vector<profile::ConstantFSurface>& surfaces) {
  Json out = Json::array();
  for (const auto& s : surfaces) {
    out.push_back(Json{{"lambda1", s.lambda1 ? Json(*s.lambda1) : Json(nullptr)},
                       {"lambda2", s.lambda2 ? Json(*s.lambda2) : Json(nullptr)},
                       {"label", s.label},
                       {"proper", s.proper}});
  }
  return out;
}

void write_samples_csv(std::ostream& out, const SurfaceGrid& samples) {
  const int m = samples.grid.dimension();
  for (int i = 0; i < m; ++i) out << "u" << (i + 1) << ',';
  out << "f,|A|^2,|B|^2,quadric_residual\n";
  for (const auto& s : samples.samples) {
    for (int i = 0; i < m; ++i) out << format_17g(s.u(i)) << ',';
    out << format_17g(s.mean_f) << ',' << format_17g(s.normsq_A) << ',' << format_17g(s.normsq_B) << ','
        << format_17g(s.quadric_residual) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const profile::Trajectory& traj, int stride) {
  if (stride < 1) stride = 1;
  out << "u,f,fp,C,gauss_residual\n";
  const std::size_t n = traj.states.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i % static_cast<std::size_t>(stride) != 0 && i + 1 != n) continue;
    const auto& s = traj.states[i];
    out << format_17g(s.u) << ',' << format_17g(s.f) << ',' << format_17g(s.fp) << ',' << format_17g(s.C) << ','
        << format_17g(profile::gauss_first_integral_residual(s.f, s.fp, traj.c)) << '\n';
  }
}

}  // namespace biharm
