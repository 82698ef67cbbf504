#pragma once

#include <ostream>

#include <json.hpp>

#include "biharm/biharmonic.hpp"
#include "biharm/profile_ode.hpp"

namespace biharm {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// NaN and infinities become null.
Json number_or_null(double v);

Json to_json(const GridSpec& grid);
Json to_json(const Tolerances& tol);
Json to_json(const ResidualReport& report);
Json to_json(const ScanResult& scan);
Json to_json(const CliffordQuadratic& q);
Json to_json(const profile::Certificate& cert);
Json to_json(const std::vector<profile::ConstantFSurface>& surfaces);

/// Sign and operator conventions behind every residual report.
Json conventions_json();

/// Columns: u1..um, f, |A|^2, |B|^2, quadric_residual (17 significant digits).
void write_samples_csv(std::ostream& out, const SurfaceGrid& samples);

/// Columns: u, f, fp, C, gauss_residual (17 significant digits).
void write_trajectory_csv(std::ostream& out, const profile::Trajectory& traj, int stride = 1);

}  // namespace biharm
