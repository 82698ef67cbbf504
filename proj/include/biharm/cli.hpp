#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biharm/biharmonic.hpp"
#include "biharm/profile_ode.hpp"
#include "biharm/report.hpp"

namespace biharm::cli {

enum class Command { verify, scan, ode, certify, classify, repro };
enum class OutputFormat { json, csv };

std::string_view to_string(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitMismatch = 2;

struct JobConfig {
  Command command = Command::verify;

  // family selection: a built-in family or a chart file
  std::string family;
  int dim = 2;
  std::vector<int> dims{1, 2};
  std::vector<std::pair<std::string, double>> params;
  std::string chart;
  std::string space;

  GridSpec grid;
  std::optional<double> tol;
  std::optional<double> f_tol;
  OutputFormat format = OutputFormat::json;
  std::string out;
  std::optional<Classification> expect;
  std::optional<std::uint64_t> seed;

  // scan
  double range_lower = 0.1;
  double range_upper = 0.9;
  int samples = 33;
  std::string target = "biharmonic";

  // ode / certify / classify
  profile::Branch branch = profile::Branch::codazzi;
  double c = -1.0;
  double f0 = 0.45;
  double fp0 = 0.0;
  double span_lower = 0.0;
  double span_upper = 1.0;
  double step = 1e-4;
  int stride = 1;

  // repro
  std::string table = "all";
};

/// Stable JSON echo of the configuration; never includes the worker count.
Json config_json(const JobConfig& cfg);

/// Runs one job. Reports go to `out` (or the --out file), diagnostics to `err`.
/// Returns kExitOk, kExitMismatch when an expectation fails, kExitError otherwise.
int run(const JobConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses the command line and runs the job.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct ReproClaim {
  std::string claim;
  bool passed = false;
  Json detail;
};

struct ReproJob {
  std::string name;
  std::vector<ReproClaim> claims;
  bool passed() const;
};

/// Canned job sets: example_3_1, example_3_2, theorem_1_dichotomy, theorem_2.
ReproJob repro_job(const std::string& table);
std::vector<std::string> repro_tables();

}  // namespace biharm::cli
