#include "biharm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "biharm/error.hpp"
#include "biharm/format.hpp"
#include "biharm/immersion.hpp"

namespace biharm::cli {

namespace {

// ---------------------------------------------------------------- parsing helpers

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ContractError(what + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::pair<double, double> parse_pair(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ContractError(what + ": expected 'a,b', got '" + text + "'");
  return {parse_number(text.substr(0, comma), what), parse_number(text.substr(comma + 1), what)};
}

std::optional<double> find_param(const JobConfig& cfg, const std::string& name) {
  for (const auto& [k, v] : cfg.params) {
    if (k == name) return v;
  }
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- families

bool is_slice(const std::string& name) { return name == "hyperbolic_slice"; }
bool is_clifford(const std::string& name) { return name == "clifford" || name == "clifford_product"; }

std::optional<SpaceForm> requested_space(const JobConfig& cfg) {
  if (cfg.space.empty()) return std::nullopt;
  return SpaceForm::parse(cfg.space);
}

struct FamilySelection {
  std::string param_name;
  FamilyMaker make;
};

FamilySelection builtin_family(const JobConfig& cfg) {
  const auto space = requested_space(cfg);
  if (is_slice(cfg.family)) {
    const int n = cfg.dim;
    return {"s", [n, space](double s) { return space ? hyperbolic_slice(n, s, *space) : hyperbolic_slice(n, s); }};
  }
  if (is_clifford(cfg.family)) {
    if (cfg.dims.size() != 2) throw ContractError("--dims expects two integers m,n");
    const int m = cfg.dims[0];
    const int n = cfg.dims[1];
    return {"r",
            [m, n, space](double r) { return space ? clifford_product(m, n, r, *space) : clifford_product(m, n, r); }};
  }
  throw ContractError("unknown family '" + cfg.family + "' (expected hyperbolic_slice or clifford)");
}

Family chart_family(const JobConfig& cfg) {
  const std::string source = read_file(cfg.chart);
  chartlang::ChartProgram prog;
  try {
    prog = chartlang::parse_chart(source);
  } catch (const chartlang::ChartError& e) {
    throw ContractError(cfg.chart + ":" + e.what());
  }
  if (const auto space = requested_space(cfg); space && !(*space == prog.space)) {
    throw ContractError(cfg.chart + ": chart declares space " + prog.space.name() + " but --space is " +
                        space->name());
  }
  return from_chart(std::move(prog));
}

Family selected_family(const JobConfig& cfg) {
  if (!cfg.chart.empty()) {
    if (!cfg.family.empty()) throw ContractError("--chart and --family are mutually exclusive");
    return chart_family(cfg);
  }
  if (cfg.family.empty()) throw ContractError("one of --family or --chart is required");
  const auto sel = builtin_family(cfg);
  const auto value = find_param(cfg, sel.param_name);
  if (!value) throw ContractError("family '" + cfg.family + "' needs --param " + sel.param_name + "=<value>");
  return sel.make(*value);
}

Tolerances tolerances_for(const JobConfig& cfg, const Family& family) {
  Tolerances tol = Tolerances::defaults_for(family);
  if (cfg.tol) tol.residual = *cfg.tol;
  if (cfg.f_tol) tol.f_tol = *cfg.f_tol;
  return tol;
}

Family with_grid_box(const Family& family, const GridSpec& grid) {
  return family.with_box(ChartBox{grid.lower, grid.upper});
}

// ---------------------------------------------------------------- output

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ContractError("cannot write '" + path + "'");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

Json envelope(const JobConfig& cfg) {
  return Json{{"schema", kSchemaVersion}, {"command", std::string(to_string(cfg.command))}, {"config", config_json(cfg)}};
}

void emit(const JobConfig& cfg, std::ostream& out, const Json& doc) {
  Sink sink(cfg.out, out);
  sink.stream() << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------- commands

int run_verify(const JobConfig& cfg, std::ostream& out) {
  const Family family = with_grid_box(selected_family(cfg), cfg.grid);
  const Tolerances tol = tolerances_for(cfg, family);
  const ResidualReport report = verify(family, cfg.grid, tol);

  if (cfg.format == OutputFormat::csv) {
    Sink sink(cfg.out, out);
    write_samples_csv(sink.stream(), sample_grid(family, cfg.grid));
  } else {
    Json doc = envelope(cfg);
    doc["family"] = Json{{"name", family.name()}, {"dimension", family.dimension()}, {"space", family.space().name()}};
    Json params = Json::object();
    for (const auto& [k, v] : family.params()) params[k] = v;
    doc["family"]["params"] = params;
    doc["conventions"] = conventions_json();
    doc["report"] = to_json(report);
    doc["normal_residual"] = report.normal_residual;
    doc["tangent_residual"] = report.tangent_residual;
    doc["classification"] = std::string(to_string(report.classification));
    doc["tolerances"] = to_json(report.tolerances);
    doc["grid"] = to_json(report.grid);
    doc["expect_matched"] = cfg.expect ? Json(*cfg.expect == report.classification) : Json(nullptr);
    emit(cfg, out, doc);
  }
  if (cfg.expect && *cfg.expect != report.classification) return kExitMismatch;
  return kExitOk;
}

int run_scan(const JobConfig& cfg, std::ostream& out) {
  if (!cfg.chart.empty()) throw ContractError("scan needs a built-in family (--family)");
  if (cfg.target != "biharmonic") throw ContractError("unknown scan target '" + cfg.target + "'");
  if (!(cfg.range_lower < cfg.range_upper)) throw ContractError("--range must satisfy a < b");
  const auto sel = builtin_family(cfg);
  const GridSpec grid = cfg.grid;
  const FamilyMaker make = [&sel, grid](double p) { return with_grid_box(sel.make(p), grid); };

  ScanOptions options;
  options.samples = cfg.samples;
  options.grid = cfg.grid;
  if (cfg.tol || cfg.f_tol) {
    Tolerances tol;
    if (cfg.tol) tol.residual = *cfg.tol;
    if (cfg.f_tol) tol.f_tol = *cfg.f_tol;
    options.tolerances = tol;
  }
  const ScanResult scan = scan_family(make, sel.param_name, cfg.range_lower, cfg.range_upper, options);

  Json doc = envelope(cfg);
  doc["conventions"] = conventions_json();
  doc["scan"] = to_json(scan);
  Json roots = Json::array();
  for (const auto& root : scan.roots) roots.push_back(root.param);
  doc["roots"] = roots;
  bool matched = false;
  for (const auto& root : scan.roots) matched = matched || (cfg.expect && root.report.classification == *cfg.expect);
  doc["expect_matched"] = cfg.expect ? Json(matched) : Json(nullptr);
  emit(cfg, out, doc);
  return cfg.expect && !matched ? kExitMismatch : kExitOk;
}

int run_ode(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto traj =
      profile::integrate_branch(cfg.branch, cfg.f0, cfg.fp0, cfg.c, cfg.span_lower, cfg.span_upper, cfg.step);
  if (traj.terminated_early) {
    err << "note: trajectory stopped at u = " << format_17g(traj.states.back().u) << " (f below "
        << format_shortest(profile::kMinProfile) << ")\n";
  }
  Sink sink(cfg.out, out);
  if (cfg.format == OutputFormat::csv) {
    write_trajectory_csv(sink.stream(), traj, cfg.stride);
  } else {
    Json doc = envelope(cfg);
    Json states = Json::array();
    const std::size_t stride = static_cast<std::size_t>(std::max(cfg.stride, 1));
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      if (i % stride != 0 && i + 1 != traj.states.size()) continue;
      const auto& s = traj.states[i];
      states.push_back(Json{{"u", s.u},
                            {"f", s.f},
                            {"fp", s.fp},
                            {"C", s.C},
                            {"gauss_residual", profile::gauss_first_integral_residual(s.f, s.fp, cfg.c)}});
    }
    doc["terminated_early"] = traj.terminated_early;
    doc["states"] = states;
    sink.stream() << doc.dump(2) << '\n';
  }
  return kExitOk;
}

bool certified(const profile::Certificate& cert) {
  return cert.symbolic_identity_ok &&
         (cert.branch_empty || (cert.numeric_C_drift && *cert.numeric_C_drift > profile::kCertificateDriftThreshold));
}

int run_certify(const JobConfig& cfg, std::ostream& out) {
  const auto cert = profile::incompatibility_certificate(cfg.c, cfg.step);
  Json doc = envelope(cfg);
  Json body = to_json(cert);
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  doc["certified"] = certified(cert);
  emit(cfg, out, doc);
  return certified(cert) ? kExitOk : kExitMismatch;
}

int run_classify(const JobConfig& cfg, std::ostream& out) {
  const auto surfaces = profile::classify_constant_f(cfg.c);
  Json doc = envelope(cfg);
  doc["surfaces"] = to_json(surfaces);
  std::set<std::string> proper;
  for (const auto& s : surfaces) {
    if (s.proper) proper.insert(s.label);
  }
  doc["proper_labels"] = Json(std::vector<std::string>(proper.begin(), proper.end()));
  emit(cfg, out, doc);
  return kExitOk;
}

// ---------------------------------------------------------------- repro

void claim(ReproJob& job, std::string text, bool passed, Json detail = Json::object()) {
  job.claims.push_back(ReproClaim{std::move(text), passed, std::move(detail)});
}

ReproJob repro_hyperbolic_slice() {
  ReproJob job{"example_3_1", {}};
  const ScanResult scan = scan_family([](double s) { return hyperbolic_slice(2, s); }, "s", 0.1, 0.9);
  const double expected = 1.0 / std::sqrt(2.0);
  const bool one = scan.roots.size() == 1;
  const double root = one ? scan.roots[0].param : NAN;
  claim(job, "scan s in (0.1, 0.9), n = 2 finds exactly one root at 1/sqrt(2) within 1e-10",
        one && std::abs(root - expected) <= 1e-10,
        Json{{"roots", scan.roots.size()}, {"root", number_or_null(root)}, {"expected", expected}});
  if (one) {
    const auto& r = scan.roots[0].report;
    claim(job, "root verifies as proper_biharmonic with residuals <= 1e-7",
          r.classification == Classification::proper_biharmonic && r.normal_residual <= 1e-7 &&
              r.tangent_residual <= 1e-7,
          to_json(r));
  }

  double worst = 0.0;
  for (int n : {2, 3}) {
    for (double s : {0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95}) {
      const Family fam = hyperbolic_slice(n, s);
      const auto sample = sample_surface(fam.jet(fam.box_center()), fam.box_center(), fam.space());
      worst = std::max(worst, std::abs(sample.normsq_B - n * s * s / (s * s - 1.0)));
    }
  }
  claim(job, "|B|^2 = n s^2/(s^2 - 1) within 1e-9", worst <= 1e-9, Json{{"max_error", worst}});

  GridSpec coarse{7, -1.0, 1.0};
  const auto r3 = verify(hyperbolic_slice(3, expected), coarse);
  claim(job, "H^3(1/sqrt(2)) in H^4_1(1) is proper_biharmonic", r3.classification == Classification::proper_biharmonic,
        to_json(r3));
  return job;
}

ReproJob repro_clifford() {
  ReproJob job{"example_3_2", {}};
  bool exact_ok = true;
  bool labels_ok = true;
  Json table = Json::array();
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) {
      const auto q = clifford_quadratic(m, n);
      const Rational one(1);
      const Rational ratio = Rational(n) / Rational(m);
      std::multiset<Rational> want{one, ratio};
      std::multiset<Rational> got;
      for (const auto& root : q.roots) {
        if (root.exact) got.insert(*root.exact);
      }
      exact_ok = exact_ok && got == want && std::all_of(q.roots.begin(), q.roots.end(), [](const auto& r) { return r.exact.has_value(); });
      for (const auto& root : q.roots) {
        const bool is_ratio = root.exact && *root.exact == ratio;
        labels_ok = labels_ok && root.maximal == is_ratio;
      }
      table.push_back(to_json(q));
    }
  }
  claim(job, "clifford_quadratic roots are exactly {1, n/m} (with multiplicity) for 1 <= m, n <= 6", exact_ok);
  claim(job, "t = n/m is labeled maximal and t = 1 proper iff m != n", labels_ok, Json{{"quadratics", table}});

  const auto r = verify(clifford_product(1, 2, 1.0 / std::sqrt(2.0)));
  claim(job, "H^1(1/sqrt(2)) x H^2(1/sqrt(2)) residuals <= 1e-7, proper_biharmonic",
        r.normal_residual <= 1e-7 && r.tangent_residual <= 1e-7 &&
            r.classification == Classification::proper_biharmonic,
        to_json(r));

  const ScanResult scan = scan_family([](double rr) { return clifford_product(1, 2, rr); }, "r", 0.3, 0.9);
  bool roots_ok = scan.roots.size() == 2 && std::abs(scan.roots[0].param - 1.0 / std::sqrt(3.0)) <= 1e-10 &&
                  std::abs(scan.roots[1].param - 1.0 / std::sqrt(2.0)) <= 1e-10 &&
                  scan.roots[0].report.classification == Classification::maximal &&
                  scan.roots[1].report.classification == Classification::proper_biharmonic;
  claim(job, "scan (m,n) = (1,2), r in (0.3, 0.9) finds r = 1/sqrt(3) (maximal) and r = 1/sqrt(2) (proper)", roots_ok,
        to_json(scan));
  return job;
}

ReproJob repro_dichotomy() {
  ReproJob job{"theorem_1_dichotomy", {}};
  bool forced = true;
  for (double c : {0.0, 1.0}) {
    for (int i = 0; i < 1000; ++i) {
      const double b = -10.0 + (10.0 - 1e-6) * i / 999.0;
      forced = forced && cmc_dichotomy(b, 2, c) == CmcVerdict::maximal_forced;
    }
  }
  claim(job, "cmc_dichotomy is maximal_forced for c in {0, 1}, |B|^2 in [-10, -1e-6]", forced);

  struct Case {
    std::string label;
    FamilyMaker make;
    double lower, upper;
  };
  const SpaceForm ds = SpaceForm::parse("S3_1(1)");
  const SpaceForm mk = SpaceForm::parse("R3_1");
  const std::vector<Case> cases{
      {"hyperbolic_slice in S3_1(1)", [ds](double s) { return hyperbolic_slice(2, s, ds); }, -2.0, 2.0},
      {"hyperbolic_slice in R3_1", [mk](double s) { return hyperbolic_slice(2, s, mk); }, 0.1, 3.0},
      {"clifford (1,1) in S3_1(1)", [ds](double r) { return clifford_product(1, 1, r, ds); }, 1.05, 3.0},
      {"clifford (1,1) in R3_1", [mk](double r) { return clifford_product(1, 1, r, mk); }, 0.1, 3.0},
  };
  for (const auto& cs : cases) {
    const ScanResult scan = scan_family(cs.make, "p", cs.lower, cs.upper);
    claim(job, cs.label + ": no proper root", scan.proper_root_count() == 0, to_json(scan));
  }
  return job;
}

ReproJob repro_constant_f() {
  ReproJob job{"theorem_2", {}};
  const auto surfaces = profile::classify_constant_f(-1.0);
  int proper = 0;
  int maximal_flat = 0;
  std::string proper_label;
  for (const auto& s : surfaces) {
    if (s.proper) {
      ++proper;
      proper_label = s.label;
    } else if (s.lambda1 && s.lambda2 && std::abs(*s.lambda1 + *s.lambda2) < 1e-12) {
      ++maximal_flat;
    }
  }
  std::set<std::string> labels;
  for (const auto& s : surfaces) {
    if (s.proper) labels.insert(s.label);
  }
  claim(job, "classify_constant_f(-1) lists exactly one proper surface label", labels.size() == 1,
        Json{{"surfaces", to_json(surfaces)}});
  claim(job, "the flat pair is maximal and excluded", maximal_flat > 0);

  const Family fam = hyperbolic_slice(2, 1.0 / std::sqrt(2.0));
  const auto sample = sample_surface(fam.jet(fam.box_center()), fam.box_center(), fam.space());
  claim(job, "hyperbolic_slice(2, 1/sqrt(2)) has |A|^2 = 2 within 1e-9", std::abs(sample.normsq_A - 2.0) <= 1e-9,
        Json{{"normsq_A", sample.normsq_A}});
  const auto r = verify(fam);
  claim(job, "hyperbolic_slice(2, 1/sqrt(2)) verifies proper_biharmonic",
        r.classification == Classification::proper_biharmonic, to_json(r));

  const auto cert = profile::incompatibility_certificate(-1.0);
  claim(job, "non-constant f is incompatible: forced f^2 = 7c/45, C drifts on the gauss branch",
        certified(cert) && cert.fsq_over_c == Rational(7) / Rational(45), to_json(cert));
  return job;
}

std::string markdown(const std::vector<ReproJob>& jobs) {
  std::ostringstream md;
  md << "# Reproduction bundle\n\n| job | claim | result |\n|---|---|---|\n";
  for (const auto& job : jobs) {
    for (const auto& c : job.claims) {
      std::string text;
      for (char ch : c.claim) {
        if (ch == '|') text += '\\';
        text += ch;
      }
      md << "| " << job.name << " | " << text << " | " << (c.passed ? "PASS" : "FAIL") << " |\n";
    }
  }
  bool all = std::all_of(jobs.begin(), jobs.end(), [](const ReproJob& j) { return j.passed(); });
  md << "\nOverall: " << (all ? "PASS" : "FAIL") << '\n';
  return md.str();
}

int run_repro(const JobConfig& cfg, std::ostream& out) {
  std::vector<std::string> tables;
  if (cfg.table == "all") {
    tables = repro_tables();
  } else {
    tables = {cfg.table};
  }
  std::vector<ReproJob> jobs;
  for (const auto& t : tables) jobs.push_back(repro_job(t));

  Json doc = envelope(cfg);
  Json jj = Json::array();
  bool all = true;
  for (const auto& job : jobs) {
    Json claims = Json::array();
    for (const auto& c : job.claims) claims.push_back(Json{{"claim", c.claim}, {"passed", c.passed}, {"detail", c.detail}});
    jj.push_back(Json{{"name", job.name}, {"passed", job.passed()}, {"claims", claims}});
    all = all && job.passed();
  }
  doc["jobs"] = jj;
  doc["passed"] = all;

  const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path("repro_bundle") : std::filesystem::path(cfg.out);
  std::filesystem::create_directories(dir);
  const std::string md = markdown(jobs);
  {
    std::ofstream json_file(dir / "repro.json", std::ios::binary);
    json_file << doc.dump(2) << '\n';
    std::ofstream md_file(dir / "repro.md", std::ios::binary);
    md_file << md;
    if (!json_file || !md_file) throw ContractError("cannot write bundle into '" + dir.string() + "'");
  }
  out << md;
  return all ? kExitOk : kExitMismatch;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::scan: return "scan";
    case Command::ode: return "ode";
    case Command::certify: return "certify";
    case Command::classify: return "classify";
    case Command::repro: return "repro";
  }
  return "?";
}

bool ReproJob::passed() const {
  return !claims.empty() && std::all_of(claims.begin(), claims.end(), [](const ReproClaim& c) { return c.passed; });
}

std::vector<std::string> repro_tables() { return {"example_3_1", "example_3_2", "theorem_1_dichotomy", "theorem_2"}; }

ReproJob repro_job(const std::string& table) {
  if (table == "example_3_1") return repro_hyperbolic_slice();
  if (table == "example_3_2") return repro_clifford();
  if (table == "theorem_1_dichotomy") return repro_dichotomy();
  if (table == "theorem_2") return repro_constant_f();
  throw ContractError("unknown repro table '" + table + "'");
}

Json config_json(const JobConfig& cfg) {
  Json j = Json::object();
  switch (cfg.command) {
    case Command::verify:
    case Command::scan: {
      if (!cfg.chart.empty()) {
        j["chart"] = cfg.chart;
      } else {
        j["family"] = cfg.family;
        if (is_clifford(cfg.family)) {
          j["dims"] = cfg.dims;
        } else {
          j["dim"] = cfg.dim;
        }
      }
      Json params = Json::object();
      for (const auto& [k, v] : cfg.params) params[k] = v;
      j["params"] = params;
      j["space"] = cfg.space.empty() ? Json(nullptr) : Json(cfg.space);
      j["grid"] = to_json(cfg.grid);
      j["tol"] = cfg.tol ? Json(*cfg.tol) : Json(nullptr);
      j["f_tol"] = cfg.f_tol ? Json(*cfg.f_tol) : Json(nullptr);
      if (cfg.command == Command::scan) {
        j["range"] = Json::array({cfg.range_lower, cfg.range_upper});
        j["samples"] = cfg.samples;
        j["target"] = cfg.target;
      }
      break;
    }
    case Command::ode:
      j["branch"] = std::string(profile::to_string(cfg.branch));
      j["c"] = cfg.c;
      j["f0"] = cfg.f0;
      j["fp0"] = cfg.fp0;
      j["span"] = Json::array({cfg.span_lower, cfg.span_upper});
      j["step"] = cfg.step;
      j["stride"] = cfg.stride;
      break;
    case Command::certify:
      j["c"] = cfg.c;
      j["step"] = cfg.step;
      break;
    case Command::classify:
      j["c"] = cfg.c;
      break;
    case Command::repro:
      j["table"] = cfg.table;
      break;
  }
  j["expect"] = cfg.expect ? Json(std::string(to_string(*cfg.expect))) : Json(nullptr);
  j["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
  return j;
}

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::verify: return run_verify(cfg, out);
      case Command::scan: return run_scan(cfg, out);
      case Command::ode: return run_ode(cfg, out, err);
      case Command::certify: return run_certify(cfg, out);
      case Command::classify: return run_classify(cfg, out);
      case Command::repro: return run_repro(cfg, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

namespace {

constexpr const char* kFooter =
    "CSV columns:\n"
    "  verify --format csv   u1..um, f, |A|^2, |B|^2, quadric_residual\n"
    "  ode    --format csv   u, f, fp, C, gauss_residual\n"
    "Numbers are printed with 17 significant digits. JSON reports carry \"schema\": 1.\n"
    "Exit status: 0 success, 2 expectation mismatch, 1 usage or runtime error.\n"
    "BIHARM_THREADS caps the number of worker threads.";

struct RawOptions {
  std::vector<std::string> params;
  std::string box = "-1,1";
  std::string range = "0.1,0.9";
  std::string span = "0,1";
  std::string format = "json";
  std::string expect;
  std::string branch = "codazzi";
  std::string c = "-1";
  std::string dims = "1,2";
};

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  JobConfig cfg;
  RawOptions raw;
  CLI::App app{"Verification engine for biharmonic space-like hypersurfaces", "biharm"};
  app.footer(kFooter);
  app.require_subcommand(1, 1);
  app.allow_extras(false);

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "hyperbolic_slice | clifford");
    sub->add_option("--dim", cfg.dim, "n for hyperbolic_slice");
    sub->add_option("--dims", raw.dims, "m,n for clifford");
    sub->add_option("--param", raw.params, "name=value, e.g. s=0.70710678 or r=0.5");
    sub->add_option("--chart", cfg.chart, "chart file");
    sub->add_option("--space", cfg.space, "space form, e.g. H3_1(1), S3_1(1), R3_1, S3(1)");
    sub->add_option("--grid", cfg.grid.points_per_axis, "grid points per axis")->check(CLI::Range(3, 1000));
    sub->add_option("--box", raw.box, "chart box a,b");
    sub->add_option("--tol", cfg.tol, "residual tolerance");
    sub->add_option("--f-tol", cfg.f_tol, "mean-curvature zero tolerance");
    sub->add_option("--expect", raw.expect, "proper_biharmonic | maximal | harmonic_only | not_biharmonic");
    sub->add_option("--out", cfg.out, "output file");
    sub->add_option("--seed", cfg.seed, "seed for randomized sampling");
  };

  auto* verify_cmd = app.add_subcommand("verify", "verify one immersion on a chart grid");
  add_family(verify_cmd);
  verify_cmd->add_option("--format", raw.format, "json | csv");

  auto* scan_cmd = app.add_subcommand("scan", "scan a family parameter for biharmonic roots");
  add_family(scan_cmd);
  scan_cmd->add_option("--range", raw.range, "parameter range a,b");
  scan_cmd->add_option("--target", cfg.target, "scan target (biharmonic)");
  scan_cmd->add_option("--samples", cfg.samples, "sweep samples")->check(CLI::Range(2, 100000));

  auto* ode_cmd = app.add_subcommand("ode", "integrate a branch of the reduced profile ODE");
  ode_cmd->add_option("--branch", raw.branch, "codazzi | gauss");
  ode_cmd->add_option("--c", raw.c, "ambient curvature");
  ode_cmd->add_option("--f0", cfg.f0, "initial f");
  ode_cmd->add_option("--fp0", cfg.fp0, "initial f'");
  ode_cmd->add_option("--span", raw.span, "u range a,b");
  ode_cmd->add_option("--step", cfg.step, "RK4 step");
  ode_cmd->add_option("--stride", cfg.stride, "emit every k-th state")->check(CLI::PositiveNumber);
  ode_cmd->add_option("--format", raw.format, "csv | json");
  ode_cmd->add_option("--out", cfg.out, "output file");

  auto* certify_cmd = app.add_subcommand("certify", "certify that f must be constant");
  certify_cmd->add_option("--c", raw.c, "ambient curvature");
  certify_cmd->add_option("--step", cfg.step, "RK4 step of the numeric witness");
  certify_cmd->add_option("--out", cfg.out, "output file");

  auto* classify_cmd = app.add_subcommand("classify", "list constant-f biharmonic surfaces");
  classify_cmd->add_option("--c", raw.c, "ambient curvature");
  classify_cmd->add_option("--out", cfg.out, "output file");

  auto* repro_cmd = app.add_subcommand("repro", "run the canned reproduction jobs");
  repro_cmd->add_option("--table", cfg.table, "example_3_1 | example_3_2 | theorem_2 | theorem_1_dichotomy | all");
  repro_cmd->add_option("--out", cfg.out, "bundle directory (default repro_bundle)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (verify_cmd->parsed()) cfg.command = Command::verify;
    if (scan_cmd->parsed()) cfg.command = Command::scan;
    if (ode_cmd->parsed()) cfg.command = Command::ode;
    if (certify_cmd->parsed()) cfg.command = Command::certify;
    if (classify_cmd->parsed()) cfg.command = Command::classify;
    if (repro_cmd->parsed()) cfg.command = Command::repro;

    for (const auto& p : raw.params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0) throw ContractError("--param expects name=value, got '" + p + "'");
      cfg.params.emplace_back(p.substr(0, eq), parse_number(p.substr(eq + 1), "--param " + p.substr(0, eq)));
    }
    std::tie(cfg.grid.lower, cfg.grid.upper) = parse_pair(raw.box, "--box");
    if (!(cfg.grid.lower < cfg.grid.upper)) throw ContractError("--box must satisfy a < b");
    std::tie(cfg.range_lower, cfg.range_upper) = parse_pair(raw.range, "--range");
    std::tie(cfg.span_lower, cfg.span_upper) = parse_pair(raw.span, "--span");
    {
      const auto [m, n] = parse_pair(raw.dims, "--dims");
      if (m != std::floor(m) || n != std::floor(n)) throw ContractError("--dims expects integers");
      cfg.dims = {static_cast<int>(m), static_cast<int>(n)};
    }
    cfg.c = parse_number(raw.c, "--c");
    if (raw.format == "json") {
      cfg.format = OutputFormat::json;
    } else if (raw.format == "csv") {
      cfg.format = OutputFormat::csv;
    } else {
      throw ContractError("--format expects json or csv");
    }
    if (cfg.command == Command::ode && ode_cmd->count("--format") == 0) cfg.format = OutputFormat::csv;
    if (!raw.expect.empty()) {
      cfg.expect = parse_classification(raw.expect);
      if (!cfg.expect) throw ContractError("unknown classification '" + raw.expect + "'");
    }
    const auto branch = profile::parse_branch(raw.branch);
    if (!branch) throw ContractError("--branch expects codazzi or gauss");
    cfg.branch = *branch;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitError;
  }
  return run(cfg, out, err);
}

}  // namespace biharm::cli
