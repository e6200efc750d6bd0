#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qbg/bounds.hpp"
#include "qbg/error.hpp"
#include "qbg/extremal.hpp"
#include "qbg/imaginarity.hpp"
#include "qbg/io.hpp"
#include "qbg/sampling.hpp"
#include "qbg/state.hpp"
#include "qbg/transform.hpp"
#include "qbg/verify.hpp"

namespace qbg::cli {

namespace {

using io::Json;

struct Globals {
  std::uint64_t seed = 0;
  double psd_tol = Tolerances{}.psd;
  double herm_tol = Tolerances{}.herm;
  std::string out;
  std::string format;

  Tolerances tolerances() const {
    Tolerances t;
    t.psd = psd_tol;
    t.herm = herm_tol;
    return t;
  }
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_format(const Globals& g, std::initializer_list<std::string_view> allowed) {
  if (g.format.empty()) return;
  for (auto f : allowed) {
    if (g.format == f) return;
  }
  throw ConfigError("--format " + g.format + " is not supported by this command");
}

void require_out(const Globals& g) {
  if (g.out.empty()) throw ConfigError("--out <path> is required for this command");
}

// Writes to --out when given, else to the command's standard output.
void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
  } else {
    io::write_text_file(g.out, text);
  }
}

DensityMatrix load_state(const std::string& path, const Globals& g) {
  const ComplexMatrix raw = io::matrix_from_json(io::read_json_file(path));
  return DensityMatrix::validate(raw, g.tolerances());
}

int cmd_decompose(const Globals& g, const std::string& input, std::ostream& out) {
  require_format(g, {"json"});
  const DensityMatrix rho = load_state(input, g);
  const DxiParts parts = decompose(rho);
  const Coordinates c = coordinates(parts);
  const ProofStepReport chain = proof_step_check(rho);
  Json j{{"dim", rho.dim()},
         {"parts", io::to_json(parts)},
         {"coordinates", io::to_json(c)},
         {"bounds", io::to_json(evaluate_bounds(c))},
         {"purity", purity(rho)},
         {"bloch", io::bloch_to_json(bloch_vector(rho, gellmann_basis(rho.dim())))},
         {"imaginarity", io::to_json(robustness(rho))},
         {"proof_chain",
          {{"pairing_ok", chain.pairing_ok},
           {"domination_ok", chain.domination_ok},
           {"majorization_ok", chain.majorization_ok},
           {"t_bound_ok", chain.t_bound_ok},
           {"t", chain.t},
           {"t_lower", chain.t_lower}}}};
  emit(g, out, j.dump(2) + "\n");
  return kOk;
}

int cmd_boundary(const Globals& g, int dim, int n) {
  require_format(g, {"csv", "json", "svg"});
  require_out(g);
  const BoundaryCurve curve = boundary_samples(dim, n);
  const std::string format = g.format.empty() ? "csv" : g.format;
  if (format == "csv") {
    std::ostringstream csv;
    io::write_boundary_csv(csv, curve);
    io::write_text_file(g.out, csv.str());
  } else if (format == "svg") {
    io::write_text_file(g.out, io::boundary_svg(curve));
  } else {
    Json rows = Json::array();
    for (const auto& s : curve.samples) {
      rows.push_back({{"s_r", s.s_r}, {"s_i_max", s.s_i_max}, {"region", std::string(to_string(s.region))}});
    }
    io::write_text_file(g.out, Json{{"dim", dim}, {"samples", rows}}.dump(2) + "\n");
  }
  io::write_text_file(io::sidecar_path(g.out, ".landmarks.json"),
                      io::to_json(landmarks(dim)).dump(2) + "\n");
  return kOk;
}

int cmd_cloud(const Globals& g, const CloudConfig& config, std::ostream& out, std::ostream& err) {
  require_format(g, {"csv"});
  std::ofstream file;
  if (!g.out.empty()) {
    file.open(g.out, std::ios::binary);
    if (!file) throw ConfigError("cannot write '" + g.out + "'");
  }
  std::ostream& sink = g.out.empty() ? out : file;
  io::write_cloud_header(sink, config.with_robustness);

  std::optional<CoordinateRecord> violator;
  stream_cloud(config, [&](const CoordinateRecord& rec) {
    if (violator) return;
    const Coordinates c{rec.dim, rec.s_d, rec.s_x, rec.s_i, rec.s_r};
    if (!evaluate_bounds(c).all_satisfied) {
      violator = rec;
      return;
    }
    io::write_cloud_row(sink, rec);
  });
  if (violator) {
    err << "soundness violation: record " << violator->seed_index << " (s_r=" << violator->s_r
        << ", s_i=" << violator->s_i << ") breaks a bound\n";
    return kSoundness;
  }
  if (!sink) throw ConfigError("write failed");
  return kOk;
}

int cmd_verify(const VerifyConfig& config, std::ostream& out) {
  const auto results = run_verification(config);
  print_check_table(out, results);
  for (const auto& r : results) {
    if (!r.passed) return kSoundness;
  }
  return kOk;
}

int cmd_extremal(const Globals& g, const std::string& spec_path) {
  require_format(g, {"json"});
  require_out(g);
  ExtremalSpec spec;
  try {
    spec = io::extremal_spec_from_json(io::read_json_file(spec_path));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  DensityMatrix rho = [&] {
    try {
      return build_extremal(spec);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SpecViolation) throw ConfigError(e.what());
      throw;
    }
  }();
  io::write_text_file(g.out, io::matrix_to_json(rho.matrix()).dump(2) + "\n");
  Json report = io::to_json(saturation_report(rho));
  report["spec"] = io::extremal_spec_to_json(spec);
  report["imaginarity"] = io::to_json(robustness(rho));
  io::write_text_file(io::sidecar_path(g.out, ".report.json"), report.dump(2) + "\n");
  return kOk;
}

int cmd_sweep(const Globals& g, const std::string& input, double diag_tol) {
  require_format(g, {"json"});
  require_out(g);
  const DensityMatrix rho = load_state(input, g);
  const SweepResult sw = sweep_uniform_diagonal(rho, diag_tol);
  io::write_text_file(g.out, io::matrix_to_json(sw.state.matrix()).dump(2) + "\n");
  std::ostringstream log;
  io::write_step_log(log, sw.steps);
  io::write_text_file(io::sidecar_path(g.out, ".steps.jsonl"), log.str());
  const Json summary{{"steps", sw.steps.size()},
                     {"before", io::to_json(coordinates(rho))},
                     {"after", io::to_json(coordinates(sw.state))}};
  io::write_text_file(io::sidecar_path(g.out, ".summary.json"), summary.dump(2) + "\n");
  return kOk;
}

int cmd_empirical(const Globals& g, const EmpiricalConfig& config, std::ostream& out,
                  std::ostream& err) {
  require_format(g, {"csv"});
  const EmpiricalCurve curve = empirical_boundary(config);
  std::ostringstream csv;
  io::write_empirical_csv(csv, curve);
  emit(g, out, csv.str());
  if (curve.violations != 0) {
    err << "soundness violation: " << curve.violations << " samples above the analytic boundary\n";
    return kSoundness;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Imaginary-coordinate geometry of qudit state space"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->envname("QBG_SEED");
  app.add_option("--psd-tol", g.psd_tol, "Smallest admissible eigenvalue is -psd_tol")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--herm-tol", g.herm_tol, "Entrywise Hermiticity tolerance")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "Output path");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));

  std::string input;
  auto* decompose_cmd = app.add_subcommand("decompose", "DXI parts, coordinates and bound margins of a state");
  decompose_cmd->add_option("input", input, "Matrix JSON file")->required();

  int dim = 2;
  int n_points = 1000;
  auto* boundary_cmd = app.add_subcommand("boundary", "Analytic boundary curve plus landmarks sidecar");
  boundary_cmd->add_option("--dim,-d", dim)->required()->check(CLI::Range(2, 100000));
  boundary_cmd->add_option("--n,-n", n_points)->check(CLI::Range(2, 100000000));

  CloudConfig cloud;
  std::string measure = "hs";
  auto* cloud_cmd = app.add_subcommand("cloud", "Coordinate cloud of random states");
  cloud_cmd->add_option("--dim,-d", cloud.dim)->required()->check(CLI::Range(2, 100000));
  cloud_cmd->add_option("--n,-n", cloud.n)->required()->check(CLI::PositiveNumber);
  cloud_cmd->add_option("--measure,-m", measure)
      ->check(CLI::IsMember({"hs", "haar", "HS_MIXED", "HAAR_PURE"}));
  cloud_cmd->add_option("--workers,-j", cloud.workers)->check(CLI::Range(1, 1024));
  cloud_cmd->add_flag("--robustness", cloud.with_robustness, "Append robustness columns");

  VerifyConfig verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check every invariant on sampled states");
  verify_cmd->add_option("--dims", verify.dims)->required()->delimiter(',');
  verify_cmd->add_option("--samples", verify.samples)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--workers,-j", verify.workers)->check(CLI::Range(1, 1024));

  std::string spec_path;
  auto* extremal_cmd = app.add_subcommand("extremal", "Build an extremal state from a spec file");
  extremal_cmd->add_option("spec", spec_path, "Extremal spec JSON file")->required();

  double diag_tol = kDefaultDiagTol;
  auto* sweep_cmd = app.add_subcommand("sweep", "Flatten the diagonal by real rotations");
  sweep_cmd->add_option("input", input, "Matrix JSON file")->required();
  sweep_cmd->add_option("--diag-tol", diag_tol)->check(CLI::PositiveNumber);

  EmpiricalConfig empirical;
  empirical.n = 10000;
  auto* empirical_cmd = app.add_subcommand("empirical", "Sampled per-bin maximum of S_I");
  empirical_cmd->add_option("--dim,-d", empirical.dim)->required()->check(CLI::Range(2, 100000));
  empirical_cmd->add_option("--bins", empirical.bins)->check(CLI::Range(2, 1000000));
  empirical_cmd->add_option("--n,-n", empirical.n);
  empirical_cmd->add_flag("--refine", empirical.refine);
  empirical_cmd->add_option("--workers,-j", empirical.workers)->check(CLI::Range(1, 1024));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (*decompose_cmd) return cmd_decompose(g, input, out);
    if (*boundary_cmd) return cmd_boundary(g, dim, n_points);
    if (*cloud_cmd) {
      cloud.measure = measure_from_string(measure);
      cloud.seed = g.seed;
      return cmd_cloud(g, cloud, out, err);
    }
    if (*verify_cmd) {
      verify.seed = g.seed;
      return cmd_verify(verify, out);
    }
    if (*extremal_cmd) return cmd_extremal(g, spec_path);
    if (*sweep_cmd) return cmd_sweep(g, input, diag_tol);
    if (*empirical_cmd) {
      empirical.seed = g.seed;
      return cmd_empirical(g, empirical, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_invalid_state() ? kInvalidState : kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace qbg::cli
