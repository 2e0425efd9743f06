// Command-line driver for the NLSW exponential-integrator studies.
//
//   nlsw_study spatial   --out spatial.csv --summary spatial.json
//   nlsw_study temporal  --out temporal.csv --summary temporal.json
//   nlsw_study single    --M 32 --tau 1e-3 --out run.csv
//   nlsw_study oracle-check --threshold 1e-6
//
// Flags may also come from a flat key=value config file via --config;
// command-line flags override file entries.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "nlsw/study.hpp"
#include "nlsw/version.hpp"

namespace {

struct CommonArgs {
  std::string out;
  std::string summary;
  std::string dump_coeffs;
};

template <typename T>
T parse_scalar(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out;
  if (!(in >> out))
    throw std::runtime_error("config file: bad value for " + key + ": " + value);
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  std::vector<T> out;
  T item;
  while (in >> item) out.push_back(item);
  if (out.empty())
    throw std::runtime_error("config file: empty list for " + key);
  return out;
}

// Flat key=value file; '#' starts a comment. Values land in the defaults,
// so flags parsed afterwards take precedence.
void apply_config_file(const std::string& path, nlsw::StudyConfig& config,
                       CommonArgs& args) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::runtime_error("config file line " + std::to_string(lineno) +
                                 ": expected key=value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "alpha") config.alpha = parse_scalar<double>(key, value);
    else if (key == "eps") config.eps_list = parse_list<double>(key, value);
    else if (key == "beta") config.beta_list = parse_list<double>(key, value);
    else if (key == "p") config.p = parse_scalar<int>(key, value);
    else if (key == "M") config.M_list = parse_list<int>(key, value);
    else if (key == "tau") config.tau_list = parse_list<double>(key, value);
    else if (key == "T") config.T = parse_scalar<double>(key, value);
    else if (key == "ref-M") config.ref_M = parse_scalar<int>(key, value);
    else if (key == "ref-tau") config.ref_tau = parse_scalar<double>(key, value);
    else if (key == "domain-a") config.domain_a = parse_scalar<double>(key, value);
    else if (key == "domain-b") config.domain_b = parse_scalar<double>(key, value);
    else if (key == "cache") config.cache_dir = value;
    else if (key == "jobs") config.jobs = parse_scalar<int>(key, value);
    else if (key == "ceiling") config.divergence_ceiling = parse_scalar<double>(key, value);
    else if (key == "dealias") config.dealias = parse_scalar<int>(key, value) != 0;
    else if (key == "t-final") config.t_final_override = parse_scalar<double>(key, value);
    else if (key == "snapshot-every") config.snapshot_every = parse_scalar<int>(key, value);
    else if (key == "snapshot-file") config.snapshot_file = value;
    else if (key == "series-every") config.series_every = parse_scalar<int>(key, value);
    else if (key == "series-file") config.series_file = value;
    else if (key == "initial-data") config.initial_data_file = value;
    else if (key == "oracle-tau") config.oracle_tau = parse_scalar<double>(key, value);
    else if (key == "threshold") config.oracle_threshold = parse_scalar<double>(key, value);
    else if (key == "out") args.out = value;
    else if (key == "summary") args.summary = value;
    else
      throw std::runtime_error("config file: unknown key '" + key + "'");
  }
}

void add_common(CLI::App* cmd, nlsw::StudyConfig& config, CommonArgs& args,
                std::string& config_path) {
  cmd->add_option("--alpha", config.alpha, "wave-operator strength");
  cmd->add_option("--eps", config.eps_list, "nonlinearity strength ladder");
  cmd->add_option("--beta", config.beta_list, "horizon exponents");
  cmd->add_option("--p", config.p, "nonlinearity power");
  cmd->add_option("--M", config.M_list, "mode counts");
  cmd->add_option("--tau", config.tau_list, "time steps");
  cmd->add_option("--T", config.T, "horizon constant (final time T/eps^beta)");
  cmd->add_option("--ref-M", config.ref_M, "reference mode count");
  cmd->add_option("--ref-tau", config.ref_tau, "reference time step");
  cmd->add_option("--domain-a", config.domain_a, "left endpoint");
  cmd->add_option("--domain-b", config.domain_b, "right endpoint");
  cmd->add_option("--cache", config.cache_dir, "reference cache directory");
  cmd->add_option("--jobs", config.jobs, "worker threads (0 = all cores)");
  cmd->add_option("--ceiling", config.divergence_ceiling,
                  "divergence amplitude ceiling");
  cmd->add_flag("--dealias", config.dealias, "enable the 2/3-rule filter");
  cmd->add_option("--out", args.out, "CSV output path (default: stdout)");
  cmd->add_option("--summary", args.summary, "JSON summary output path");
  cmd->add_option("--config", config_path,
                  "flat key=value config file (flags override it)");
}

int emit(const nlsw::StudyResult& result, const nlsw::StudyConfig& config,
         const CommonArgs& args) {
  if (args.out.empty()) {
    nlsw::write_csv(result.rows, std::cout);
  } else {
    std::ofstream out(args.out, std::ios::trunc);
    if (!out) {
      std::cerr << "cannot open " << args.out << "\n";
      return 1;
    }
    nlsw::write_csv(result.rows, out);
  }
  if (!args.summary.empty()) {
    std::ofstream out(args.summary, std::ios::trunc);
    if (!out) {
      std::cerr << "cannot open " << args.summary << "\n";
      return 1;
    }
    nlsw::write_summary(result, config, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential wave integrator studies for the NLSW"};
  app.set_version_flag("--version", std::string(nlsw::solver_version));
  app.require_subcommand(1);

  nlsw::StudyConfig config;
  CommonArgs args;
  std::string config_path;

  CLI::App* spatial = app.add_subcommand(
      "spatial", "error vs mesh size at fixed fine time step");
  add_common(spatial, config, args, config_path);

  CLI::App* temporal = app.add_subcommand(
      "temporal", "error vs time step at fixed fine mesh, with order fits");
  add_common(temporal, config, args, config_path);

  CLI::App* single =
      app.add_subcommand("single", "one integration with full diagnostics");
  add_common(single, config, args, config_path);
  single->add_option("--t-final", config.t_final_override,
                     "override the final time (0 allowed)");
  single->add_option("--snapshot-every", config.snapshot_every,
                     "dump coefficients every k steps");
  single->add_option("--snapshot-file", config.snapshot_file,
                     "trajectory snapshot CSV path");
  single->add_option("--series-every", config.series_every,
                     "sample conserved quantities every k steps");
  single->add_option("--series-file", config.series_file,
                     "conserved-quantity series CSV path");
  single->add_option("--initial-data", config.initial_data_file,
                     "CSV with re0,im0,re1,im1 rows (overrides the builtin data)");
  single->add_option("--dump-coeffs", args.dump_coeffs,
                     "write the coefficient table as CSV and exit");

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "fine-reference vs RK4 agreement on the beta=0 points");
  add_common(oracle, config, args, config_path);
  oracle->add_option("--oracle-tau", config.oracle_tau, "RK4 time step");
  oracle->add_option("--threshold", config.oracle_threshold,
                     "max allowed H1 disagreement");

  // The file supplies defaults; the regular parse afterwards lets explicit
  // flags win. Scan for --config by hand so the file is applied first.
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc) {
        apply_config_file(argv[i + 1], config, args);
        break;
      }
      if (arg.rfind("--config=", 0) == 0) {
        apply_config_file(arg.substr(9), config, args);
        break;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (spatial->parsed()) return emit(nlsw::run_spatial_study(config), config, args);
    if (temporal->parsed()) return emit(nlsw::run_temporal_study(config), config, args);
    if (single->parsed()) {
      if (!args.dump_coeffs.empty()) {
        nlsw::GridSpec grid = nlsw::make_grid(
            config.domain_a, config.domain_b, config.M_list.front());
        nlsw::CoefficientTable table =
            nlsw::build_table(grid, config.alpha, config.eps_list.front(),
                              config.p, config.tau_list.front());
        std::ofstream out(args.dump_coeffs, std::ios::trunc);
        if (!out) {
          std::cerr << "cannot open " << args.dump_coeffs << "\n";
          return 1;
        }
        nlsw::dump_csv(table, out);
        return 0;
      }
      return emit(nlsw::run_single(config), config, args);
    }
    if (oracle->parsed()) {
      nlsw::OracleCheckReport rep = nlsw::run_oracle_check(config);
      for (const auto& p : rep.points)
        std::printf("eps=%-8g H1 disagreement %.6e\n", p.eps,
                    p.h1_disagreement);
      std::printf("max %.6e (threshold %.1e): %s\n", rep.max_h1, rep.threshold,
                  rep.ok ? "ok" : "FAILED");
      return rep.ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
