#include "alphadpp/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "alphadpp/alpha_det.hpp"
#include "alphadpp/io.hpp"
#include "alphadpp/parallel.hpp"
#include "alphadpp/sampler.hpp"

namespace alphadpp {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonFlags {
  std::string config_path;
  std::string alpha;
  int level = -1;
  int max_rank = -1;
  std::string window;
  std::int64_t samples = -1;
  std::int64_t seed = -1;
  int threads = -1;
  std::string out;
  std::string format = "json";
  double tolerance = -1;
  int grid_n = -1;

  void attach(CLI::App* cmd, bool sampling) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--alpha", alpha, "interpolation parameter, e.g. -1, -1/2, 2/3");
    cmd->add_option("--level", level, "partition level (>= 1)");
    cmd->add_option("--rank", max_rank, "rank truncation R (>= 1)");
    cmd->add_option("--window", window, "observation window as a,b (dyadic endpoints)");
    cmd->add_option("--out", out, "output file (default: stdout)");
    cmd->add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", threads,
                    "worker cap (default: ALPHADPP_THREADS or hardware)");
    cmd->add_option("--tolerance", tolerance, "pass/fail tolerance for checks");
    if (sampling) {
      cmd->add_option("--samples", samples, "number of Monte Carlo samples");
      cmd->add_option("--seed", seed, "RNG seed (recorded in reports)");
    }
    cmd->add_option("--grid-n", grid_n, "Nystrom grid size (spectrum)");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!alpha.empty()) cfg.alpha = AlphaParam::parse(alpha);
    if (level >= 0) cfg.level = level;
    if (max_rank >= 0) cfg.max_rank = max_rank;
    if (!window.empty()) {
      const auto comma = window.find(',');
      if (comma == std::string::npos)
        throw contract_error("--window expects two comma-separated endpoints");
      try {
        cfg.window = Window{std::stod(window.substr(0, comma)),
                            std::stod(window.substr(comma + 1))};
      } catch (const std::exception&) {
        throw contract_error("--window: cannot parse '" + window + "'");
      }
    }
    if (samples >= 0) cfg.n_samples = samples;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (tolerance >= 0) cfg.tolerance = tolerance;
    if (grid_n >= 0) cfg.grid_n = grid_n;

    int workers = threads;
    if (workers < 0) {
      if (const char* env = std::getenv("ALPHADPP_THREADS")) workers = std::atoi(env);
    }
    if (workers > 0) set_max_threads(workers);
    return cfg;
  }
};

const KernelSpec& need_kernel(const ExperimentConfig& cfg) {
  if (!cfg.kernel) throw contract_error("missing kernel (config 'kernel')");
  return *cfg.kernel;
}

const AlphaParam& need_alpha(const ExperimentConfig& cfg) {
  if (!cfg.alpha) throw contract_error("missing alpha (config 'alpha' or --alpha)");
  return *cfg.alpha;
}

const CorrelationQuery& need_query(const ExperimentConfig& cfg) {
  if (!cfg.query) throw contract_error("missing query (config 'query': {cells: [...]})");
  return *cfg.query;
}

void check_window(const ExperimentConfig& cfg) {
  if (!cfg.window.aligned(cfg.level)) {
    std::ostringstream os;
    os << "window [" << cfg.window.a << ", " << cfg.window.b
       << ") is not aligned to the level-" << cfg.level << " cell grid";
    throw contract_error(os.str());
  }
}

int cmd_alpha_det(const CommonFlags& flags, const std::string& method) {
  const ExperimentConfig cfg = flags.resolve();
  if (!cfg.matrix) throw contract_error("alpha-det: missing 'matrix' in config");
  const AlphaParam& alpha = need_alpha(cfg);
  const Complex v = method == "naive" ? det_alpha_naive(*cfg.matrix, alpha)
                                      : det_alpha_dp(*cfg.matrix, alpha);
  std::ostringstream os;
  if (std::abs(v.imag()) <= 1e-12 * std::max(1.0, std::abs(v.real())))
    os << format_real(v.real()) << "\n";
  else
    os << format_real(v.real()) << (v.imag() < 0 ? "-" : "+") << format_real(std::abs(v.imag()))
       << "i\n";
  emit_text(flags.out, os.str());
  return kExitOk;
}

int cmd_project(const CommonFlags& flags) {
  const ExperimentConfig cfg = flags.resolve();
  check_window(cfg);
  const ProjectedKernel proj =
      project_kernel(need_kernel(cfg), cfg.level, cfg.max_rank, cfg.window, cfg.quad);
  emit_text(flags.out,
            flags.format == "csv" ? projected_to_csv(proj) : json_text(projected_to_json(proj)));
  return kExitOk;
}

int cmd_spectrum(const CommonFlags& flags) {
  const ExperimentConfig cfg = flags.resolve();
  check_window(cfg);
  const KernelSpec& kernel = need_kernel(cfg);
  const ProjectedKernel proj =
      project_kernel(kernel, cfg.level, cfg.max_rank, cfg.window, cfg.quad);
  const Real tol = cfg.tolerance > 0 ? cfg.tolerance : 1e-2;
  const SpectrumReport report = spectrum_check(kernel, proj, cfg.grid_n, tol);
  emit_text(flags.out,
            flags.format == "csv" ? spectrum_to_csv(report) : json_text(spectrum_to_json(report)));
  return report.pass ? kExitOk : kExitCheckFailed;
}

int cmd_parseval(const CommonFlags& flags) {
  const ExperimentConfig cfg = flags.resolve();
  check_window(cfg);
  const KernelSpec& kernel = need_kernel(cfg);
  const ProjectedKernel proj =
      project_kernel(kernel, cfg.level, cfg.max_rank, cfg.window, cfg.quad);
  const ParsevalReport report =
      verify_parseval(kernel, proj, need_alpha(cfg), need_query(cfg), cfg.tolerance, cfg.quad);
  emit_text(flags.out,
            flags.format == "csv" ? parseval_to_csv(report) : json_text(parseval_to_json(report)));
  return report.pass ? kExitOk : kExitCheckFailed;
}

int cmd_sample(const CommonFlags& flags) {
  const ExperimentConfig cfg = flags.resolve();
  check_window(cfg);
  const ProjectedKernel proj =
      project_kernel(need_kernel(cfg), cfg.level, cfg.max_rank, cfg.window, cfg.quad);
  const DiscreteSampler sampler(proj, need_alpha(cfg));
  const CounterRng base(cfg.seed);
  std::vector<std::string> lines(cfg.n_samples);
  parallel_for(cfg.n_samples, [&](std::int64_t s) {
    CounterRng rng = base.split(static_cast<std::uint64_t>(s));
    const LiftedConfiguration lifted = attach_marks(sampler.sample(rng), rng);
    lines[s] = sample_to_json_line(lifted, cell_counts(lifted.points, cfg.level, cfg.window));
  });
  std::ostringstream os;
  for (const std::string& line : lines) os << line << '\n';
  emit_text(flags.out, os.str());
  return kExitOk;
}

int cmd_verify_lift(const CommonFlags& flags) {
  const ExperimentConfig cfg = flags.resolve();
  check_window(cfg);
  const LiftReport report =
      verify_lift(need_kernel(cfg), need_alpha(cfg), cfg.level, cfg.max_rank, cfg.window,
                  need_query(cfg), cfg.n_samples, cfg.seed, cfg.quad);
  emit_text(flags.out,
            flags.format == "csv" ? lift_to_csv(report) : json_text(lift_to_json(report)));
  return report.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"alpha-determinantal point processes on dyadic trees"};
  app.require_subcommand(1);

  CommonFlags f_det, f_proj, f_spec, f_pars, f_samp, f_lift;
  std::string det_method = "dp";

  CLI::App* c_det = app.add_subcommand("alpha-det", "evaluate det_alpha of a matrix");
  f_det.attach(c_det, false);
  c_det->add_option("--method", det_method, "naive or dp")
      ->check(CLI::IsMember({"naive", "dp"}));

  CLI::App* c_proj = app.add_subcommand("project", "project a kernel onto the tree basis");
  f_proj.attach(c_proj, false);
  CLI::App* c_spec = app.add_subcommand("spectrum", "compare projected and Nystrom spectra");
  f_spec.attach(c_spec, false);
  CLI::App* c_pars = app.add_subcommand("parseval", "check the correlation series identity");
  f_pars.attach(c_pars, false);
  CLI::App* c_samp = app.add_subcommand("sample", "draw lifted configurations (JSON lines)");
  f_samp.attach(c_samp, true);
  CLI::App* c_lift = app.add_subcommand("verify-lift", "Monte Carlo check of the lifted law");
  f_lift.attach(c_lift, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (c_det->parsed()) return cmd_alpha_det(f_det, det_method);
    if (c_proj->parsed()) return cmd_project(f_proj);
    if (c_spec->parsed()) return cmd_spectrum(f_spec);
    if (c_pars->parsed()) return cmd_parseval(f_pars);
    if (c_samp->parsed()) return cmd_sample(f_samp);
    if (c_lift->parsed()) return cmd_verify_lift(f_lift);
    std::cerr << "no subcommand\n";
    return kExitConfig;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const contract_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const resource_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const validation_error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace alphadpp
