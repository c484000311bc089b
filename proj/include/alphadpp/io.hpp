#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "alphadpp/correlation.hpp"
#include "alphadpp/kernel.hpp"
#include "alphadpp/sampler.hpp"

namespace alphadpp {

// Experiment configuration shared by the CLI subcommands; every field can be
// loaded from a JSON file and overridden by flags.
struct ExperimentConfig {
  std::optional<KernelSpec> kernel;
  std::optional<AlphaParam> alpha;
  int level = 1;
  int max_rank = 4;
  Window window{0.0, 1.0};
  QuadratureSpec quad;
  std::optional<CorrelationQuery> query;
  std::int64_t n_samples = 10000;
  std::uint64_t seed = 1;
  Real tolerance = 1e-3;
  int grid_n = 512;
  std::optional<MatrixXc> matrix;  // alpha-det subcommand input
};

// Failed file reads/writes; the CLI maps this to its I/O exit code.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const nlohmann::json& j);

KernelSpec kernel_from_json(const nlohmann::json& j);
nlohmann::json kernel_to_json(const KernelSpec& k);

nlohmann::json projected_to_json(const ProjectedKernel& proj);
std::string projected_to_csv(const ProjectedKernel& proj);

nlohmann::json parseval_to_json(const ParsevalReport& r);
std::string parseval_to_csv(const ParsevalReport& r);

nlohmann::json lift_to_json(const LiftReport& r);
std::string lift_to_csv(const LiftReport& r);

nlohmann::json spectrum_to_json(const SpectrumReport& r);
std::string spectrum_to_csv(const SpectrumReport& r);

// One sample per line: {"counts": [..], "indices": [..], "points": [..]}.
std::string sample_to_json_line(const LiftedConfiguration& lifted,
                                const std::vector<std::int64_t>& counts);

// Serialize with sorted keys and shortest round-trip numbers (byte stable),
// writing to the path or stdout when path is empty.
void emit_text(const std::string& path, const std::string& text);
std::string json_text(const nlohmann::json& j);

// 17 significant digits, '.' decimal point; used by every CSV writer.
std::string format_real(Real v);

}  // namespace alphadpp
