#pragma once

// Seeded batch runner behind the `foguel` command line tool.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foguel {

enum class Experiment {
  verify_spectrum,
  verify_norm,
  verify_resolvent,
  verify_inverses,
  verify_dilation,
  verify_polynomial,
  verify_power,
  verify_schur,
  shift_convergence,
};

enum class OutputFormat { json_lines, csv };

std::string_view to_string(Experiment e);
std::string_view to_string(OutputFormat f);
// Throw ErrorCode::usage for unknown names.
Experiment parse_experiment(std::string_view name);
OutputFormat parse_format(std::string_view name);
const std::vector<Experiment>& all_experiments();

struct ExperimentConfig {
  Experiment experiment = Experiment::verify_norm;
  int dim = 8;
  int trials = 10;
  std::uint64_t seed = 0;
  std::optional<double> tol;  // per-experiment default when unset
  OutputFormat format = OutputFormat::json_lines;
  int power_max = 10;
  int poly_degree = 8;
  int neumann_order = 64;
  std::vector<int> shift_dims{16, 64, 256};
  // "unit" pins V = [1], T = [1] (dim must be 1).
  std::string fixture;
  int max_dim = 512;

  // Throws ErrorCode::usage naming the offending field.
  void validate() const;
  double effective_tol() const;
};

double default_tolerance(Experiment e);

// Reads a JSON object whose keys mirror the long command line flags
// (experiment, dim, trials, seed, tol, format, power-max, poly-degree,
// neumann-order, shift-dims, fixture). Missing keys keep `base` values.
ExperimentConfig load_config_file(const std::string& path,
                                  ExperimentConfig base = {});

struct TrialRecord {
  int trial = 0;
  double deviation = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::string reason;  // error code of an expected numeric failure
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRecord> records;  // ordered by trial id
  double max_deviation = 0.0;
  double min_slack = 0.0;
  int pass_count = 0;
  double wall_seconds = 0.0;

  bool pass() const noexcept {
    return pass_count == static_cast<int>(records.size());
  }
};

// Runs config.trials independent trials, trial i drawing from stream i.
// Expected numeric errors become failed trials; internal-consistency errors
// propagate.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Wall time is left out of the stream so equal configs give equal bytes.
void emit_report(const ExperimentReport& report, OutputFormat format,
                 std::ostream& out);

}  // namespace foguel
