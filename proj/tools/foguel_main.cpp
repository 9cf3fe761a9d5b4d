// foguel: seeded verification experiments for Foguel operators.
//
//   foguel <experiment> --dim N --trials K --seed S --tol 1e-8
//          --format json-lines|csv [--out PATH] [--config FILE]
//
// Exit status: 0 pass, 1 property failure, 2 usage error,
// 3 internal-consistency error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "foguel/error.hpp"
#include "foguel/experiments.hpp"
#include "foguel/simd/kernels.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

const char* describe(foguel::Experiment e) {
  using foguel::Experiment;
  switch (e) {
    case Experiment::verify_spectrum: return "spec(R R*) against the mapped spec(TT*)";
    case Experiment::verify_norm: return "‖R_T‖ against (t + √(t² + 4))/2";
    case Experiment::verify_resolvent: return "block resolvent of R R* at sampled λ";
    case Experiment::verify_inverses: return "block inverses of R_T and R R* − I";
    case Experiment::verify_dilation: return "unitary dilation and compression bound";
    case Experiment::verify_polynomial: return "‖p(R)‖ bound for normalized polynomials";
    case Experiment::verify_power: return "block power formula and ‖R^n‖ bound";
    case Experiment::verify_schur: return "norm recovered by Schur positivity bisection";
    case Experiment::shift_convergence: return "truncated-shift norms against the closed form";
  }
  return "";
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw foguel::Error(foguel::ErrorCode::usage,
                          "shift-dims: cannot parse '" + item + "'");
    }
  }
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded verification experiments for Foguel operators"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_path;
  std::string format_name = "json-lines";
  std::string shift_dims_text;
  std::string fixture;
  int dim = 8;
  int trials = 10;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int power_max = 10;
  int poly_degree = 8;
  int neumann_order = 64;
  bool show_kernels = false;

  app.add_flag("--kernels", show_kernels,
               "Print the active SIMD kernel set and exit");

  std::vector<CLI::Option*> overrides;
  std::vector<CLI::App*> subcommands;
  for (foguel::Experiment e : foguel::all_experiments()) {
    CLI::App* sub = app.add_subcommand(std::string(foguel::to_string(e)), describe(e));
    subcommands.push_back(sub);
  }
  // The same flag set on every subcommand.
  struct Flags {
    CLI::Option *config, *dim, *trials, *seed, *tol, *format, *out, *power_max,
        *poly_degree, *neumann_order, *shift_dims, *fixture;
  };
  std::vector<Flags> flags;
  for (CLI::App* sub : subcommands) {
    Flags f{};
    f.config = sub->add_option("--config", config_path, "JSON file mirroring the flags");
    f.dim = sub->add_option("--dim", dim, "Symbol dimension n");
    f.trials = sub->add_option("--trials", trials, "Number of seeded trials");
    f.seed = sub->add_option("--seed", seed, "64-bit base seed");
    f.tol = sub->add_option("--tol", tol, "Pass tolerance (experiment default when unset)");
    f.format = sub->add_option("--format", format_name, "json-lines or csv");
    f.out = sub->add_option("--out", out_path, "Write the report here instead of stdout");
    f.power_max = sub->add_option("--power-max", power_max, "Largest power for verify-power");
    f.poly_degree = sub->add_option("--poly-degree", poly_degree, "Largest degree for verify-polynomial");
    f.neumann_order = sub->add_option("--neumann-order", neumann_order, "Neumann truncation order");
    f.shift_dims = sub->add_option("--shift-dims", shift_dims_text, "Comma-separated truncation sizes");
    f.fixture = sub->add_option("--fixture", fixture, "Pinned inputs ('unit': V = [1], T = [1])");
    flags.push_back(f);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  if (show_kernels) {
    std::cout << foguel::simd::to_string(foguel::simd::active_isa()) << '\n';
    return kExitPass;
  }

  std::size_t chosen = subcommands.size();
  for (std::size_t i = 0; i < subcommands.size(); ++i)
    if (subcommands[i]->parsed()) chosen = i;
  if (chosen == subcommands.size()) {
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    foguel::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = foguel::load_config_file(config_path);
    cfg.experiment = foguel::all_experiments()[chosen];

    const Flags& f = flags[chosen];
    if (f.dim->count()) cfg.dim = dim;
    if (f.trials->count()) cfg.trials = trials;
    if (f.seed->count()) cfg.seed = seed;
    if (f.tol->count()) cfg.tol = tol;
    if (f.format->count()) cfg.format = foguel::parse_format(format_name);
    if (f.power_max->count()) cfg.power_max = power_max;
    if (f.poly_degree->count()) cfg.poly_degree = poly_degree;
    if (f.neumann_order->count()) cfg.neumann_order = neumann_order;
    if (f.shift_dims->count()) cfg.shift_dims = parse_dims(shift_dims_text);
    if (f.fixture->count()) cfg.fixture = fixture;
    cfg.validate();

    const foguel::ExperimentReport report = foguel::run_experiment(cfg);
    if (out_path.empty()) {
      foguel::emit_report(report, cfg.format, std::cout);
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out)
        throw foguel::Error(foguel::ErrorCode::io, "cannot open " + out_path);
      foguel::emit_report(report, cfg.format, out);
      out.close();
      if (!out)
        throw foguel::Error(foguel::ErrorCode::io, "failed writing " + out_path);
    }
    return report.pass() ? kExitPass : kExitPropertyFailure;
  } catch (const foguel::Error& e) {
    std::cerr << "foguel: " << foguel::to_string(e.code()) << ": " << e.what()
              << '\n';
    switch (e.code()) {
      case foguel::ErrorCode::usage:
      case foguel::ErrorCode::io:
        return kExitUsage;
      case foguel::ErrorCode::internal_consistency:
        return kExitInternal;
      default:
        return kExitPropertyFailure;
    }
  }
}
