#include "cli.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "wignerlab/error.hpp"

namespace wignerlab::cli {

namespace {

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("WIGNERLAB_OUT"); env != nullptr && *env != '\0') return env;
  return ".";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-space analysis of pure and mixed states", "wignerlab"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::optional<std::filesystem::path> out_dir;
  app.add_option("--hbar", config.hbar, "Reduced Planck constant")->capture_default_str();
  app.add_option("--grid-n", config.grid_n, "Lattice points per axis (power of two)")->capture_default_str();
  app.add_option("--grid-l", config.grid_l, "Position half-width L")->capture_default_str();
  app.add_option("--dim", config.dim, "Hermite basis dimension")->capture_default_str();
  app.add_option("--threads", config.threads, "Worker threads for Wigner slices (0 = all cores)");
  app.add_option("--out", out_dir, "Output directory (default: $WIGNERLAB_OUT or .)");

  std::map<std::string, double> tol_overrides;
  for (const auto& [name, value] : config.tol.as_map()) {
    app.add_option_function<double>(
           "--tol." + name, [&tol_overrides, name](double v) { tol_overrides[name] = v; }, "Tolerance override")
        ->type_name("REAL");
  }

  std::string state, window = "hermite:0", scenario;
  std::filesystem::path ensemble, second;
  double s = 0.0;
  std::optional<double> support_width;
  bool characteristic = false;

  auto* wigner = app.add_subcommand("wigner", "Wigner transform of a state");
  wigner->add_option("--state", state, "State descriptor")->required();

  auto* cross = app.add_subcommand("cross-wigner", "Cross-Wigner transform W(state, window)");
  cross->add_option("--state", state, "First state")->required();
  cross->add_option("--window", window, "Second state")->capture_default_str();

  auto* marg = app.add_subcommand("marginals", "Marginals of a pure or mixed Wigner distribution");
  auto* marg_state = marg->add_option("--state", state, "Pure state descriptor");
  marg->add_option("--ensemble", ensemble, "Ensemble JSON file")->excludes(marg_state);

  auto* mom = app.add_subcommand("moments", "Mean vector and covariance matrix");
  auto* mom_state = mom->add_option("--state", state, "Pure state descriptor");
  mom->add_option("--ensemble", ensemble, "Ensemble JSON file")->excludes(mom_state);
  mom->add_flag("--characteristic", characteristic, "Also write the characteristic function");

  auto* modnorm = app.add_subcommand("modnorm", "Modulation-space norm ladder");
  modnorm->add_option("--state", state, "State descriptor")->required();
  modnorm->add_option("--s", s, "Weight exponent")->capture_default_str();
  modnorm->add_option("--window", window, "Window state")->capture_default_str();

  auto* diagnose = app.add_subcommand("diagnose", "Feichtinger-algebra membership diagnostic");
  diagnose->add_option("--state", state, "State descriptor")->required();
  diagnose->add_option("--support-width", support_width, "Support width for the resolution check");

  auto* build = app.add_subcommand("ensemble-build", "Operator A and density matrix of an ensemble");
  build->add_option("--ensemble", ensemble, "Ensemble JSON file")->required();

  auto* equiv = app.add_subcommand("ensemble-equiv", "Partial isometry and closure check for two ensembles");
  equiv->add_option("--first", ensemble, "Ensemble JSON file")->required();
  equiv->add_option("--second", second, "Ensemble JSON file")->required();
  equiv->add_option("--s", s, "Weight exponent of the closure check")->capture_default_str();

  auto* spectral = app.add_subcommand("ensemble-spectral", "Spectral ensemble of a density matrix");
  spectral->add_option("--ensemble", ensemble, "Ensemble JSON file")->required();

  auto* reproduce = app.add_subcommand("reproduce", "Run a reproduction scenario");
  reproduce->add_option("scenario", scenario, "prop1, prop2, prop3 or cor5")
      ->required()
      ->check(CLI::IsMember({"prop1", "prop2", "prop3", "cor5"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    for (const auto& [name, value] : tol_overrides) config.tol.set(name, value);
    config.output_dir = out_dir ? *out_dir : default_output_dir();
    if (config.dim < 1 || config.dim > kMaxBasisDim)
      throw InvalidArgument("--dim must lie in [1, " + std::to_string(kMaxBasisDim) + "]");
    const Context ctx{config, make_grid(config.grid_n, config.grid_l, config.hbar), out, err};
    const Source source{state, ensemble};

    if (wigner->parsed()) return cmd_wigner(ctx, state);
    if (cross->parsed()) return cmd_cross_wigner(ctx, state, window);
    if (marg->parsed()) return cmd_marginals(ctx, source);
    if (mom->parsed()) return cmd_moments(ctx, source, characteristic);
    if (modnorm->parsed()) return cmd_modnorm(ctx, state, s, window);
    if (diagnose->parsed()) return cmd_diagnose(ctx, state, support_width);
    if (build->parsed()) return cmd_ensemble_build(ctx, ensemble);
    if (equiv->parsed()) return cmd_ensemble_equiv(ctx, ensemble, second, s);
    if (spectral->parsed()) return cmd_ensemble_spectral(ctx, ensemble);
    if (reproduce->parsed()) return cmd_reproduce(ctx, scenario);
  } catch (const Refused& e) {
    err << "refused: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const NotEquivalent& e) {
    err << "not equivalent: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace wignerlab::cli
