#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "wignerlab/ensemble.hpp"
#include "wignerlab/grid.hpp"

namespace wignerlab::cli {

struct Context {
  RunConfig config;
  PhaseSpaceGrid grid;
  std::ostream& out;
  std::ostream& err;

  /// command, grid metadata and tolerances; the start of every JSON artifact.
  [[nodiscard]] nlohmann::json header(std::string_view command) const;
  [[nodiscard]] std::filesystem::path path(std::string_view name) const;
  void write(const nlohmann::json& j, std::string_view name) const;
  [[nodiscard]] WignerOptions wigner_options() const { return {.threads = config.threads}; }
};

/// Either a single pure state or an ensemble file.
struct Source {
  std::string state;
  std::filesystem::path ensemble;
};

Ensemble load_source(const Context& ctx, const Source& src);

int cmd_wigner(const Context& ctx, const std::string& state);
int cmd_cross_wigner(const Context& ctx, const std::string& state, const std::string& window);
int cmd_marginals(const Context& ctx, const Source& src);
int cmd_moments(const Context& ctx, const Source& src, bool write_characteristic);
int cmd_modnorm(const Context& ctx, const std::string& state, double s, const std::string& window);
int cmd_diagnose(const Context& ctx, const std::string& state, std::optional<double> support_width);
int cmd_ensemble_build(const Context& ctx, const std::filesystem::path& ensemble);
int cmd_ensemble_equiv(const Context& ctx, const std::filesystem::path& first, const std::filesystem::path& second,
                       double s);
int cmd_ensemble_spectral(const Context& ctx, const std::filesystem::path& ensemble);
int cmd_reproduce(const Context& ctx, const std::string& scenario);

}  // namespace wignerlab::cli
