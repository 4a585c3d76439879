#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "wignerlab/error.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/modspace.hpp"
#include "wignerlab/moments.hpp"
#include "wignerlab/states.hpp"
#include "wignerlab/wigner.hpp"

namespace wignerlab::cli {

using nlohmann::json;

json Context::header(std::string_view command) const {
  json j;
  j["command"] = std::string(command);
  j["grid"] = grid_metadata(grid);
  j["dim"] = config.dim;
  json tol = json::object();
  for (const auto& [name, value] : config.tol.as_map()) tol[name] = value;
  j["tolerances"] = tol;
  return j;
}

std::filesystem::path Context::path(std::string_view name) const { return config.output_dir / std::string(name); }

void Context::write(const json& j, std::string_view name) const {
  const auto p = path(name);
  write_json(j, p);
  out << "wrote " << p.string() << "\n";
}

namespace {

SampledState load_state(const Context& ctx, const std::string& text) {
  return catalog_state(parse_state_descriptor(text), ctx.grid.x, ctx.config.hbar);
}

json member_list(const Ensemble& e) {
  json members = json::array();
  for (const auto& m : e.members) members.push_back({{"state", m.state.label}, {"weight", m.weight}});
  return members;
}

}  // namespace

Ensemble load_source(const Context& ctx, const Source& src) {
  if (!src.ensemble.empty()) return read_ensemble(src.ensemble, ctx.grid.x, ctx.config.hbar, ctx.config.tol);
  if (src.state.empty()) throw InvalidArgument("one of --state or --ensemble is required");
  auto psi = load_state(ctx, src.state);
  return Ensemble({{std::move(psi), 1.0}}, src.state, ctx.config.tol);
}

int cmd_wigner(const Context& ctx, const std::string& state) {
  const auto psi = load_state(ctx, state);
  const auto w = wigner(psi, ctx.grid, ctx.wigner_options());
  write_field_csv(w.field, ctx.path("wigner.csv"));
  ctx.out << "wrote " << ctx.path("wigner.csv").string() << "\n";

  auto j = ctx.header("wigner");
  j["state"] = psi.label;
  j["imag_ratio"] = w.imag_ratio;
  j["integral"] = integrate(w.field).real();
  j["max_abs"] = w.field.max_abs();
  j["field_csv"] = "wigner.csv";
  ctx.write(j, "wigner.json");
  return kPass;
}

int cmd_cross_wigner(const Context& ctx, const std::string& state, const std::string& window) {
  const auto psi = load_state(ctx, state);
  const auto phi = load_state(ctx, window);
  const auto w = cross_wigner(psi, phi, ctx.grid, ctx.wigner_options());
  write_complex_field_csv(w.field, ctx.path("cross_wigner.csv"));
  ctx.out << "wrote " << ctx.path("cross_wigner.csv").string() << "\n";

  const Complex integral = integrate(w.field);
  auto j = ctx.header("cross-wigner");
  j["state"] = psi.label;
  j["window"] = phi.label;
  j["integral"] = {integral.real(), integral.imag()};
  j["overlap_residual"] = overlap_identity_check(psi, phi, ctx.grid);
  j["max_abs"] = w.field.max_abs();
  j["field_csv"] = "cross_wigner.csv";
  ctx.write(j, "cross_wigner.json");
  return kPass;
}

int cmd_marginals(const Context& ctx, const Source& src) {
  const auto e = load_source(ctx, src);
  const auto rho = mixed_wigner(e, ctx.grid, ctx.wigner_options());
  const auto report = marginals(rho, e, ctx.config.tol);
  write_series_csv("x", ctx.grid.x.points(), report.x_marginal, ctx.path("marginals_x.csv"));
  write_series_csv("p", ctx.grid.p.points(), report.p_marginal, ctx.path("marginals_p.csv"));

  auto j = ctx.header("marginals");
  j["ensemble"] = e.label;
  j["members"] = member_list(e);
  j["report"] = to_json(report);
  ctx.write(j, "marginals.json");
  return kPass;
}

int cmd_moments(const Context& ctx, const Source& src, bool write_characteristic) {
  const auto e = load_source(ctx, src);
  const auto rho = mixed_wigner(e, ctx.grid, ctx.wigner_options());
  const auto verdict = classify_ladder(rho, 2.0, e.label, ctx.config.tol);
  auto j = ctx.header("moments");
  j["ensemble"] = e.label;
  j["members"] = member_list(e);
  j["s2_ladder"] = to_json(verdict);
  const auto report = covariance(rho, verdict, ctx.config.tol);
  j["report"] = to_json(report);
  if (!report.reliable)
    ctx.err << "warning: quadrature and characteristic-function moments differ by " << report.residual << "\n";

  if (write_characteristic) {
    write_complex_field_csv(characteristic_function(rho), ctx.path("characteristic.csv"));
    ctx.out << "wrote " << ctx.path("characteristic.csv").string() << "\n";
    j["characteristic_csv"] = "characteristic.csv";
  }
  ctx.write(j, "covariance.json");
  return kPass;
}

int cmd_modnorm(const Context& ctx, const std::string& state, double s, const std::string& window) {
  const auto psi = load_state(ctx, state);
  ModulationOptions options{.window = load_state(ctx, window), .tol = ctx.config.tol, .wigner = ctx.wigner_options()};
  const auto report = modulation_norm(psi, s, ctx.grid, options);

  auto j = ctx.header("modnorm");
  j["state"] = psi.label;
  j["report"] = to_json(report);
  ctx.write(j, "modnorm.json");
  ctx.out << "verdict " << to_string(report.verdict) << "\n";
  return kPass;
}

int cmd_diagnose(const Context& ctx, const std::string& state, std::optional<double> support_width) {
  const auto descriptor = parse_state_descriptor(state);
  if (!support_width) {
    if (const auto* box = std::get_if<descriptor::Box>(&descriptor)) support_width = box->b - box->a;
  }
  const auto psi = catalog_state(descriptor, ctx.grid.x, ctx.config.hbar);
  const auto report = feichtinger_diagnostic(psi, ctx.grid, ctx.config.tol, ctx.wigner_options());

  auto j = ctx.header("diagnose");
  j["state"] = psi.label;
  j["report"] = to_json(report);
  if (support_width) {
    const bool ok = resolves_support(ctx.grid, *support_width);
    j["support_width"] = *support_width;
    j["resolves_support"] = ok;
    if (!ok)
      ctx.err << "warning: P_max = " << ctx.grid.p.half_width() << " is below 32*2*pi*hbar/" << *support_width
              << "; divergence may not be visible on this grid\n";
  }
  ctx.write(j, "diagnose.json");
  ctx.out << "verdict " << to_string(report.verdict) << "\n";
  return kPass;
}

int cmd_ensemble_build(const Context& ctx, const std::filesystem::path& ensemble) {
  const auto e = read_ensemble(ensemble, ctx.grid.x, ctx.config.hbar, ctx.config.tol);
  const auto a = build_A(e, ctx.config.dim, ctx.config.hbar, ctx.config.tol);
  const auto rho = density_matrix(a);
  const auto direct = density_matrix_direct(e, ctx.config.dim, ctx.config.hbar, ctx.config.tol);

  auto j = ctx.header("ensemble-build");
  j["ensemble"] = e.label;
  j["members"] = member_list(e);
  j["A"] = to_json(a.matrix);
  j["truncation_residual"] = a.truncation_residual;
  j["density_matrix"] = to_json(rho.matrix);
  j["trace"] = rho.matrix.trace().real();
  j["direct_route_residual"] = (rho.matrix - direct.matrix).norm();
  ctx.write(j, "ensemble_build.json");
  return kPass;
}

int cmd_ensemble_equiv(const Context& ctx, const std::filesystem::path& first, const std::filesystem::path& second,
                       double s) {
  const auto& cfg = ctx.config;
  const auto e1 = read_ensemble(first, ctx.grid.x, cfg.hbar, cfg.tol);
  const auto e2 = read_ensemble(second, ctx.grid.x, cfg.hbar, cfg.tol);
  const auto a1 = build_A(e1, cfg.dim, cfg.hbar, cfg.tol);
  const auto a2 = build_A(e2, cfg.dim, cfg.hbar, cfg.tol);
  const auto u = find_partial_isometry(a1, a2, cfg.tol);
  const auto closure = feichtinger_closure_check(e1, e2, ctx.grid, s, cfg.dim, cfg.tol);

  auto j = ctx.header("ensemble-equiv");
  j["first"] = e1.label;
  j["second"] = e2.label;
  j["isometry"] = {{"matrix", to_json(u.matrix)},
                   {"rank", static_cast<long>(u.rank)},
                   {"defect", u.defect},
                   {"factorization_residual", u.factorization_residual}};
  j["closure"] = to_json(closure);
  ctx.write(j, "ensemble_equiv.json");
  ctx.out << "closure " << to_string(closure.outcome) << "\n";
  if (closure.outcome == ClosureOutcome::inconclusive)
    ctx.err << "warning: the first ensemble has no convergent verdict at s = " << s << "\n";
  return closure.outcome == ClosureOutcome::violated ? kCheckFailed : kPass;
}

int cmd_ensemble_spectral(const Context& ctx, const std::filesystem::path& ensemble) {
  const auto& cfg = ctx.config;
  const auto e = read_ensemble(ensemble, ctx.grid.x, cfg.hbar, cfg.tol);
  const auto rho = density_matrix(build_A(e, cfg.dim, cfg.hbar, cfg.tol));
  const auto spectral = spectral_ensemble(rho, ctx.grid.x, cfg.hbar, cfg.tol);

  double total = 0.0;
  for (const auto& m : spectral.members) total += m.weight;

  // The emitted ensemble file is readable by the other subcommands, so its
  // weights are rescaled by the trace that the truncation keeps.
  json members = json::array();
  json eigenvalues = json::array();
  for (std::size_t k = 0; k < spectral.members.size(); ++k) {
    const auto name = "eigen_" + std::to_string(k) + ".csv";
    write_state_csv(spectral.members[k].state, ctx.path(name));
    ctx.out << "wrote " << ctx.path(name).string() << "\n";
    members.push_back({{"state", "file:" + name}, {"weight", spectral.members[k].weight / total}});
    eigenvalues.push_back(spectral.members[k].weight);
  }
  ctx.write({{"label", spectral.label}, {"members", members}}, "spectral_ensemble.json");

  auto j = ctx.header("ensemble-spectral");
  j["ensemble"] = e.label;
  j["eigenvalues"] = eigenvalues;
  j["eigenvalue_sum"] = total;
  j["trace_residual"] = rho.trace_residual;
  j["ensemble_file"] = "spectral_ensemble.json";
  ctx.write(j, "spectral.json");
  return kPass;
}

}  // namespace wignerlab::cli
