#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "commands.hpp"
#include "wignerlab/error.hpp"
#include "wignerlab/io.hpp"
#include "wignerlab/moments.hpp"
#include "wignerlab/states.hpp"

namespace wignerlab::cli {

using nlohmann::json;

namespace {

struct Check {
  std::string name;
  double value;
  double threshold;
  [[nodiscard]] bool pass() const { return std::isfinite(value) && value <= threshold; }
};

class Scenario {
 public:
  Scenario(const Context& ctx, std::string name) : ctx_(ctx), name_(std::move(name)) {}

  void check(std::string what, double value, double threshold) {
    checks_.push_back({name_ + "." + std::move(what), value, threshold});
  }

  json& extra() { return extra_; }

  int finish() {
    bool all = true;
    json list = json::array();
    for (const auto& c : checks_) {
      all = all && c.pass();
      ctx_.out << (c.pass() ? "PASS " : "FAIL ") << c.name << " residual=" << format_double(c.value)
               << " threshold=" << format_double(c.threshold) << "\n";
      list.push_back({{"name", c.name}, {"residual", c.value}, {"threshold", c.threshold}, {"pass", c.pass()}});
    }
    auto j = ctx_.header("reproduce " + name_);
    j["checks"] = list;
    if (!extra_.is_null()) j["details"] = extra_;
    j["pass"] = all;
    ctx_.write(j, "reproduce_" + name_ + ".json");
    ctx_.out << (all ? "PASS " : "FAIL ") << name_ << "\n";
    return all ? kPass : kCheckFailed;
  }

 private:
  const Context& ctx_;
  std::string name_;
  std::vector<Check> checks_;
  json extra_;
};

SampledState state(const Context& ctx, const std::string& text) {
  return catalog_state(parse_state_descriptor(text), ctx.grid.x, ctx.config.hbar);
}

Ensemble hermite_pair(const Context& ctx) {
  return Ensemble({{state(ctx, "hermite:0"), 0.5}, {state(ctx, "hermite:1"), 0.5}}, "hermite-pair", ctx.config.tol);
}

Ensemble rotated_pair(const Context& ctx) {
  return Ensemble({{state(ctx, "combo:1:1"), 0.5}, {state(ctx, "combo:1:-1"), 0.5}}, "rotated-pair", ctx.config.tol);
}

// (|h0|^2 + |h1|^2) / 2 at u, the same in x and in p.
double pair_density(double u, double hbar) {
  const double g = std::exp(-u * u / hbar) / std::sqrt(std::numbers::pi * hbar);
  return 0.5 * g * (1.0 + 2.0 * u * u / hbar);
}

double max_deviation(const std::vector<double>& values, const std::vector<double>& axis, double hbar) {
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    worst = std::max(worst, std::abs(values[i] - pair_density(axis[i], hbar)));
  return worst;
}

int prop1(const Context& ctx) {
  Scenario sc(ctx, "prop1");
  const auto e = hermite_pair(ctx);
  const auto rho = mixed_wigner(e, ctx.grid, ctx.wigner_options());
  const auto report = marginals(rho, e, ctx.config.tol);
  const double hbar = ctx.config.hbar;
  sc.check("norm", std::abs(integrate(rho).real() - 1.0), 1e-6);
  sc.check("x_marginal", max_deviation(report.x_marginal, ctx.grid.x.points(), hbar), 1e-6);
  sc.check("p_marginal", max_deviation(report.p_marginal, ctx.grid.p.points(), hbar), 1e-6);
  sc.extra() = to_json(report);
  return sc.finish();
}

int prop2(const Context& ctx) {
  Scenario sc(ctx, "prop2");
  const auto e = hermite_pair(ctx);
  const auto rho = mixed_wigner(e, ctx.grid, ctx.wigner_options());
  const auto report = covariance(rho, classify_ladder(rho, 2.0, e.label, ctx.config.tol), ctx.config.tol);
  // Sigma = hbar * I for this ensemble (1/2 hbar from h0, 3/2 hbar from h1).
  double sigma_err = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      sigma_err = std::max(sigma_err, std::abs(report.sigma[a][b] - (a == b ? ctx.config.hbar : 0.0)));
  sc.check("sigma", sigma_err, 1e-5);
  sc.check("mean", std::max(std::abs(report.mean[0]), std::abs(report.mean[1])), 1e-5);
  sc.check("routes", report.residual, 1e-3);
  sc.extra() = to_json(report);
  return sc.finish();
}

int prop3(const Context& ctx) {
  Scenario sc(ctx, "prop3");
  const auto& cfg = ctx.config;
  const auto a = build_A(hermite_pair(ctx), cfg.dim, cfg.hbar, cfg.tol);
  const auto a_prime = build_A(rotated_pair(ctx), cfg.dim, cfg.hbar, cfg.tol);
  sc.check("density", (density_matrix(a).matrix - density_matrix(a_prime).matrix).norm(), 1e-10);

  const auto u = find_partial_isometry(a, a_prime, cfg.tol);
  sc.check("factorization", u.factorization_residual, 1e-8);
  sc.check("projection_defect", u.defect, 1e-8);

  // Leading block against the Hadamard matrix, one phase per column.
  const double r = 1.0 / std::sqrt(2.0);
  const double hadamard[2][2] = {{r, r}, {r, -r}};
  double block_err = 0.0;
  for (int col = 0; col < 2; ++col) {
    const Complex lead = u.matrix(0, col);
    const Complex phase = std::abs(lead) > 0.0 ? lead / std::abs(lead) : Complex(1.0);
    for (int row = 0; row < 2; ++row)
      block_err = std::max(block_err, std::abs(u.matrix(row, col) - hadamard[row][col] * phase));
  }
  sc.check("hadamard_block", block_err, 1e-8);
  sc.extra() = {{"rank", static_cast<long>(u.rank)},
                {"leading_block", to_json(ComplexMatrix(u.matrix.topLeftCorner(2, 2)))}};
  return sc.finish();
}

int cor5(const Context& ctx) {
  Scenario sc(ctx, "cor5");
  const auto e1 = hermite_pair(ctx);
  const auto e2 = rotated_pair(ctx);
  const auto w1 = mixed_wigner(e1, ctx.grid, ctx.wigner_options());
  const auto w2 = mixed_wigner(e2, ctx.grid, ctx.wigner_options());
  sc.check("wigner_agreement", max_abs_difference(w1, w2), 1e-5);

  json verdicts = json::array();
  double not_convergent = 0.0;
  for (const auto* e : {&e1, &e2}) {
    for (const auto& m : e->members) {
      const auto report = feichtinger_diagnostic(m.state, ctx.grid, ctx.config.tol, ctx.wigner_options());
      if (report.verdict != Verdict::convergent) not_convergent += 1.0;
      verdicts.push_back({{"state", m.state.label}, {"report", to_json(report)}});
    }
  }
  // Number of members without a convergent s = 0 verdict.
  sc.check("members_convergent", not_convergent, 0.0);
  sc.extra() = {{"verdicts", verdicts}};
  return sc.finish();
}

}  // namespace

int cmd_reproduce(const Context& ctx, const std::string& scenario) {
  if (scenario == "prop1") return prop1(ctx);
  if (scenario == "prop2") return prop2(ctx);
  if (scenario == "prop3") return prop3(ctx);
  if (scenario == "cor5") return cor5(ctx);
  throw InvalidArgument("unknown scenario '" + scenario + "'");
}

}  // namespace wignerlab::cli
