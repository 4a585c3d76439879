#include "wignerlab/tolerances.hpp"

#include "wignerlab/error.hpp"

namespace wignerlab {

namespace {

template <typename F>
void for_each_field(Tolerances& t, F&& f) {
  f("unit_norm", t.unit_norm);
  f("realness", t.realness);
  f("convergence_rel", t.convergence_rel);
  f("diverging_slope", t.diverging_slope);
  f("basis_loss", t.basis_loss);
  f("eigen_floor", t.eigen_floor);
  f("psd", t.psd);
  f("pinv_cutoff", t.pinv_cutoff);
  f("equivalence", t.equivalence);
  f("factorization", t.factorization);
  f("wigner_agreement", t.wigner_agreement);
  f("moment_routes", t.moment_routes);
  f("weight_sum", t.weight_sum);
}

}  // namespace

void Tolerances::set(const std::string& name, double value) {
  if (!(value > 0.0)) throw InvalidArgument("tolerance '" + name + "' must be positive");
  bool found = false;
  for_each_field(*this, [&](const char* key, double& field) {
    if (name == key) {
      field = value;
      found = true;
    }
  });
  if (!found) throw InvalidArgument("unknown tolerance '" + name + "'");
}

std::map<std::string, double> Tolerances::as_map() const {
  std::map<std::string, double> out;
  auto copy = *this;
  for_each_field(copy, [&](const char* key, double& field) { out[key] = field; });
  return out;
}

}  // namespace wignerlab
