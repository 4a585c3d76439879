#pragma once

#include <map>
#include <string>

namespace wignerlab {

// Every numerical threshold used to turn quadrature output into a verdict or
// an error lives here, so callers (and JSON artifacts) can see and override
// them in one place.
struct Tolerances {
  double unit_norm = 1e-8;
  double realness = 1e-10;
  double convergence_rel = 1e-3;      // last two ladder partials
  double diverging_slope = 0.5;       // per decade of cutoff
  double basis_loss = 1e-3;           // hermite(dim-1) norm loss
  double eigen_floor = 1e-10;
  double psd = 1e-8;
  double pinv_cutoff = 1e-10;
  double equivalence = 1e-6;          // ||AA* - A'A'*||
  double factorization = 1e-6;        // ||A - A'U||
  double wigner_agreement = 1e-5;     // mixed Wigner fields, pointwise
  double moment_routes = 1e-3;        // quadrature vs characteristic function
  double weight_sum = 1e-10;

  /// Sets the tolerance called `name`; throws InvalidArgument for unknown
  /// names or non-positive values.
  void set(const std::string& name, double value);

  [[nodiscard]] std::map<std::string, double> as_map() const;
};

}  // namespace wignerlab
