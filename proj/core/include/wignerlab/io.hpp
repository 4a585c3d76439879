#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "wignerlab/ensemble.hpp"
#include "wignerlab/grid.hpp"
#include "wignerlab/modspace.hpp"
#include "wignerlab/moments.hpp"

namespace wignerlab {

nlohmann::json grid_metadata(const PhaseSpaceGrid& grid);
nlohmann::json to_json(const WeightedNormReport& report);
nlohmann::json to_json(const CovarianceReport& report);
nlohmann::json to_json(const MarginalReport& report);  // residuals only
nlohmann::json to_json(const ComplexMatrix& m);        // row-major [re, im] pairs
nlohmann::json to_json(const ClosureReport& report);

/// CSV `x,p,value` (real part, row-major over x then p).
void write_field_csv(const PhaseSpaceField& field, const std::filesystem::path& path);
/// CSV `x,p,re,im` for complex fields.
void write_complex_field_csv(const PhaseSpaceField& field, const std::filesystem::path& path);
void write_series_csv(const std::string& axis, const std::vector<double>& axis_values,
                      const std::vector<double>& values, const std::filesystem::path& path);
void write_json(const nlohmann::json& j, const std::filesystem::path& path);

/// Ensemble file: {label, members: [{weight, state: "<descriptor>"}]}.
/// Relative file: paths resolve against the ensemble file's directory.
Ensemble read_ensemble(const std::filesystem::path& path, const PositionGrid& grid, double hbar,
                       const Tolerances& tol = {});

/// Fixed 17-significant-digit formatting used for every artifact.
std::string format_double(double v);

}  // namespace wignerlab
