#include "wignerlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wignerlab/error.hpp"
#include "wignerlab/states.hpp"

namespace wignerlab {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

// nlohmann prints the shortest round-trip representation; artifacts use a
// fixed %.17g instead, so the emitter is ours.
void emit(const json& j, std::ostream& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << json(it.key()).dump() << ": ";
        emit(it.value(), out, depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (flat) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          emit(j[i], out, depth + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        emit(j[i], out, depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
      return;
  }
}

}  // namespace

nlohmann::json grid_metadata(const PhaseSpaceGrid& grid) {
  return json{{"n", grid.x.size()},
              {"L", grid.x.half_width()},
              {"dx", grid.x.spacing()},
              {"dp", grid.p.spacing()},
              {"hbar", grid.hbar}};
}

nlohmann::json to_json(const WeightedNormReport& report) {
  json partials = json::array();
  for (const auto& pn : report.partial_norms) partials.push_back(json::array({pn.cutoff, pn.value}));
  return json{{"s", report.s},
              {"window", report.window_label},
              {"partials", partials},
              {"growth_exponent", report.growth_exponent},
              {"verdict", std::string(to_string(report.verdict))}};
}

namespace {
json matrix2(const Matrix2& m) { return json::array({json::array({m[0][0], m[0][1]}), json::array({m[1][0], m[1][1]})}); }
}  // namespace

nlohmann::json to_json(const CovarianceReport& report) {
  return json{{"mean", json::array({report.mean[0], report.mean[1]})},
              {"sigma", matrix2(report.sigma)},
              {"second_moments_fd", matrix2(report.second_moments_fd)},
              {"residual", report.residual},
              {"fd_halving_change", report.fd_halving_change},
              {"reliable", report.reliable}};
}

nlohmann::json to_json(const MarginalReport& report) {
  return json{{"x_residual", report.x_residual},
              {"p_residual", report.p_residual},
              {"norm_residual", report.norm_residual}};
}

nlohmann::json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json(const ClosureReport& report) {
  json first = json::array(), second = json::array();
  for (const auto& r : report.first) first.push_back(to_json(r));
  for (const auto& r : report.second) second.push_back(to_json(r));
  return json{{"density_residual", report.density_residual},
              {"wigner_residual", report.wigner_residual},
              {"first", first},
              {"second", second},
              {"outcome", std::string(to_string(report.outcome))}};
}

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  emit(j, out, 0);
  out << "\n";
}

void write_field_csv(const PhaseSpaceField& field, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  const auto& g = field.grid();
  char buf[96];
  out << "x,p,value\n";
  for (std::size_t i = 0; i < field.nx(); ++i)
    for (std::size_t j = 0; j < field.np(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.x.point(i), g.p.point(j), field.at(i, j).real());
      out << buf;
    }
}

void write_complex_field_csv(const PhaseSpaceField& field, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  const auto& g = field.grid();
  char buf[128];
  out << "x,p,re,im\n";
  for (std::size_t i = 0; i < field.nx(); ++i)
    for (std::size_t j = 0; j < field.np(); ++j) {
      const auto z = field.at(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", g.x.point(i), g.p.point(j), z.real(), z.imag());
      out << buf;
    }
}

void write_series_csv(const std::string& axis, const std::vector<double>& axis_values,
                      const std::vector<double>& values, const std::filesystem::path& path) {
  if (axis_values.size() != values.size()) throw InvalidArgument("series length mismatch");
  auto out = open_for_write(path);
  char buf[64];
  out << axis << ",value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", axis_values[i], values[i]);
    out << buf;
  }
}

Ensemble read_ensemble(const std::filesystem::path& path, const PositionGrid& grid, double hbar,
                       const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ensemble file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("members") || !doc["members"].is_array())
    throw IoError(path.string() + ": expected an object with a 'members' array");

  std::vector<EnsembleMember> members;
  for (const auto& entry : doc["members"]) {
    if (!entry.is_object() || !entry.contains("weight") || !entry.contains("state") || !entry["weight"].is_number() ||
        !entry["state"].is_string())
      throw IoError(path.string() + ": each member needs a numeric 'weight' and a string 'state'");
    auto descriptor = parse_state_descriptor(entry["state"].get<std::string>());
    if (auto* samples = std::get_if<descriptor::Samples>(&descriptor); samples && samples->path.is_relative())
      samples->path = path.parent_path() / samples->path;
    members.push_back({catalog_state(descriptor, grid, hbar), entry["weight"].get<double>()});
  }
  return Ensemble(std::move(members), doc.value("label", path.stem().string()), tol);
}

}  // namespace wignerlab
