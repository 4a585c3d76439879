#include "wignerlab/states.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "wignerlab/error.hpp"

namespace wignerlab {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

unsigned parse_unsigned(std::string_view s, std::string_view what) {
  unsigned v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

}  // namespace

StateDescriptor parse_state_descriptor(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidArgument("state descriptor '" + std::string(text) + "' has no ':'");
  const auto kind = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);

  if (kind == "file" || kind == "file+norm") {
    if (rest.empty()) throw InvalidArgument("file descriptor needs a path");
    return descriptor::Samples{std::filesystem::path(std::string(rest)), kind == "file+norm"};
  }

  const auto args = split(rest, ':');
  if (kind == "gaussian") {
    if (args.size() != 1) throw InvalidArgument("gaussian takes one argument: gaussian:SIGMA");
    return descriptor::Gaussian{parse_double(args[0], "sigma")};
  }
  if (kind == "hermite") {
    if (args.size() != 1) throw InvalidArgument("hermite takes one argument: hermite:K");
    return descriptor::Hermite{parse_unsigned(args[0], "hermite index")};
  }
  if (kind == "box") {
    if (args.size() != 2) throw InvalidArgument("box takes two arguments: box:A:B");
    return descriptor::Box{parse_double(args[0], "box start"), parse_double(args[1], "box end")};
  }
  if (kind == "combo") {
    descriptor::HermiteCombination combo;
    for (auto a : args) {
      const auto comma = a.find(',');
      if (comma == std::string_view::npos) {
        combo.coefficients.emplace_back(parse_double(a, "coefficient"), 0.0);
      } else {
        combo.coefficients.emplace_back(parse_double(a.substr(0, comma), "coefficient"),
                                        parse_double(a.substr(comma + 1), "coefficient"));
      }
    }
    return combo;
  }
  throw InvalidArgument("unknown state kind '" + std::string(kind) + "'");
}

std::string to_string(const StateDescriptor& d) {
  struct Visitor {
    std::string operator()(const descriptor::Gaussian& g) const { return "gaussian:" + shortest(g.sigma); }
    std::string operator()(const descriptor::Hermite& h) const { return "hermite:" + std::to_string(h.k); }
    std::string operator()(const descriptor::Box& b) const { return "box:" + shortest(b.a) + ":" + shortest(b.b); }
    std::string operator()(const descriptor::Samples& s) const {
      return std::string(s.renormalize ? "file+norm:" : "file:") + s.path.string();
    }
    std::string operator()(const descriptor::HermiteCombination& c) const {
      std::string out = "combo";
      for (const auto& z : c.coefficients) {
        out += ":" + shortest(z.real());
        if (z.imag() != 0.0) out += "," + shortest(z.imag());
      }
      return out;
    }
  };
  return std::visit(Visitor{}, d);
}

std::vector<std::vector<double>> hermite_functions(unsigned count, const PositionGrid& grid, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  const std::size_t n = grid.size();
  std::vector<std::vector<double>> h(count, std::vector<double>(n));
  if (count == 0) return h;
  const double scale = std::sqrt(hbar);
  const double h0_norm = std::pow(std::numbers::pi * hbar, -0.25);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = grid.point(i) / scale;
    double prev = 0.0;
    double cur = h0_norm * std::exp(-0.5 * xi * xi);
    h[0][i] = cur;
    for (unsigned k = 0; k + 1 < count; ++k) {
      const double next = std::sqrt(2.0 / (k + 1.0)) * xi * cur - std::sqrt(k / (k + 1.0)) * prev;
      prev = cur;
      cur = next;
      h[k + 1][i] = cur;
    }
  }
  return h;
}

SampledState catalog_state(const StateDescriptor& d, const PositionGrid& grid, double hbar) {
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  const double L = grid.half_width();
  const std::size_t n = grid.size();

  auto check_hermite_support = [&](unsigned k) {
    // Classical turning point of the k-th oscillator level.
    if (std::sqrt((2.0 * k + 1.0) * hbar) >= L)
      throw InvalidArgument("hermite(" + std::to_string(k) + ") does not fit inside the grid half-width");
  };

  struct Builder {
    const PositionGrid& grid;
    double hbar;
    double L;
    std::size_t n;
    decltype(check_hermite_support)& check;

    SampledState operator()(const descriptor::Gaussian& g) const {
      if (!(g.sigma > 0.0)) throw InvalidArgument("gaussian sigma must be positive");
      if (g.sigma >= L / 4.0) throw InvalidArgument("gaussian sigma must be below a quarter of the grid half-width");
      std::vector<Complex> v(n);
      const double c = std::pow(std::numbers::pi * g.sigma * g.sigma, -0.25);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.point(i);
        v[i] = c * std::exp(-x * x / (2.0 * g.sigma * g.sigma));
      }
      return normalized(SampledState(grid, std::move(v), to_string(StateDescriptor{g})));
    }

    SampledState operator()(const descriptor::Hermite& h) const {
      check(h.k);
      auto table = hermite_functions(h.k + 1, grid, hbar);
      std::vector<Complex> v(table.back().begin(), table.back().end());
      return normalized(SampledState(grid, std::move(v), to_string(StateDescriptor{h})));
    }

    SampledState operator()(const descriptor::HermiteCombination& c) const {
      if (c.coefficients.empty()) throw InvalidArgument("combo needs at least one coefficient");
      const auto count = static_cast<unsigned>(c.coefficients.size());
      check(count - 1);
      auto table = hermite_functions(count, grid, hbar);
      std::vector<Complex> v(n);
      for (unsigned k = 0; k < count; ++k)
        for (std::size_t i = 0; i < n; ++i) v[i] += c.coefficients[k] * table[k][i];
      return normalized(SampledState(grid, std::move(v), to_string(StateDescriptor{c})));
    }

    SampledState operator()(const descriptor::Box& b) const {
      if (!(b.a < b.b)) throw InvalidArgument("box needs a < b");
      if (std::abs(b.a) >= L || std::abs(b.b) >= L) throw InvalidArgument("box support exceeds the grid");
      // Each sample is the covered fraction of its cell [x - dx/2, x + dx/2],
      // so an edge on a lattice point gets the mean of the one-sided limits.
      std::vector<Complex> v(n);
      bool any = false;
      const double dx = grid.spacing();
      for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.point(i);
        const double covered = std::min(b.b, x + 0.5 * dx) - std::max(b.a, x - 0.5 * dx);
        if (covered > 0.0) {
          v[i] = std::min(1.0, covered / dx);
          any = any || (x >= b.a && x <= b.b);
        }
      }
      if (!any) throw InvalidArgument("box contains no grid point");
      return normalized(SampledState(grid, std::move(v), to_string(StateDescriptor{b})));
    }

    SampledState operator()(const descriptor::Samples& s) const {
      auto psi = read_state_csv(s.path, grid);
      return s.renormalize ? normalized(std::move(psi)) : psi;
    }
  };

  return std::visit(Builder{grid, hbar, L, n, check_hermite_support}, d);
}

SampledState read_state_csv(const std::filesystem::path& path, const PositionGrid& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open state file " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != "x,re,im")
    throw IoError(path.string() + ": expected header 'x,re,im'");

  std::vector<double> xs;
  std::vector<Complex> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 3) throw IoError(path.string() + ":" + std::to_string(line_no) + ": expected 3 columns");
    try {
      xs.push_back(parse_double(cols[0], "x"));
      values.emplace_back(parse_double(cols[1], "re"), parse_double(cols[2], "im"));
    } catch (const InvalidArgument& e) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (xs.size() < 2) throw IoError(path.string() + ": need at least two samples");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double step = xs[i] - xs[i - 1];
    if (!(step > 0.0)) throw IoError(path.string() + ": x must be strictly increasing");
    if (std::abs(step - h) > 1e-9 * std::abs(h)) throw IoError(path.string() + ": x spacing is not uniform");
  }
  if (xs.size() != grid.size() || std::abs(h - grid.spacing()) > 1e-9 * grid.spacing() ||
      std::abs(xs.front() - grid.point(0)) > 1e-9 * grid.spacing())
    throw IoError(path.string() + ": samples do not lie on the requested grid (n=" + std::to_string(grid.size()) +
                  ", L=" + shortest(grid.half_width()) + ")");
  return SampledState(grid, std::move(values), "file:" + path.string());
}

void write_state_csv(const SampledState& psi, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  char buf[128];
  out << "x,re,im\n";
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", psi.grid.point(i), psi.values[i].real(),
                  psi.values[i].imag());
    out << buf;
  }
}

}  // namespace wignerlab
