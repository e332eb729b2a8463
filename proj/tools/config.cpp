#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hyperperc/error.hpp"

namespace hyperperc::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

[[noreturn]] void bad(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::InvalidInput, "bad value '" + value + "' for " + key);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T x{};
  auto res = std::from_chars(value.data(), value.data() + value.size(), x);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) bad(key, value);
  return x;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  if (trim(value).empty()) return out;
  for (const auto& item : split(value, ',')) out.push_back(parse_number<T>(key, item));
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad(key, value);
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_real(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::vector<double> ExperimentConfig::p_grid() const {
  std::vector<double> grid;
  if (steps == 1) return {pmin};
  for (int k = 0; k < steps; ++k) {
    grid.push_back(k == steps - 1 ? pmax : pmin + (pmax - pmin) * k / (steps - 1));
  }
  return grid;
}

std::vector<std::uint64_t> ExperimentConfig::seed_list() const {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < seeds; ++i) out.push_back(seed_base + static_cast<std::uint64_t>(i));
  return out;
}

int ExperimentConfig::effective_boundary_radius() const {
  if (boundary_radius > 0) return boundary_radius;
  return chain_radii.empty() ? radius : chain_radii.back() + 2;
}

void ExperimentConfig::validate() const {
  symbol.validate();
  if (radius < 0) throw Error(ErrorKind::InvalidInput, "radius must be >= 0");
  for (int r : radii) {
    if (r < 0) throw Error(ErrorKind::InvalidInput, "radii must be >= 0");
  }
  if (steps < 1) throw Error(ErrorKind::InvalidSweepSpec, "steps must be >= 1");
  if (!(pmin >= 0 && pmax <= 1 && pmin <= pmax)) throw Error(ErrorKind::InvalidSweepSpec, "need 0 <= pmin <= pmax <= 1");
  if (steps > 1 && pmin == pmax) throw Error(ErrorKind::InvalidSweepSpec, "pmin == pmax needs steps = 1");
  if (seeds < 1) throw Error(ErrorKind::InvalidSweepSpec, "seeds must be >= 1");
  if (max_vertices < 1) throw Error(ErrorKind::InvalidInput, "max_vertices must be >= 1");
  if (sigma < 1) throw Error(ErrorKind::InvalidInput, "sigma must be >= 1");
  for (double p : boundary_p) {
    if (!(p >= 0 && p <= 1)) throw Error(ErrorKind::InvalidInput, "boundary p outside [0, 1]");
  }
  for (std::size_t i = 0; i < chain_radii.size(); ++i) {
    if (chain_radii[i] < 0 || (i > 0 && chain_radii[i] <= chain_radii[i - 1])) {
      throw Error(ErrorKind::InvalidInput, "chain radii must be nonnegative and strictly ascending");
    }
  }
  if (!chain_radii.empty() && chain_radii.back() >= effective_boundary_radius()) {
    throw Error(ErrorKind::InvalidInput, "chain radii must stay below the boundary patch radius");
  }
  if (render_p && !(*render_p >= 0 && *render_p <= 1)) throw Error(ErrorKind::InvalidInput, "render p outside [0, 1]");
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "symbol") {
    auto parts = split(value, ',');
    if (parts.size() != 2) bad(key, value);
    c.symbol = {parse_number<int>(key, parts[0]), parse_number<int>(key, parts[1])};
  } else if (key == "radius") {
    c.radius = parse_number<int>(key, value);
  } else if (key == "radii") {
    c.radii = parse_list<int>(key, value);
  } else if (key == "pmin") {
    c.pmin = parse_number<double>(key, value);
  } else if (key == "pmax") {
    c.pmax = parse_number<double>(key, value);
  } else if (key == "steps") {
    c.steps = parse_number<int>(key, value);
  } else if (key == "seeds") {
    c.seeds = parse_number<int>(key, value);
  } else if (key == "seed_base") {
    c.seed_base = parse_number<std::uint64_t>(key, value);
  } else if (key == "tau") {
    c.tau = parse_number<std::size_t>(key, value);
  } else if (key == "sigma") {
    c.sigma = parse_number<std::size_t>(key, value);
  } else if (key == "max_vertices") {
    c.max_vertices = parse_number<std::size_t>(key, value);
  } else if (key == "out") {
    c.out = value;
  } else if (key == "boundary_p") {
    if (value == "auto") {
      c.boundary_auto = true;
      c.boundary_p.clear();
    } else {
      c.boundary_auto = false;
      c.boundary_p = parse_list<double>(key, value);
    }
  } else if (key == "estimates") {
    c.estimates = std::filesystem::path(value);
  } else if (key == "boundary_radius") {
    c.boundary_radius = parse_number<int>(key, value);
  } else if (key == "chain_radii") {
    c.chain_radii = parse_list<int>(key, value);
  } else if (key == "graph") {
    c.graph = std::filesystem::path(value);
  } else if (key == "render_p") {
    c.render_p = parse_number<double>(key, value);
  } else if (key == "render_seed") {
    c.render_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "render_arcs") {
    c.render_arcs = parse_bool(key, value);
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown config key '" + key + "'");
  }
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "symbol = " << c.symbol.p << ',' << c.symbol.q << '\n';
  out << "radius = " << c.radius << '\n';
  out << "radii = " << join(c.radii) << '\n';
  out << "pmin = " << format_real(c.pmin) << '\n';
  out << "pmax = " << format_real(c.pmax) << '\n';
  out << "steps = " << c.steps << '\n';
  out << "seeds = " << c.seeds << '\n';
  out << "seed_base = " << c.seed_base << '\n';
  out << "tau = " << c.tau << '\n';
  out << "sigma = " << c.sigma << '\n';
  out << "out = " << c.out.string() << '\n';
  out << "max_vertices = " << c.max_vertices << '\n';
  out << "boundary_p = " << (c.boundary_auto ? std::string("auto") : join(c.boundary_p)) << '\n';
  if (c.estimates) out << "estimates = " << c.estimates->string() << '\n';
  out << "boundary_radius = " << c.boundary_radius << '\n';
  out << "chain_radii = " << join(c.chain_radii) << '\n';
  if (c.graph) out << "graph = " << c.graph->string() << '\n';
  if (c.render_p) out << "render_p = " << format_real(*c.render_p) << '\n';
  out << "render_seed = " << c.render_seed << '\n';
  out << "render_arcs = " << (c.render_arcs ? "true" : "false") << '\n';
  return out.str();
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "config line without '=': " + trim(line));
    apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace hyperperc::cli
