#include "fsi/bench/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "fsi/la/matrix_market.hpp"

namespace fsi::bench {

std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::fsi_channel: return "fsi_channel";
    case Problem::stokes_channel: return "stokes_channel";
    case Problem::navier_stokes_channel: return "navier_stokes_channel";
    case Problem::poisson: return "poisson";
    case Problem::synthetic: return "synthetic";
  }
  return "?";
}

namespace {

/// Thrown by value parsers; the caller attaches the line.
struct BadValue {
  std::string what;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw BadValue{"'" + std::string(s) + "' is not a number"};
  return v;
}

std::uint64_t to_unsigned(std::string_view s) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw BadValue{"'" + std::string(s) + "' is not a non-negative integer"};
  return v;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto c = s.find(',');
    out.push_back(trim(s.substr(0, c)));
    if (c == std::string_view::npos) break;
    s.remove_prefix(c + 1);
  }
  for (auto item : out)
    if (item.empty()) throw BadValue{"empty list item"};
  return out;
}

double positive(double v) {
  if (!(v > 0.0)) throw BadValue{"must be positive"};
  return v;
}

double non_negative(double v) {
  if (!(v >= 0.0)) throw BadValue{"must be non-negative"};
  return v;
}

Index at_least(std::uint64_t v, std::uint64_t lo) {
  if (v < lo) throw BadValue{"must be at least " + std::to_string(lo)};
  return Index(v);
}

template <class E>
E enum_value(std::string_view s, std::initializer_list<E> options) {
  std::string names;
  for (E e : options) {
    if (s == to_string(e)) return e;
    names += (names.empty() ? "" : "|") + std::string(to_string(e));
  }
  throw BadValue{"'" + std::string(s) + "' is not one of " + names};
}

using schwarz::to_string;
using fluid::to_string;

schwarz::CoarseKind coarse_value(std::string_view s) {
  return enum_value(s, {schwarz::CoarseKind::gdsw, schwarz::CoarseKind::rgdsw});
}

std::string fmt(double v) { return la::format_double(v); }

template <class T, class F>
std::string join(const std::vector<T>& xs, F f) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + f(x);
  return out;
}

struct Key {
  std::string name;
  std::function<void(BenchConfig&, std::string_view)> set;
  std::function<std::string(const BenchConfig&)> get;
};

#define FSI_DOUBLE_KEY(name, field, check)                                              \
  Key {                                                                                 \
    name, [](BenchConfig& c, std::string_view v) { c.field = check(to_double(v)); },     \
        [](const BenchConfig& c) { return fmt(c.field); }                               \
  }
#define FSI_INDEX_KEY(name, field, lo)                                                        \
  Key {                                                                                       \
    name, [](BenchConfig& c, std::string_view v) { c.field = at_least(to_unsigned(v), lo); }, \
        [](const BenchConfig& c) { return std::to_string(c.field); }                          \
  }
#define FSI_COARSE_KEY(name, field)                                                     \
  Key {                                                                                 \
    name, [](BenchConfig& c, std::string_view v) { c.field = coarse_value(v); },        \
        [](const BenchConfig& c) { return std::string(to_string(c.field)); }            \
  }

double any(double v) { return v; }
double fraction(double v) {
  if (!(v > 0.0 && v < 0.5)) throw BadValue{"must lie in (0, 0.5)"};
  return v;
}
double unit_interval(double v) {
  if (!(v > 0.0 && v <= 1.0)) throw BadValue{"must lie in (0, 1]"};
  return v;
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"problem",
       [](BenchConfig& c, std::string_view v) {
         c.problem = enum_value(v, {Problem::fsi_channel, Problem::stokes_channel, Problem::navier_stokes_channel,
                                    Problem::poisson, Problem::synthetic});
       },
       [](const BenchConfig& c) { return std::string(to_string(c.problem)); }},
      FSI_INDEX_KEY("nx", nx, 1),
      FSI_INDEX_KEY("ny_fluid", ny_fluid, 1),
      FSI_INDEX_KEY("ny_solid", ny_solid, 1),
      FSI_DOUBLE_KEY("length", length, positive),
      FSI_DOUBLE_KEY("height", height, positive),
      FSI_DOUBLE_KEY("thickness", thickness, positive),
      FSI_INDEX_KEY("cells_per_subdomain", cells_per_subdomain, 1),
      FSI_INDEX_KEY("synthetic.solid", synthetic_solid, 1),
      FSI_INDEX_KEY("synthetic.geometry", synthetic_geometry, 1),
      FSI_INDEX_KEY("synthetic.velocity", synthetic_velocity, 1),
      FSI_INDEX_KEY("synthetic.pressure", synthetic_pressure, 1),
      FSI_INDEX_KEY("synthetic.interface", synthetic_interface, 0),
      {"n_subdomains",
       [](BenchConfig& c, std::string_view v) {
         c.n_subdomains.clear();
         for (auto item : split_list(v)) c.n_subdomains.push_back(at_least(to_unsigned(item), 1));
       },
       [](const BenchConfig& c) { return join(c.n_subdomains, [](Index n) { return std::to_string(n); }); }},
      FSI_INDEX_KEY("overlap", overlap, 0),
      {"fluid_precond",
       [](BenchConfig& c, std::string_view v) {
         c.fluid_precond.clear();
         for (auto item : split_list(v))
           c.fluid_precond.push_back(enum_value(
               item, {FluidPrecond::monolithic, FluidPrecond::simple, FluidPrecond::simplec, FluidPrecond::exact}));
       },
       [](const BenchConfig& c) {
         return join(c.fluid_precond, [](FluidPrecond p) { return std::string(to_string(p)); });
       }},
      {"levels",
       [](BenchConfig& c, std::string_view v) {
         c.levels = enum_value(v, {schwarz::Levels::one, schwarz::Levels::two});
       },
       [](const BenchConfig& c) { return std::string(to_string(c.levels)); }},
      FSI_COARSE_KEY("coarse", coarse),
      FSI_COARSE_KEY("coarse_velocity", coarse_velocity),
      FSI_COARSE_KEY("coarse_pressure", coarse_pressure),
      FSI_COARSE_KEY("coarse_solid", coarse_solid),
      FSI_COARSE_KEY("coarse_geometry", coarse_geometry),
      FSI_DOUBLE_KEY("simple_alpha", simple_alpha, positive),
      {"flow_rates",
       [](BenchConfig& c, std::string_view v) {
         c.flow_rates.clear();
         for (auto item : split_list(v)) {
           const double q = to_double(item);
           if (!(q >= 0.0)) throw BadValue{"flow rates must be non-negative"};
           c.flow_rates.push_back(q);
         }
       },
       [](const BenchConfig& c) { return join(c.flow_rates, fmt); }},
      FSI_DOUBLE_KEY("ramp_time", ramp_time, positive),
      FSI_INDEX_KEY("n_steps", n_steps, 1),
      {"seeds",
       [](BenchConfig& c, std::string_view v) {
         c.seeds.clear();
         for (auto item : split_list(v)) c.seeds.push_back(to_unsigned(item));
       },
       [](const BenchConfig& c) { return join(c.seeds, [](std::uint64_t s) { return std::to_string(s); }); }},
      {"output", [](BenchConfig& c, std::string_view v) { c.output = std::string(v); },
       [](const BenchConfig& c) { return c.output; }},
      FSI_DOUBLE_KEY("physics.nu_f", physics.nu_f, positive),
      FSI_DOUBLE_KEY("physics.rho_f", physics.rho_f, positive),
      FSI_DOUBLE_KEY("physics.rho_s", physics.rho_s, positive),
      FSI_DOUBLE_KEY("physics.poisson", physics.poisson, fraction),
      FSI_DOUBLE_KEY("physics.mu_s", physics.mu_s, positive),
      FSI_DOUBLE_KEY("physics.E", physics.E, positive),
      FSI_DOUBLE_KEY("physics.p_ref", physics.p_ref, any),
      FSI_DOUBLE_KEY("physics.dt", physics.dt, positive),
      FSI_DOUBLE_KEY("physics.backflow_beta", physics.backflow_beta, non_negative),
      FSI_DOUBLE_KEY("newton.tol", newton.tol_rel, positive),
      FSI_INDEX_KEY("newton.max_iter", newton.max_newton, 1),
      FSI_DOUBLE_KEY("forcing.eta_loose", newton.forcing.eta_loose, unit_interval),
      FSI_DOUBLE_KEY("forcing.eta_tight", newton.forcing.eta_tight, unit_interval),
      FSI_DOUBLE_KEY("forcing.gamma", newton.forcing.gamma, unit_interval),
      FSI_DOUBLE_KEY("forcing.exponent", newton.forcing.exponent, positive),
      FSI_INDEX_KEY("gmres.max_iter", newton.gmres.max_iter, 1),
      FSI_INDEX_KEY("gmres.restart", newton.gmres.restart, 0),
      {"facsi.inner_fluid",
       [](BenchConfig& c, std::string_view v) {
         // Shorthand for a single-entry fluid_precond list.
         c.fluid_precond = {enum_value(
             v, {FluidPrecond::monolithic, FluidPrecond::simple, FluidPrecond::simplec, FluidPrecond::exact})};
       },
       [](const BenchConfig& c) { return std::string(to_string(c.fluid_precond.front())); }},
      {"facsi.shape_derivative",
       [](BenchConfig& c, std::string_view v) {
         if (v != "true" && v != "false") throw BadValue{"expected true or false"};
         c.shape_derivative = v == "true";
       },
       [](const BenchConfig& c) { return std::string(c.shape_derivative ? "true" : "false"); }},
      {"facsi.inner_solid",
       [](BenchConfig& c, std::string_view v) {
         c.inner_solid = enum_value(v, {fluid::InnerKind::schwarz, fluid::InnerKind::exact});
       },
       [](const BenchConfig& c) { return std::string(to_string(c.inner_solid)); }},
      {"facsi.inner_geometry",
       [](BenchConfig& c, std::string_view v) {
         c.inner_geometry = enum_value(v, {fluid::InnerKind::schwarz, fluid::InnerKind::exact});
       },
       [](const BenchConfig& c) { return std::string(to_string(c.inner_geometry)); }},
  };
  return table;
}

#undef FSI_DOUBLE_KEY
#undef FSI_INDEX_KEY
#undef FSI_COARSE_KEY

}  // namespace

void BenchConfig::validate() const {
  if (n_subdomains.empty() || fluid_precond.empty() || flow_rates.empty() || seeds.empty())
    throw ConfigError("n_subdomains, fluid_precond, flow_rates and seeds must be non-empty", 0);
  if (output.empty()) throw ConfigError("output must not be empty", 0);
  if (synthetic_interface > synthetic_velocity)
    throw ConfigError("synthetic.interface exceeds synthetic.velocity", 0);
  if (newton.forcing.eta_tight > newton.forcing.eta_loose)
    throw ConfigError("forcing.eta_tight exceeds forcing.eta_loose", 0);
  if (problem == Problem::poisson && levels == schwarz::Levels::two) {
    for (Index n : n_subdomains) {
      Index r = 1;
      while (r * r < n) ++r;
      if (r * r != n) throw ConfigError("poisson needs square subdomain counts, got " + std::to_string(n), 0);
    }
  }
  try {
    physics.validate();
    newton.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what(), 0);
  }
}

BenchConfig parse_config_text(std::string_view text, const std::string& source) {
  BenchConfig cfg;
  std::string section;
  Index line_no = 0;
  std::vector<std::string> seen;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ConfigError(where + "malformed section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key=value", line_no);
    const std::string_view raw_key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (raw_key.empty()) throw ConfigError(where + "missing key", line_no);
    const std::string key = section.empty() ? std::string(raw_key) : section + "." + std::string(raw_key);
    const auto& table = keys();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Key& k) { return k.name == key; });
    if (it == table.end()) throw ConfigError(where + "unknown key '" + key + "'", line_no);
    if (value.empty()) throw ConfigError(where + "missing value for '" + key + "'", line_no);
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw ConfigError(where + "duplicate key '" + key + "'", line_no);
    seen.push_back(key);
    try {
      it->set(cfg, value);
    } catch (const BadValue& e) {
      throw ConfigError(where + key + ": " + e.what, line_no);
    }
  }
  cfg.validate();

  const bool fluid_problem = cfg.problem == Problem::fsi_channel || cfg.problem == Problem::stokes_channel ||
                             cfg.problem == Problem::navier_stokes_channel;
  if (fluid_problem && cfg.coarse_pressure != schwarz::CoarseKind::rgdsw)
    cfg.notes.push_back("coarse_pressure=" + std::string(to_string(cfg.coarse_pressure)) +
                        " accepted; the reference setting for the pressure coarse space is rgdsw");
  if (fluid_problem && cfg.levels == schwarz::Levels::one)
    cfg.notes.push_back("levels=one: coarse_* keys are ignored");
  return cfg;
}

BenchConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::string echo_config(const BenchConfig& cfg) {
  std::string out;
  for (const Key& k : keys()) {
    if (k.name == "facsi.inner_fluid") continue;  // alias of fluid_precond
    out += k.name + "=" + k.get(cfg) + "\n";
  }
  return out;
}

}  // namespace fsi::bench
