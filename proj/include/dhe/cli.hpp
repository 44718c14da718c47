#pragma once

// Command-line front end: one binary with subcommands
//   lambertw, roots, advection-roots, stability, simulate-modal, simulate-fd
//
// Parameters come from flags, optionally backed by a flat key = value
// problem file (--config); flags override file values. Exit codes:
//   0 success, 1 numeric/module failure, 2 configuration error, 3 I/O error.

#include <clocale>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dhe/dispersion.hpp"
#include "dhe/errors.hpp"
#include "dhe/fd_oracle.hpp"
#include "dhe/io.hpp"
#include "dhe/lambert_w.hpp"
#include "dhe/problem.hpp"
#include "dhe/solver.hpp"
#include "dhe/spectrum.hpp"

namespace dhe::cli {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

struct RunConfig {
  std::string subcommand;
  double L = 0.0, D = 0.0, tau = 0.0, epsilon = 0.0;
  double b = 0.0, dt = 0.0, t_end = 0.0;
  Complex z{0.0, 0.0};
  int k = 0, n_max = 32, branch_count = 8, nx = 0, nt = 101;
  std::string profile;
  std::string output;       // empty = stdout
  std::string format = "csv";
};

namespace cli_detail {

// Every key a problem file may carry; unknown keys are rejected.
inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "version", "L",  "D",  "tau",     "epsilon", "b",      "z",     "k",     "n-max",
      "branch-count",  "nx", "nt",      "dt",      "t-end",  "profile", "output", "format"};
  return keys;
}

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double to_double(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("option '" + key + "': cannot parse '" + s + "' as a number");
  }
}

inline int to_int(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("option '" + key + "': cannot parse '" + s + "' as an integer");
  }
}

inline Complex to_complex(const std::string& key, const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return Complex(to_double(key, s), 0.0);
  return Complex(to_double(key, s.substr(0, comma)), to_double(key, s.substr(comma + 1)));
}

}  // namespace cli_detail

// Flat key = value document mirroring the problem and grid fields. '#'
// starts a comment; a version tag matching the tool's schema is mandatory.
inline std::map<std::string, std::string> parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = cli_detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = cli_detail::trim(line.substr(0, eq));
    const std::string value = cli_detail::trim(line.substr(eq + 1));
    if (!cli_detail::known_keys().count(key))
      throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    if (values.count(key))
      throw ConfigError(path + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    values[key] = value;
  }

  const auto version = values.find("version");
  if (version == values.end())
    throw ConfigError(path + ": missing required 'version' tag");
  if (cli_detail::to_int("version", version->second) != kSchemaVersion)
    throw ConfigError(path + ": version " + version->second + " does not match schema version " +
                      std::to_string(kSchemaVersion));
  return values;
}

// CLI profile grammar:
//   sine:<n>[:<amplitude>]
//   sines:<n>=<amplitude>[,<n>=<amplitude>...]
//   parabola[:<amplitude>]            amplitude * x * (L - x)
inline SpatialProfile parse_profile(const std::string& text) {
  using cli_detail::to_double;
  using cli_detail::to_int;
  const auto bad = [&](const std::string& why) {
    return ConfigError("option 'profile': '" + text + "': " + why);
  };

  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (head == "parabola") {
    return SpatialProfile::parabola(rest.empty() ? 1.0 : to_double("profile", rest));
  }
  if (head == "sine") {
    if (rest.empty()) throw bad("expected sine:<n>[:<amplitude>]");
    const auto c2 = rest.find(':');
    const int n = to_int("profile", rest.substr(0, c2));
    const double amp = c2 == std::string::npos ? 1.0 : to_double("profile", rest.substr(c2 + 1));
    if (n < 1) throw bad("mode index must be >= 1");
    return SpatialProfile::sine(n, amp);
  }
  if (head == "sines") {
    if (rest.empty()) throw bad("expected sines:<n>=<amplitude>,...");
    std::vector<SpatialProfile::SineTerm> terms;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw bad("expected <n>=<amplitude> in '" + item + "'");
      const int n = to_int("profile", item.substr(0, eq));
      if (n < 1) throw bad("mode index must be >= 1");
      terms.push_back({n, to_double("profile", item.substr(eq + 1))});
    }
    return SpatialProfile::sine_sum(std::move(terms));
  }
  throw bad("unknown profile kind '" + head + "' (expected sine, sines, or parabola)");
}

namespace cli_detail {

// Raw string values gathered from flags, merged over the problem file.
class OptionSource {
public:
  OptionSource(std::map<std::string, std::string> flags, std::map<std::string, std::string> file)
      : flags_(std::move(flags)), file_(std::move(file)) {}

  std::optional<std::string> get(const std::string& key) const {
    if (const auto it = flags_.find(key); it != flags_.end()) return it->second;
    if (const auto it = file_.find(key); it != file_.end()) return it->second;
    return std::nullopt;
  }

  std::string require(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw ConfigError("missing required option '" + key + "'");
  }

  double get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    return v ? to_double(key, *v) : fallback;
  }

  double require_double(const std::string& key) const { return to_double(key, require(key)); }

  int get_int(const std::string& key, int fallback) const {
    const auto v = get(key);
    return v ? to_int(key, *v) : fallback;
  }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    const auto v = get(key);
    return v ? *v : fallback;
  }

private:
  std::map<std::string, std::string> flags_;
  std::map<std::string, std::string> file_;
};

inline void check(bool ok, const std::string& key, const std::string& constraint) {
  if (!ok) throw ConfigError("option '" + key + "': " + constraint);
}

}  // namespace cli_detail

// Parse argv (without the program name) plus an optional --config file into
// a validated RunConfig. Throws ConfigError on any violation, naming the
// offending key and constraint.
inline RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"delayed-heat-equation workbench"};
  app.require_subcommand(1);

  std::map<std::string, std::string> flags;
  std::string config_path;

  const auto add_keys = [&flags, &config_path](CLI::App* sub,
                                               const std::vector<std::pair<std::string, std::string>>& keys) {
    sub->add_option("--config", config_path, "problem file with key = value lines");
    for (const auto& [key, desc] : keys) {
      sub->add_option_function<std::string>(
          "--" + key, [&flags, key = key](const std::string& v) { flags[key] = v; }, desc);
    }
  };

  const std::pair<std::string, std::string> kOut{"output", "output path (default: stdout)"};
  const std::pair<std::string, std::string> kFmt{"format", "csv or json (default csv)"};

  add_keys(app.add_subcommand("lambertw", "evaluate the Lambert W function on one branch"),
           {{"k", "branch index (default 0)"},
            {"z", "argument, 're' or 're,im'"},
            kOut, kFmt});
  add_keys(app.add_subcommand("roots", "spatial rates a for a real temporal rate b (pure diffusion)"),
           {{"D", "diffusivity"}, {"tau", "delay"}, {"b", "temporal rate"}, kOut, kFmt});
  add_keys(app.add_subcommand("advection-roots",
                              "spatial rates a for a real temporal rate b (advection-diffusion)"),
           {{"D", "diffusivity"}, {"tau", "delay"}, {"epsilon", "advection speed (default 0)"},
            {"b", "temporal rate"}, kOut, kFmt});
  add_keys(app.add_subcommand("stability", "per-mode stability table"),
           {{"L", "domain length"}, {"D", "diffusivity"}, {"tau", "delay"},
            {"n-max", "mode count (default 32)"},
            {"branch-count", "Lambert W branches per mode (default 8)"}, kOut, kFmt});
  add_keys(app.add_subcommand("simulate-modal", "exact modal evolution sampled on a grid"),
           {{"L", "domain length"}, {"D", "diffusivity"}, {"tau", "delay"},
            {"profile", "history profile, e.g. sine:1 or sines:1=1,2=0.5 or parabola"},
            {"t-end", "final time"}, {"nt", "time samples over [0, t-end] (default 101)"},
            {"nx", "space samples over [0, L] (default 101)"},
            {"n-max", "sine series truncation (default 32)"}, kOut, kFmt});
  add_keys(app.add_subcommand("simulate-fd", "explicit finite-difference evolution"),
           {{"L", "domain length"}, {"D", "diffusivity"}, {"tau", "delay"},
            {"epsilon", "advection speed (default 0)"},
            {"profile", "history profile, e.g. sine:1 or sines:1=1,2=0.5 or parabola"},
            {"t-end", "final time"}, {"nx", "grid nodes including boundaries"},
            {"dt", "time step before delay adjustment"}, kOut, kFmt});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    throw;  // handled by run(): exit 0
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  std::map<std::string, std::string> file;
  if (!config_path.empty()) file = parse_problem_file(config_path);
  const cli_detail::OptionSource source(std::move(flags), std::move(file));
  using cli_detail::check;

  RunConfig config;
  config.subcommand = sub;
  config.output = source.get_string("output", "");
  config.format = source.get_string("format", "csv");
  check(config.format == "csv" || config.format == "json", "format", "must be csv or json");

  const auto resolve_physical = [&](bool with_epsilon) {
    config.D = source.require_double("D");
    check(config.D > 0.0, "D", "must be > 0");
    config.tau = source.require_double("tau");
    check(config.tau >= 0.0, "tau", "must be >= 0");
    if (with_epsilon) {
      config.epsilon = source.get_double("epsilon", 0.0);
      check(config.epsilon >= 0.0, "epsilon", "must be >= 0");
    }
  };
  const auto resolve_domain = [&] {
    config.L = source.require_double("L");
    check(config.L > 0.0, "L", "must be > 0");
  };
  const auto resolve_profile = [&] {
    config.profile = source.require("profile");
    parse_profile(config.profile);  // validate the grammar now
  };
  const auto resolve_t_end = [&] {
    config.t_end = source.require_double("t-end");
    check(config.t_end > 0.0, "t-end", "must be > 0");
  };

  if (sub == "lambertw") {
    config.k = source.get_int("k", 0);
    config.z = cli_detail::to_complex("z", source.require("z"));
    check(std::isfinite(config.z.real()) && std::isfinite(config.z.imag()), "z",
          "must be finite");
  } else if (sub == "roots" || sub == "advection-roots") {
    resolve_physical(sub == "advection-roots");
    config.b = source.require_double("b");
    check(std::isfinite(config.b), "b", "must be finite");
  } else if (sub == "stability") {
    resolve_domain();
    resolve_physical(false);
    config.n_max = source.get_int("n-max", 32);
    check(config.n_max >= 1, "n-max", "must be >= 1");
    config.branch_count = source.get_int("branch-count", 8);
    check(config.branch_count >= 1, "branch-count", "must be >= 1");
  } else if (sub == "simulate-modal") {
    resolve_domain();
    resolve_physical(false);
    resolve_profile();
    resolve_t_end();
    config.nt = source.get_int("nt", 101);
    check(config.nt >= 1, "nt", "must be >= 1");
    config.nx = source.get_int("nx", 101);
    check(config.nx >= 2, "nx", "must be >= 2");
    config.n_max = source.get_int("n-max", 32);
    check(config.n_max >= 1, "n-max", "must be >= 1");
    check(!config.output.empty(), "output", "is required for simulate-modal");
  } else if (sub == "simulate-fd") {
    resolve_domain();
    resolve_physical(true);
    resolve_profile();
    resolve_t_end();
    config.nx = source.get_int("nx", 0);
    check(source.get("nx").has_value(), "nx", "is required for simulate-fd");
    check(config.nx >= 3, "nx", "must be >= 3");
    config.dt = source.get_double("dt", 0.0);
    check(source.get("dt").has_value(), "dt", "is required for simulate-fd");
    check(config.dt > 0.0, "dt", "must be > 0");
    check(!config.output.empty(), "output", "is required for simulate-fd");
  }
  return config;
}

namespace cli_detail {

inline void write_rows_csv(std::ostream& os, const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

inline void write_rows_json(std::ostream& os, const std::vector<std::string>& header,
                            const std::vector<std::vector<std::string>>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < header.size(); ++i) {
      // keep numeric fields numeric in JSON
      try {
        std::size_t pos = 0;
        const double v = std::stod(row[i], &pos);
        if (pos == row[i].size()) {
          obj[header[i]] = v;
          continue;
        }
      } catch (const std::exception&) {
      }
      obj[header[i]] = row[i];
    }
    out.push_back(obj);
  }
  os << out.dump(2) << "\n";
}

// Emit a small table to stdout or atomically to the configured path.
inline void emit_table(const RunConfig& config, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  const auto write = [&](std::ostream& os) {
    config.format == "json" ? write_rows_json(os, header, rows)
                            : write_rows_csv(os, header, rows);
  };
  if (config.output.empty()) {
    write(std::cout);
  } else {
    AtomicFile file(config.output);
    write(file.stream());
    file.commit();
  }
}

inline void write_field_csv(std::ostream& os, const Field& field) {
  os << "t";
  for (const double x : field.x) os << "," << fmt17(x);
  os << "\n";
  for (std::size_t j = 0; j < field.nt(); ++j) {
    os << fmt17(field.t[j]);
    for (std::size_t i = 0; i < field.nx(); ++i) os << "," << fmt17(field.at(j, i));
    os << "\n";
  }
}

inline nlohmann::json base_sidecar(const RunConfig& config) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["subcommand"] = config.subcommand;
  j["L"] = config.L;
  j["D"] = config.D;
  j["tau"] = config.tau;
  j["epsilon"] = config.epsilon;
  j["profile"] = config.profile;
  j["t-end"] = config.t_end;
  j["format"] = config.format;
  j["output"] = config.output;
  return j;
}

inline Problem problem_from(const RunConfig& config) {
  Problem problem;
  problem.L = config.L;
  problem.params = PhysicalParams{config.D, config.tau, config.epsilon};
  problem.history = HistorySpec::constant(parse_profile(config.profile));
  problem.n_max = config.n_max;
  return problem;
}

}  // namespace cli_detail

inline void dispatch(const RunConfig& config) {
  using cli_detail::emit_table;
  using nlohmann::json;

  if (config.subcommand == "lambertw") {
    const Complex w = lambert_w(config.k, config.z);
    const double residual = std::abs(w * std::exp(w) - config.z);
    emit_table(config, {"k", "z_re", "z_im", "w_re", "w_im", "residual"},
               {{std::to_string(config.k), fmt17(config.z.real()), fmt17(config.z.imag()),
                 fmt17(w.real()), fmt17(w.imag()), fmt17(residual)}});
    return;
  }

  if (config.subcommand == "roots" || config.subcommand == "advection-roots") {
    const bool advection = config.subcommand == "advection-roots";
    const PhysicalParams params{config.D, config.tau, config.epsilon};
    const auto roots = advection ? a_from_b_advection(params, config.b)
                                 : a_from_b_heat(params, config.b);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const RatePair pair{roots[i], Complex(config.b, 0.0)};
      const double residual = advection ? dispersion_residual_advection(params, pair)
                                        : dispersion_residual_heat(params, pair);
      rows.push_back({std::to_string(i), fmt17(roots[i].real()), fmt17(roots[i].imag()),
                      fmt17(residual)});
    }
    emit_table(config, {"index", "a_re", "a_im", "residual"}, rows);
    return;
  }

  if (config.subcommand == "stability") {
    Problem problem;
    problem.L = config.L;
    problem.params = PhysicalParams{config.D, config.tau, 0.0};
    problem.history = HistorySpec::constant(SpatialProfile::zero());
    problem.n_max = config.n_max;
    const StabilityTable table = stability_table(problem, config.branch_count);

    std::vector<std::vector<std::string>> rows;
    for (const RootSet& row : table.rows) {
      const Complex dominant = row.dominant();
      rows.push_back({std::to_string(row.mode.n), fmt17(row.mode.k_n), fmt17(row.mode.lambda_n),
                      fmt17(row.mode.q_n), to_string(row.regime), fmt17(dominant.real()),
                      fmt17(dominant.imag()), std::to_string(row.dominant_branch())});
    }
    emit_table(config,
               {"n", "k_n", "lambda_n", "q_n", "regime", "re_b_dominant", "im_b_dominant",
                "branch_of_dominant"},
               rows);
    return;
  }

  if (config.subcommand == "simulate-modal") {
    const Problem problem = cli_detail::problem_from(config);
    std::vector<double> t_samples(static_cast<std::size_t>(config.nt));
    for (int j = 0; j < config.nt; ++j)
      t_samples[static_cast<std::size_t>(j)] =
          config.nt == 1 ? config.t_end : config.t_end * j / (config.nt - 1);
    std::vector<double> x_samples(static_cast<std::size_t>(config.nx));
    for (int i = 0; i < config.nx; ++i)
      x_samples[static_cast<std::size_t>(i)] = config.L * i / (config.nx - 1);

    const Field field = solve_ibvp(problem, t_samples, x_samples);

    json sidecar = cli_detail::base_sidecar(config);
    sidecar["n-max"] = config.n_max;
    sidecar["nt"] = config.nt;
    sidecar["nx"] = config.nx;
    json modes = json::array();
    for (int n = 1; n <= config.n_max; ++n) {
      const Mode mode = Mode::make(n, problem.L, problem.params);
      const RootSet roots = config.tau > 0.0 ? characteristic_roots(mode, problem.params)
                                             : classical_root_set(mode);
      modes.push_back({{"n", n},
                       {"q_n", mode.q_n},
                       {"regime", to_string(roots.regime)},
                       {"branch", roots.dominant_branch()},
                       {"re_b", roots.dominant().real()},
                       {"im_b", roots.dominant().imag()}});
    }
    sidecar["dominant_roots"] = modes;

    AtomicFile csv(config.output);
    cli_detail::write_field_csv(csv.stream(), field);
    AtomicFile side(config.output + ".json");
    side.stream() << sidecar.dump(2) << "\n";
    csv.commit();
    side.commit();
    return;
  }

  if (config.subcommand == "simulate-fd") {
    const Problem problem = cli_detail::problem_from(config);
    const Grid grid = Grid::make(problem, config.nx, config.dt, config.t_end);
    const Field field =
        config.epsilon > 0.0 ? run_advection(grid, problem) : run_heat(grid, problem);

    json sidecar = cli_detail::base_sidecar(config);
    sidecar["nx"] = config.nx;
    sidecar["dt"] = config.dt;  // as requested; adjusted value below
    sidecar["dt_adjusted"] = grid.dt;
    sidecar["steps_per_delay"] = grid.steps_per_delay;
    sidecar["n_steps"] = grid.n_steps;

    AtomicFile csv(config.output);
    cli_detail::write_field_csv(csv.stream(), field);
    AtomicFile side(config.output + ".json");
    side.stream() << sidecar.dump(2) << "\n";
    csv.commit();
    side.commit();
    return;
  }

  throw ConfigError("unknown subcommand '" + config.subcommand + "'");
}

// Rebuild the run configuration recorded in a sidecar document.
inline RunConfig config_from_sidecar(const nlohmann::json& sidecar) {
  if (!sidecar.contains("schema_version") || sidecar["schema_version"] != kSchemaVersion)
    throw ConfigError("sidecar: missing or mismatched schema_version");
  RunConfig config;
  config.subcommand = sidecar.at("subcommand").get<std::string>();
  config.L = sidecar.at("L").get<double>();
  config.D = sidecar.at("D").get<double>();
  config.tau = sidecar.at("tau").get<double>();
  config.epsilon = sidecar.at("epsilon").get<double>();
  config.profile = sidecar.at("profile").get<std::string>();
  config.t_end = sidecar.at("t-end").get<double>();
  config.format = sidecar.at("format").get<std::string>();
  config.output = sidecar.at("output").get<std::string>();
  if (sidecar.contains("n-max")) config.n_max = sidecar["n-max"].get<int>();
  if (sidecar.contains("nt")) config.nt = sidecar["nt"].get<int>();
  if (sidecar.contains("nx")) config.nx = sidecar["nx"].get<int>();
  if (sidecar.contains("dt")) config.dt = sidecar["dt"].get<double>();
  return config;
}

inline int run(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const RunConfig config = parse_config(args);
    dispatch(config);
    return 0;
  } catch (const CLI::CallForHelp&) {
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dhe::cli
