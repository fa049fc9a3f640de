#include "qfb/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfb/analytics.hpp"
#include "qfb/ensemble.hpp"
#include "qfb/errors.hpp"
#include "qfb/feedback.hpp"
#include "qfb/measurement.hpp"
#include "qfb/optimality.hpp"
#include "qfb/random.hpp"

namespace qfb {

using json = nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string render_svg(const std::vector<double>& x, const std::vector<double>& y,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;
  auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
  auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
  const double x0 = x.empty() ? 0 : *xmin_it, x1 = x.empty() ? 1 : *xmax_it;
  const double y0 = y.empty() ? 0 : std::min(1.0, *ymin_it), y1 = y.empty() ? 1 : *ymax_it;
  const double xs = (x1 > x0 ? x1 - x0 : 1), ys = (y1 > y0 ? y1 - y0 : 1);
  auto px = [&](double v) { return kLeft + (v - x0) / xs * (kW - kLeft - kRight); };
  auto py = [&](double v) { return kH - kBottom - (v - y0) / ys * (kH - kTop - kBottom); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
    << "</text>\n"
    << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight
    << "\" y2=\"" << kH - kBottom << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
    << kH - kBottom << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + xs * k / 4, yv = y0 + ys * k / 4;
    s << "<text x=\"" << px(xv) << "\" y=\"" << kH - kBottom + 18
      << "\" text-anchor=\"middle\" font-size=\"11\">" << num(xv) << "</text>\n"
      << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(yv) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << num(yv) << "</text>\n";
  }
  s << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 16
    << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n"
    << "<text x=\"18\" y=\"" << (kTop + kH - kBottom) / 2
    << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
    << (kTop + kH - kBottom) / 2 << ")\">" << y_label << "</text>\n"
    << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i)
    s << (i ? " " : "") << num(px(x[i])) << ',' << num(py(y[i]));
  s << "\"/>\n</svg>\n";
  return s.str();
}

namespace {

enum class Kind { real, count, seed, text, real_list };

struct Key {
  std::string name;
  Kind kind;
  json fallback;
  std::string help;
};

std::vector<double> default_targets() {
  // Log-spaced final entropies from 0.45 down to 1e-6.
  std::vector<double> v;
  const int n = 30;
  for (int k = 0; k < n; ++k)
    v.push_back(0.45 * std::pow(1e-6 / 0.45, static_cast<double>(k) / (n - 1)));
  return v;
}

const std::map<std::string, std::vector<Key>>& command_keys() {
  static const std::map<std::string, std::vector<Key>> keys = {
      {"discrete",
       {{"p0", Kind::real, 0.5, "initial linear entropy"},
        {"b", Kind::real, 0.2, "per-step measurement strength b in (0,1)"},
        {"steps", Kind::count, 10, "number of measurement steps"},
        {"strategy", Kind::text, "optimal", "optimal|none|fixed-theta=X"},
        {"seed", Kind::seed, 1, "master seed"},
        {"format", Kind::text, "csv", "csv|json"}}},
      {"sde",
       {{"gamma", Kind::real, 1.0, "measurement rate"},
        {"dt", Kind::real, 1e-3, "time step"},
        {"time", Kind::real, 1.0, "total duration"},
        {"trajectories", Kind::count, 1000, "ensemble size"},
        {"seed", Kind::seed, 1, "master seed"},
        {"strategy", Kind::text, "optimal", "optimal|none|fixed-theta=X"},
        {"p0", Kind::real, 0.5, "initial linear entropy"},
        {"scheme", Kind::text, "two-outcome", "two-outcome|euler-maruyama"},
        {"record-every", Kind::count, 10, "record stride in steps"},
        {"format", Kind::text, "csv", "csv|json"}}},
      {"classical",
       {{"gamma", Kind::real, 1.0, "measurement rate"},
        {"time", Kind::real, 2.0, "last time point"},
        {"points", Kind::count, 21, "number of time points"},
        {"rel-tol", Kind::real, kDefaultRelTol, "quadrature relative tolerance"},
        {"format", Kind::text, "csv", "csv|json"}}},
      {"speedup",
       {{"gamma", Kind::real, 1.0, "measurement rate"},
        {"final-p", Kind::real_list, default_targets(), "target final entropies"},
        {"rel-tol", Kind::real, kDefaultRelTol, "quadrature relative tolerance"},
        {"format", Kind::text, "csv", "csv|json"}}},
      {"verify-optimality",
       {{"steps", Kind::count, 3, "number of measurement steps (1..4)"},
        {"b", Kind::real, 0.2, "per-step measurement strength"},
        {"grid", Kind::count, 37, "polar-angle grid size (odd)"},
        {"p0", Kind::real, 0.25, "initial linear entropy"},
        {"budget", Kind::seed, 100000000, "node budget"},
        {"format", Kind::text, "json", "json|csv"}}},
  };
  return keys;
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("--" + key + ": cannot parse '" + text + "' as a number");
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("--" + key + ": cannot parse '" + text + "' as a non-negative integer");
  return v;
}

json coerce(const Key& k, const json& v) {
  switch (k.kind) {
    case Kind::real:
      if (!v.is_number()) throw ConfigError(k.name + ": expected a number");
      return v.get<double>();
    case Kind::count:
    case Kind::seed:
      if (v.is_number_unsigned()) return v.get<std::uint64_t>();
      if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
      if (v.is_number_float() && v.get<double>() >= 0 && v.get<double>() < 1.8e19 &&
          std::floor(v.get<double>()) == v.get<double>())
        return static_cast<std::uint64_t>(v.get<double>());
      throw ConfigError(k.name + ": expected a non-negative integer");
    case Kind::text:
      if (!v.is_string()) throw ConfigError(k.name + ": expected a string");
      return v;
    case Kind::real_list: {
      if (!v.is_array()) throw ConfigError(k.name + ": expected an array of numbers");
      json out = json::array();
      for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(k.name + ": expected an array of numbers");
        out.push_back(e.get<double>());
      }
      return out;
    }
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << bytes;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

struct Output {
  std::string data;
  std::string svg;  // speedup with --plot only
};

std::string want_format(const json& cfg) {
  const auto f = cfg.at("format").get<std::string>();
  if (f != "csv" && f != "json") throw ConfigError("format must be csv or json");
  return f;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---- discrete ------------------------------------------------------------

Output cmd_discrete(const json& cfg) {
  const double p0 = cfg.at("p0").get<double>();
  const double b = cfg.at("b").get<double>();
  const auto steps = cfg.at("steps").get<std::uint64_t>();
  const auto strategy = parse_strategy(cfg.at("strategy").get<std::string>());
  if (!(b > 0 && b < 1)) throw ConfigError("b must lie in (0, 1)");
  if (!(p0 >= 0 && p0 <= 0.5)) throw ConfigError("p0 must lie in [0, 1/2]");
  if (steps > 10'000'000) throw ConfigError("steps must be <= 1e7");

  const auto m = MeasurementStrength<double>::from_b(b);
  auto rng = derive_stream(cfg.at("seed").get<std::uint64_t>(), 0);
  auto state = BlochState<double>::from_spherical(p0, std::numbers::pi / 2);
  const double shrink = 1 - b * b;
  const bool optimal = strategy.kind == StrategyKind::optimal;

  json rows = json::array();
  std::ostringstream csv;
  csv << "step[-],P[-],alpha[rad],alpha_schedule[rad],outcome[-],outcome_independent[-]\n";
  double closed = p0;
  auto emit = [&](std::uint64_t n, double alpha, double schedule, int outcome) {
    const double p = linear_entropy(state);
    const bool independent = std::abs(p - closed) <= 1e-12;
    csv << n << ',' << format_double(p) << ',' << (n ? format_double(alpha) : "") << ','
        << (n && optimal ? format_double(schedule) : "") << ',' << (n ? std::to_string(outcome) : "")
        << ',' << (independent ? 1 : 0) << '\n';
    json row = {{"step", n}, {"P", p}, {"outcome_independent", independent}};
    if (n) {
      row["alpha"] = alpha;
      row["outcome"] = outcome;
      if (optimal) row["alpha_schedule"] = schedule;
    }
    rows.push_back(row);
  };
  emit(0, 0, 0, 0);
  for (std::uint64_t n = 1; n <= steps; ++n) {
    const auto step = measure_step(state, m, rng.uniform());
    const auto cmd = strategy_command(strategy, step.post_state, n - 1);
    state = cmd.alpha == 0 ? step.post_state : rotate(step.post_state, cmd.rotation);
    closed *= shrink;
    emit(n, cmd.alpha, optimal ? alpha_schedule(n, b, p0) : 0.0, step.sign);
  }
  if (want_format(cfg) == "json") return {dump_json({{"rows", rows}}), {}};
  return {csv.str(), {}};
}

// ---- sde -------------------------------------------------------------------

Output cmd_sde(const json& cfg, std::size_t workers) {
  EnsembleConfig ec;
  ec.n_trajectories = cfg.at("trajectories").get<std::uint64_t>();
  ec.master_seed = cfg.at("seed").get<std::uint64_t>();
  ec.sde.gamma = cfg.at("gamma").get<double>();
  ec.sde.dt = cfg.at("dt").get<double>();
  ec.sde.total_time = cfg.at("time").get<double>();
  ec.sde.scheme = parse_scheme(cfg.at("scheme").get<std::string>());
  ec.strategy = parse_strategy(cfg.at("strategy").get<std::string>());
  ec.record_every = cfg.at("record-every").get<std::uint64_t>();
  ec.p0 = cfg.at("p0").get<double>();
  ec.workers = workers;
  const auto stats = run_ensemble(ec);
  const auto& curve = stats.mean_curve;

  // Reference curve where one is known in closed form or by quadrature.
  std::vector<double> reference(curve.size(), std::nan(""));
  std::string reference_kind = "none";
  if (ec.strategy.kind == StrategyKind::optimal) {
    reference = feedback_entropy_curve(ec.p0, ec.sde.gamma, curve.times).values;
    reference_kind = "analytic";
  } else if (ec.strategy.kind == StrategyKind::none && ec.p0 == 0.5) {
    reference = classical_entropy_curve(ec.sde.gamma, curve.times).values;
    reference_kind = "quadrature";
  }

  if (want_format(cfg) == "json") {
    json j = {{"times", curve.times},
              {"mean_P", curve.values},
              {"stderr_P", curve.stderr_values},
              {"reference_kind", reference_kind},
              {"per_trajectory_final", stats.per_trajectory_final},
              {"clamp_events", stats.clamp_events},
              {"total_steps", stats.total_steps}};
    if (reference_kind != "none") j["reference_P"] = reference;
    return {dump_json(j), {}};
  }
  std::ostringstream csv;
  csv << "t[time],mean_P[-],stderr_P[-],reference_P[-]\n";
  for (std::size_t i = 0; i < curve.size(); ++i)
    csv << format_double(curve.times[i]) << ',' << format_double(curve.values[i]) << ','
        << format_double(curve.stderr_values[i]) << ','
        << (reference_kind == "none" ? "" : format_double(reference[i])) << '\n';
  return {csv.str(), {}};
}

// ---- classical -------------------------------------------------------------

Output cmd_classical(const json& cfg) {
  const double gamma = cfg.at("gamma").get<double>();
  const auto times = linspace_times(cfg.at("time").get<double>(), cfg.at("points").get<std::uint64_t>());
  const auto classical = classical_entropy_curve(gamma, times, cfg.at("rel-tol").get<double>());
  const auto feedback = feedback_entropy_curve(0.5, gamma, times);
  if (want_format(cfg) == "json")
    return {dump_json({{"times", times}, {"P_classical", classical.values}, {"P_feedback", feedback.values}}), {}};
  std::ostringstream csv;
  csv << "t[time],P_classical[-],P_feedback[-]\n";
  for (std::size_t i = 0; i < times.size(); ++i)
    csv << format_double(times[i]) << ',' << format_double(classical.values[i]) << ','
        << format_double(feedback.values[i]) << '\n';
  return {csv.str(), {}};
}

// ---- speedup ---------------------------------------------------------------

Output cmd_speedup(const json& cfg, bool plot) {
  const double gamma = cfg.at("gamma").get<double>();
  const double rel_tol = cfg.at("rel-tol").get<double>();
  const auto targets = cfg.at("final-p").get<std::vector<double>>();
  if (targets.empty()) throw ConfigError("final-p must name at least one target");
  std::vector<Speedup> rows;
  for (double p : targets) rows.push_back(speedup_factor(p, gamma, rel_tol));

  Output out;
  if (want_format(cfg) == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"final_P", r.final_entropy},
                     {"purity", r.final_purity},
                     {"t_feedback", r.time_feedback},
                     {"t_classical", r.time_classical},
                     {"speedup", r.ratio}});
    out.data = dump_json({{"rows", arr}});
  } else {
    std::ostringstream csv;
    csv << "final_P[-],purity[-],t_feedback[time],t_classical[time],speedup[-]\n";
    for (const auto& r : rows)
      csv << format_double(r.final_entropy) << ',' << format_double(r.final_purity) << ','
          << format_double(r.time_feedback) << ',' << format_double(r.time_classical) << ','
          << format_double(r.ratio) << '\n';
    out.data = csv.str();
  }
  if (plot) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) pts.emplace_back(r.final_purity, r.ratio);
    std::sort(pts.begin(), pts.end());
    std::vector<double> x, y;
    for (const auto& [px, py] : pts) {
      x.push_back(px);
      y.push_back(py);
    }
    out.svg = render_svg(x, y, "Speed-up from optimal feedback (mixed initial state)",
                         "final purity 1 - 2P", "speed-up factor");
  }
  return out;
}

// ---- verify-optimality -----------------------------------------------------

Output cmd_verify(const json& cfg) {
  OptimalityConfig oc;
  oc.n_steps = cfg.at("steps").get<std::uint64_t>();
  oc.b_step = cfg.at("b").get<double>();
  oc.grid_points = cfg.at("grid").get<std::uint64_t>();
  oc.p0 = cfg.at("p0").get<double>();
  oc.node_budget = cfg.at("budget").get<std::uint64_t>();
  const auto r = verify_optimality(oc);

  if (want_format(cfg) == "csv") {
    std::ostringstream csv;
    csv << "theta[rad],best_value_after_first_choice[-]\n";
    for (std::size_t i = 0; i < r.root_grid.size(); ++i)
      csv << format_double(r.root_grid[i]) << ',' << format_double(r.root_values[i]) << '\n';
    return {csv.str(), {}};
  }
  json nodes = json::array();
  for (const auto& n : r.optimal_tree.nodes)
    nodes.push_back({{"depth", n.depth},
                     {"path", n.path},
                     {"branch_probability", n.branch_probability},
                     {"path_probability", n.path_probability},
                     {"entropy", n.entropy},
                     {"theta", n.theta}});
  const std::size_t best =
      static_cast<std::size_t>(std::min_element(r.root_values.begin(), r.root_values.end()) -
                               r.root_values.begin());
  json j = {{"n_steps", oc.n_steps},
            {"b_step", oc.b_step},
            {"grid_points", oc.grid_points},
            {"p0", oc.p0},
            {"minimum", r.minimum},
            {"closed_form", r.closed_form},
            {"difference", r.minimum - r.closed_form},
            {"min_gap_to_bound", r.min_gap},
            {"nodes_evaluated", r.nodes_evaluated},
            {"decision_nodes", r.decision_nodes},
            {"minimizer_violations", r.minimizer_violations},
            {"non_strict_nodes", r.non_strict_nodes},
            {"bound_violations", r.bound_violations},
            {"root_minimizer_theta", r.root_grid[best]},
            {"root_values", r.root_values},
            {"root_grid", r.root_grid},
            {"optimal_tree", {{"depth", r.optimal_tree.depth}, {"value", r.optimal_tree.value}, {"nodes", nodes}}},
            {"passed", r.passed()}};
  return {dump_json(j), {}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and verification of optimal feedback for continuous qubit measurement", "qfb"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  struct Raw {
    std::map<std::string, std::string> scalars;
    std::map<std::string, std::vector<std::string>> lists;
    std::string out, config, plot;
    std::size_t workers = 1;
  };
  std::map<std::string, Raw> raw;
  std::map<std::string, CLI::App*> subs;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;

  const std::map<std::string, std::string> descriptions = {
      {"discrete", "exact discrete measurement sequence with per-step feedback"},
      {"sde", "Monte Carlo ensemble of continuum trajectories"},
      {"classical", "no-feedback mean entropy by quadrature"},
      {"speedup", "speed-up factor of optimal feedback versus final purity"},
      {"verify-optimality", "exhaustive small-n search over feedback strategies"}};

  for (const auto& [name, keys] : command_keys()) {
    auto* sub = app.add_subcommand(name, descriptions.at(name));
    subs[name] = sub;
    auto& r = raw[name];
    for (const auto& k : keys) {
      if (k.kind == Kind::real_list)
        options[name][k.name] = sub->add_option("--" + k.name, r.lists[k.name], k.help)->delimiter(',');
      else
        options[name][k.name] = sub->add_option("--" + k.name, r.scalars[k.name], k.help);
    }
    sub->add_option("--out", r.out, "output path (stdout when omitted)");
    sub->add_option("--config", r.config, "JSON config file or run manifest");
    if (name == "sde") sub->add_option("--workers", r.workers, "worker threads")->check(CLI::PositiveNumber);
    if (name == "speedup") sub->add_option("--plot", r.plot, "write an SVG plot to this path");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::config;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;
  const auto& keys = command_keys().at(command);
  const auto& r = raw[command];

  try {
    // defaults < config file < flags
    json cfg = json::object();
    for (const auto& k : keys) cfg[k.name] = k.fallback;
    if (!r.config.empty()) {
      json file;
      try {
        file = json::parse(read_file(r.config));
      } catch (const json::parse_error& e) {
        throw ConfigError("config '" + r.config + "' is not valid JSON: " + e.what());
      }
      if (!file.is_object()) throw ConfigError("config must be a JSON object");
      if (file.contains("command") && file.contains("config")) {
        if (file.at("command") != command)
          throw ConfigError("manifest was written by '" + file.at("command").get<std::string>() +
                            "', not '" + command + "'");
        file = file.at("config");
      }
      for (const auto& [key, value] : file.items()) {
        auto it = std::find_if(keys.begin(), keys.end(), [&](const Key& k) { return k.name == key; });
        if (it == keys.end()) throw ConfigError("unknown config key '" + key + "' for " + command);
        cfg[key] = coerce(*it, value);
      }
    }
    for (const auto& k : keys) {
      if (options.at(command).at(k.name)->count() == 0) continue;
      switch (k.kind) {
        case Kind::real: cfg[k.name] = parse_real(k.name, r.scalars.at(k.name)); break;
        case Kind::count:
        case Kind::seed: cfg[k.name] = parse_unsigned(k.name, r.scalars.at(k.name)); break;
        case Kind::text: cfg[k.name] = r.scalars.at(k.name); break;
        case Kind::real_list: {
          json arr = json::array();
          for (const auto& s : r.lists.at(k.name)) arr.push_back(parse_real(k.name, s));
          cfg[k.name] = arr;
          break;
        }
      }
    }

    Output result;
    if (command == "discrete") result = cmd_discrete(cfg);
    else if (command == "sde") result = cmd_sde(cfg, r.workers);
    else if (command == "classical") result = cmd_classical(cfg);
    else if (command == "speedup") result = cmd_speedup(cfg, !r.plot.empty());
    else result = cmd_verify(cfg);

    json outputs = json::object();
    if (r.out.empty()) {
      out << result.data;
    } else {
      write_file(r.out, result.data);
      outputs[r.out] = fnv1a64_hex(result.data);
    }
    if (!r.plot.empty()) {
      write_file(r.plot, result.svg);
      outputs[r.plot] = fnv1a64_hex(result.svg);
    }
    if (r.out.empty()) outputs["<stdout>"] = fnv1a64_hex(result.data);

    json manifest = {{"artifact", "qfb"},
                     {"version", std::string(kVersion)},
                     {"command", command},
                     {"config", cfg},
                     {"master_seed", cfg.contains("seed") ? cfg.at("seed") : json(nullptr)},
                     {"outputs", outputs}};
    const std::string manifest_path =
        r.out.empty() ? "qfb-" + command + ".manifest.json" : r.out + ".manifest.json";
    write_file(manifest_path, dump_json(manifest));
    return exit_code::ok;
  } catch (const ConvergenceError& e) {
    err << "qfb " << command << ": numerical convergence error: " << e.what() << '\n';
    return exit_code::convergence;
  } catch (const ConfigError& e) {
    err << "qfb " << command << ": configuration error: " << e.what() << '\n';
    return exit_code::config;
  } catch (const json::exception& e) {
    err << "qfb " << command << ": configuration error: " << e.what() << '\n';
    return exit_code::config;
  } catch (const std::exception& e) {
    err << "qfb " << command << ": error: " << e.what() << '\n';
    return exit_code::failure;
  }
}

}  // namespace qfb
