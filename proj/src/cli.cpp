// Copyright 2026 The plateau-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plateau/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "plateau/errors.hpp"
#include "plateau/gradient.hpp"
#include "plateau/moments.hpp"
#include "plateau/parallel.hpp"
#include "plateau/serialize.hpp"

namespace plateau {

using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::VarianceSweep: return "variance-sweep";
    case Command::ToyModel: return "toy-model";
    case Command::VerifyMoments: return "verify-moments";
    case Command::BoundTable: return "bound-table";
    case Command::MatrixFlow: return "matrix-flow";
    case Command::VerifyGradients: return "verify-gradients";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  for (Command c : {Command::VarianceSweep, Command::ToyModel, Command::VerifyMoments, Command::BoundTable,
                    Command::MatrixFlow, Command::VerifyGradients}) {
    if (to_string(c) == s) return c;
  }
  throw UsageError("unknown command '" + s + "'");
}

ExperimentConfig default_config(Command c) {
  ExperimentConfig cfg;
  cfg.command = c;
  switch (c) {
    case Command::VarianceSweep: break;
    case Command::ToyModel:
      cfg.n_min = 2;
      cfg.n_max = 5;
      cfg.costs = {CostKind::Global, CostKind::Local};
      cfg.samples = 100000;
      break;
    case Command::MatrixFlow:
      cfg.n_min = 2;
      cfg.n_max = 4;
      cfg.family = Family::GlobalDeep;
      cfg.scheme = Scheme::MatrixFlow;
      cfg.costs = {CostKind::Global, CostKind::Local};
      cfg.samples = 10000;
      break;
    case Command::BoundTable:
      cfg.n_min = 1;
      cfg.n_max = 10;
      break;
    case Command::VerifyMoments: cfg.samples = 100000; break;
    case Command::VerifyGradients: break;
  }
  return cfg;
}

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw UsageError("config key '" + key + "': " + why);
}

std::uint64_t parse_u64(const std::string& key, const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) bad(key, "expected a non-negative integer, got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    bad(key, "value '" + s + "' is out of range");
  }
}

std::uint64_t json_u64(const std::string& key, const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return std::uint64_t(v.get<std::int64_t>());
  bad(key, "expected a non-negative integer");
}

int json_int(const std::string& key, const json& v) {
  const std::uint64_t x = json_u64(key, v);
  if (x > 1000000) bad(key, "value too large");
  return int(x);
}

std::string json_string(const std::string& key, const json& v) {
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

template <class F>
auto named(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const UsageError& e) {
    bad(key, e.what());
  }
}

std::vector<CostKind> parse_costs(const std::string& s) {
  if (s == "both") return {CostKind::Global, CostKind::Local};
  return {cost_kind_from_string(s)};
}

}  // namespace

std::pair<int, int> parse_n_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int n = int(parse_u64("n", s));
    return {n, n};
  }
  return {int(parse_u64("n", s.substr(0, dots))), int(parse_u64("n", s.substr(dots + 2)))};
}

void apply_config_value(ExperimentConfig& cfg, const std::string& key, const json& v) {
  if (key == "command") {
    if (json_string(key, v) != to_string(cfg.command)) bad(key, "file is for '" + v.get<std::string>() + "'");
  } else if (key == "n") {
    if (v.is_string()) {
      std::tie(cfg.n_min, cfg.n_max) = parse_n_range(v.get<std::string>());
    } else {
      cfg.n_min = cfg.n_max = json_int(key, v);
    }
  } else if (key == "n_min") {
    cfg.n_min = json_int(key, v);
  } else if (key == "n_max") {
    cfg.n_max = json_int(key, v);
  } else if (key == "family") {
    cfg.family = named(key, [&] { return family_from_string(json_string(key, v)); });
  } else if (key == "cost" || key == "cost_kind") {
    cfg.costs = named(key, [&] { return parse_costs(json_string(key, v)); });
  } else if (key == "scheme") {
    cfg.scheme = named(key, [&] { return scheme_from_string(json_string(key, v)); });
  } else if (key == "samples") {
    cfg.samples = std::size_t(json_u64(key, v));
  } else if (key == "training_pairs") {
    cfg.training_pairs = json_int(key, v);
  } else if (key == "seed") {
    cfg.seed = json_u64(key, v);
  } else if (key == "workers") {
    if (v.is_string() && v.get<std::string>() == "auto") {
      cfg.workers = 0;
    } else {
      cfg.workers = json_int(key, v);
      if (cfg.workers == 0) bad(key, "expected a positive integer or 'auto'");
    }
  } else if (key == "output_path") {
    cfg.output_path = json_string(key, v);
  } else if (key == "format") {
    cfg.format = json_string(key, v);
    if (cfg.format != "csv" && cfg.format != "json") bad(key, "expected 'csv' or 'json'");
  } else if (key == "layers") {
    cfg.layers = json_int(key, v);
    if (cfg.layers == 0) bad(key, "expected a positive integer");
  } else if (key == "timing") {
    if (!v.is_boolean()) bad(key, "expected true or false");
    cfg.timing = v.get<bool>();
  } else if (key == "input_path") {
    cfg.input_path = json_string(key, v);
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

namespace {

bool is_statistical(Command c) {
  return c == Command::VarianceSweep || c == Command::ToyModel || c == Command::MatrixFlow;
}

void check_config(const ExperimentConfig& cfg) {
  if (cfg.n_min < 1) bad("n_min", "must be at least 1");
  if (cfg.n_min > cfg.n_max) {
    bad("n_min", "n_min = " + std::to_string(cfg.n_min) + " exceeds n_max = " + std::to_string(cfg.n_max));
  }
  if (cfg.training_pairs < 1) bad("training_pairs", "must be at least 1");
  if (cfg.command == Command::ToyModel && (cfg.family != Family::LocalM1Toy || cfg.scheme != Scheme::Rpqc)) {
    bad("family", "toy-model always runs local-m1 with scheme RPQC");
  }
  if (cfg.command == Command::MatrixFlow && (cfg.family != Family::GlobalDeep || cfg.scheme != Scheme::MatrixFlow)) {
    bad("family", "matrix-flow always runs global-deep with scheme MatrixFlow");
  }
  if (cfg.command == Command::BoundTable && cfg.n_max > 250) bad("n_max", "bound-table supports n <= 250");
  if (is_statistical(cfg.command) && 2 * cfg.n_max > 14) {
    throw ResourceGuardError("n = " + std::to_string(cfg.n_max) + " needs a " + std::to_string(2 * cfg.n_max) +
                             "-qubit register; the limit is 14");
  }
  if (is_statistical(cfg.command) || cfg.command == Command::VerifyMoments) {
    if (!cfg.samples) bad("samples", "required for " + to_string(cfg.command) + " (missing --samples)");
    if (*cfg.samples < 100) bad("samples", "must be at least 100");
  }
  if (is_statistical(cfg.command)) {
    for (CostKind c : cfg.costs) {
      CellConfig cell;
      cell.n = cfg.n_min;
      cell.family = cfg.family;
      cell.cost = c;
      cell.scheme = cfg.scheme;
      cell.samples = *cfg.samples;
      cell.training_pairs = cfg.training_pairs;
      cell.layers = cfg.layers;
      for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        cell.n = n;
        validate_cell(cell);
      }
    }
  }
}

const char* kDescriptions[] = {
    "Monte-Carlo gradient statistics over an n range (defaults: family local-m1, cost global, scheme RPQC, "
    "n 2; --samples required)",
    "Toy model against its exact variances (defaults: n 2..5, cost both, samples 100000)",
    "Haar moment identities against Monte Carlo, 4-stderr gates (default samples 100000); exit 1 on failure",
    "Exact toy variances and the closed-form bounds (default n 1..10)",
    "dC/ds statistics for global-deep matrix flow at s = 0 (defaults: n 2..4, cost both, samples 10000)",
    "Parameter shift and dC/ds against finite differences on random instances; exit 1 on failure",
};

}  // namespace

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Barren-plateau experiments for dissipative perceptron networks", "plateau-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(PLATEAU_LAB_VERSION));

  std::map<std::string, std::string> raw;
  bool timing = false;
  std::string config_path;
  const Command commands[] = {Command::VarianceSweep, Command::ToyModel,   Command::VerifyMoments,
                              Command::BoundTable,    Command::MatrixFlow, Command::VerifyGradients};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    CLI::App* sub = app.add_subcommand(to_string(commands[i]), kDescriptions[i]);
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    sub->add_option("--n", raw["n"], "n or n range a..b");
    sub->add_option("--family", raw["family"], "global-deep | local-m1 | local-m2");
    sub->add_option("--cost", raw["cost"], "global | local | both");
    sub->add_option("--scheme", raw["scheme"], "RPQC | MatrixFlow");
    sub->add_option("--samples", raw["samples"], "Monte-Carlo samples per cell (>= 100)");
    sub->add_option("--training-pairs", raw["training_pairs"], "training pairs per sample (default 1)");
    sub->add_option("--seed", raw["seed"], "64-bit seed (default 0)");
    sub->add_option("--workers", raw["workers"], "worker threads or 'auto' (default: PLATEAU_LAB_WORKERS, else auto)");
    sub->add_option("--out", raw["output_path"], "output file (default: stdout)");
    sub->add_option("--format", raw["format"], "csv | json (default csv)");
    sub->add_option("--layers", raw["layers"], "local-m2 layer count (default n)");
    sub->add_option("--input", raw["input_path"], "verify-gradients: JSON with network and cost");
    sub->add_flag("--timing", timing, "fill wall_time_ms (output is then not reproducible)");
    subs.push_back(sub);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{std::string(PLATEAU_LAB_VERSION) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;
  CLI::App* sub = subs[which];
  ExperimentConfig cfg = default_config(commands[which]);

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("config key 'config': cannot read '" + config_path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError("config key 'config': '" + config_path + "' is not valid JSON");
    }
    if (!doc.is_object()) throw UsageError("config key 'config': top level must be an object");
    for (const auto& [key, value] : doc.items()) apply_config_value(cfg, key, value);
  }

  static const std::map<std::string, std::string> flag_of = {
      {"n", "--n"},           {"family", "--family"},   {"cost", "--cost"},
      {"scheme", "--scheme"}, {"samples", "--samples"}, {"training_pairs", "--training-pairs"},
      {"seed", "--seed"},     {"workers", "--workers"}, {"output_path", "--out"},
      {"format", "--format"}, {"layers", "--layers"},   {"input_path", "--input"}};
  static const std::set<std::string> numeric = {"samples", "training_pairs", "seed", "layers"};
  for (const auto& [key, flag] : flag_of) {
    if (sub->count(flag) == 0) continue;
    const std::string& s = raw[key];
    if (numeric.count(key)) {
      apply_config_value(cfg, key, json(parse_u64(key, s)));
    } else if (key == "workers" && s != "auto") {
      apply_config_value(cfg, key, json(parse_u64(key, s)));
    } else {
      apply_config_value(cfg, key, json(s));
    }
  }
  if (sub->count("--timing")) cfg.timing = timing;

  check_config(cfg);
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["command"] = to_string(cfg.command);
  j["n_min"] = cfg.n_min;
  j["n_max"] = cfg.n_max;
  j["family"] = to_string(cfg.family);
  j["cost"] = cfg.costs.size() == 2 ? "both" : to_string(cfg.costs.front());
  j["scheme"] = to_string(cfg.scheme);
  j["samples"] = cfg.samples ? json(*cfg.samples) : json(nullptr);
  j["training_pairs"] = cfg.training_pairs;
  j["seed"] = cfg.seed;
  j["format"] = cfg.format;
  j["layers"] = cfg.layers;
  j["timing"] = cfg.timing;
  if (!cfg.input_path.empty()) j["input_path"] = cfg.input_path;
  return j;
}

void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    f << contents;
    f.flush();
    if (!f) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into '" + path + "': " + ec.message());
  }
}

namespace {

const char* kFlowBoundNote = "bound_matrix_flow: per-term bound times n^2 terms";

std::vector<std::string> comment_lines(const ExperimentConfig& cfg) {
  return {std::string("plateau-lab ") + PLATEAU_LAB_VERSION, "config: " + config_to_json(cfg).dump(), kFlowBoundNote};
}

json meta(const ExperimentConfig& cfg) {
  return {{"version", PLATEAU_LAB_VERSION}, {"config", config_to_json(cfg)}, {"notes", {kFlowBoundNote}}};
}

json opt_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json row_json(const ReportRow& r) {
  return {{"n", r.n},
          {"family", to_string(r.family)},
          {"cost_kind", to_string(r.cost)},
          {"scheme", to_string(r.scheme)},
          {"samples", r.stats.samples},
          {"grad_mean", r.stats.mean},
          {"grad_mean_stderr", r.stats.mean_stderr},
          {"grad_var", r.stats.var},
          {"var_ci_lo", r.stats.var_ci_lo},
          {"var_ci_hi", r.stats.var_ci_hi},
          {"exact_value", opt_json(r.exact_value)},
          {"bound_value", opt_json(r.bound_value)},
          {"seed", r.seed},
          {"wall_time_ms", opt_json(r.wall_time_ms)}};
}

std::string render_report(const ExperimentConfig& cfg, const std::vector<ReportRow>& rows) {
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    return json{{"meta", meta(cfg)}, {"rows", arr}}.dump(2) + "\n";
  }
  std::string out = csv_header(comment_lines(cfg));
  for (const auto& r : rows) out += csv_row(r);
  return out;
}

void emit(const ExperimentConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << text;
    out.flush();
  } else {
    write_atomically(cfg.output_path, text);
  }
}

int run_statistical(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  SweepConfig sw;
  sw.n_min = cfg.n_min;
  sw.n_max = cfg.n_max;
  sw.family = cfg.family;
  sw.costs = cfg.costs;
  sw.scheme = cfg.scheme;
  sw.samples = *cfg.samples;
  sw.training_pairs = cfg.training_pairs;
  sw.seed = cfg.seed;
  sw.workers = resolve_workers(cfg.workers);
  sw.layers = cfg.layers;
  sw.timing = cfg.timing;

  const std::string partial = cfg.output_path.empty() ? std::string() : cfg.output_path + ".partial";
  std::vector<ReportRow> rows;
  try {
    run_sweep(sw, [&](const ReportRow& r) {
      rows.push_back(r);
      if (!partial.empty()) write_atomically(partial, render_report(cfg, rows));
    });
  } catch (...) {
    if (!partial.empty() && !rows.empty()) err << "plateau-lab: partial results in " << partial << "\n";
    throw;
  }
  emit(cfg, render_report(cfg, rows), out);
  if (!partial.empty()) std::filesystem::remove(partial);
  return 0;
}

int run_bound_table(const ExperimentConfig& cfg, std::ostream& out) {
  const std::vector<std::string> cols = {"n",
                                         "toy_exact_global",
                                         "toy_exact_local",
                                         "bound_rpqc_global",
                                         "bound_rpqc_local",
                                         "bound_matrix_flow_term",
                                         "bound_matrix_flow"};
  std::vector<std::vector<double>> rows;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    rows.push_back({toy_model_exact(n, CostKind::Global), toy_model_exact(n, CostKind::Local),
                    bound_rpqc(n, CostKind::Global), bound_rpqc(n, CostKind::Local), bound_matrix_flow_term(n),
                    bound_matrix_flow(n)});
  }
  std::string text;
  if (cfg.format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      json r{{"n", cfg.n_min + int(i)}};
      for (std::size_t c = 1; c < cols.size(); ++c) r[cols[c]] = rows[i][c - 1];
      arr.push_back(r);
    }
    text = json{{"meta", meta(cfg)}, {"rows", arr}}.dump(2) + "\n";
  } else {
    for (const auto& c : comment_lines(cfg)) text += "# " + c + "\n";
    for (std::size_t c = 0; c < cols.size(); ++c) text += (c ? "," : "") + cols[c];
    text += "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      text += std::to_string(cfg.n_min + int(i));
      for (double v : rows[i]) {
        char buf[40];
        std::snprintf(buf, sizeof buf, ",%.17g", v);
        text += buf;
      }
      text += "\n";
    }
  }
  emit(cfg, text, out);
  return 0;
}

std::string check_table(const std::vector<CheckResult>& checks) {
  std::string text;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-40s %-12s %-12s %-6s %s\n", "check", "deviation", "tolerance", "status", "detail");
  text += buf;
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%-40s %-12.4e %-12.4e %-6s %s\n", c.name.c_str(), c.deviation, c.tolerance,
                  c.passed ? "PASS" : "FAIL", c.detail.c_str());
    text += buf;
  }
  return text;
}

std::string render_checks(const ExperimentConfig& cfg, const std::vector<CheckResult>& checks) {
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& c : checks) {
      arr.push_back({{"check", c.name},
                     {"deviation", c.deviation},
                     {"tolerance", c.tolerance},
                     {"passed", c.passed},
                     {"detail", c.detail}});
    }
    return json{{"meta", meta(cfg)}, {"rows", arr}}.dump(2) + "\n";
  }
  std::string text;
  for (const auto& c : comment_lines(cfg)) text += "# " + c + "\n";
  text += "check,deviation,tolerance,passed,detail\n";
  for (const auto& c : checks) {
    char buf[128];
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%s,", c.deviation, c.tolerance, c.passed ? "true" : "false");
    text += c.name + buf + "\"" + c.detail + "\"\n";
  }
  return text;
}

int finish_checks(const ExperimentConfig& cfg, const std::vector<CheckResult>& checks, std::ostream& out) {
  out << check_table(checks);
  out.flush();
  if (!cfg.output_path.empty()) write_atomically(cfg.output_path, render_checks(cfg, checks));
  for (const auto& c : checks)
    if (!c.passed) return 1;
  return 0;
}

std::vector<CheckResult> check_input_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config key 'input_path': cannot read '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception&) {
    throw UsageError("config key 'input_path': '" + path + "' is not valid JSON");
  }
  if (!doc.is_object() || !doc.contains("network") || !doc.contains("cost")) {
    throw UsageError("config key 'input_path': expected an object with 'network' and 'cost'");
  }
  NetworkSpec spec;
  CostSpec cs;
  try {
    spec = network_from_json(doc["network"]);
    cs = cost_spec_from_json(doc["cost"]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("config key 'input_path': ") + e.what());
  }
  const double h = 1e-4;
  CheckResult r{"input-parameter-shift-vs-central-fd", 0.0, std::max(1e-6, 10 * h * h), true, ""};
  int count = 0;
  for (const auto& p : spec.perceptrons) {
    const auto* circ = std::get_if<RpqcCircuit>(&p.source);
    if (!circ) continue;
    for (std::size_t k = 0; k < circ->gates.size(); ++k) {
      const auto* rot = std::get_if<RotationGate>(&circ->gates[k]);
      if (!rot) continue;
      RpqcParameterRef ref{p.layer, p.index, int(k), rot->generator};
      const double dev = std::abs(grad_theta_shift(spec, cs, ref) - grad_theta_fd(spec, cs, ref, h));
      r.deviation = std::max(r.deviation, dev);
      if (dev > r.tolerance) r.passed = false;
      ++count;
    }
  }
  r.detail = std::to_string(count) + " rotation parameters in " + path;
  return {r};
}

}  // namespace

int dispatch(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  switch (cfg.command) {
    case Command::VarianceSweep:
    case Command::ToyModel:
    case Command::MatrixFlow: return run_statistical(cfg, out, err);
    case Command::BoundTable: return run_bound_table(cfg, out);
    case Command::VerifyMoments:
      return finish_checks(cfg, run_moment_suite(*cfg.samples, cfg.seed, resolve_workers(cfg.workers)), out);
    case Command::VerifyGradients: {
      auto checks = run_gradient_suite(cfg.seed);
      if (!cfg.input_path.empty()) {
        auto extra = check_input_document(cfg.input_path);
        checks.insert(checks.end(), extra.begin(), extra.end());
      }
      return finish_checks(cfg, checks, out);
    }
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(parse_config(args), out, err);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    err << "plateau-lab: " << e.what() << "\n";
    return 2;
  } catch (const ResourceGuardError& e) {
    err << "plateau-lab: refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "plateau-lab: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace plateau
