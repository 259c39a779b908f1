#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "annealdyn/experiment.hpp"

using namespace annealdyn;

namespace {

constexpr int kOk = 0;
constexpr int kPartial = 1;
constexpr int kConfigError = 2;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> jobs;
};

ExperimentConfig load(const Common& c, std::optional<Model> force = {}) {
  ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config(c.config);
  if (force) cfg.model = *force;
  if (c.seed) cfg.bath.seed = *c.seed;
  if (c.jobs) cfg.jobs = *c.jobs;
  if (!c.out.empty()) cfg.output = c.out;
  return cfg;
}

void write_output(const std::string& path, const Table& t) {
  if (path.empty()) {
    write_csv(std::cout, t);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  write_csv(out, t);
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << j.dump(2) << '\n';
}

int cmd_sweep(const Common& c) {
  auto cfg = load(c);
  const auto r = run_sweep(cfg);
  write_output(cfg.output, r.table);
  if (!cfg.output.empty()) write_json(cfg.output + ".json", sweep_manifest(cfg, r));
  for (const auto& f : r.failures)
    std::cerr << "row " << f.row << " (t_a = " << f.t_a_ns << " ns) failed: " << f.message << '\n';
  return r.failures.empty() ? kOk : kPartial;
}

int cmd_gibbs(const Common& c) {
  const auto cfg = load(c, Model::gibbs);
  write_output(cfg.output, run_gibbs(cfg));
  return kOk;
}

int cmd_extract(const Common& c, const std::string& input, const std::string& problem) {
  auto cfg = load(c, Model::extract);
  if (!input.empty()) cfg.input = input;
  if (!problem.empty()) cfg.problem = json{{"name", problem}};
  cfg.validate();
  FrequencyTable table;
  try {
    table = load_frequencies(cfg.input);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  const auto r = run_extract(table, cfg.resolved_problem(), cfg.smoothing, cfg.bootstrap, cfg.bath.seed);
  print_extract(std::cout, r);
  if (!cfg.output.empty()) write_json(cfg.output, extract_to_json(r));
  return r.method1.ok && r.method2.ok ? kOk : kPartial;
}

int cmd_schedules(const Common& c, double t_a_ns, int points) {
  const auto cfg = load(c);
  write_output(cfg.output, schedule_table(cfg, t_a_ns, points));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Annealing dynamics laboratory: sweeps, Gibbs tables, parameter extraction"};
  app.set_version_flag("--version", ANNEALDYN_VERSION);
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool with_jobs) {
    sub->add_option("--config", common.config, "JSON experiment config");
    sub->add_option("--seed", common.seed, "override the config seed");
    sub->add_option("--out", common.out, "output path (default: stdout)");
    if (with_jobs) sub->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* sweep = app.add_subcommand("sweep", "annealing-time sweep of one model");
  add_common(sweep, true);
  sweep->get_option("--config")->required();

  auto* gibbs = app.add_subcommand("gibbs", "equilibrium probabilities or chain energies");
  add_common(gibbs, false);

  std::string input, problem;
  auto* extract = app.add_subcommand("extract", "maximum-entropy parameter extraction");
  add_common(extract, false);
  extract->add_option("--input", input, "frequency CSV or sample file");
  extract->add_option("--problem", problem, "named two-spin instance (e.g. 2S4)");

  double t_a_ns = 1000.0;
  int points = 101;
  auto* schedules = app.add_subcommand("schedules", "dump A, B and B' on an s grid");
  add_common(schedules, false);
  schedules->add_option("--t-a-ns", t_a_ns, "annealing time used for B'");
  schedules->add_option("--points", points, "grid size")->check(CLI::Range(2, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*sweep) return cmd_sweep(common);
    if (*gibbs) return cmd_gibbs(common);
    if (*extract) return cmd_extract(common, input, problem);
    if (*schedules) return cmd_schedules(common, t_a_ns, points);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPartial;
  }
  return kConfigError;
}
