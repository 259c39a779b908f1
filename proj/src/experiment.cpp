#include "annealdyn/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <thread>

#include "annealdyn/equilibrium.hpp"
#include "annealdyn/lindblad.hpp"
#include "annealdyn/markov.hpp"
#include "annealdyn/schrodinger.hpp"

namespace annealdyn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class T>
T get_field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::vector<double> log_range(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw ConfigError("t_a_log_ns needs 0 < lo <= hi and count >= 1");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    const double f = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    out.push_back(lo * std::pow(hi / lo, f));
  }
  return out;
}

std::vector<double> run_row(const ExperimentConfig& cfg, const IsingProblem& p, const Schedule& sch,
                            const OnsetWindow& w, double ta) {
  const double dt = cfg.resolved_dt();
  switch (cfg.model) {
    case Model::schrodinger: {
      if (cfg.embed && p.max_abs_field() > 0.0) {
        const auto e = embed_fast_anneal(p, default_flux_bias(p, sch), sch);
        return e.original_marginals(populations(evolve_tdse(make_embedded_run(e, sch, ta, dt))));
      }
      return populations(evolve_tdse(AnnealRun{p, sch, w, ta, dt}));
    }
    case Model::bloch: {
      const double m0 = cfg.M0 ? *cfg.M0 : equilibrium_M0(p.field(0), cfg.resolved_beta());
      const auto s = evolve_bloch(p, sch, {cfg.T1_ns, cfg.T2_ns, m0}, ta, dt, w);
      return {s.p_up(), s.p_down()};
    }
    case Model::lindblad: {
      const auto rho = evolve_lindblad(p, sch, w, {cfg.c, cfg.resolved_beta()}, ta);
      return diagonal(rho);
    }
    case Model::markov: {
      const auto P = evolve_markov(p, sch, w, {cfg.c, cfg.resolved_beta()}, ta);
      return {P(0), P(1), P(2), P(3)};
    }
    case Model::spinbath: {
      BathRunOptions opt;
      opt.dt_ns = dt;
      const auto r = evolve_bath_tdse(p, sch, w, cfg.bath, ta, opt);
      return {r.populations.begin(), r.populations.end()};
    }
    default:
      throw ConfigError("model '" + to_string(cfg.model) + "' has no annealing-time sweep");
  }
}

}  // namespace

Model model_from_string(const std::string& s) {
  if (s == "schrodinger") return Model::schrodinger;
  if (s == "bloch") return Model::bloch;
  if (s == "lindblad") return Model::lindblad;
  if (s == "markov") return Model::markov;
  if (s == "spinbath") return Model::spinbath;
  if (s == "gibbs") return Model::gibbs;
  if (s == "extract") return Model::extract;
  throw ConfigError("unknown model '" + s + "'");
}

std::string to_string(Model m) {
  switch (m) {
    case Model::schrodinger: return "schrodinger";
    case Model::bloch: return "bloch";
    case Model::lindblad: return "lindblad";
    case Model::markov: return "markov";
    case Model::spinbath: return "spinbath";
    case Model::gibbs: return "gibbs";
    case Model::extract: return "extract";
  }
  return "?";
}

IsingProblem ExperimentConfig::resolved_problem() const {
  try {
    return problem_from_json(problem);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

Schedule ExperimentConfig::resolved_schedule() const {
  if (schedule == "standard") return Schedule::standard();
  if (schedule == "fast") return Schedule::fast();
  if (schedule == "tabulated") {
    if (schedule_a_path.empty() || schedule_b_path.empty())
      throw ConfigError("tabulated schedule needs schedule_A and schedule_B files");
    try {
      return Schedule::tabulated(load_schedule_table(schedule_a_path), load_schedule_table(schedule_b_path));
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("unknown schedule '" + schedule + "'");
}

OnsetWindow ExperimentConfig::resolved_onset() const {
  if (onset) return *onset;
  if (model == Model::lindblad || model == Model::markov) return OnsetWindow::from_us(0.0, 1.2);
  if (model == Model::spinbath) return {0.0, 900.0};
  return OnsetWindow::none();
}

double ExperimentConfig::resolved_beta() const {
  return beta ? *beta : beta_from_temperature(temperature_K);
}

double ExperimentConfig::resolved_dt() const {
  if (dt_ns) return *dt_ns;
  return schedule == "fast" ? 0.001 : 0.01;
}

void ExperimentConfig::validate() const {
  const auto p = resolved_problem();
  resolved_schedule();
  try {
    resolved_onset().validate();
    if (beta) {
      if (!std::isfinite(*beta) || *beta < 0.0) throw std::invalid_argument("beta must be finite and >= 0");
    } else if (!(temperature_K > 0.0) || !std::isfinite(temperature_K)) {
      throw std::invalid_argument("temperature_mK must be positive");
    }
    if (!(resolved_dt() > 0.0)) throw std::invalid_argument("dt_ns must be positive");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    if (bootstrap < 0) throw std::invalid_argument("bootstrap must be >= 0");
    switch (model) {
      case Model::bloch:
        if (p.size() != 1) throw std::invalid_argument("bloch model needs a one-spin problem");
        BlochParams{T1_ns, T2_ns, M0 ? *M0 : 0.0}.validate();
        break;
      case Model::lindblad:
      case Model::markov:
        if (p.size() != 2) throw std::invalid_argument(to_string(model) + " model needs a two-spin problem");
        DissipationSpec{c, resolved_beta()}.validate();
        break;
      case Model::spinbath:
        if (p.size() != 2) throw std::invalid_argument("spinbath model needs a two-spin problem");
        bath.validate();
        break;
      case Model::extract:
        if (p.size() != 2) throw std::invalid_argument("extract needs a two-spin problem");
        if (input.empty()) throw std::invalid_argument("extract needs an input file");
        break;
      default:
        break;
    }
    const bool sweeps = model != Model::gibbs && model != Model::extract;
    if (sweeps && t_a_ns.empty()) throw std::invalid_argument("t_a sweep is empty");
    for (double t : t_a_ns)
      if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("annealing times must be positive");
    for (int n : chain_sizes)
      if (n < 1) throw std::invalid_argument("chain sizes must be >= 1");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "model", "problem", "schedule", "schedule_A", "schedule_B", "onset_us", "onset_ns",
      "embed", "temperature_mK", "beta", "c", "T1_ns", "T2_ns", "M0", "bath", "seed",
      "t_a_ns", "t_a_us", "t_a_log_ns", "dt_ns", "jobs", "output", "chain_N", "chain_J",
      "input", "smoothing", "bootstrap"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config field '" + key + "'");

  ExperimentConfig c;
  if (j.contains("model")) c.model = model_from_string(get_field<std::string>(j, "model"));
  if (j.contains("problem")) {
    const auto& p = j.at("problem");
    c.problem = p.is_string() ? json{{"name", p.get<std::string>()}} : p;
  }
  if (j.contains("schedule")) c.schedule = get_field<std::string>(j, "schedule");
  if (j.contains("schedule_A")) c.schedule_a_path = get_field<std::string>(j, "schedule_A");
  if (j.contains("schedule_B")) c.schedule_b_path = get_field<std::string>(j, "schedule_B");
  if (j.contains("onset_us")) {
    const auto v = get_field<std::vector<double>>(j, "onset_us");
    if (v.size() != 2) throw ConfigError("onset_us must be [start, end]");
    c.onset = OnsetWindow::from_us(v[0], v[1]);
  }
  if (j.contains("onset_ns")) {
    const auto v = get_field<std::vector<double>>(j, "onset_ns");
    if (v.size() != 2) throw ConfigError("onset_ns must be [start, end]");
    c.onset = OnsetWindow{v[0], v[1]};
  }
  if (j.contains("embed")) c.embed = get_field<bool>(j, "embed");
  if (j.contains("temperature_mK")) c.temperature_K = get_field<double>(j, "temperature_mK") * 1e-3;
  if (j.contains("beta")) c.beta = get_field<double>(j, "beta");
  if (j.contains("c")) c.c = get_field<double>(j, "c");
  if (j.contains("T1_ns")) c.T1_ns = get_field<double>(j, "T1_ns");
  if (j.contains("T2_ns")) c.T2_ns = get_field<double>(j, "T2_ns");
  if (j.contains("M0")) c.M0 = get_field<double>(j, "M0");
  if (j.contains("bath")) {
    const auto& b = j.at("bath");
    if (!b.is_object()) throw ConfigError("bath must be an object");
    for (const auto& [key, value] : b.items())
      if (key != "bath_spins" && key != "g" && key != "K" && key != "Omega")
        throw ConfigError("unknown bath field '" + key + "'");
    if (b.contains("bath_spins")) c.bath.bath_spins = get_field<int>(b, "bath_spins");
    if (b.contains("g")) c.bath.g = get_field<double>(b, "g");
    if (b.contains("K")) c.bath.K = get_field<double>(b, "K");
    if (b.contains("Omega")) c.bath.Omega = get_field<double>(b, "Omega");
  }
  if (j.contains("seed")) c.bath.seed = get_field<std::uint64_t>(j, "seed");
  if (j.contains("t_a_ns")) c.t_a_ns = get_field<std::vector<double>>(j, "t_a_ns");
  if (j.contains("t_a_us"))
    for (double t : get_field<std::vector<double>>(j, "t_a_us")) c.t_a_ns.push_back(t * 1e3);
  if (j.contains("t_a_log_ns")) {
    const auto v = get_field<std::vector<double>>(j, "t_a_log_ns");
    if (v.size() != 3) throw ConfigError("t_a_log_ns must be [lo, hi, count]");
    const auto r = log_range(v[0], v[1], static_cast<int>(v[2]));
    c.t_a_ns.insert(c.t_a_ns.end(), r.begin(), r.end());
  }
  if (j.contains("dt_ns")) c.dt_ns = get_field<double>(j, "dt_ns");
  if (j.contains("jobs")) c.jobs = get_field<int>(j, "jobs");
  if (j.contains("output")) c.output = get_field<std::string>(j, "output");
  if (j.contains("chain_N")) c.chain_sizes = get_field<std::vector<int>>(j, "chain_N");
  if (j.contains("chain_J")) c.chain_J = get_field<double>(j, "chain_J");
  if (j.contains("input")) c.input = get_field<std::string>(j, "input");
  if (j.contains("smoothing")) c.smoothing = get_field<bool>(j, "smoothing");
  if (j.contains("bootstrap")) c.bootstrap = get_field<int>(j, "bootstrap");
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  const auto w = c.resolved_onset();
  json j = {{"model", to_string(c.model)},
            {"problem", c.problem},
            {"schedule", c.schedule},
            {"onset_ns", {w.start_ns, w.end_ns}},
            {"embed", c.embed},
            {"c", c.c},
            {"T1_ns", c.T1_ns},
            {"T2_ns", c.T2_ns},
            {"bath", {{"bath_spins", c.bath.bath_spins}, {"g", c.bath.g}, {"K", c.bath.K}, {"Omega", c.bath.Omega}}},
            {"seed", c.bath.seed},
            {"t_a_ns", c.t_a_ns},
            {"dt_ns", c.resolved_dt()},
            {"jobs", c.jobs}};
  if (c.beta)
    j["beta"] = *c.beta;
  else
    j["temperature_mK"] = c.temperature_K * 1e3;
  if (c.M0) j["M0"] = *c.M0;
  if (c.schedule == "tabulated") {
    j["schedule_A"] = c.schedule_a_path;
    j["schedule_B"] = c.schedule_b_path;
  }
  if (!c.output.empty()) j["output"] = c.output;
  if (!c.chain_sizes.empty()) {
    j["chain_N"] = c.chain_sizes;
    j["chain_J"] = c.chain_J;
  }
  if (!c.input.empty()) {
    j["input"] = c.input;
    j["smoothing"] = c.smoothing;
    j["bootstrap"] = c.bootstrap;
  }
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  try {
    return config_from_json(json::parse(read_file(path)));
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t k = 0; k < t.header.size(); ++k) out << (k ? "," : "") << t.header[k];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_number(row[k]);
    out << '\n';
  }
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto p = cfg.resolved_problem();
  const auto sch = cfg.resolved_schedule();
  const auto w = cfg.resolved_onset();
  const auto energies = p.spectrum();
  const std::size_t dim = cfg.model == Model::bloch ? 2 : p.dimension();

  SweepResult r;
  r.table.header.push_back("t_a_ns");
  for (std::size_t k = 0; k < dim; ++k) r.table.header.push_back("p_" + std::to_string(k));
  r.table.header.push_back("mean_energy");

  const std::size_t n = cfg.t_a_ns.size();
  r.table.rows.assign(n, {});
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const double ta = cfg.t_a_ns[i];
      std::vector<double> row{ta};
      try {
        const auto pop = run_row(cfg, p, sch, w, ta);
        row.insert(row.end(), pop.begin(), pop.end());
        row.push_back(mean_energy(energies, pop));
      } catch (const std::exception& e) {
        errors[i] = e.what();
        row.resize(dim + 2, kNaN);
      }
      r.table.rows[i] = std::move(row);
    }
  };
  const int jobs = std::min<int>(cfg.jobs, static_cast<int>(std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < n; ++i)
    if (!errors[i].empty()) r.failures.push_back({i, cfg.t_a_ns[i], errors[i]});
  return r;
}

json sweep_manifest(const ExperimentConfig& cfg, const SweepResult& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"row", f.row}, {"t_a_ns", f.t_a_ns}, {"error", f.message}});
  json m = {{"schema", kSweepSchema},
            {"version", ANNEALDYN_VERSION},
            {"columns", r.table.header},
            {"config", config_to_json(cfg)},
            {"failures", failures}};
  if (cfg.model == Model::spinbath) {
    json runs = json::array();
    for (double ta : cfg.t_a_ns) runs.push_back(bath_manifest(cfg.bath, cfg.resolved_dt(), ta, cfg.resolved_onset()));
    m["bath_runs"] = runs;
  }
  return m;
}

Table run_gibbs(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.model = Model::gibbs;
  cfg.validate();
  const double beta = cfg.resolved_beta();
  Table t;
  if (!cfg.chain_sizes.empty()) {
    t.header = {"N", "mean_energy"};
    for (int n : cfg.chain_sizes)
      t.rows.push_back({static_cast<double>(n), chain_mean_energy(n, cfg.chain_J, beta)});
    return t;
  }
  const auto p = cfg.resolved_problem();
  if (p.size() > kMaxGibbsQubits) throw ConfigError("problem too large for exhaustive Gibbs sums");
  t.header.push_back("beta");
  for (std::uint64_t k = 0; k < p.dimension(); ++k) t.header.push_back("p_" + std::to_string(k));
  t.header.push_back("mean_energy");
  const auto probs = gibbs_probabilities(p, beta);
  std::vector<double> row{beta};
  row.insert(row.end(), probs.begin(), probs.end());
  row.push_back(mean_energy(p.spectrum(), probs));
  t.rows.push_back(std::move(row));
  return t;
}

Table schedule_table(const ExperimentConfig& cfg, double t_a_ns, int points) {
  if (points < 2) throw ConfigError("schedule table needs at least two points");
  if (!(t_a_ns > 0.0)) throw ConfigError("schedule table needs a positive annealing time");
  const auto sch = cfg.resolved_schedule();
  const auto w = cfg.resolved_onset();
  Table t{{"s", "A_GHz", "B_GHz", "Bprime_GHz"}, {}};
  for (int k = 0; k < points; ++k) {
    const double s = static_cast<double>(k) / (points - 1);
    t.rows.push_back({s, eval_A(sch, s), eval_B(sch, s), eval_B_prime(sch, w, s * t_a_ns, t_a_ns)});
  }
  return t;
}

ExtractReport run_extract(const FrequencyTable& t, const IsingProblem& p, bool smoothing, int bootstrap,
                          std::uint64_t seed) {
  ExtractReport r;
  r.table = t;
  r.method1.method = "method1";
  r.method2.method = "method2";
  const FrequencyTable t1 = smoothing ? add_half_smoothing(t) : t;
  try {
    r.method1.model = method1(t1, p);
    r.method1.ok = true;
    if (bootstrap > 0 && t.count > 0)
      r.method1.beta_sigma = bootstrap_beta(t1, p, ExtractionMethod::method1, bootstrap, seed).stddev;
  } catch (const std::runtime_error& e) {
    r.method1.error = e.what();
  }
  try {
    r.method2.model.beta = method2(t, p);
    r.method2.ok = true;
    if (bootstrap > 0 && t.count > 0)
      r.method2.beta_sigma = bootstrap_beta(t, p, ExtractionMethod::method2, bootstrap, seed).stddev;
  } catch (const std::runtime_error& e) {
    r.method2.error = e.what();
  }
  return r;
}

json extract_to_json(const ExtractReport& r) {
  auto method = [](const MethodReport& m, bool full) {
    json j = {{"ok", m.ok}};
    if (!m.ok) {
      j["error"] = m.error;
      return j;
    }
    j["beta"] = m.model.beta;
    j["T_mK"] = m.model.beta > 0.0 ? temperature_from_beta(m.model.beta) * 1e3 : kNaN;
    if (full) {
      j["lambda"] = m.model.lambda;
      j["h1"] = m.model.h1_hat;
      j["h2"] = m.model.h2_hat;
      j["J"] = m.model.J_hat;
    }
    if (m.beta_sigma > 0.0) j["beta_sigma"] = m.beta_sigma;
    return j;
  };
  return {{"frequencies", r.table.f},
          {"count", r.table.count},
          {"method1", method(r.method1, true)},
          {"method2", method(r.method2, false)}};
}

void print_extract(std::ostream& out, const ExtractReport& r) {
  char buf[160];
  out << "method   h1        h2        J         beta      T(mK)     sigma\n";
  for (const auto* m : {&r.method1, &r.method2}) {
    if (!m->ok) {
      out << m->method << "  failed: " << m->error << '\n';
      continue;
    }
    const double T = m->model.beta > 0.0 ? temperature_from_beta(m->model.beta) * 1e3 : kNaN;
    if (m == &r.method1)
      std::snprintf(buf, sizeof buf, "%-8s %-9.4g %-9.4g %-9.4g %-9.4g %-9.4g %.3g\n", m->method.c_str(),
                    m->model.h1_hat, m->model.h2_hat, m->model.J_hat, m->model.beta, T, m->beta_sigma);
    else
      std::snprintf(buf, sizeof buf, "%-8s %-9s %-9s %-9s %-9.4g %-9.4g %.3g\n", m->method.c_str(), "-", "-",
                    "-", m->model.beta, T, m->beta_sigma);
    out << buf;
  }
}

}  // namespace annealdyn
