#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "annealdyn/bloch.hpp"
#include "annealdyn/io.hpp"
#include "annealdyn/spinbath.hpp"

namespace annealdyn {

inline constexpr const char* kSweepSchema = "annealdyn.sweep/1";

// Bad or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Model { schrodinger, bloch, lindblad, markov, spinbath, gibbs, extract };

Model model_from_string(const std::string& s);
std::string to_string(Model m);

// Defaults: T = 35 mK, c = 0.01/ns,
// onset 0-1.2 us for the dissipative models and 0-900 ns for the spin bath, T1 = 500 ns,
// T2 = 125 ns, M0 from the Gibbs state, N_B = 16, g = 0.001, K = 1, Omega = 0.1.
struct ExperimentConfig {
  Model model = Model::schrodinger;
  json problem = {{"name", "2S1"}};
  std::string schedule = "standard";  // standard | fast | tabulated
  std::string schedule_a_path;        // tabulated only
  std::string schedule_b_path;
  std::optional<OnsetWindow> onset;   // unset: model default
  bool embed = false;                 // auxiliary-qubit embedding for fast anneals
  double temperature_K = 0.035;
  std::optional<double> beta;         // overrides temperature_K
  double c = 0.01;
  double T1_ns = 500.0;
  double T2_ns = 125.0;
  std::optional<double> M0;
  BathSpec bath{};
  std::vector<double> t_a_ns;
  std::optional<double> dt_ns;        // unset: 0.001 for the fast schedule, else 0.01
  int jobs = 1;
  std::string output;
  // gibbs
  std::vector<int> chain_sizes;
  double chain_J = -1.0;
  // extract
  std::string input;
  bool smoothing = false;
  int bootstrap = 0;

  IsingProblem resolved_problem() const;
  Schedule resolved_schedule() const;
  OnsetWindow resolved_onset() const;
  double resolved_beta() const;
  double resolved_dt() const;
  void validate() const;
};

// Unknown keys are rejected. Sweep: "t_a_ns" / "t_a_us" lists or
// "t_a_log_ns": [lo, hi, count].
ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const Table& t);
std::string format_number(double x);

struct RowFailure {
  std::size_t row;
  double t_a_ns;
  std::string message;
};

struct SweepResult {
  Table table;  // t_a_ns, p_0..p_{2^n-1}, mean_energy; failed rows hold NaN
  std::vector<RowFailure> failures;
};

// One row per t_a in sweep order; rows run on cfg.jobs workers.
SweepResult run_sweep(const ExperimentConfig& cfg);
// Config echo, schema, code version and failures; no timing data.
json sweep_manifest(const ExperimentConfig& cfg, const SweepResult& r);

// Chain sizes give N, mean_energy (closed form); otherwise beta, p_k, mean_energy.
Table run_gibbs(const ExperimentConfig& cfg);

// s, A, B, B' (GHz) on an evenly spaced grid of `points` values.
Table schedule_table(const ExperimentConfig& cfg, double t_a_ns, int points);

struct MethodReport {
  std::string method;
  bool ok = false;
  std::string error;
  ExtractedModel model{};  // method 2 fills beta only
  double beta_sigma = 0.0;  // bootstrap, 0 if not requested
};

struct ExtractReport {
  FrequencyTable table;
  MethodReport method1;
  MethodReport method2;
};

ExtractReport run_extract(const FrequencyTable& t, const IsingProblem& p, bool smoothing,
                          int bootstrap, std::uint64_t seed);
json extract_to_json(const ExtractReport& r);
void print_extract(std::ostream& out, const ExtractReport& r);

}  // namespace annealdyn
