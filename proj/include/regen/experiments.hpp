#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regen/csv.hpp"
#include "regen/models.hpp"
#include "regen/sequential_estimator.hpp"

namespace regen {

enum class ModelKind { TwoState, Gibbs };

// Flat key=value configuration shared by all subcommands. Keys equal the
// field names; `seed` and `out` are accepted as aliases of master_seed and
// output_dir. Lists are comma separated.
struct ExperimentConfig {
  ModelKind model = ModelKind::Gibbs;
  double beta = 0.5;
  double t = 50.0;
  double a = 5.0;
  std::string sampler = "collapsed";  // collapsed | two-step

  std::vector<std::int64_t> n_values{10, 100, 1000};
  std::vector<double> a_values{5.0, 100.0};
  std::optional<double> a_min;  // default sqrt(t / (t - 3)) * 1.01
  double a_max = 20.0;
  double a_step = 0.01;
  double golden_tol = 1e-4;
  std::vector<double> t_values{5.0, 50.0, 500.0};

  std::int64_t replications = 10000;
  std::int64_t tau2_run_tours = 1'000'000;
  std::int64_t tours = 100000;
  std::vector<std::int64_t> lorden_n{10, 50, 200};

  double epsilon = 0.1;
  double alpha = 0.05;
  std::string bound_source = "exact";  // exact | drift-theorem | drift-corollary | uniform | uniform-reversible
  std::optional<double> sigma_as_sq;
  std::optional<double> n0;
  std::int64_t meta_runs = 1;

  std::uint64_t master_seed = 20100101;
  std::string output_dir = ".";
  int threads = 0;  // 0 = auto

  // Throws ConfigError for unknown keys or unparsable values.
  void set(const std::string& key, const std::string& value);
  // Lines "key = value"; '#' starts a comment.
  void load_file(const std::filesystem::path& path);
  void load_text(const std::string& text);
  // Throws ConfigError / ModelError (the latter when model constraints fail).
  void validate() const;
  std::vector<std::pair<std::string, std::string>> entries() const;

  double effective_a_min(double t_value) const;
};

std::unique_ptr<SplitKernel> make_kernel(const ExperimentConfig& config);
GibbsNormalModel make_gibbs(const ExperimentConfig& config, double a);

// f(x) = x for both built-in models.
inline double identity_target(State x) { return x; }

// -------------------------------------------------------------- tau2 / n0

struct Tau2Result {
  double a = 0.0;
  std::int64_t tours = 0;
  double m_exact = 0.0;
  double mean_tau = 0.0;
  double stderr_tau = 0.0;
  double mean_tau_sq = 0.0;
  double stderr_tau_sq = 0.0;
  double n0 = 0.0;          // mean_tau_sq / m_exact - 1
  double stderr_n0 = 0.0;
};

// Long run of i.i.d. tours from nu estimating E tau^2. Tours are simulated in
// fixed chunks with seeds derive_seed(master, {Tau2, cell, chunk}).
Tau2Result run_tau2(const SplitKernel& kernel, double m_exact, std::int64_t tours,
                    std::uint64_t master_seed, std::uint64_t cell, int threads);

// ---------------------------------------------------------------- table1 command

struct Table1Row {
  std::int64_t n = 0;
  double a = 0.0;
  double mse_empirical = 0.0;
  double bound_mse = 0.0;
  double overshoot_empirical = 0.0;
  double bound_overshoot = 0.0;
  double m_exact = 0.0;
  double beta = 0.0;
  double mc_stderr_mse = 0.0;
  double mc_stderr_os = 0.0;
  double bound_mse_stderr = 0.0;
  double bound_os_stderr = 0.0;
};

struct Table1Result {
  std::vector<Table1Row> rows;
  std::vector<Tau2Result> tau2;
  bool bound_violation = false;  // empirical above bound by more than 4 stderr
  csv::Table table() const;
};

Table1Result cmd_table1(const ExperimentConfig& config);

// -------------------------------------------------------------- sweeps

struct SweepRow {
  double a = 0.0;
  double lambda = 0.0;
  double k_const = 0.0;
  double beta = 0.0;
  double bound_theorem_asvar = 0.0;
  double bound_corollary_asvar = 0.0;
  double bound_theorem_n0 = 0.0;
  double bound_corollary_n0 = 0.0;
  std::string status = "ok";
};

enum class SweepCurve { TheoremAsvar, CorollaryAsvar, TheoremN0, CorollaryN0 };
std::string_view to_string(SweepCurve c);

struct SweepArgmin {
  SweepCurve curve;
  double a = 0.0;
  double value = 0.0;
};

struct SweepResult {
  double t = 0.0;
  std::vector<SweepRow> rows;
  std::vector<SweepArgmin> argmins;  // in SweepCurve order
  csv::Table table() const;
  csv::Table argmin_table() const;
  const SweepArgmin& argmin(SweepCurve c) const;
};

// Drift bounds of the Gibbs model at (t, a); status carries the reason when
// a is outside the valid region.
SweepRow sweep_point(double t, double a);

// Grid scan then golden-section refinement of each curve's minimum.
SweepResult cmd_sweep(const ExperimentConfig& config);
SweepResult sweep_for_t(const ExperimentConfig& config, double t);

// Script for an external plotter rendering both figures from sweep.csv.
std::string sweep_plot_script(const std::string& csv_name);

struct Table2Row {
  double t = 0.0;
  double sigma_as_sq = 0.0;
  double best_theorem = 0.0;
  double a_theorem = 0.0;
  double best_corollary = 0.0;
  double a_corollary = 0.0;
};

struct Table2Result {
  std::vector<Table2Row> rows;
  csv::Table table() const;
};

Table2Result cmd_table2(const ExperimentConfig& config);

// ------------------------------------------------------------ estimate / plan

struct BoundChoice {
  double sigma_as_sq = 0.0;
  double n0 = 0.0;
  std::string source;
  std::string note;
};

// sigma_as^2 and n0 bounds for the configured model and bound_source, unless
// both are given explicitly in the config.
BoundChoice choose_bounds(const ExperimentConfig& config);

struct EstimateResult {
  ConfidencePlan plan;
  BoundChoice bounds;
  ConfidentEstimate first;
  double theta_true = 0.0;
  std::int64_t meta_runs = 0;
  std::int64_t failures = 0;
  std::vector<double> meta_thetas;
  double failure_rate = 0.0;
  double binomial_stderr = 0.0;
  bool bound_violation = false;
  std::string guarantee;
  csv::Table table() const;
};

EstimateResult cmd_estimate(const ExperimentConfig& config);

// --------------------------------------------------------- two-state check

struct LordenRow {
  std::int64_t n = 0;
  double mean_overshoot = 0.0;
  double stderr_overshoot = 0.0;
  double lorden_bound = 0.0;  // 2 E Delta(inf) = E tau^2 / m - 1
  bool holds = false;
};

struct TwoStateCheckResult {
  double beta = 0.0;
  TwoStateTruth truth{};
  TourSummary blocks{};
  double bound_uniform_exact = 0.0;
  double bound_uniform_simple = 0.0;
  double bound_reversible = 0.0;
  bool uniform_dominates = false;
  bool reversible_dominates = false;
  bool empirical_asvar_consistent = false;  // within 4 stderr of exact
  bool empirical_n0_consistent = false;
  std::vector<LordenRow> lorden;
  bool bound_violation = false;
  csv::Table table() const;
};

TwoStateCheckResult cmd_twostate_check(const ExperimentConfig& config);

// ---------------------------------------------------------------- output

std::string git_revision();

// Writes <output_dir>/<name>.csv and <name>.csv.meta.txt; returns the CSV path.
std::filesystem::path write_outputs(const ExperimentConfig& config, const std::string& command,
                                    const std::string& name, const csv::Table& table);

} // namespace regen
