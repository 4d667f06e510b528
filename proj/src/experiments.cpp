#include "regen/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "regen/bound_calc.hpp"
#include "regen/error.hpp"
#include "regen/numeric.hpp"
#include "regen/parallel.hpp"
#include "regen/summation.hpp"

#ifndef REGEN_GIT_REVISION
#define REGEN_GIT_REVISION "unknown"
#endif

namespace regen {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::int64_t kTau2Chunk = 1 << 16;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a real number, got '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  // Accept scientific notation for round counts such as 1e6.
  const double x = parse_double(key, v);
  if (x != std::floor(x) || std::fabs(x) > 9.0e18)
    throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  return static_cast<std::int64_t>(x);
}

std::uint64_t parse_seed(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos, 0);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a 64-bit unsigned integer, got '" + v + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, const std::string& v, Parse parse) {
  std::vector<T> out;
  for (const auto& item : split_list(v)) out.push_back(parse(key, item));
  if (out.empty()) throw ConfigError("config: '" + key + "' must not be empty");
  return out;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_integral_v<T>)
      s += std::to_string(xs[i]);
    else
      s += csv::format_number(xs[i]);
  }
  return s;
}

std::string fmt(double x) { return csv::format_number(x); }
std::string fmt_int(std::int64_t x) { return csv::format_integer(x); }

// Mean and standard error of a sample stored in index order.
struct SampleStats {
  double mean;
  double stderr_;
};

SampleStats sample_stats(const std::vector<double>& xs) {
  MomentAccumulator acc;
  for (double x : xs) acc.add(x);
  return {acc.mean(), acc.stderr_of_mean()};
}

// Empirical value exceeds its bound by more than 4 combined standard errors.
bool exceeds(double empirical, double se_empirical, double bound, double se_bound) {
  if (!std::isfinite(se_empirical)) return false;
  const double se_b = std::isfinite(se_bound) ? se_bound : 0.0;
  return empirical > bound + 4.0 * std::sqrt(se_empirical * se_empirical + se_b * se_b);
}

double zero_target(State) { return 0.0; }

} // namespace

// ------------------------------------------------------------------- config

void ExperimentConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string v = trim(raw_value);
  if (key == "model") {
    if (v == "twostate")
      model = ModelKind::TwoState;
    else if (v == "gibbs")
      model = ModelKind::Gibbs;
    else
      throw ConfigError("config: model must be 'twostate' or 'gibbs', got '" + v + "'");
  } else if (key == "beta") {
    beta = parse_double(key, v);
  } else if (key == "t") {
    t = parse_double(key, v);
  } else if (key == "a") {
    a = parse_double(key, v);
  } else if (key == "sampler") {
    if (v != "collapsed" && v != "two-step")
      throw ConfigError("config: sampler must be 'collapsed' or 'two-step'");
    sampler = v;
  } else if (key == "n_values") {
    n_values = parse_list<std::int64_t>(key, v, parse_int);
  } else if (key == "a_values") {
    a_values = parse_list<double>(key, v, parse_double);
  } else if (key == "a_min") {
    a_min = parse_double(key, v);
  } else if (key == "a_max") {
    a_max = parse_double(key, v);
  } else if (key == "a_step") {
    a_step = parse_double(key, v);
  } else if (key == "golden_tol") {
    golden_tol = parse_double(key, v);
  } else if (key == "t_values") {
    t_values = parse_list<double>(key, v, parse_double);
  } else if (key == "replications") {
    replications = parse_int(key, v);
  } else if (key == "tau2_run_tours") {
    tau2_run_tours = parse_int(key, v);
  } else if (key == "tours") {
    tours = parse_int(key, v);
  } else if (key == "lorden_n") {
    lorden_n = parse_list<std::int64_t>(key, v, parse_int);
  } else if (key == "epsilon") {
    epsilon = parse_double(key, v);
  } else if (key == "alpha") {
    alpha = parse_double(key, v);
  } else if (key == "bound_source") {
    bound_source = v;
  } else if (key == "sigma_as_sq") {
    sigma_as_sq = parse_double(key, v);
  } else if (key == "n0") {
    n0 = parse_double(key, v);
  } else if (key == "meta_runs") {
    meta_runs = parse_int(key, v);
  } else if (key == "master_seed" || key == "seed") {
    master_seed = parse_seed(key, v);
  } else if (key == "output_dir" || key == "out") {
    output_dir = v;
  } else if (key == "threads") {
    threads = v == "auto" ? 0 : static_cast<int>(parse_int(key, v));
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void ExperimentConfig::load_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

void ExperimentConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  load_text(ss.str());
}

double ExperimentConfig::effective_a_min(double t_value) const {
  return a_min.value_or(std::sqrt(t_value / (t_value - 3.0)) * 1.01);
}

void ExperimentConfig::validate() const {
  if (replications < 1) throw ConfigError("config: replications must be >= 1");
  if (tau2_run_tours < 2) throw ConfigError("config: tau2_run_tours must be >= 2");
  if (tours < 2) throw ConfigError("config: tours must be >= 2");
  if (meta_runs < 1) throw ConfigError("config: meta_runs must be >= 1");
  if (threads < 0) throw ConfigError("config: threads must be >= 0");
  for (auto n : n_values)
    if (n < 1) throw ConfigError("config: n_values must be >= 1");
  for (auto n : lorden_n)
    if (n < 1) throw ConfigError("config: lorden_n must be >= 1");
  if (!(a_step > 0.0)) throw ConfigError("config: a_step must be > 0");
  if (!(golden_tol > 0.0)) throw ConfigError("config: golden_tol must be > 0");
  if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be > 0");
  if (!(alpha > 0.0 && alpha < 0.5)) throw InvalidAlpha("config: alpha must lie in (0, 1/2)");
  for (double tv : t_values)
    if (!(tv >= 4.0)) throw ConfigError("config: t_values must be >= 4");
  if (a_min && !(*a_min > 0.0)) throw ConfigError("config: a_min must be > 0");
  if (model == ModelKind::TwoState) {
    TwoStateChain chain(beta);
  } else {
    GibbsNormalModel check(t, a);
    for (double av : a_values) GibbsNormalModel(t, av);
  }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("model", model == ModelKind::TwoState ? "twostate" : "gibbs");
  e.emplace_back("beta", fmt(beta));
  e.emplace_back("t", fmt(t));
  e.emplace_back("a", fmt(a));
  e.emplace_back("sampler", sampler);
  e.emplace_back("n_values", join(n_values));
  e.emplace_back("a_values", join(a_values));
  e.emplace_back("a_min", a_min ? fmt(*a_min) : "auto");
  e.emplace_back("a_max", fmt(a_max));
  e.emplace_back("a_step", fmt(a_step));
  e.emplace_back("golden_tol", fmt(golden_tol));
  e.emplace_back("t_values", join(t_values));
  e.emplace_back("replications", fmt_int(replications));
  e.emplace_back("tau2_run_tours", fmt_int(tau2_run_tours));
  e.emplace_back("tours", fmt_int(tours));
  e.emplace_back("lorden_n", join(lorden_n));
  e.emplace_back("epsilon", fmt(epsilon));
  e.emplace_back("alpha", fmt(alpha));
  e.emplace_back("bound_source", bound_source);
  e.emplace_back("sigma_as_sq", sigma_as_sq ? fmt(*sigma_as_sq) : "auto");
  e.emplace_back("n0", n0 ? fmt(*n0) : "auto");
  e.emplace_back("meta_runs", fmt_int(meta_runs));
  e.emplace_back("master_seed", std::to_string(master_seed));
  e.emplace_back("output_dir", output_dir);
  e.emplace_back("threads", threads == 0 ? "auto" : std::to_string(threads));
  return e;
}

GibbsNormalModel make_gibbs(const ExperimentConfig& config, double a) {
  return GibbsNormalModel(config.t, a,
                          config.sampler == "two-step" ? GibbsNormalModel::Sampler::TwoStep
                                                       : GibbsNormalModel::Sampler::Collapsed);
}

std::unique_ptr<SplitKernel> make_kernel(const ExperimentConfig& config) {
  if (config.model == ModelKind::TwoState) return std::make_unique<TwoStateChain>(config.beta);
  return std::make_unique<GibbsNormalModel>(make_gibbs(config, config.a));
}

// --------------------------------------------------------------------- tau2

Tau2Result run_tau2(const SplitKernel& kernel, double m_exact, std::int64_t tours,
                    std::uint64_t master_seed, std::uint64_t cell, int threads) {
  if (tours < 2) throw InvalidParameter("run_tau2: need at least two tours");
  const std::int64_t chunks = (tours + kTau2Chunk - 1) / kTau2Chunk;
  struct ChunkSums {
    MomentAccumulator tau;
    MomentAccumulator tau_sq;
  };
  std::vector<ChunkSums> partial(static_cast<std::size_t>(chunks));
  parallel_for(partial.size(), threads, [&](std::size_t c) {
    Rng rng = make_stream(master_seed, {tag(StreamTag::Tau2), cell, c});
    const std::int64_t begin = static_cast<std::int64_t>(c) * kTau2Chunk;
    const std::int64_t end = std::min(tours, begin + kTau2Chunk);
    for (std::int64_t i = begin; i < end; ++i) {
      const double tau = static_cast<double>(sample_block(kernel, zero_target, rng).length);
      partial[c].tau.add(tau);
      partial[c].tau_sq.add(tau * tau);
    }
  });
  MomentAccumulator tau, tau_sq;
  for (const auto& p : partial) {
    tau.merge(p.tau);
    tau_sq.merge(p.tau_sq);
  }
  Tau2Result r;
  r.tours = tours;
  r.m_exact = m_exact;
  r.mean_tau = tau.mean();
  r.stderr_tau = tau.stderr_of_mean();
  r.mean_tau_sq = tau_sq.mean();
  r.stderr_tau_sq = tau_sq.stderr_of_mean();
  r.n0 = r.mean_tau_sq / m_exact - 1.0;
  r.stderr_n0 = r.stderr_tau_sq / m_exact;
  return r;
}

// ---------------------------------------------------------------- table1 command

csv::Table Table1Result::table() const {
  csv::Table t;
  t.header = {"n",           "a",             "mse_empirical", "bound_mse",
              "overshoot_empirical", "bound_overshoot", "m_exact", "beta",
              "mc_stderr_mse", "mc_stderr_os", "bound_mse_stderr", "bound_os_stderr"};
  for (const auto& r : rows)
    t.rows.push_back({fmt_int(r.n), fmt(r.a), fmt(r.mse_empirical), fmt(r.bound_mse),
                      fmt(r.overshoot_empirical), fmt(r.bound_overshoot), fmt(r.m_exact),
                      fmt(r.beta), fmt(r.mc_stderr_mse), fmt(r.mc_stderr_os),
                      fmt(r.bound_mse_stderr), fmt(r.bound_os_stderr)});
  return t;
}

Table1Result cmd_table1(const ExperimentConfig& config) {
  config.validate();
  Table1Result result;

  struct Cell {
    std::unique_ptr<SplitKernel> kernel;
    double a;
    double m_exact;
    double sigma_as_sq;
    double theta;
  };
  std::vector<Cell> cells;
  if (config.model == ModelKind::Gibbs) {
    for (double a : config.a_values) {
      auto model = std::make_unique<GibbsNormalModel>(make_gibbs(config, a));
      const GibbsTruth truth = gibbs_truth(*model);
      cells.push_back({std::move(model), a, truth.m, truth.sigma_as_sq, truth.theta});
    }
  } else {
    const TwoStateTruth truth = two_state_truth(config.beta);
    cells.push_back({std::make_unique<TwoStateChain>(config.beta), kNaN, truth.m,
                     truth.sigma_as_sq, 0.5});
  }

  for (std::size_t ai = 0; ai < cells.size(); ++ai) {
    const Cell& cell = cells[ai];
    const Tau2Result tau2 = run_tau2(*cell.kernel, cell.m_exact, config.tau2_run_tours,
                                     config.master_seed, ai, config.threads);
    Tau2Result tau2_row = tau2;
    tau2_row.a = cell.a;
    result.tau2.push_back(tau2_row);

    for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
      const std::int64_t n = config.n_values[ni];
      const auto reps = static_cast<std::size_t>(config.replications);
      std::vector<double> sq_err(reps), overshoot(reps);
      parallel_for(reps, config.threads, [&](std::size_t r) {
        Rng rng = make_stream(config.master_seed, {tag(StreamTag::Table1), ai, ni, r});
        const SequentialRun run =
            run_sequential(*cell.kernel, identity_target, n, StartFromNu{}, rng);
        const double err = estimate(run).theta_hat - cell.theta;
        sq_err[r] = err * err;
        overshoot[r] = static_cast<double>(run.overshoot);
      });
      const SampleStats mse = sample_stats(sq_err);
      const SampleStats os = sample_stats(overshoot);

      Table1Row row;
      row.n = n;
      row.a = cell.a;
      row.mse_empirical = mse.mean;
      row.mc_stderr_mse = mse.stderr_;
      row.overshoot_empirical = os.mean;
      row.mc_stderr_os = os.stderr_;
      row.bound_overshoot = tau2.n0;
      row.bound_os_stderr = tau2.stderr_n0;
      row.bound_mse = mse_bound(cell.sigma_as_sq, std::max(0.0, tau2.n0), n);
      row.bound_mse_stderr =
          cell.sigma_as_sq / (static_cast<double>(n) * static_cast<double>(n)) * tau2.stderr_n0;
      row.m_exact = cell.m_exact;
      row.beta = cell.kernel->beta();
      if (exceeds(row.mse_empirical, row.mc_stderr_mse, row.bound_mse, row.bound_mse_stderr) ||
          exceeds(row.overshoot_empirical, row.mc_stderr_os, row.bound_overshoot,
                  row.bound_os_stderr))
        result.bound_violation = true;
      result.rows.push_back(row);
    }
  }
  return result;
}

// ------------------------------------------------------------------- sweeps

std::string_view to_string(SweepCurve c) {
  switch (c) {
    case SweepCurve::TheoremAsvar: return "theorem_asvar";
    case SweepCurve::CorollaryAsvar: return "corollary_asvar";
    case SweepCurve::TheoremN0: return "theorem_n0";
    case SweepCurve::CorollaryN0: return "corollary_n0";
  }
  return "?";
}

namespace {

constexpr SweepCurve kCurves[] = {SweepCurve::TheoremAsvar, SweepCurve::CorollaryAsvar,
                                  SweepCurve::TheoremN0, SweepCurve::CorollaryN0};

double curve_value(const SweepRow& r, SweepCurve c) {
  switch (c) {
    case SweepCurve::TheoremAsvar: return r.bound_theorem_asvar;
    case SweepCurve::CorollaryAsvar: return r.bound_corollary_asvar;
    case SweepCurve::TheoremN0: return r.bound_theorem_n0;
    case SweepCurve::CorollaryN0: return r.bound_corollary_n0;
  }
  return kNaN;
}

} // namespace

SweepRow sweep_point(double t, double a) {
  SweepRow row;
  row.a = a;
  try {
    const GibbsNormalModel model(t, a);
    const DriftSpec spec = model.drift_spec();
    const BoundsReport thm = drift_theorem_bounds(spec);
    const BoundsReport cor = drift_corollary_bounds(spec);
    row.lambda = model.lambda();
    row.k_const = model.k_const();
    row.beta = model.beta();
    row.bound_theorem_asvar = thm.sigma_as_sq;
    row.bound_corollary_asvar = cor.sigma_as_sq;
    row.bound_theorem_n0 = thm.n0;
    row.bound_corollary_n0 = cor.n0;
  } catch (const Error& e) {
    row.lambda = row.k_const = row.beta = kNaN;
    row.bound_theorem_asvar = row.bound_corollary_asvar = kNaN;
    row.bound_theorem_n0 = row.bound_corollary_n0 = kNaN;
    row.status = std::string("invalid: ") + e.what();
  }
  return row;
}

csv::Table SweepResult::table() const {
  csv::Table tab;
  tab.header = {"a",
                "lambda",
                "k_const",
                "beta",
                "bound_theorem_asvar",
                "bound_corollary_asvar",
                "bound_theorem_n0",
                "bound_corollary_n0",
                "status"};
  for (const auto& r : rows)
    tab.rows.push_back({fmt(r.a), fmt(r.lambda), fmt(r.k_const), fmt(r.beta),
                        fmt(r.bound_theorem_asvar), fmt(r.bound_corollary_asvar),
                        fmt(r.bound_theorem_n0), fmt(r.bound_corollary_n0), r.status});
  return tab;
}

csv::Table SweepResult::argmin_table() const {
  csv::Table tab;
  tab.header = {"t", "curve", "a_star", "value"};
  for (const auto& m : argmins)
    tab.rows.push_back({fmt(t), std::string(to_string(m.curve)), fmt(m.a), fmt(m.value)});
  return tab;
}

const SweepArgmin& SweepResult::argmin(SweepCurve c) const {
  for (const auto& m : argmins)
    if (m.curve == c) return m;
  throw Error("sweep: curve has no argmin");
}

SweepResult sweep_for_t(const ExperimentConfig& config, double t) {
  const double lo = config.effective_a_min(t);
  const double hi = config.a_max;
  if (!(hi > lo)) throw ConfigError("sweep: a_max must exceed a_min");
  const auto points = static_cast<std::size_t>(std::floor((hi - lo) / config.a_step + 1e-9)) + 1;
  SweepResult result;
  result.t = t;
  result.rows.resize(points);
  parallel_for(points, config.threads, [&](std::size_t i) {
    result.rows[i] = sweep_point(t, lo + static_cast<double>(i) * config.a_step);
  });

  for (SweepCurve curve : kCurves) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < points; ++i) {
      const double v = curve_value(result.rows[i], curve);
      if (std::isfinite(v) && (!best || v < curve_value(result.rows[*best], curve))) best = i;
    }
    if (!best) throw ConfigError("sweep: no grid point lies in the valid region");
    const std::size_t i = *best;
    const double left = result.rows[i > 0 ? i - 1 : i].a;
    const double right = result.rows[i + 1 < points ? i + 1 : i].a;
    SweepArgmin am{curve, result.rows[i].a, curve_value(result.rows[i], curve)};
    if (right > left) {
      const Minimum refined = golden_section_minimize(
          [&](double a) {
            const double v = curve_value(sweep_point(t, a), curve);
            return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
          },
          left, right, config.golden_tol);
      if (refined.value <= am.value) am = {curve, refined.x, refined.value};
    }
    result.argmins.push_back(am);
  }
  return result;
}

SweepResult cmd_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.effective_a_min(config.t) <= 0.0) throw ConfigError("sweep: a_min must be > 0");
  return sweep_for_t(config, config.t);
}

std::string sweep_plot_script(const std::string& csv_name) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
       "# Renders the sigma_as^2 and n0 bound curves from "
    << csv_name
    << ".\nimport csv\nimport sys\n\nimport matplotlib\nmatplotlib.use(\"Agg\")\n"
       "import matplotlib.pyplot as plt\n\n"
       "path = sys.argv[1] if len(sys.argv) > 1 else \""
    << csv_name
    << "\"\nrows = [r for r in csv.DictReader(open(path)) if r[\"status\"] == \"ok\"]\n"
       "a = [float(r[\"a\"]) for r in rows]\n\n"
       "def col(name):\n"
       "    return [float(r[name]) for r in rows]\n\n"
       "for fig_name, thm, cor, ylabel in [\n"
       "    (\"asvar_bounds.png\", \"bound_theorem_asvar\", \"bound_corollary_asvar\", "
       "\"bound on sigma_as^2\"),\n"
       "    (\"n0_bounds.png\", \"bound_theorem_n0\", \"bound_corollary_n0\", \"bound on n0\"),\n"
       "]:\n"
       "    fig, ax = plt.subplots(figsize=(6, 4))\n"
       "    ax.plot(a, col(cor), color=\"black\", label=\"lambda, K, beta only\")\n"
       "    ax.plot(a, col(thm), color=\"grey\", label=\"with pi(V^2)\")\n"
       "    ax.set_xlabel(\"a\")\n"
       "    ax.set_ylabel(ylabel)\n"
       "    ax.set_yscale(\"log\")\n"
       "    ax.legend()\n"
       "    fig.tight_layout()\n"
       "    fig.savefig(fig_name, dpi=150)\n";
  return s.str();
}

csv::Table Table2Result::table() const {
  csv::Table tab;
  tab.header = {"t", "sigma_as_sq", "best_theorem_asvar", "a_theorem", "best_corollary_asvar",
                "a_corollary"};
  for (const auto& r : rows)
    tab.rows.push_back({fmt(r.t), fmt(r.sigma_as_sq), fmt(r.best_theorem), fmt(r.a_theorem),
                        fmt(r.best_corollary), fmt(r.a_corollary)});
  return tab;
}

Table2Result cmd_table2(const ExperimentConfig& config) {
  for (double tv : config.t_values)
    if (!(tv >= 4.0)) throw ConfigError("table2: t_values must be >= 4");
  if (!(config.a_step > 0.0)) throw ConfigError("table2: a_step must be > 0");
  Table2Result result;
  for (double tv : config.t_values) {
    const SweepResult s = sweep_for_t(config, tv);
    const SweepArgmin& thm = s.argmin(SweepCurve::TheoremAsvar);
    const SweepArgmin& cor = s.argmin(SweepCurve::CorollaryAsvar);
    result.rows.push_back({tv, tv / (tv - 3.0), thm.value, thm.a, cor.value, cor.a});
  }
  return result;
}

// ----------------------------------------------------------------- estimate

BoundChoice choose_bounds(const ExperimentConfig& config) {
  if (config.sigma_as_sq && config.n0)
    return {*config.sigma_as_sq, *config.n0, "explicit", "bounds supplied by the caller"};
  const std::string& src = config.bound_source;
  if (config.model == ModelKind::TwoState) {
    const double b = config.beta;
    const TwoStateTruth truth = two_state_truth(b);
    if (src == "exact") return {truth.sigma_as_sq, truth.n0, src, "exact two-state values"};
    if (src == "uniform")
      return {asvar_uniform(truth.sigma_sq, b).exact_form, truth.n0, src,
              "uniform-ergodic bound; n0 of the geometric tour length"};
    if (src == "uniform-reversible")
      return {asvar_reversible_uniform(truth.sigma_sq, b), truth.n0, src,
              "reversible uniform-ergodic bound; n0 of the geometric tour length"};
    // V = 1 satisfies the drift condition with J the whole space, lambda = 0, K = 1.
    DriftSpec spec;
    spec.lambda = 0.0;
    spec.k_const = 1.0;
    spec.beta = b;
    spec.pi_v = 1.0;
    spec.pi_v2 = 1.0;
    spec.fbar_v_norm = 0.5;
    if (src == "drift-theorem") {
      const BoundsReport r = drift_theorem_bounds(spec);
      return {r.sigma_as_sq, r.n0, src, "drift bounds with V = 1, lambda = 0, K = 1"};
    }
    if (src == "drift-corollary") {
      const BoundsReport r = drift_corollary_bounds(spec);
      return {r.sigma_as_sq, r.n0, src, "drift bounds with V = 1, lambda = 0, K = 1"};
    }
  } else {
    const GibbsNormalModel model = make_gibbs(config, config.a);
    const DriftSpec spec = model.drift_spec();
    const BoundsReport thm = drift_theorem_bounds(spec);
    if (src == "exact")
      return {model.sigma_as_sq(), thm.n0, src,
              "exact sigma_as^2 = t/(t-3); n0 from the drift bound with pi(V) <= sqrt(pi(V^2))"};
    if (src == "drift-theorem")
      return {thm.sigma_as_sq, thm.n0, src, "drift bounds with exact pi(V^2)"};
    if (src == "drift-corollary") {
      const BoundsReport r = drift_corollary_bounds(spec);
      return {r.sigma_as_sq, r.n0, src, "drift bounds from lambda, K, beta only"};
    }
    if (src == "uniform" || src == "uniform-reversible")
      throw ConfigError("bound_source '" + src + "' needs a uniformly ergodic model");
  }
  throw ConfigError("config: unknown bound_source '" + src + "'");
}

csv::Table EstimateResult::table() const {
  csv::Table tab;
  tab.header = {"meta_run", "theta_hat", "abs_error", "failure"};
  for (std::size_t i = 0; i < meta_thetas.size(); ++i) {
    const double err = std::fabs(meta_thetas[i] - theta_true);
    tab.rows.push_back({fmt_int(static_cast<std::int64_t>(i)), fmt(meta_thetas[i]), fmt(err),
                        err > plan.epsilon ? "1" : "0"});
  }
  return tab;
}

EstimateResult cmd_estimate(const ExperimentConfig& config) {
  config.validate();
  EstimateResult result;
  result.bounds = choose_bounds(config);
  result.plan = plan(result.bounds.sigma_as_sq, result.bounds.n0, config.epsilon, config.alpha);
  const auto kernel = make_kernel(config);
  result.theta_true = config.model == ModelKind::TwoState ? 0.5 : 0.0;
  result.meta_runs = config.meta_runs;

  std::vector<ConfidentEstimate> runs(static_cast<std::size_t>(config.meta_runs));
  parallel_for(runs.size(), config.threads, [&](std::size_t j) {
    runs[j] = run_confident_estimate(*kernel, identity_target, result.plan, config.master_seed,
                                     static_cast<std::uint64_t>(j), 1);
  });
  result.first = runs.front();
  for (const auto& r : runs) {
    result.meta_thetas.push_back(r.theta);
    if (std::fabs(r.theta - result.theta_true) > config.epsilon) ++result.failures;
  }
  const double n = static_cast<double>(config.meta_runs);
  result.failure_rate = static_cast<double>(result.failures) / n;
  result.binomial_stderr = std::sqrt(config.alpha * (1.0 - config.alpha) / n);
  result.bound_violation = config.meta_runs > 1 &&
                           result.failure_rate > config.alpha + 2.0 * result.binomial_stderr;
  std::ostringstream g;
  g << "P(|theta_hat - theta| > " << fmt(config.epsilon) << ") <= " << fmt(config.alpha)
    << " whenever sigma_as^2(f) <= " << fmt(result.bounds.sigma_as_sq)
    << " and n0 <= " << fmt(result.bounds.n0) << " (" << result.bounds.source << ": "
    << result.bounds.note << "); each of the l = " << result.plan.l
    << " runs starts from the regeneration measure";
  result.guarantee = g.str();
  return result;
}

// ------------------------------------------------------------ two-state check

csv::Table TwoStateCheckResult::table() const {
  csv::Table tab;
  tab.header = {"quantity", "n", "value", "stderr", "reference", "pass"};
  auto add = [&](const std::string& q, const std::string& n, double v, double se, double ref,
                 const std::string& pass) {
    tab.rows.push_back({q, n, fmt(v), fmt(se), fmt(ref), pass});
  };
  const auto yes = [](bool b) { return std::string(b ? "1" : "0"); };
  add("sigma_as_sq_empirical", "NA", blocks.sigma_as_sq, blocks.stderr_sigma_as_sq,
      truth.sigma_as_sq, yes(empirical_asvar_consistent));
  add("n0_empirical", "NA", blocks.n0, blocks.stderr_n0, truth.n0, yes(empirical_n0_consistent));
  add("bound_uniform_exact_form", "NA", bound_uniform_exact, kNaN, truth.sigma_as_sq,
      yes(uniform_dominates));
  add("bound_uniform_simple_form", "NA", bound_uniform_simple, kNaN, truth.sigma_as_sq,
      yes(uniform_dominates));
  add("bound_reversible", "NA", bound_reversible, kNaN, truth.sigma_as_sq,
      yes(reversible_dominates));
  for (const auto& l : lorden)
    add("lorden_mean_overshoot", fmt_int(l.n), l.mean_overshoot, l.stderr_overshoot,
        l.lorden_bound, yes(l.holds));
  return tab;
}

TwoStateCheckResult cmd_twostate_check(const ExperimentConfig& config) {
  TwoStateChain chain(config.beta);
  config.validate();
  TwoStateCheckResult r;
  r.beta = config.beta;
  r.truth = two_state_truth(config.beta);

  const auto n_tours = static_cast<std::size_t>(config.tours);
  std::vector<Tour> tours(n_tours);
  const std::size_t chunks = (n_tours + kTau2Chunk - 1) / kTau2Chunk;
  parallel_for(chunks, config.threads, [&](std::size_t c) {
    Rng rng = make_stream(config.master_seed, {tag(StreamTag::TwoStateCheck), 0, c});
    const std::size_t end = std::min(n_tours, (c + 1) * kTau2Chunk);
    for (std::size_t i = c * kTau2Chunk; i < end; ++i)
      tours[i] = sample_block(chain, identity_target, rng);
  });
  r.blocks = summarize_tours(tours, 0.5);
  r.empirical_asvar_consistent =
      std::fabs(r.blocks.sigma_as_sq - r.truth.sigma_as_sq) <= 4.0 * r.blocks.stderr_sigma_as_sq;
  r.empirical_n0_consistent = std::fabs(r.blocks.n0 - r.truth.n0) <= 4.0 * r.blocks.stderr_n0;

  const UniformAsvarBounds u = asvar_uniform(r.truth.sigma_sq, config.beta);
  r.bound_uniform_exact = u.exact_form;
  r.bound_uniform_simple = u.simple_form;
  r.bound_reversible = asvar_reversible_uniform(r.truth.sigma_sq, config.beta);
  r.uniform_dominates = u.exact_form >= r.truth.sigma_as_sq && u.simple_form >= u.exact_form;
  r.reversible_dominates = r.bound_reversible >= r.truth.sigma_as_sq * (1.0 - 1e-12);

  for (std::size_t ni = 0; ni < config.lorden_n.size(); ++ni) {
    const std::int64_t n = config.lorden_n[ni];
    const auto reps = static_cast<std::size_t>(config.replications);
    std::vector<double> os(reps);
    parallel_for(reps, config.threads, [&](std::size_t k) {
      Rng rng = make_stream(config.master_seed, {tag(StreamTag::TwoStateCheck), 1, ni, k});
      os[k] = static_cast<double>(
          run_sequential(chain, identity_target, n, StartFromNu{}, rng).overshoot);
    });
    const SampleStats s = sample_stats(os);
    LordenRow row{n, s.mean, s.stderr_, r.truth.n0, false};
    row.holds = !exceeds(s.mean, s.stderr_, row.lorden_bound, 0.0);
    r.lorden.push_back(row);
  }
  r.bound_violation = !r.uniform_dominates || !r.reversible_dominates;
  for (const auto& l : r.lorden) r.bound_violation = r.bound_violation || !l.holds;
  return r;
}

// ------------------------------------------------------------------- output

std::string git_revision() { return REGEN_GIT_REVISION; }

std::filesystem::path write_outputs(const ExperimentConfig& config, const std::string& command,
                                    const std::string& name, const csv::Table& table) {
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  const std::filesystem::path csv_path = dir / (name + ".csv");
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + csv_path.string());
    csv::write(out, table);
  }
  std::ofstream meta(dir / (name + ".csv.meta.txt"), std::ios::binary);
  meta << "command = " << command << "\n";
  meta << "git_revision = " << git_revision() << "\n";
  for (const auto& [k, v] : config.entries()) meta << k << " = " << v << "\n";
  return csv_path;
}

} // namespace regen
