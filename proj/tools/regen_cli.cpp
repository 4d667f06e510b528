// regen: planning, estimation and reproduction runs for regenerative MCMC.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "regen/bound_calc.hpp"
#include "regen/error.hpp"
#include "regen/experiments.hpp"

using namespace regen;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitModel = 3;
constexpr int kExitViolation = 4;

void print_plan(const ConfidencePlan& p, const BoundChoice& b) {
  std::printf("bound_source        %s\n", b.source.c_str());
  std::printf("note                %s\n", b.note.c_str());
  std::printf("sigma_as_sq bound   %.8g\n", p.sigma_as_sq_bound);
  std::printf("n0 bound            %.8g\n", p.n0_bound);
  std::printf("epsilon             %.8g\n", p.epsilon);
  std::printf("alpha               %.8g\n", p.alpha);
  std::printf("delta*              %.10f\n", p.delta_star);
  std::printf("C1                  %.10f\n", p.c1);
  std::printf("C2                  %.10f\n", p.c2);
  std::printf("n (steps per run)   %lld\n", static_cast<long long>(p.n));
  std::printf("l (runs, odd)       %lld\n", static_cast<long long>(p.l));
  std::printf("expected cost       %.8g\n", p.expected_total_cost);
}

int run_plan(const ExperimentConfig& c) {
  c.validate();
  const BoundChoice b = choose_bounds(c);
  print_plan(plan(b.sigma_as_sq, b.n0, c.epsilon, c.alpha), b);
  return 0;
}

int run_estimate(const ExperimentConfig& c) {
  const EstimateResult r = cmd_estimate(c);
  print_plan(r.plan, r.bounds);
  std::printf("theta_hat           %.10g\n", r.first.theta);
  std::printf("total steps         %lld\n", static_cast<long long>(r.first.total_steps));
  if (r.meta_runs > 1) {
    std::printf("meta runs           %lld\n", static_cast<long long>(r.meta_runs));
    std::printf("failure rate        %.6f (alpha %.6g, binomial stderr %.6f)\n", r.failure_rate,
                c.alpha, r.binomial_stderr);
  }
  std::printf("guarantee           %s\n", r.guarantee.c_str());
  std::printf("wrote %s\n", write_outputs(c, "estimate", "estimate", r.table()).string().c_str());
  if (r.bound_violation) {
    std::fprintf(stderr, "failure rate exceeds alpha + 2 stderr\n");
    return kExitViolation;
  }
  return 0;
}

int run_table1(const ExperimentConfig& c) {
  const Table1Result r = cmd_table1(c);
  std::printf("wrote %s\n", write_outputs(c, "table1", "table1", r.table()).string().c_str());
  csv::Table tau;
  tau.header = {"a", "tours", "m_exact", "mean_tau", "stderr_tau", "mean_tau_sq", "stderr_tau_sq",
                "n0", "stderr_n0"};
  for (const auto& t : r.tau2)
    tau.rows.push_back({csv::format_number(t.a), csv::format_integer(t.tours),
                        csv::format_number(t.m_exact), csv::format_number(t.mean_tau),
                        csv::format_number(t.stderr_tau), csv::format_number(t.mean_tau_sq),
                        csv::format_number(t.stderr_tau_sq), csv::format_number(t.n0),
                        csv::format_number(t.stderr_n0)});
  std::printf("wrote %s\n", write_outputs(c, "table1", "table1_tau2", tau).string().c_str());
  std::cout << csv::to_string(r.table());
  if (r.bound_violation) {
    std::fprintf(stderr, "an empirical column exceeds its bound by more than 4 stderr\n");
    return kExitViolation;
  }
  return 0;
}

int run_tau2(const ExperimentConfig& c) {
  c.validate();
  csv::Table tab;
  tab.header = {"a", "tours", "m_exact", "mean_tau", "mean_tau_sq", "stderr_tau_sq", "n0",
                "stderr_n0"};
  auto emit = [&](const Tau2Result& t) {
    tab.rows.push_back({csv::format_number(t.a), csv::format_integer(t.tours),
                        csv::format_number(t.m_exact), csv::format_number(t.mean_tau),
                        csv::format_number(t.mean_tau_sq), csv::format_number(t.stderr_tau_sq),
                        csv::format_number(t.n0), csv::format_number(t.stderr_n0)});
  };
  if (c.model == ModelKind::TwoState) {
    const TwoStateChain chain(c.beta);
    Tau2Result t = run_tau2(chain, 1.0 / c.beta, c.tau2_run_tours, c.master_seed, 0, c.threads);
    t.a = std::numeric_limits<double>::quiet_NaN();
    emit(t);
  } else {
    for (std::size_t i = 0; i < c.a_values.size(); ++i) {
      const GibbsNormalModel model = make_gibbs(c, c.a_values[i]);
      Tau2Result t = run_tau2(model, model.m(), c.tau2_run_tours, c.master_seed, i, c.threads);
      t.a = c.a_values[i];
      emit(t);
    }
  }
  std::cout << csv::to_string(tab);
  std::printf("wrote %s\n", write_outputs(c, "tau2", "tau2", tab).string().c_str());
  return 0;
}

int run_sweep(const ExperimentConfig& c) {
  const SweepResult r = cmd_sweep(c);
  std::printf("wrote %s\n", write_outputs(c, "sweep", "sweep", r.table()).string().c_str());
  std::printf("wrote %s\n",
              write_outputs(c, "sweep", "sweep_argmin", r.argmin_table()).string().c_str());
  const auto script = std::filesystem::path(c.output_dir) / "plot_sweep.py";
  std::ofstream(script) << sweep_plot_script("sweep.csv");
  std::printf("wrote %s\n", script.string().c_str());
  std::cout << csv::to_string(r.argmin_table());
  return 0;
}

int run_table2(const ExperimentConfig& c) {
  const Table2Result r = cmd_table2(c);
  std::printf("wrote %s\n", write_outputs(c, "table2", "table2", r.table()).string().c_str());
  std::cout << csv::to_string(r.table());
  return 0;
}

int run_twostate(const ExperimentConfig& c) {
  const TwoStateCheckResult r = cmd_twostate_check(c);
  std::printf("wrote %s\n",
              write_outputs(c, "twostate-check", "twostate_check", r.table()).string().c_str());
  std::cout << csv::to_string(r.table());
  if (r.bound_violation) {
    std::fprintf(stderr, "a bound failed to dominate its exact or empirical value\n");
    return kExitViolation;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerative MCMC: fixed-precision planning, estimation and bound checks"};
  app.require_subcommand(1);

  std::string config_file;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> threads;
  std::optional<std::string> out;
  app.add_option("--config", config_file, "key = value configuration file");
  app.add_option("--set,-D", overrides, "override one configuration key (key=value)");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--threads", threads, "worker threads, or auto");
  app.add_option("--out", out, "output directory");
  app.fallthrough();

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const ExperimentConfig&);
  };
  const Sub subs[] = {
      {"plan", "print (n, l) for the configured epsilon, alpha and bound source", run_plan},
      {"estimate", "run the median-of-runs estimator", run_estimate},
      {"table1", "MSE and overshoot against their bounds", run_table1},
      {"table2", "best-over-a drift bounds for several t", run_table2},
      {"sweep", "drift bounds as functions of a, with argmins and a plot script", run_sweep},
      {"twostate-check", "exact, empirical and bounded values on the two-state chain",
       run_twostate},
      {"tau2", "long-run estimate of E tau^2 and n0", run_tau2},
  };
  for (const auto& s : subs) app.add_subcommand(s.name, s.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    ExperimentConfig config;
    if (!config_file.empty()) config.load_file(config_file);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) config.master_seed = *seed;
    if (threads) config.set("threads", *threads);
    if (out) config.output_dir = *out;

    for (const auto& s : subs)
      if (app.got_subcommand(s.name)) return s.fn(config);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const ModelError& e) {
    std::fprintf(stderr, "model error: %s\n", e.what());
    return kExitModel;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
