// Command-line front end: seeded sweeps, single runs, the exhaustive oracle,
// and empirical drift estimation. Every flag can also be set through an
// environment variable with the NA_ prefix (e.g. NA_PROBLEM, NA_R_LIST).
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "onena/evolution.hpp"
#include "onena/harness.hpp"
#include "onena/mutation.hpp"
#include "onena/problems.hpp"

namespace {

using onena::BiasMode;
using onena::OutputMode;
using onena::RunConfig;
using onena::SuccessMode;

struct CommonOptions {
  std::string problem = "half";
  std::string mutation = "harmonic";
  std::vector<std::string> mutation_params;
  int neurons = 1;
  std::string output_mode = "or";
  std::string bias = "variable";
  std::uint64_t seed = 1;
  double cutoff_factor = 100.0;
  std::string config_path;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--problem", opt.problem, "half|quarter|two-quarters|three-arc|cube")
      ->envname("NA_PROBLEM");
  cmd->add_option("--mutation", opt.mutation, "harmonic|unit|pareto|exponential|cauchy")
      ->envname("NA_MUTATION");
  cmd->add_option("--mutation-param", opt.mutation_params,
                  "key=value (pareto_shape, pareto_scale, exp_mean, cauchy_scale, "
                  "selection_prob, resample_void)")
      ->envname("NA_MUTATION_PARAM");
  cmd->add_option("--neurons", opt.neurons, "number of hidden neurons")->envname("NA_NEURONS");
  cmd->add_option("--output-mode", opt.output_mode, "or|evolved")->envname("NA_OUTPUT_MODE");
  cmd->add_option("--bias", opt.bias, "variable|fixed-zero")->envname("NA_BIAS");
  cmd->add_option("--seed", opt.seed, "master seed")->envname("NA_SEED");
  cmd->add_option("--cutoff-factor", opt.cutoff_factor,
                  "stagnation cutoff = ceil(factor * r * ln r)")
      ->envname("NA_CUTOFF_FACTOR");
  cmd->add_option("--config", opt.config_path,
                  "JSON config; a custom target is {\"problem\": {\"arcs\": [[start_deg, "
                  "end_deg], ...]}}")
      ->envname("NA_CONFIG");
}

onena::MutationOperator build_operator(const CommonOptions& opt) {
  onena::MutationOperator op;
  op.kind = onena::mutation_by_name(opt.mutation);
  for (const std::string& kv : opt.mutation_params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--mutation-param expects key=value, got: " + kv);
    const std::string key = kv.substr(0, eq);
    const double value = std::stod(kv.substr(eq + 1));
    if (key == "pareto_shape")
      op.pareto_shape = value;
    else if (key == "pareto_scale")
      op.pareto_scale = value;
    else if (key == "exp_mean")
      op.exp_mean = value;
    else if (key == "cauchy_scale")
      op.cauchy_scale = value;
    else if (key == "selection_prob")
      op.selection_prob = value;
    else if (key == "resample_void")
      op.resample_void = value != 0.0;
    else
      throw std::invalid_argument("unknown mutation parameter: " + key);
  }
  return op;
}

onena::Problem load_custom_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("problem") || !j["problem"].contains("arcs"))
    throw std::invalid_argument("config needs a problem.arcs list of [start_deg, end_deg] pairs");
  std::vector<onena::Arc> arcs;
  double min_len = onena::two_pi;
  for (const auto& pair : j["problem"]["arcs"]) {
    const double start = pair.at(0).get<double>() * std::numbers::pi / 180.0;
    const double end = pair.at(1).get<double>() * std::numbers::pi / 180.0;
    double length = end - start;
    if (length <= 0.0) length += onena::two_pi;  // arcs may cross the 0-degree mark
    arcs.push_back({start, length});
    min_len = std::min(min_len, length);
  }
  if (j["problem"].contains("min_arc_degrees"))
    min_len = j["problem"]["min_arc_degrees"].get<double>() * std::numbers::pi / 180.0;
  return onena::make_custom_union_of_arcs(arcs, min_len);
}

// Assemble the run template shared by `run` and `sweep`.
RunConfig build_config(const CommonOptions& opt) {
  RunConfig cfg;
  cfg.topo.hidden_count = opt.neurons;
  if (opt.output_mode == "or")
    cfg.topo.output_mode = OutputMode::HardwiredOr;
  else if (opt.output_mode == "evolved")
    cfg.topo.output_mode = OutputMode::EvolvedOutputNeuron;
  else
    throw std::invalid_argument("--output-mode must be or|evolved");
  if (opt.bias == "variable")
    cfg.topo.bias_mode = BiasMode::Variable;
  else if (opt.bias == "fixed-zero")
    cfg.topo.bias_mode = BiasMode::FixedZero;
  else
    throw std::invalid_argument("--bias must be variable|fixed-zero");

  if (opt.problem == "cube") {
    cfg.topo.dim = 3;
    cfg.pointset = onena::cube_corners_dataset();
    cfg.success_mode = SuccessMode::FitnessThreshold;
    cfg.fitness_threshold = 1.0;
  } else if (!opt.config_path.empty()) {
    cfg.problem = load_custom_problem(opt.config_path);
    cfg.success_mode = SuccessMode::FitnessThreshold;  // no optima are declared
    cfg.fitness_threshold = 1.0;
  } else {
    cfg.problem = onena::make_problem(opt.problem, opt.neurons);
    // Parameter proximity needs listed optima; otherwise fall back to the
    // best-fitness threshold (two-quarters with one neuron, evolved output).
    bool have_optima = false;
    for (const auto& o : cfg.problem.optima)
      if (static_cast<int>(o.neurons.size()) == opt.neurons) have_optima = true;
    if (!have_optima || cfg.topo.output_mode == OutputMode::EvolvedOutputNeuron)
      cfg.success_mode = SuccessMode::FitnessThreshold;
  }
  cfg.op = build_operator(opt);
  return cfg;
}

long cutoff_for(double factor, int r) {
  return static_cast<long>(std::ceil(factor * r * std::log(static_cast<double>(r))));
}

std::vector<int> parse_r_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  if (out.empty()) throw std::invalid_argument("--r-list is empty");
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

const char* termination_name(onena::Termination t) {
  switch (t) {
    case onena::Termination::Success: return "success";
    case onena::Termination::Stagnation: return "stagnation";
    default: return "max-steps";
  }
}

int cmd_run(const CommonOptions& opt, int r, const std::string& eval_log_path,
            bool dump_trajectory) {
  RunConfig cfg = build_config(opt);
  cfg.r = r;
  cfg.seed = opt.seed;
  cfg.stagnation_cutoff = cutoff_for(opt.cutoff_factor, r);
  cfg.record_improvements = true;
  std::ofstream eval_log;
  if (!eval_log_path.empty()) {
    eval_log.open(eval_log_path);
    if (!eval_log) throw std::runtime_error("cannot open eval log: " + eval_log_path);
    cfg.eval_log = &eval_log;
  }
  const onena::RunRecord rec = onena::run(cfg);
  std::cout << "success " << (rec.success ? 1 : 0) << '\n'
            << "termination " << termination_name(rec.termination) << '\n'
            << "evaluations " << rec.evaluations_used << '\n'
            << "first_hitting " << rec.first_hitting << '\n'
            << "final_fitness " << std::setprecision(12) << rec.final_fitness << '\n'
            << "final_genotype " << onena::to_text(rec.final_genotype) << '\n';
  if (dump_trajectory) {
    for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
      std::cout << rec.trajectory[i].first << ' ' << std::setprecision(12)
                << rec.trajectory[i].second;
      if (i < rec.trajectory_genotypes.size())
        std::cout << ' ' << onena::to_text(rec.trajectory_genotypes[i]);
      std::cout << '\n';
    }
  }
  return 0;
}

int cmd_sweep(const CommonOptions& opt, const std::string& r_list, int trials,
              const std::string& format, const std::string& out_path, bool include_timeouts) {
  onena::SweepSpec spec;
  spec.base = build_config(opt);
  spec.r_values = parse_r_list(r_list);
  spec.trials = trials;
  spec.master_seed = opt.seed;
  spec.include_timeouts = include_timeouts;
  for (int r : spec.r_values) {
    spec.base.stagnation_cutoff = 0;  // recomputed per r below
    if ((spec.base.problem.name == "quarter" || spec.base.problem.name == "two-quarters") &&
        r % 8 != 0)
      std::cerr << "warning: r=" << r << " is not divisible by 8; the exact optimum is off-grid\n";
  }
  // Per-r cutoff with the configured factor.
  std::vector<onena::StatsRow> rows;
  for (int r : spec.r_values) {
    onena::SweepSpec one = spec;
    one.r_values = {r};
    one.base.stagnation_cutoff = cutoff_for(opt.cutoff_factor, r);
    rows.push_back(onena::sweep(one).front());
  }
  std::string text;
  if (format == "csv")
    text = onena::emit_csv(rows);
  else if (format == "markdown")
    text = onena::emit_markdown(rows);
  else
    throw std::invalid_argument("--format must be csv|markdown");
  write_output(text, out_path);
  return 0;
}

int cmd_oracle(const CommonOptions& opt, int r) {
  RunConfig cfg = build_config(opt);
  if (cfg.pointset) throw std::invalid_argument("oracle: arc problems only");
  const onena::ExhaustiveResult res = onena::exhaustive_best(cfg.problem, cfg.topo, r);
  std::cout << "best_fitness " << std::setprecision(12) << res.best_fitness << '\n';
  for (const onena::Genotype& g : res.argmax) std::cout << onena::to_text(g) << '\n';
  return 0;
}

int cmd_drift(const CommonOptions& opt, int r, int trials, int buckets,
              const std::vector<std::string>& inputs, const std::string& out_path) {
  std::vector<std::vector<double>> traces;
  if (!inputs.empty()) {
    // Trajectory dumps: lines "step fitness ...", fitness in column 2.
    for (const std::string& path : inputs) {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
      std::vector<double> trace;
      std::string line;
      while (std::getline(in, line)) {
        std::stringstream ls(line);
        long step;
        double f;
        if (ls >> step >> f) trace.push_back(f);
      }
      if (!trace.empty()) traces.push_back(std::move(trace));
    }
  } else {
    RunConfig cfg = build_config(opt);
    cfg.r = r;
    cfg.stagnation_cutoff = cutoff_for(opt.cutoff_factor, r);
    cfg.record_step_fitness = true;
    for (int i = 0; i < trials; ++i) {
      cfg.seed = onena::trial_seed(opt.seed, i);
      traces.push_back(onena::run(cfg).step_fitness);
    }
  }
  const auto rows = onena::estimate_drift(traces, buckets);
  std::string text = "g_lo,g_hi,normalized_drift,count,std_error\n";
  for (const auto& row : rows) {
    std::ostringstream os;
    os << std::setprecision(12) << row.g_lo << ',' << row.g_hi << ',' << row.normalized_drift
       << ',' << row.count << ',' << row.std_error << '\n';
    text += os.str();
  }
  write_output(text, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(1+1) neuroevolution runtime laboratory"};
  app.require_subcommand(1);

  CommonOptions opt;
  int r = 120;
  int trials = 100;
  int buckets = 10;
  std::string r_list = "120,240,360,480,600,720,840,960,1080,1200";
  std::string format = "csv";
  std::string out_path;
  std::string eval_log_path;
  bool include_timeouts = false;
  bool dump_trajectory = false;
  std::vector<std::string> drift_inputs;

  CLI::App* run_cmd = app.add_subcommand("run", "single seeded run, prints the run record");
  add_common_flags(run_cmd, opt);
  run_cmd->add_option("--r", r, "resolution")->envname("NA_R");
  run_cmd->add_option("--dump-eval-log", eval_log_path,
                      "write every evaluation as 'step genotype... fitness'")
      ->envname("NA_DUMP_EVAL_LOG");
  run_cmd->add_flag("--trajectory", dump_trajectory,
                    "also print improvement lines 'step fitness genotype...'");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "seeded sweep over r values");
  add_common_flags(sweep_cmd, opt);
  sweep_cmd->add_option("--r-list", r_list, "comma-separated r values")->envname("NA_R_LIST");
  sweep_cmd->add_option("--trials", trials, "trials per r")->envname("NA_TRIALS");
  sweep_cmd->add_option("--format", format, "csv|markdown")->envname("NA_FORMAT");
  sweep_cmd->add_option("--out", out_path, "output path (default stdout)")->envname("NA_OUT");
  sweep_cmd
      ->add_flag("--stats-include-timeouts", include_timeouts,
                 "count censored runs at their evaluation count")
      ->envname("NA_STATS_INCLUDE_TIMEOUTS");

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exhaustive best fitness and argmax set");
  add_common_flags(oracle_cmd, opt);
  oracle_cmd->add_option("--r", r, "resolution")->envname("NA_R");

  CLI::App* drift_cmd =
      app.add_subcommand("drift", "empirical multiplicative drift of g = 1 - fitness");
  add_common_flags(drift_cmd, opt);
  drift_cmd->add_option("--r", r, "resolution")->envname("NA_R");
  drift_cmd->add_option("--trials", trials, "trials to record when no input files are given")
      ->envname("NA_TRIALS");
  drift_cmd->add_option("--buckets", buckets, "number of log-spaced g buckets");
  drift_cmd->add_option("--in", drift_inputs, "trajectory dump files (step fitness ...)");
  drift_cmd->add_option("--out", out_path, "output path (default stdout)")->envname("NA_OUT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(opt, r, eval_log_path, dump_trajectory);
    if (sweep_cmd->parsed())
      return cmd_sweep(opt, r_list, trials, format, out_path, include_timeouts);
    if (oracle_cmd->parsed()) return cmd_oracle(opt, r);
    if (drift_cmd->parsed()) return cmd_drift(opt, r, trials, buckets, drift_inputs, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
