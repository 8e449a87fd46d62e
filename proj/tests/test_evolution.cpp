#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "onena/evolution.hpp"
#include "onena/harness.hpp"

using namespace onena;

namespace {

constexpr double pi = std::numbers::pi;

RunConfig base_config(const char* problem, int neurons, BiasMode bias, MutationKind kind, int r) {
  RunConfig cfg;
  cfg.problem = make_problem(problem, neurons);
  cfg.topo = NetworkTopology{neurons, OutputMode::HardwiredOr, bias, 2};
  cfg.r = r;
  cfg.op.kind = kind;
  return cfg;
}

}  // namespace

TEST_SUITE("evolution") {

TEST_CASE("default stagnation cutoff uses the natural log") {
  CHECK(default_stagnation_cutoff(120) ==
        static_cast<long>(std::ceil(100.0 * 120.0 * std::log(120.0))));
  CHECK(default_stagnation_cutoff(8) == static_cast<long>(std::ceil(800.0 * std::log(8.0))));
}

TEST_CASE("proximity success on the half problem") {
  RunConfig cfg = base_config("half", 1, BiasMode::Variable, MutationKind::Harmonic, 120);
  CHECK(is_success(Genotype{{30, 60}}, cfg));
  CHECK(!is_success(Genotype{{31, 60}}, cfg));  // wrapped distance exactly 1
  CHECK(!is_success(Genotype{{29, 60}}, cfg));
  CHECK(!is_success(Genotype{{30, 61}}, cfg));
}

TEST_CASE("proximity success tolerance on the quarter problem at r=8") {
  RunConfig cfg = base_config("quarter", 1, BiasMode::Variable, MutationKind::Harmonic, 8);
  // Optimal bias in search units: (sqrt(2)/2 + 1) * 4 = 6.83.
  CHECK(is_success(Genotype{{1, 7}}, cfg));
  CHECK(is_success(Genotype{{1, 6}}, cfg));
  CHECK(!is_success(Genotype{{1, 5}}, cfg));
  CHECK(!is_success(Genotype{{2, 7}}, cfg));
}

TEST_CASE("two-quarters success is permutation-insensitive") {
  RunConfig cfg = base_config("two-quarters", 2, BiasMode::Variable, MutationKind::Harmonic, 120);
  // Optima in search units: phi 15 and 75, bias (sqrt(2)/2+1)*60 = 102.4.
  CHECK(is_success(Genotype{{15, 102, 75, 102}}, cfg));
  CHECK(is_success(Genotype{{75, 102, 15, 102}}, cfg));  // swapped neurons
  CHECK(!is_success(Genotype{{15, 102, 15, 102}}, cfg));  // both on the same quarter
}

TEST_CASE("fitness-threshold success") {
  RunConfig cfg = base_config("three-arc", 1, BiasMode::Variable, MutationKind::Harmonic, 24);
  cfg.success_mode = SuccessMode::FitnessThreshold;
  // (22, 12) decodes to the exact optimum with fitness 3/4 >= 3/4 - 1/24.
  CHECK(is_success(Genotype{{22, 12}}, cfg));
  CHECK(!is_success(Genotype{{0, 12}}, cfg));
}

TEST_CASE("proximity success without applicable optima is a config error") {
  RunConfig cfg = base_config("two-quarters", 1, BiasMode::Variable, MutationKind::Harmonic, 120);
  CHECK_THROWS(is_success(Genotype{{15, 102}}, cfg));
}

TEST_CASE("runs are deterministic given the seed") {
  RunConfig cfg = base_config("half", 1, BiasMode::Variable, MutationKind::Harmonic, 120);
  cfg.seed = 42;
  cfg.record_improvements = true;
  const RunRecord a = run(cfg);
  const RunRecord b = run(cfg);
  CHECK(a.evaluations_used == b.evaluations_used);
  CHECK(a.success == b.success);
  CHECK(a.final_genotype == b.final_genotype);
  CHECK(a.trajectory == b.trajectory);
}

TEST_CASE("elitism: recorded fitness never decreases") {
  RunConfig cfg = base_config("three-arc", 1, BiasMode::Variable, MutationKind::Harmonic, 120);
  cfg.record_step_fitness = true;
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    cfg.seed = seed;
    const RunRecord rec = run(cfg);
    for (std::size_t t = 1; t < rec.step_fitness.size(); ++t)
      CHECK(rec.step_fitness[t] >= rec.step_fitness[t - 1]);
    // One fitness evaluation per loop iteration.
    CHECK(rec.evaluations_used == static_cast<long>(rec.step_fitness.size()) - 1);
  }
}

TEST_CASE("half with unit mutation and fixed bias always succeeds") {
  RunConfig cfg = base_config("half", 1, BiasMode::FixedZero, MutationKind::Unit, 120);
  double total = 0.0;
  for (int i = 0; i < 100; ++i) {
    cfg.seed = trial_seed(99, i);
    const RunRecord rec = run(cfg);
    CHECK(rec.success);
    total += static_cast<double>(rec.first_hitting);
  }
  const double mean = total / 100.0;
  CHECK(mean >= 5.0);
  CHECK(mean <= 5000.0);
}

TEST_CASE("half with harmonic mutation at r=1200 stays fast") {
  RunConfig cfg = base_config("half", 1, BiasMode::Variable, MutationKind::Harmonic, 1200);
  double total = 0.0;
  for (int i = 0; i < 100; ++i) {
    cfg.seed = trial_seed(7, i);
    const RunRecord rec = run(cfg);
    CHECK(rec.success);
    total += static_cast<double>(rec.first_hitting);
  }
  const double mean = total / 100.0;
  CHECK(mean >= 150.0);
  CHECK(mean <= 2500.0);
}

TEST_CASE("proximity success implies near-optimal fitness") {
  // Lipschitz slack 4*pi/r for one grid step in every component.
  for (const char* name : {"half", "quarter", "three-arc"}) {
    RunConfig cfg = base_config(name, 1, BiasMode::Variable, MutationKind::Harmonic, 120);
    for (int i = 0; i < 20; ++i) {
      cfg.seed = trial_seed(31, i);
      const RunRecord rec = run(cfg);
      if (!rec.success) continue;
      CHECK(rec.final_fitness >= *cfg.problem.best_fitness - 4.0 * pi / cfg.r);
    }
  }
}

TEST_CASE("every run terminates within the coarse upper bound") {
  // All seeded runs at r=24 stop (success or stagnation) within
  // 10 * (r ln r + r)^2 steps.
  const int r = 24;
  const double bound = 10.0 * std::pow(r * std::log(r) + r, 2.0);
  struct Cell {
    const char* name;
    SuccessMode mode;
  };
  for (const Cell cell : {Cell{"half", SuccessMode::ParameterProximity},
                          Cell{"quarter", SuccessMode::ParameterProximity},
                          Cell{"two-quarters", SuccessMode::FitnessThreshold},
                          Cell{"three-arc", SuccessMode::ParameterProximity}}) {
    RunConfig cfg = base_config(cell.name, 1, BiasMode::Variable, MutationKind::Harmonic, r);
    cfg.success_mode = cell.mode;
    cfg.max_steps = static_cast<long>(bound);
    for (int i = 0; i < 50; ++i) {
      cfg.seed = trial_seed(17, i);
      const RunRecord rec = run(cfg);
      CHECK(rec.termination != Termination::MaxSteps);
      CHECK(rec.evaluations_used <= static_cast<long>(bound));
    }
  }
}

TEST_CASE("eval log lists every evaluation") {
  RunConfig cfg = base_config("half", 1, BiasMode::Variable, MutationKind::Harmonic, 120);
  cfg.seed = 3;
  std::ostringstream log;
  cfg.eval_log = &log;
  const RunRecord rec = run(cfg);
  long lines = 0;
  std::istringstream in(log.str());
  std::string line;
  long step;
  int phi, b;
  double f;
  while (std::getline(in, line)) {
    ++lines;
    std::istringstream ls(line);
    CHECK((ls >> step >> phi >> b >> f));
    CHECK(step == lines);
  }
  CHECK(lines == rec.evaluations_used);
}

TEST_CASE("continuous operators run on arc problems") {
  RunConfig cfg = base_config("half", 1, BiasMode::Variable, MutationKind::Cauchy, 120);
  cfg.seed = 11;
  cfg.max_steps = 200000;
  const RunRecord rec = run(cfg);
  CHECK(rec.final_params.size() == 2);
  CHECK(rec.final_fitness >= 0.0);
  CHECK(rec.final_fitness <= 1.0);
  // Continuous mutation of a point set is not supported.
  RunConfig bad = cfg;
  bad.pointset = cube_corners_dataset();
  CHECK_THROWS(run(bad));
}

TEST_CASE("exhaustive oracle on the half problem with fixed bias") {
  NetworkTopology fz{1, OutputMode::HardwiredOr, BiasMode::FixedZero, 2};
  const auto res = exhaustive_best(make_problem("half"), fz, 24);
  CHECK(std::abs(res.best_fitness - 1.0) < 1e-12);
  REQUIRE(res.argmax.size() == 1);
  CHECK(res.argmax[0].components[0] == 6);
}

TEST_CASE("exhaustive oracle on the quarter problem") {
  NetworkTopology or1{1, OutputMode::HardwiredOr, BiasMode::Variable, 2};
  const auto res = exhaustive_best(make_problem("quarter"), or1, 24);
  CHECK(res.best_fitness >= 1.0 - 2.0 / 24.0);
  bool found = false;
  for (const Genotype& g : res.argmax)
    if (g.components[0] == 3 && (g.components[1] == 20 || g.components[1] == 21)) found = true;
  CHECK(found);
}

TEST_CASE("exhaustive oracle on two-quarters with one neuron") {
  NetworkTopology or1{1, OutputMode::HardwiredOr, BiasMode::Variable, 2};
  const auto res = exhaustive_best(make_problem("two-quarters", 1), or1, 24);
  // 3/4 needs the off-grid bias sqrt(2)/2; the grid best sits just below it.
  CHECK(res.best_fitness <= 0.75 + 1e-12);
  CHECK(res.best_fitness >= 0.75 - 2.0 * pi / 24.0);
}

TEST_CASE("exhaustive oracle confirms the three-arc optima list") {
  NetworkTopology or1{1, OutputMode::HardwiredOr, BiasMode::Variable, 2};
  const int r = 360;
  const Problem p = make_problem("three-arc", 1);
  const auto res = exhaustive_best(p, or1, r);
  CHECK(std::abs(res.best_fitness - 0.75) < 2.0 * pi / r);
  RunConfig cfg;
  cfg.problem = p;
  cfg.topo = or1;
  cfg.r = r;
  for (const Genotype& g : res.argmax) {
    // Every argmax is in the basin of one of the three declared optima.
    CHECK(is_success(g, cfg, res.best_fitness));
  }
  // And each declared optimum is itself represented among the argmax basins:
  // its nearest grid point reaches the oracle's best fitness within 2*pi/r.
  for (const OptimumSpec& opt : p.optima) {
    const Neuron& n = opt.neurons.front();
    const int phi = static_cast<int>(std::lround(n.angle * r / two_pi)) % r;
    const int b = static_cast<int>(std::lround((n.bias + 1.0) * r / 2.0));
    CHECK(fitness(Genotype{{phi, b}}, or1, r, p) >= res.best_fitness - 2.0 * pi / r);
  }
}

TEST_CASE("exhaustive oracle refuses oversized state spaces") {
  NetworkTopology or2{2, OutputMode::HardwiredOr, BiasMode::Variable, 2};
  CHECK_THROWS(exhaustive_best(make_problem("two-quarters", 2), or2, 400));
}

}  // TEST_SUITE
