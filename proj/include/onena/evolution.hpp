#ifndef ONENA_EVOLUTION_HPP
#define ONENA_EVOLUTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "onena/fitness.hpp"
#include "onena/mutation.hpp"
#include "onena/network.hpp"
#include "onena/problems.hpp"
#include "onena/rng.hpp"

namespace onena {

enum class SuccessMode { ParameterProximity, FitnessThreshold };
enum class Termination { Success, Stagnation, MaxSteps };

inline long default_stagnation_cutoff(int r) {
  return static_cast<long>(std::ceil(100.0 * r * std::log(static_cast<double>(r))));
}

struct RunConfig {
  Problem problem;
  std::optional<LabeledPointSet> pointset;  // replaces `problem` when set
  NetworkTopology topo;
  int r = 120;
  MutationOperator op;
  std::uint64_t seed = 1;
  long max_steps = std::numeric_limits<long>::max();
  long stagnation_cutoff = 0;  // 0 -> ceil(100 * r * ln r)
  SuccessMode success_mode = SuccessMode::ParameterProximity;
  std::optional<double> fitness_threshold;  // default: best_fitness - 1/r
  bool record_improvements = false;
  bool record_step_fitness = false;  // per-step fitness, for drift estimation
  std::ostream* eval_log = nullptr;  // evaluation trace: "step genotype... fitness"

  long effective_cutoff() const {
    return stagnation_cutoff > 0 ? stagnation_cutoff : default_stagnation_cutoff(r);
  }

  double effective_threshold() const {
    if (fitness_threshold) return *fitness_threshold;
    if (pointset) return 1.0;
    if (!problem.best_fitness)
      throw std::invalid_argument("fitness-threshold success needs a known best fitness");
    return *problem.best_fitness - 1.0 / r;
  }
};

struct RunRecord {
  long evaluations_used = 0;
  bool success = false;
  Termination termination = Termination::MaxSteps;
  double final_fitness = 0.0;
  Genotype final_genotype;
  std::vector<double> final_params;  // continuous-operator runs only
  long first_hitting = -1;
  std::vector<std::pair<long, double>> trajectory;  // (evaluations, fitness) at improvements
  std::vector<Genotype> trajectory_genotypes;       // matching genotypes (discrete runs)
  std::vector<double> step_fitness;                 // fitness after every step, if recorded
};

namespace detail {

// Wrapped distance between an integer component and a real-valued target on
// {0,...,modulus-1} (angles) or {0,...,modulus-1} with modulus=r+1 (biases).
inline double wrap_dist(double a, double b, double modulus) {
  double d = std::fmod(std::abs(a - b), modulus);
  return std::min(d, modulus - d);
}

// Per-hidden-neuron component targets in search-point units for one optimum.
inline bool proximity_match(const std::vector<double>& phi_units,
                            const std::vector<double>& bias_units, const OptimumSpec& opt,
                            const NetworkTopology& topo, int r) {
  const int n = static_cast<int>(opt.neurons.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const Neuron& target = opt.neurons[perm[i]];
      // "distance < 1" on the open interval; the 1e-9 slack keeps grid points
      // that are exactly at distance 1 out despite rounding in phi_star.
      const double phi_star = target.angle * r / two_pi;
      if (wrap_dist(phi_units[i], phi_star, r) >= 1.0 - 1e-9) ok = false;
      if (ok && topo.bias_mode == BiasMode::Variable) {
        const double b_star = (target.bias + 1.0) * r / 2.0;
        if (wrap_dist(bias_units[i], b_star, r + 1.0) >= 1.0 - 1e-9) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace detail

// Optimization-time success test: some listed optimum (under some assignment
// of neurons to its entries) has every component within wrapped distance < 1
// in the search-point representation. Only hidden neurons are checked; runs
// with an evolved output layer use the fitness-threshold mode instead.
inline bool is_success_proximity(const std::vector<double>& phi_units,
                                 const std::vector<double>& bias_units, const RunConfig& cfg) {
  bool any_applicable = false;
  for (const OptimumSpec& opt : cfg.problem.optima) {
    if (static_cast<int>(opt.neurons.size()) != cfg.topo.hidden_count) continue;
    any_applicable = true;
    if (detail::proximity_match(phi_units, bias_units, opt, cfg.topo, cfg.r)) return true;
  }
  if (!any_applicable)
    throw std::invalid_argument("parameter-proximity success: no optimum matches the topology");
  return false;
}

inline bool is_success(const Genotype& g, const RunConfig& cfg, std::optional<double> known_fitness = {}) {
  if (cfg.success_mode == SuccessMode::FitnessThreshold || cfg.pointset) {
    double f;
    if (known_fitness)
      f = *known_fitness;
    else
      f = cfg.pointset ? fitness_pointset(g, cfg.topo, cfg.r, *cfg.pointset)
                       : fitness(g, cfg.topo, cfg.r, cfg.problem);
    return f >= cfg.effective_threshold();
  }
  if (cfg.problem.optima.empty())
    throw std::invalid_argument("parameter-proximity success needs listed optima");
  std::vector<double> phi(cfg.topo.hidden_count), bias(cfg.topo.hidden_count);
  const int cph = cfg.topo.components_per_hidden();
  for (int i = 0; i < cfg.topo.hidden_count; ++i) {
    phi[i] = g.components[i * cph];
    bias[i] = g.components[i * cph + cph - 1];
  }
  return is_success_proximity(phi, bias, cfg);
}

namespace detail {

inline std::vector<Neuron> continuous_neurons(const std::vector<double>& params,
                                              const NetworkTopology& topo) {
  std::vector<Neuron> out;
  out.reserve(topo.neuron_count());
  for (int i = 0; i < topo.neuron_count(); ++i) {
    const double bias = (topo.bias_mode == BiasMode::FixedZero && i < topo.hidden_count)
                            ? 0.0
                            : params[2 * i + 1];
    out.push_back({params[2 * i], bias});
  }
  return out;
}

inline bool continuous_success(const std::vector<double>& params, const RunConfig& cfg) {
  if (cfg.success_mode == SuccessMode::FitnessThreshold)
    return fitness(continuous_neurons(params, cfg.topo), cfg.topo, cfg.problem) >=
           cfg.effective_threshold();
  std::vector<double> phi(cfg.topo.hidden_count), bias(cfg.topo.hidden_count);
  for (int i = 0; i < cfg.topo.hidden_count; ++i) {
    phi[i] = params[2 * i] * cfg.r / two_pi;
    bias[i] = (params[2 * i + 1] + 1.0) * cfg.r / 2.0;
  }
  return is_success_proximity(phi, bias, cfg);
}

}  // namespace detail

// The (1+1) NA main loop: uniform initialization, one mutation and one
// fitness evaluation per iteration, elitist acceptance (f(y) >= f(x)),
// success checked on every accepted point, termination on success,
// stagnation (no strict improvement for the cutoff), or max_steps.
inline RunRecord run(const RunConfig& cfg) {
  if (cfg.r < 8) throw std::invalid_argument("run: r >= 8 required");
  if (is_continuous(cfg.op.kind) && (cfg.pointset || cfg.topo.dim != 2))
    throw std::invalid_argument("continuous mutation is only wired up for dim == 2 arc problems");

  CounterRng rng(cfg.seed);
  const long cutoff = cfg.effective_cutoff();
  RunRecord rec;

  const bool continuous = is_continuous(cfg.op.kind);
  MutationOperator op = cfg.op;
  op.prepare(cfg.r);

  // State: integer genotype or real parameter vector.
  Genotype x;
  std::vector<double> xp;
  auto evaluate_genotype = [&](const Genotype& g) {
    return cfg.pointset ? fitness_pointset(g, cfg.topo, cfg.r, *cfg.pointset)
                        : fitness(g, cfg.topo, cfg.r, cfg.problem);
  };
  auto evaluate_params = [&](const std::vector<double>& p) {
    return fitness(detail::continuous_neurons(p, cfg.topo), cfg.topo, cfg.problem);
  };

  double fx;
  if (continuous) {
    xp.resize(cfg.topo.genotype_length());
    for (int i = 0; i < static_cast<int>(xp.size()); ++i)
      xp[i] = cfg.topo.is_bias_component(i) ? 2.0 * rng.next_double() - 1.0
                                            : rng.next_double() * two_pi;
    fx = evaluate_params(xp);
  } else {
    x.components.resize(cfg.topo.genotype_length());
    for (int i = 0; i < static_cast<int>(x.components.size()); ++i)
      x.components[i] = static_cast<int>(
          rng.next_below(cfg.topo.is_bias_component(i) ? cfg.r + 1 : cfg.r));
    fx = evaluate_genotype(x);
  }

  if (cfg.record_improvements) {
    rec.trajectory.emplace_back(0, fx);
    if (!continuous) rec.trajectory_genotypes.push_back(x);
  }
  if (cfg.record_step_fitness) rec.step_fitness.push_back(fx);

  bool success = continuous ? detail::continuous_success(xp, cfg) : is_success(x, cfg, fx);
  if (success) rec.first_hitting = 0;

  long evals = 0;
  long since_improvement = 0;
  Termination term = Termination::MaxSteps;
  while (!success) {
    if (evals >= cfg.max_steps) {
      term = Termination::MaxSteps;
      break;
    }
    double fy;
    if (continuous) {
      std::vector<double> yp = mutate_continuous(xp, op, cfg.topo, rng);
      fy = evaluate_params(yp);
      ++evals;
      if (fy >= fx) {
        const bool improved = fy > fx;
        xp = std::move(yp);
        fx = fy;
        if (improved) {
          since_improvement = 0;
          if (cfg.record_improvements) rec.trajectory.emplace_back(evals, fx);
        } else {
          ++since_improvement;
        }
        success = detail::continuous_success(xp, cfg);
      } else {
        ++since_improvement;
      }
    } else {
      Genotype y = mutate(x, op, cfg.topo, cfg.r, rng);
      fy = evaluate_genotype(y);
      ++evals;
      if (cfg.eval_log) {
        (*cfg.eval_log) << evals << ' ' << to_text(y) << ' ' << std::setprecision(12) << fy
                        << '\n';
      }
      if (fy >= fx) {
        const bool improved = fy > fx;
        x = std::move(y);
        fx = fy;
        if (improved) {
          since_improvement = 0;
          if (cfg.record_improvements) {
            rec.trajectory.emplace_back(evals, fx);
            rec.trajectory_genotypes.push_back(x);
          }
        } else {
          ++since_improvement;
        }
        success = is_success(x, cfg, fx);
      } else {
        ++since_improvement;
      }
    }
    if (cfg.record_step_fitness) rec.step_fitness.push_back(fx);
    if (success) {
      rec.first_hitting = evals;
      term = Termination::Success;
      break;
    }
    if (since_improvement >= cutoff) {
      term = Termination::Stagnation;
      break;
    }
  }
  if (success && rec.first_hitting == 0) term = Termination::Success;

  rec.evaluations_used = evals;
  rec.success = success;
  rec.termination = term;
  rec.final_fitness = fx;
  if (continuous) {
    rec.final_params = xp;
    // Nearest grid point, for uniform reporting.
    rec.final_genotype.components.resize(xp.size());
    for (int i = 0; i < static_cast<int>(xp.size()); ++i) {
      if (cfg.topo.is_bias_component(i)) {
        rec.final_genotype.components[i] =
            std::clamp(static_cast<int>(std::lround((xp[i] + 1.0) * cfg.r / 2.0)), 0, cfg.r);
      } else {
        rec.final_genotype.components[i] =
            static_cast<int>(std::lround(xp[i] * cfg.r / two_pi)) % cfg.r;
      }
    }
  } else {
    rec.final_genotype = x;
  }
  return rec;
}

// Exact enumeration of the whole search grid; oracle for best fitness and
// the set of optima at small r. Fixed-zero bias components are not
// enumerated (they do not affect fitness).
struct ExhaustiveResult {
  double best_fitness;
  std::vector<Genotype> argmax;
};

inline ExhaustiveResult exhaustive_best(const Problem& p, const NetworkTopology& topo, int r,
                                        double tie_tol = 1e-12) {
  const int len = topo.genotype_length();
  std::vector<int> moduli(len);
  double states = 1.0;
  for (int i = 0; i < len; ++i) {
    const bool frozen = topo.bias_mode == BiasMode::FixedZero && topo.is_bias_component(i);
    moduli[i] = frozen ? 1 : (topo.is_bias_component(i) ? r + 1 : r);
    states *= moduli[i];
  }
  if (states > 1e9) throw std::invalid_argument("exhaustive_best: state space too large");

  ExhaustiveResult res{-1.0, {}};
  Genotype g;
  g.components.assign(len, 0);
  while (true) {
    const double f = fitness(g, topo, r, p);
    if (f > res.best_fitness + tie_tol) {
      res.best_fitness = f;
      res.argmax.clear();
      res.argmax.push_back(g);
    } else if (f >= res.best_fitness - tie_tol) {
      res.argmax.push_back(g);
    }
    int i = 0;
    for (; i < len; ++i) {
      if (++g.components[i] < moduli[i]) break;
      g.components[i] = 0;
    }
    if (i == len) break;
  }
  return res;
}

}  // namespace onena

#endif
