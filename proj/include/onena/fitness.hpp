#ifndef ONENA_FITNESS_HPP
#define ONENA_FITNESS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "onena/arcs.hpp"
#include "onena/network.hpp"
#include "onena/problems.hpp"
#include "onena/rng.hpp"

namespace onena {

// Fraction of the circle where the predicted region agrees with the target.
inline double fitness_region(const ArcSet& predicted, const ArcSet& target) {
  const double agree = set_intersect(predicted, target).measure() +
                       set_intersect(set_complement(predicted), set_complement(target)).measure();
  return agree / two_pi;
}

inline double fitness(const std::vector<Neuron>& neurons, const NetworkTopology& topo,
                      const Problem& p) {
  return fitness_region(predict_region(neurons, topo), p.target);
}

inline double fitness(const Genotype& g, const NetworkTopology& topo, int r, const Problem& p) {
  return fitness(decode(g, topo, r), topo, p);
}

// Fraction of correctly labeled points; used for dim >= 3 point-set problems.
inline double fitness_pointset(const Genotype& g, const NetworkTopology& topo, int r,
                               const LabeledPointSet& ds) {
  if (topo.dim != ds.dim()) throw std::invalid_argument("fitness_pointset: dimension mismatch");
  const auto hidden = decode_planes(g, topo, r);
  std::optional<Neuron> out;
  if (topo.output_mode == OutputMode::EvolvedOutputNeuron) out = decode_output_neuron(g, topo, r);
  int correct = 0;
  for (const LabeledPoint& pt : ds.points)
    if (classify_point(hidden, out ? &*out : nullptr, pt.x) == pt.label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(ds.points.size());
}

// Independent sampling oracle for the exact engine: classify uniform angles
// and compare with target membership.
inline double monte_carlo_fitness(const std::vector<Neuron>& neurons, const NetworkTopology& topo,
                                  const Problem& p, long samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("monte_carlo_fitness: samples >= 1 required");
  CounterRng rng(seed);
  long agree = 0;
  for (long i = 0; i < samples; ++i) {
    const double theta = rng.next_double() * two_pi;
    const int bit = classify_point(neurons, topo, {std::cos(theta), std::sin(theta)});
    if (bit == (p.target.contains(theta) ? 1 : 0)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(samples);
}

inline double monte_carlo_fitness(const Genotype& g, const NetworkTopology& topo, int r,
                                  const Problem& p, long samples, std::uint64_t seed) {
  return monte_carlo_fitness(decode(g, topo, r), topo, p, samples, seed);
}

// Closed-form fitness decomposition for a single line on the quarter problem:
// eta is the surplus arc length above the line over the target's pi/2, dphi
// the wrapped angular distance from pi/4, dbias the bias offset from
// sqrt(2)/2. Valid when the bias is non-negative and a positive-length piece
// of the target lies above the line.
struct QuarterDecomposition {
  double eta;
  double dphi;
  double dbias;
  double predicted_fitness;
};

inline std::optional<QuarterDecomposition> quarter_decomposition(const Neuron& n) {
  const double pi = std::numbers::pi;
  const double dbias = n.bias - std::sqrt(0.5);
  if (dbias < -std::sqrt(0.5)) return std::nullopt;  // negative bias: outside the domain
  double d = std::fmod(std::abs(n.angle - pi / 4.0), two_pi);
  if (d > std::numbers::pi) d = two_pi - d;  // wrapped |angle - pi/4|
  const double half = std::acos(std::min(1.0, std::max(-1.0, n.bias)));
  const double eta = 2.0 * half - pi / 2.0;
  // Positive-length overlap of the predicted arc with the target arc.
  if (d >= half + pi / 4.0 - 1e-15) return std::nullopt;
  const double wrong = std::abs(eta) + 2.0 * std::max(0.0, d - std::abs(eta) / 2.0);
  return QuarterDecomposition{eta, d, dbias, 1.0 - wrong / two_pi};
}

inline std::optional<QuarterDecomposition> quarter_decomposition(const Genotype& g, int r) {
  NetworkTopology topo{1, OutputMode::HardwiredOr, BiasMode::Variable, 2};
  return quarter_decomposition(decode(g, topo, r).front());
}

// Single-component +/-1 neighborhood test (wrap mod r for angles, mod r+1 for
// biases). A point is locally optimal iff no neighbor has strictly larger
// fitness; equal-fitness neighbors do not disqualify it.
struct LocalOptimumResult {
  bool is_local_optimum;
  std::vector<Genotype> improving_neighbors;
};

template <typename FitnessFn>
LocalOptimumResult local_optimum_check_with(const Genotype& g, const NetworkTopology& topo, int r,
                                            FitnessFn&& eval) {
  const double f0 = eval(g);
  LocalOptimumResult res{true, {}};
  for (int i = 0; i < static_cast<int>(g.components.size()); ++i) {
    if (topo.bias_mode == BiasMode::FixedZero && topo.is_bias_component(i)) continue;
    const int modulus = topo.is_bias_component(i) ? r + 1 : r;
    for (int delta : {+1, -1}) {
      Genotype nb = g;
      nb.components[i] = ((nb.components[i] + delta) % modulus + modulus) % modulus;
      if (eval(nb) > f0) {
        res.is_local_optimum = false;
        res.improving_neighbors.push_back(std::move(nb));
      }
    }
  }
  return res;
}

inline LocalOptimumResult local_optimum_check(const Genotype& g, const NetworkTopology& topo,
                                              int r, const Problem& p) {
  return local_optimum_check_with(g, topo, r,
                                  [&](const Genotype& x) { return fitness(x, topo, r, p); });
}

}  // namespace onena

#endif
