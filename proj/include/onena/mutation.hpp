#ifndef ONENA_MUTATION_HPP
#define ONENA_MUTATION_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "onena/network.hpp"
#include "onena/rng.hpp"

namespace onena {

enum class MutationKind { Harmonic, Unit, ShiftedPareto, Exponential, Cauchy };

inline MutationKind mutation_by_name(const std::string& name) {
  if (name == "harmonic") return MutationKind::Harmonic;
  if (name == "unit") return MutationKind::Unit;
  if (name == "pareto") return MutationKind::ShiftedPareto;
  if (name == "exponential") return MutationKind::Exponential;
  if (name == "cauchy") return MutationKind::Cauchy;
  throw std::invalid_argument("unknown mutation operator: " + name);
}

inline bool is_continuous(MutationKind k) {
  return k == MutationKind::ShiftedPareto || k == MutationKind::Exponential ||
         k == MutationKind::Cauchy;
}

// Step-size distribution of Algorithm "(1+1) NA". Harmonic draws l in
// {1,...,r} with P(l=i) = 1/(i*H_r) via a precomputed cumulative table;
// unit fixes l=1. The continuous kinds perturb real-valued parameters.
class MutationOperator {
public:
  MutationKind kind = MutationKind::Harmonic;
  // Continuous-kind parameters (config defaults, not claims from theory):
  double pareto_shape = 1.0;
  double pareto_scale = 0.0;  // 0 means "2*pi/r", filled in at prepare()
  double exp_mean = 0.1;
  double cauchy_scale = 0.05;
  // Redraw instead of emitting a void step (nothing mutated).
  bool resample_void = false;
  // Per-component selection probability; 0 means the 1/(2N) default.
  double selection_prob = 0.0;

  static MutationOperator harmonic(int r) {
    MutationOperator op;
    op.kind = MutationKind::Harmonic;
    op.prepare(r);
    return op;
  }

  static MutationOperator unit() {
    MutationOperator op;
    op.kind = MutationKind::Unit;
    return op;
  }

  // Build per-resolution state (the harmonic cumulative table).
  void prepare(int r) {
    if (r < 1) throw std::invalid_argument("mutation operator: r >= 1 required");
    r_ = r;
    if (kind == MutationKind::Harmonic) {
      cumulative_.resize(r);
      double h = 0.0;
      for (int i = 1; i <= r; ++i) {
        h += 1.0 / i;
        cumulative_[i - 1] = h;
      }
      const double hr = h;
      for (double& c : cumulative_) c /= hr;
      cumulative_.back() = 1.0;
    }
    if (kind == MutationKind::ShiftedPareto && pareto_scale == 0.0) pareto_scale = two_pi / r;
    if (kind == MutationKind::ShiftedPareto && pareto_shape <= 0.0)
      throw std::invalid_argument("pareto shape must be positive");
    if (exp_mean < 0.0 || cauchy_scale < 0.0)
      throw std::invalid_argument("continuous mutation scale must be non-negative");
  }

  const std::vector<double>& cumulative_table() const { return cumulative_; }

  // Signed discrete step: sign uniform, magnitude per kind.
  int sample_step(CounterRng& rng) const {
    const int sign = rng.next_bool() ? 1 : -1;
    int magnitude = 1;
    if (kind == MutationKind::Harmonic) {
      const double u = rng.next_double();
      magnitude = 1 + static_cast<int>(std::lower_bound(cumulative_.begin(), cumulative_.end(), u) -
                                       cumulative_.begin());
      magnitude = std::min(magnitude, r_);
    } else if (kind != MutationKind::Unit) {
      throw std::logic_error("sample_step: continuous operator; use sample_continuous_step");
    }
    return sign * magnitude;
  }

  // Signed continuous step in radians/bias units.
  double sample_continuous_step(CounterRng& rng) const {
    const double sign = rng.next_bool() ? 1.0 : -1.0;
    const double u = rng.next_double();
    double magnitude = 0.0;
    switch (kind) {
      case MutationKind::ShiftedPareto:
        magnitude = pareto_scale * (std::pow(1.0 - u, -1.0 / pareto_shape) - 1.0);
        break;
      case MutationKind::Exponential:
        magnitude = exp_mean == 0.0 ? 0.0 : -exp_mean * std::log(1.0 - u);
        break;
      case MutationKind::Cauchy:
        magnitude = cauchy_scale * std::abs(std::tan(std::numbers::pi * (u - 0.5)));
        break;
      default:
        throw std::logic_error("sample_continuous_step: discrete operator");
    }
    return sign * magnitude;
  }

  double effective_selection_prob(const NetworkTopology& topo) const {
    return selection_prob > 0.0 ? selection_prob : 1.0 / (2.0 * topo.neuron_count());
  }

private:
  int r_ = 0;
  std::vector<double> cumulative_;
};

inline double wrap_angle(double a) {
  double v = std::fmod(a, two_pi);
  return v < 0.0 ? v + two_pi : v;
}

// Reflect a bias into [-1, 1]; the reflection map has period 4.
inline double reflect_bias(double b) {
  double v = std::fmod(b + 1.0, 4.0);
  if (v < 0.0) v += 4.0;
  return v <= 2.0 ? v - 1.0 : 3.0 - v;
}

// One mutation of the integer search point: each mutable component is
// selected with probability 1/(2N) and, if selected, moved by an independent
// signed step, wrapping mod r (angles) or mod r+1 (biases). Fixed-zero bias
// mode never selects bias components.
inline Genotype mutate(const Genotype& g, const MutationOperator& op, const NetworkTopology& topo,
                       int r, CounterRng& rng) {
  const double p_sel = op.effective_selection_prob(topo);
  Genotype y = g;
  bool changed = false;
  do {
    y = g;
    for (int i = 0; i < static_cast<int>(y.components.size()); ++i) {
      if (topo.bias_mode == BiasMode::FixedZero && topo.is_bias_component(i)) continue;
      if (rng.next_double() >= p_sel) continue;
      const int modulus = topo.is_bias_component(i) ? r + 1 : r;
      const int step = op.sample_step(rng);
      y.components[i] = ((y.components[i] + step) % modulus + modulus) % modulus;
      changed = true;
    }
  } while (op.resample_void && !changed);
  return y;
}

// Continuous variant: every component gets an independent signed draw; angles
// wrap mod 2*pi, biases reflect at +/-1 (wrapping a bias has no geometric
// meaning). Layout alternates (angle, bias) like the genotype.
inline std::vector<double> mutate_continuous(const std::vector<double>& params,
                                             const MutationOperator& op,
                                             const NetworkTopology& topo, CounterRng& rng) {
  std::vector<double> out = params;
  for (int i = 0; i < static_cast<int>(out.size()); ++i) {
    if (topo.bias_mode == BiasMode::FixedZero && topo.is_bias_component(i)) continue;
    const double step = op.sample_continuous_step(rng);
    out[i] = topo.is_bias_component(i) ? reflect_bias(out[i] + step)
                                       : wrap_angle(out[i] + step);
  }
  return out;
}

}  // namespace onena

#endif
