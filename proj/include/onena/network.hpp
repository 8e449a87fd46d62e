#ifndef ONENA_NETWORK_HPP
#define ONENA_NETWORK_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "onena/arcs.hpp"

namespace onena {

enum class OutputMode { HardwiredOr, EvolvedOutputNeuron };
enum class BiasMode { Variable, FixedZero };

// Fixed two-layer topology: `hidden_count` threshold neurons feeding either a
// hard-wired OR or one evolvable output neuron. `dim` is the input dimension;
// dim == 2 gives the angle/bias line representation, dim >= 3 uses dim-1
// spherical angles per hidden neuron (point-set problems).
struct NetworkTopology {
  int hidden_count = 1;
  OutputMode output_mode = OutputMode::HardwiredOr;
  BiasMode bias_mode = BiasMode::Variable;
  int dim = 2;

  int components_per_hidden() const { return dim; }  // dim-1 angles + 1 bias

  int genotype_length() const {
    return hidden_count * components_per_hidden() +
           (output_mode == OutputMode::EvolvedOutputNeuron ? 2 : 0);
  }

  // Total neuron count the 1/(2N) per-component mutation rate refers to.
  int neuron_count() const {
    return hidden_count + (output_mode == OutputMode::EvolvedOutputNeuron ? 1 : 0);
  }

  // Component index -> is it a bias component (last one of each neuron block)?
  bool is_bias_component(int index) const {
    const int nh = hidden_count * components_per_hidden();
    if (index < nh) return index % components_per_hidden() == components_per_hidden() - 1;
    return (index - nh) == 1;  // output pair is (angle, bias)
  }
};

// Integer search point. Angle components live in {0,...,r-1}, bias components
// in {0,...,r}.
struct Genotype {
  std::vector<int> components;

  bool operator==(const Genotype&) const = default;
};

struct Neuron {
  double angle;  // radians in [0, 2*pi)
  double bias;   // in [-1, 1]
};

// Hidden neuron for dim >= 3: explicit unit normal.
struct PlaneNeuron {
  std::vector<double> normal;
  double bias;
};

inline void check_genotype(const Genotype& g, const NetworkTopology& topo, int r) {
  if (static_cast<int>(g.components.size()) != topo.genotype_length())
    throw std::invalid_argument("genotype length " + std::to_string(g.components.size()) +
                                " does not match topology (want " +
                                std::to_string(topo.genotype_length()) + ")");
  for (int i = 0; i < static_cast<int>(g.components.size()); ++i) {
    const int hi = topo.is_bias_component(i) ? r : r - 1;
    if (g.components[i] < 0 || g.components[i] > hi)
      throw std::invalid_argument("genotype component " + std::to_string(i) + " out of range");
  }
}

inline double decode_angle(int phi, int r) { return two_pi * phi / r; }
inline double decode_bias(int b, int r) { return 2.0 * b / r - 1.0; }

// dim == 2 decode: one (angle, bias) neuron per hidden unit; if the output
// neuron is evolved, its (angle, bias) pair is appended last. The output
// neuron's angle is the direction of its unit normal in the N-dimensional
// hidden-pattern space (planar angle, so only hidden_count == 2 is supported).
inline std::vector<Neuron> decode(const Genotype& g, const NetworkTopology& topo, int r) {
  if (topo.dim != 2) throw std::invalid_argument("decode: dim != 2, use decode_planes");
  check_genotype(g, topo, r);
  std::vector<Neuron> out;
  out.reserve(topo.neuron_count());
  for (int i = 0; i < topo.hidden_count; ++i) {
    const double angle = decode_angle(g.components[2 * i], r);
    const double bias =
        topo.bias_mode == BiasMode::FixedZero ? 0.0 : decode_bias(g.components[2 * i + 1], r);
    out.push_back({angle, bias});
  }
  if (topo.output_mode == OutputMode::EvolvedOutputNeuron) {
    const int base = 2 * topo.hidden_count;
    out.push_back({decode_angle(g.components[base], r), decode_bias(g.components[base + 1], r)});
  }
  return out;
}

// dim >= 3 decode of the hidden layer. First spherical angle maps to
// [0, 2*pi), the remaining dim-2 angles to [0, pi).
inline std::vector<PlaneNeuron> decode_planes(const Genotype& g, const NetworkTopology& topo,
                                              int r) {
  check_genotype(g, topo, r);
  const int d = topo.dim;
  std::vector<PlaneNeuron> out;
  out.reserve(topo.hidden_count);
  for (int i = 0; i < topo.hidden_count; ++i) {
    const int base = i * d;
    std::vector<double> ang(d - 1);
    ang[0] = decode_angle(g.components[base], r);
    for (int k = 1; k < d - 1; ++k) ang[k] = std::numbers::pi * g.components[base + k] / r;
    // Spherical -> Cartesian unit normal; ang[0] is the azimuth in the
    // (x1,x2) plane, the remaining angles are polar.
    std::vector<double> n(d);
    double sines = 1.0;
    for (int j = d - 1; j >= 2; --j) {
      n[j] = std::cos(ang[j - 1]) * sines;
      sines *= std::sin(ang[j - 1]);
    }
    n[0] = std::cos(ang[0]) * sines;
    n[1] = std::sin(ang[0]) * sines;
    const double bias = topo.bias_mode == BiasMode::FixedZero
                            ? 0.0
                            : decode_bias(g.components[base + d - 1], r);
    out.push_back({std::move(n), bias});
  }
  return out;
}

// Output neuron of an evolved-output net, decoded from the trailing pair.
inline Neuron decode_output_neuron(const Genotype& g, const NetworkTopology& topo, int r) {
  if (topo.output_mode != OutputMode::EvolvedOutputNeuron)
    throw std::logic_error("no evolved output neuron in this topology");
  const int base = static_cast<int>(g.components.size()) - 2;
  return {decode_angle(g.components[base], r), decode_bias(g.components[base + 1], r)};
}

// {theta : cos(theta - angle) >= bias}, the arc the neuron classifies 1.
inline ArcSet positive_region(const Neuron& n) {
  if (n.bias <= -1.0) return ArcSet::full_circle();
  if (n.bias >= 1.0) return ArcSet::empty_set();
  const double half = std::acos(n.bias);
  return ArcSet::arc(n.angle - half, 2.0 * half);
}

// Does the output neuron accept the hidden pattern s in {0,1}^2?
// Its unit normal in pattern space is (cos angle, sin angle).
inline bool output_accepts(const Neuron& out, unsigned pattern) {
  const double dot = (pattern & 1u ? std::cos(out.angle) : 0.0) +
                     (pattern & 2u ? std::sin(out.angle) : 0.0);
  return dot >= out.bias;
}

// Region of the circle the whole network classifies 1. For the evolved output
// neuron every hidden-pattern cell is tested against the output threshold.
inline ArcSet predict_region(const std::vector<Neuron>& neurons, const NetworkTopology& topo) {
  if (topo.output_mode == OutputMode::HardwiredOr) {
    ArcSet acc = ArcSet::empty_set();
    for (const Neuron& n : neurons) acc = set_union(acc, positive_region(n));
    return acc;
  }
  const int nh = topo.hidden_count;
  if (nh != 2) throw std::invalid_argument("evolved output neuron: only 2 hidden neurons supported");
  const Neuron& out = neurons.back();
  std::vector<ArcSet> regions(nh), inv(nh);
  for (int i = 0; i < nh; ++i) {
    regions[i] = positive_region(neurons[i]);
    inv[i] = set_complement(regions[i]);
  }
  ArcSet acc = ArcSet::empty_set();
  for (unsigned pattern = 0; pattern < (1u << nh); ++pattern) {
    if (!output_accepts(out, pattern)) continue;
    ArcSet cell = ArcSet::full_circle();
    for (int i = 0; i < nh; ++i)
      cell = set_intersect(cell, (pattern >> i) & 1u ? regions[i] : inv[i]);
    acc = set_union(acc, cell);
  }
  return acc;
}

inline void check_unit(std::span<const double> x) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  if (std::abs(std::sqrt(sq) - 1.0) > 1e-9)
    throw std::domain_error("classify_point: input not on the unit sphere");
}

// dim == 2 network output on a unit vector.
inline int classify_point(const std::vector<Neuron>& neurons, const NetworkTopology& topo,
                          std::array<double, 2> x) {
  check_unit(x);
  const int nh = topo.hidden_count;
  unsigned pattern = 0;
  for (int i = 0; i < nh; ++i) {
    const double dot = x[0] * std::cos(neurons[i].angle) + x[1] * std::sin(neurons[i].angle);
    if (dot >= neurons[i].bias) pattern |= 1u << i;
  }
  if (topo.output_mode == OutputMode::HardwiredOr) return pattern != 0 ? 1 : 0;
  return output_accepts(neurons.back(), pattern) ? 1 : 0;
}

// dim >= 3 network output; `out` must be given for an evolved output layer.
inline int classify_point(const std::vector<PlaneNeuron>& hidden, const Neuron* out,
                          std::span<const double> x) {
  check_unit(x);
  unsigned pattern = 0;
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    if (hidden[i].normal.size() != x.size())
      throw std::invalid_argument("classify_point: dimension mismatch");
    double dot = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) dot += hidden[i].normal[j] * x[j];
    if (dot >= hidden[i].bias) pattern |= 1u << i;
  }
  if (out == nullptr) return pattern != 0 ? 1 : 0;
  return output_accepts(*out, pattern) ? 1 : 0;
}

// Genotype text form used in trajectory dumps: "phi1 b1 phi2 b2 ...".
inline std::string to_text(const Genotype& g) {
  std::string s;
  for (std::size_t i = 0; i < g.components.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(g.components[i]);
  }
  return s;
}

}  // namespace onena

#endif
