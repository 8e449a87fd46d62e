#ifndef ONENA_PROBLEMS_HPP
#define ONENA_PROBLEMS_HPP

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "onena/arcs.hpp"
#include "onena/network.hpp"

namespace onena {

// One known optimal parameter setting: a target (angle, bias) per hidden
// neuron, order-insensitive.
struct OptimumSpec {
  std::vector<Neuron> neurons;
};

// Union-of-arcs classification target on the unit circle, with its known
// optima and best achievable fitness where established.
struct Problem {
  std::string name;
  ArcSet target;
  double min_arc_length = 0.0;  // a*: every target arc is at least this long
  std::vector<OptimumSpec> optima;
  std::optional<double> best_fitness;
};

struct LabeledPoint {
  std::vector<double> x;  // unit vector
  int label;              // 0 or 1
};

struct LabeledPointSet {
  std::vector<LabeledPoint> points;
  int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().x.size()); }
};

enum class BuiltinProblem { Half, Quarter, TwoQuarters, ThreeArc };

inline BuiltinProblem problem_by_name(const std::string& name) {
  if (name == "half") return BuiltinProblem::Half;
  if (name == "quarter") return BuiltinProblem::Quarter;
  if (name == "two-quarters") return BuiltinProblem::TwoQuarters;
  if (name == "three-arc") return BuiltinProblem::ThreeArc;
  throw std::invalid_argument("unknown problem: " + name);
}

// The three optimal single-line placements for the three-arc problem,
// confirmed against the exhaustive small-resolution oracle: cover two of the
// three target arcs edge-to-edge, or the third arc plus the first one across
// the wrap.
inline const std::array<Neuron, 3>& three_arc_optima() {
  static const std::array<Neuron, 3> opt = {{
      {11.0 * std::numbers::pi / 6.0, 0.0},                        // arc [240, 60] deg
      {std::numbers::pi / 6.0, -std::sqrt(3.0) / 2.0},             // arc [240, 180] deg
      {3.0 * std::numbers::pi / 2.0, -std::sqrt(3.0) / 2.0},       // arc [120, 60] deg
  }};
  return opt;
}

// Built-in benchmark targets. `hidden_count` selects which optima/best-fitness
// claims apply (e.g. two-quarters is exactly solvable only with two neurons).
inline Problem make_problem(BuiltinProblem which, int hidden_count = 1) {
  const double pi = std::numbers::pi;
  const double root_half = std::sqrt(0.5);
  Problem p;
  switch (which) {
    case BuiltinProblem::Half:
      p.name = "half";
      p.target = ArcSet::arc(0.0, pi);
      p.min_arc_length = pi;
      if (hidden_count == 1) {
        p.optima.push_back({{{pi / 2.0, 0.0}}});
        p.best_fitness = 1.0;
      }
      break;
    case BuiltinProblem::Quarter:
      p.name = "quarter";
      p.target = ArcSet::arc(0.0, pi / 2.0);
      p.min_arc_length = pi / 2.0;
      if (hidden_count == 1) {
        p.optima.push_back({{{pi / 4.0, root_half}}});
        p.best_fitness = 1.0;
      }
      break;
    case BuiltinProblem::TwoQuarters:
      p.name = "two-quarters";
      p.target = ArcSet::normalize({Arc{0.0, pi / 2.0}, Arc{pi, pi / 2.0}});
      p.min_arc_length = pi / 2.0;
      if (hidden_count == 1) {
        p.best_fitness = 0.75;  // one line always misclassifies a quarter
      } else if (hidden_count == 2) {
        p.optima.push_back({{{pi / 4.0, root_half}, {5.0 * pi / 4.0, root_half}}});
        p.best_fitness = 1.0;
      }
      break;
    case BuiltinProblem::ThreeArc:
      p.name = "three-arc";
      p.target = ArcSet::normalize(
          {Arc{0.0, pi / 3.0}, Arc{2.0 * pi / 3.0, pi / 3.0}, Arc{4.0 * pi / 3.0, pi / 2.0}});
      p.min_arc_length = pi / 3.0;
      if (hidden_count == 1) {
        for (const Neuron& n : three_arc_optima()) p.optima.push_back({{n}});
        p.best_fitness = 0.75;
      }
      break;
  }
  return p;
}

inline Problem make_problem(const std::string& name, int hidden_count = 1) {
  return make_problem(problem_by_name(name), hidden_count);
}

// Custom union-of-arcs target. Optima and best fitness stay unset; the
// exhaustive oracle can fill them in at small r.
inline Problem make_custom_union_of_arcs(std::span<const Arc> arcs, double min_length) {
  if (!(min_length > 0.0)) throw std::invalid_argument("min_length must be positive");
  double total = 0.0;
  for (const Arc& a : arcs) {
    if (a.length < min_length)
      throw std::invalid_argument("arc shorter than the declared minimum length");
    total += a.length;
  }
  Problem p;
  p.name = "custom";
  p.target = ArcSet::normalize(arcs);
  p.min_arc_length = min_length;
  if (std::abs(p.target.measure() - total) > 1e-9)
    throw std::invalid_argument("arcs overlap or abut; not a disjoint union");
  return p;
}

// Eight unit-normalized cube corners; label 1 on the four corners with an
// even number of negative coordinates (pairwise non-neighboring).
inline LabeledPointSet cube_corners_dataset() {
  LabeledPointSet ds;
  const double s = 1.0 / std::sqrt(3.0);
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        const int negatives = (sx < 0) + (sy < 0) + (sz < 0);
        ds.points.push_back({{sx * s, sy * s, sz * s}, negatives % 2 == 0 ? 1 : 0});
      }
  return ds;
}

}  // namespace onena

#endif
