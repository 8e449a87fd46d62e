#ifndef ONENA_ARCS_HPP
#define ONENA_ARCS_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace onena {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Gap/overlap tolerance used during canonicalization; absorbs arccos noise.
inline constexpr double arc_merge_tol = 1e-12;

// One arc given by its start angle and length. length == 2*pi is the full
// circle, length == 0 the empty set.
struct Arc {
  double start = 0.0;   // radians, any finite value; reduced mod 2*pi
  double length = 0.0;  // radians in [0, 2*pi]
};

// Canonical finite union of arcs: half-open segments [a,b) with
// 0 <= a < b <= 2*pi, sorted, pairwise disjoint and non-abutting.
// Wrap-around content is stored split at 2*pi.
class ArcSet {
public:
  struct Segment {
    double lo;
    double hi;
  };

  ArcSet() = default;

  static ArcSet empty_set() { return ArcSet(); }

  static ArcSet full_circle() {
    ArcSet s;
    s.segments_.push_back({0.0, two_pi});
    return s;
  }

  static ArcSet normalize(std::span<const Arc> arcs) {
    std::vector<Segment> raw;
    raw.reserve(arcs.size() + 2);
    for (const Arc& a : arcs) {
      if (!std::isfinite(a.start) || !std::isfinite(a.length))
        throw std::invalid_argument("ArcSet: non-finite arc");
      if (a.length < 0.0 || a.length > two_pi + arc_merge_tol)
        throw std::invalid_argument("ArcSet: arc length outside [0, 2*pi]");
      if (a.length <= arc_merge_tol) continue;
      if (a.length >= two_pi - arc_merge_tol) {
        raw.push_back({0.0, two_pi});
        continue;
      }
      double lo = std::fmod(a.start, two_pi);
      if (lo < 0.0) lo += two_pi;
      const double hi = lo + a.length;
      if (hi <= two_pi) {
        raw.push_back({lo, hi});
      } else {  // wraps: split at 2*pi
        raw.push_back({lo, two_pi});
        raw.push_back({0.0, hi - two_pi});
      }
    }
    return from_segments(std::move(raw));
  }

  static ArcSet normalize(std::initializer_list<Arc> arcs) {
    return normalize(std::span<const Arc>(arcs.begin(), arcs.size()));
  }

  // Single arc [lo, lo+len).
  static ArcSet arc(double start, double length) {
    Arc a{start, length};
    return normalize(std::span<const Arc>(&a, 1));
  }

  double measure() const {
    double m = 0.0;
    for (const Segment& s : segments_) m += s.hi - s.lo;
    return m;
  }

  bool empty() const { return segments_.empty(); }

  const std::vector<Segment>& segments() const { return segments_; }

  bool contains(double theta) const {
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment& s) { return v < s.lo; });
    if (it == segments_.begin()) return false;
    --it;
    return t < it->hi;
  }

  friend ArcSet set_union(const ArcSet& a, const ArcSet& b) {
    std::vector<Segment> raw;
    raw.reserve(a.segments_.size() + b.segments_.size());
    raw.insert(raw.end(), a.segments_.begin(), a.segments_.end());
    raw.insert(raw.end(), b.segments_.begin(), b.segments_.end());
    return from_segments(std::move(raw));
  }

  friend ArcSet set_intersect(const ArcSet& a, const ArcSet& b) {
    std::vector<Segment> raw;
    auto ia = a.segments_.begin();
    auto ib = b.segments_.begin();
    while (ia != a.segments_.end() && ib != b.segments_.end()) {
      const double lo = std::max(ia->lo, ib->lo);
      const double hi = std::min(ia->hi, ib->hi);
      if (hi - lo > arc_merge_tol) raw.push_back({lo, hi});
      if (ia->hi < ib->hi)
        ++ia;
      else
        ++ib;
    }
    return from_segments(std::move(raw));
  }

  friend ArcSet set_complement(const ArcSet& a) {
    if (a.segments_.empty()) return full_circle();
    std::vector<Segment> raw;
    raw.reserve(a.segments_.size() + 1);
    double cursor = 0.0;
    for (const Segment& s : a.segments_) {
      if (s.lo - cursor > arc_merge_tol) raw.push_back({cursor, s.lo});
      cursor = s.hi;
    }
    if (two_pi - cursor > arc_merge_tol) raw.push_back({cursor, two_pi});
    return from_segments(std::move(raw));
  }

  bool approx_equal(const ArcSet& other, double tol = 1e-9) const {
    if (segments_.size() != other.segments_.size()) return false;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      if (std::abs(segments_[i].lo - other.segments_[i].lo) > tol) return false;
      if (std::abs(segments_[i].hi - other.segments_[i].hi) > tol) return false;
    }
    return true;
  }

private:
  static ArcSet from_segments(std::vector<Segment> raw) {
    std::sort(raw.begin(), raw.end(), [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
    ArcSet out;
    for (const Segment& s : raw) {
      if (s.hi - s.lo <= arc_merge_tol) continue;
      if (!out.segments_.empty() && s.lo <= out.segments_.back().hi + arc_merge_tol) {
        out.segments_.back().hi = std::max(out.segments_.back().hi, s.hi);
      } else {
        out.segments_.push_back(s);
      }
    }
    for (Segment& s : out.segments_) s.hi = std::min(s.hi, two_pi);
    return out;
  }

  std::vector<Segment> segments_;
};

}  // namespace onena

#endif
