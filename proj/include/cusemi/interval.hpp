#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cusemi/rational.hpp"

namespace cusemi {

/// Extended interval endpoint.  `Below` sits left of 0 and `Above` right
/// of 1, so every interval of interest is (lo,hi) ∩ [0,1]:
///
///   (Below, b)     = [0,b)      (Below, Above) = [0,1]
///   (a, Above)     = (a,1]      (a, b)         = (a,b)
///
/// This matches the grid convention where -inf/n maps to a closed left
/// end and +inf/n to a closed right end.
struct Cut {
  enum Kind : int8_t { kBelow = -1, kFinite = 0, kAbove = 1 };

  Kind kind = kFinite;
  Rational value;  // meaningful only for kFinite

  static Cut below() { return {kBelow, Rational()}; }
  static Cut above() { return {kAbove, Rational()}; }
  static Cut at(Rational r) { return {kFinite, std::move(r)}; }

  bool finite() const { return kind == kFinite; }

  bool operator==(const Cut& o) const {
    return kind == o.kind && (kind != kFinite || value == o.value);
  }
  bool operator<(const Cut& o) const {
    if (kind != o.kind) return kind < o.kind;
    return kind == kFinite && value < o.value;
  }
  bool operator<=(const Cut& o) const { return *this < o || *this == o; }

  /// Endpoint of the closure inside [0,1]: Below clamps to 0, Above to 1.
  Rational clamp() const;
};

enum class IntervalKind { kFull, kLeft, kRight, kOpen };

/// One connected open piece of [0,1] with rational endpoints.
class Interval {
 public:
  static Interval full() { return Interval(Cut::below(), Cut::above()); }
  static Interval left(const Rational& b);          // [0,b)
  static Interval right(const Rational& a);         // (a,1]
  static Interval open(const Rational& a, const Rational& b);  // (a,b)
  static Interval from_cuts(Cut lo, Cut hi);

  const Cut& lo() const { return lo_; }
  const Cut& hi() const { return hi_; }
  IntervalKind kind() const;

  bool contains(const Rational& x) const;
  bool operator==(const Interval& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }

  std::string str() const;

 private:
  Interval(Cut lo, Cut hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}
  Cut lo_, hi_;
};

/// Nonempty iff (lo,hi) ∩ [0,1] contains a point.
bool nonempty(const Cut& lo, const Cut& hi);

/// Finite union of intervals in canonical maximal-component form:
/// components sorted by left cut, pairwise disjoint, none mergeable.
class OpenSet {
 public:
  OpenSet() = default;
  explicit OpenSet(Interval iv) : comps_{std::move(iv)} {}
  static OpenSet empty() { return OpenSet(); }
  static OpenSet full() { return OpenSet(Interval::full()); }

  /// Canonicalizes an arbitrary list of pieces (touching open endpoints
  /// are kept separate; overlapping pieces are merged).
  static OpenSet from_pieces(std::vector<Interval> pieces);

  const std::vector<Interval>& components() const { return comps_; }
  bool is_empty() const { return comps_.empty(); }
  bool is_full() const { return comps_.size() == 1 && comps_[0].kind() == IntervalKind::kFull; }

  bool contains(const Rational& x) const;
  bool operator==(const OpenSet& o) const { return comps_ == o.comps_; }

  std::string str() const;

 private:
  std::vector<Interval> comps_;
};

OpenSet openset_union(const OpenSet& u, const OpenSet& v);
OpenSet openset_intersect(const OpenSet& u, const OpenSet& v);

/// u ⋐ v: the closure of u inside [0,1] is contained in v, each component
/// landing inside a single component of v.  Full ⋐ Full holds.
bool compactly_contained(const OpenSet& u, const OpenSet& v);

bool subset(const OpenSet& u, const OpenSet& v);

/// [0,1] minus the closure of u, as an open set.
OpenSet complement_of_closure(const OpenSet& u);

/// Shrinks every component by eps on each finite side; emptied components
/// are dropped.  Full maps to Full.
OpenSet retract(const OpenSet& u, const Rational& eps);

/// Grows every component by eps on each finite side, clamping into the
/// relative topology of [0,1] ((a-eps,b+eps) becomes [0,b+eps) once
/// a-eps < 0, and so on), then re-canonicalizes.
OpenSet neighborhood(const OpenSet& u, const Rational& eps);

/// x is in the closure of u (within [0,1]).
bool closure_contains(const OpenSet& u, const Rational& x);

/// All finite endpoint values of u, in order of appearance.
void collect_endpoints(const OpenSet& u, std::vector<Rational>& out);

}  // namespace cusemi
