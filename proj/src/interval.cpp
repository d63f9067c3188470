#include "cusemi/interval.hpp"

#include <algorithm>

namespace cusemi {

Rational Cut::clamp() const {
  if (kind == kBelow) return Rational(0);
  if (kind == kAbove) return Rational(1);
  return value;
}

Interval Interval::left(const Rational& b) {
  if (!(Rational(0) < b && b <= Rational(1))) throw PreconditionError("Left interval needs 0 < b <= 1");
  return Interval(Cut::below(), Cut::at(b));
}

Interval Interval::right(const Rational& a) {
  if (!(Rational(0) <= a && a < Rational(1))) throw PreconditionError("Right interval needs 0 <= a < 1");
  return Interval(Cut::at(a), Cut::above());
}

Interval Interval::open(const Rational& a, const Rational& b) {
  if (!(Rational(0) <= a && a < b && b <= Rational(1)))
    throw PreconditionError("Open interval needs 0 <= a < b <= 1");
  return Interval(Cut::at(a), Cut::at(b));
}

Interval Interval::from_cuts(Cut lo, Cut hi) {
  switch ((lo.finite() ? 0 : 1) | (hi.finite() ? 0 : 2)) {
    case 0: return open(lo.value, hi.value);
    case 1: return left(hi.value);
    case 2: return right(lo.value);
    default: return full();
  }
}

IntervalKind Interval::kind() const {
  if (lo_.kind == Cut::kBelow) return hi_.kind == Cut::kAbove ? IntervalKind::kFull : IntervalKind::kLeft;
  return hi_.kind == Cut::kAbove ? IntervalKind::kRight : IntervalKind::kOpen;
}

bool Interval::contains(const Rational& x) const {
  bool above_lo = lo_.kind == Cut::kBelow || lo_.value < x;
  bool below_hi = hi_.kind == Cut::kAbove || x < hi_.value;
  return above_lo && below_hi;
}

std::string Interval::str() const {
  switch (kind()) {
    case IntervalKind::kFull: return "[0,1]";
    case IntervalKind::kLeft: return "[0," + hi_.value.str() + ")";
    case IntervalKind::kRight: return "(" + lo_.value.str() + ",1]";
    default: return "(" + lo_.value.str() + "," + hi_.value.str() + ")";
  }
}

bool nonempty(const Cut& lo, const Cut& hi) {
  if (!(lo < hi)) return false;
  if (hi.finite() && hi.value <= Rational(0)) return false;
  if (lo.finite() && lo.value >= Rational(1)) return false;
  return true;
}

OpenSet OpenSet::from_pieces(std::vector<Interval> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
    if (a.lo() == b.lo()) return a.hi() < b.hi();
    return a.lo() < b.lo();
  });
  OpenSet out;
  for (const Interval& p : pieces) {
    if (!out.comps_.empty()) {
      Interval& last = out.comps_.back();
      // Merge only on genuine overlap; (0,1/2),(1/2,1) stay apart.
      if (p.lo() < last.hi()) {
        if (last.hi() < p.hi()) last = Interval::from_cuts(last.lo(), p.hi());
        continue;
      }
    }
    out.comps_.push_back(p);
  }
  return out;
}

bool OpenSet::contains(const Rational& x) const {
  for (const Interval& c : comps_)
    if (c.contains(x)) return true;
  return false;
}

std::string OpenSet::str() const {
  if (comps_.empty()) return "{}";
  std::string s;
  for (size_t i = 0; i < comps_.size(); ++i) {
    if (i) s += " u ";
    s += comps_[i].str();
  }
  return s;
}

OpenSet openset_union(const OpenSet& u, const OpenSet& v) {
  std::vector<Interval> pieces = u.components();
  pieces.insert(pieces.end(), v.components().begin(), v.components().end());
  return OpenSet::from_pieces(std::move(pieces));
}

OpenSet openset_intersect(const OpenSet& u, const OpenSet& v) {
  std::vector<Interval> pieces;
  for (const Interval& a : u.components()) {
    for (const Interval& b : v.components()) {
      Cut lo = a.lo() < b.lo() ? b.lo() : a.lo();
      Cut hi = a.hi() < b.hi() ? a.hi() : b.hi();
      if (nonempty(lo, hi)) pieces.push_back(Interval::from_cuts(lo, hi));
    }
  }
  return OpenSet::from_pieces(std::move(pieces));
}

bool compactly_contained(const OpenSet& u, const OpenSet& v) {
  for (const Interval& c : u.components()) {
    Rational lo = c.lo().clamp();
    Rational hi = c.hi().clamp();
    bool found = false;
    for (const Interval& d : v.components()) {
      bool left_ok = d.lo().kind == Cut::kBelow || d.lo().value < lo;
      bool right_ok = d.hi().kind == Cut::kAbove || hi < d.hi().value;
      if (left_ok && right_ok) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool subset(const OpenSet& u, const OpenSet& v) {
  for (const Interval& c : u.components()) {
    bool found = false;
    for (const Interval& d : v.components()) {
      if (d.lo() <= c.lo() && c.hi() <= d.hi()) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

OpenSet complement_of_closure(const OpenSet& u) {
  if (u.is_empty()) return OpenSet::full();
  std::vector<Interval> pieces;
  const auto& comps = u.components();
  Cut first_lo = Cut::at(comps.front().lo().clamp());
  if (nonempty(Cut::below(), first_lo)) pieces.push_back(Interval::from_cuts(Cut::below(), first_lo));
  for (size_t i = 0; i + 1 < comps.size(); ++i) {
    Cut gap_lo = Cut::at(comps[i].hi().clamp());
    Cut gap_hi = Cut::at(comps[i + 1].lo().clamp());
    if (nonempty(gap_lo, gap_hi)) pieces.push_back(Interval::from_cuts(gap_lo, gap_hi));
  }
  Cut last_hi = Cut::at(comps.back().hi().clamp());
  if (nonempty(last_hi, Cut::above())) pieces.push_back(Interval::from_cuts(last_hi, Cut::above()));
  return OpenSet::from_pieces(std::move(pieces));
}

OpenSet retract(const OpenSet& u, const Rational& eps) {
  if (eps.sign() <= 0) throw PreconditionError("retraction needs eps > 0");
  std::vector<Interval> pieces;
  for (const Interval& c : u.components()) {
    Cut lo = c.lo().finite() ? Cut::at(c.lo().value + eps) : c.lo();
    Cut hi = c.hi().finite() ? Cut::at(c.hi().value - eps) : c.hi();
    if (nonempty(lo, hi)) pieces.push_back(Interval::from_cuts(lo, hi));
  }
  return OpenSet::from_pieces(std::move(pieces));
}

OpenSet neighborhood(const OpenSet& u, const Rational& eps) {
  if (eps.sign() <= 0) throw PreconditionError("neighborhood needs eps > 0");
  std::vector<Interval> pieces;
  for (const Interval& c : u.components()) {
    Cut lo = c.lo();
    Cut hi = c.hi();
    if (lo.finite()) {
      Rational a = lo.value - eps;
      lo = a < Rational(0) ? Cut::below() : Cut::at(a);
    }
    if (hi.finite()) {
      Rational b = hi.value + eps;
      hi = Rational(1) < b ? Cut::above() : Cut::at(b);
    }
    pieces.push_back(Interval::from_cuts(lo, hi));
  }
  return OpenSet::from_pieces(std::move(pieces));
}

bool closure_contains(const OpenSet& u, const Rational& x) {
  for (const Interval& c : u.components())
    if (c.lo().clamp() <= x && x <= c.hi().clamp()) return true;
  return false;
}

void collect_endpoints(const OpenSet& u, std::vector<Rational>& out) {
  for (const Interval& c : u.components()) {
    if (c.lo().finite()) out.push_back(c.lo().value);
    if (c.hi().finite()) out.push_back(c.hi().value);
  }
}

}  // namespace cusemi
