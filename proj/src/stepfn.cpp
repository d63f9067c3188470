#include "cusemi/stepfn.hpp"

#include <algorithm>

namespace cusemi {

namespace {
const OpenSet kEmptySet;
const OpenSet kFullSet = OpenSet::full();

void trim(std::vector<OpenSet>& levels) {
  while (!levels.empty() && levels.back().is_empty()) levels.pop_back();
}
}  // namespace

StepFn StepFn::from_levels(std::vector<OpenSet> levels) {
  trim(levels);
  for (size_t k = 0; k + 1 < levels.size(); ++k) {
    if (levels[k + 1].is_empty()) throw PreconditionError("step function levels not nested (empty gap)");
    if (!subset(levels[k + 1], levels[k])) throw PreconditionError("step function levels not nested");
  }
  StepFn f;
  f.levels_ = std::move(levels);
  return f;
}

StepFn StepFn::indicator(const OpenSet& u) {
  StepFn f;
  if (!u.is_empty()) f.levels_.push_back(u);
  return f;
}

StepFn StepFn::constant(long k) {
  if (k < 0) throw PreconditionError("constant step function needs k >= 0");
  StepFn f;
  f.levels_.assign(static_cast<size_t>(k), kFullSet);
  return f;
}

const OpenSet& StepFn::level(size_t k) const {
  if (k == 0) return kFullSet;
  if (k > levels_.size()) return kEmptySet;
  return levels_[k - 1];
}

long StepFn::value_at(const Rational& x) const {
  long v = 0;
  for (const OpenSet& l : levels_)
    if (l.contains(x)) ++v;
  return v;
}

bool StepFn::is_constant() const {
  for (const OpenSet& l : levels_)
    if (!l.is_full()) return false;
  return true;
}

std::string StepFn::str() const {
  if (levels_.empty()) return "0";
  std::string s;
  for (size_t k = 0; k < levels_.size(); ++k) {
    if (k) s += " ; ";
    s += levels_[k].str();
  }
  return s;
}

StepFn stepfn_add(const StepFn& f, const StepFn& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  long kf = f.sup(), kg = g.sup();
  std::vector<OpenSet> levels;
  // {f+g >= k} = union over i+j=k of {f>=i} ^ {g>=j}, with {.>=0} = [0,1].
  for (long k = 1; k <= kf + kg; ++k) {
    OpenSet acc;
    for (long i = std::max(0L, k - kg); i <= std::min(k, kf); ++i) {
      acc = openset_union(acc, openset_intersect(f.level(i), g.level(k - i)));
    }
    levels.push_back(std::move(acc));
  }
  return StepFn::from_levels(std::move(levels));
}

StepFn stepfn_scale(long k, const StepFn& f) {
  if (k < 0) throw PreconditionError("scale needs k >= 0");
  StepFn acc;
  for (long i = 0; i < k; ++i) acc = stepfn_add(acc, f);
  return acc;
}

bool stepfn_leq(const StepFn& f, const StepFn& g) {
  for (long k = 1; k <= f.sup(); ++k)
    if (!subset(f.level(k), g.level(k))) return false;
  return true;
}

bool stepfn_ll(const StepFn& f, const StepFn& g) {
  for (long k = 1; k <= f.sup(); ++k)
    if (!compactly_contained(f.level(k), g.level(k))) return false;
  return true;
}

std::pair<StepFn, StepFn> stepfn_sup_inf(const StepFn& f, const StepFn& g) {
  long n = std::max(f.sup(), g.sup());
  std::vector<OpenSet> sup_levels, inf_levels;
  for (long k = 1; k <= n; ++k) {
    sup_levels.push_back(openset_union(f.level(k), g.level(k)));
    inf_levels.push_back(openset_intersect(f.level(k), g.level(k)));
  }
  return {StepFn::from_levels(std::move(sup_levels)), StepFn::from_levels(std::move(inf_levels))};
}

StepFn stepfn_retract(const StepFn& f, const Rational& eps) {
  std::vector<OpenSet> levels;
  for (const OpenSet& l : f.levels()) levels.push_back(retract(l, eps));
  return StepFn::from_levels(std::move(levels));
}

StepFn stepfn_neighborhood(const StepFn& f, const Rational& eps) {
  std::vector<OpenSet> levels;
  for (const OpenSet& l : f.levels()) levels.push_back(neighborhood(l, eps));
  return StepFn::from_levels(std::move(levels));
}

StepFn stepfn_drop_levels(const StepFn& f, long k) {
  if (k <= 0) return f;
  if (k >= f.sup()) return StepFn();
  std::vector<OpenSet> levels(f.levels().begin() + k, f.levels().end());
  return StepFn::from_levels(std::move(levels));
}

Rational min_positive_gap(const StepFn& f, const StepFn& g) {
  std::vector<Rational> pts{Rational(0), Rational(1)};
  for (const OpenSet& l : f.levels()) collect_endpoints(l, pts);
  for (const OpenSet& l : g.levels()) collect_endpoints(l, pts);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Rational best(1);
  for (size_t i = 0; i + 1 < pts.size(); ++i) best = min(best, pts[i + 1] - pts[i]);
  return best;
}

std::optional<Rational> ll_margin(const StepFn& lo, const StepFn& hi) {
  std::optional<Rational> margin;
  for (long k = 1; k <= lo.sup(); ++k) {
    OpenSet outside = complement_of_closure(hi.level(k));
    for (const Interval& c : lo.level(k).components()) {
      Rational L = c.lo().clamp(), R = c.hi().clamp();
      for (const Interval& d : outside.components()) {
        Rational dlo = d.lo().clamp(), dhi = d.hi().clamp();
        Rational gap = dhi <= L ? L - dhi : (R <= dlo ? dlo - R : Rational(0));
        if (gap.sign() > 0) margin = margin ? min(*margin, gap) : gap;
      }
    }
  }
  return margin;
}

BigInt common_denominator(const StepFn& f) {
  BigInt d = 1;
  std::vector<Rational> pts;
  for (const OpenSet& l : f.levels()) collect_endpoints(l, pts);
  for (const Rational& p : pts) d = lcm(d, p.den());
  return d;
}

namespace {

// One case of the reduction claim: U << V with V a single interval.
// Appends the contributions to (a, d).
void reduce_component(const OpenSet& u, const Interval& v, const Rational& eps, StepFn& a, StepFn& d) {
  switch (v.kind()) {
    case IntervalKind::kFull: {
      // When u stays away from 0 a right interval suffices; otherwise the
      // full target is forced.
      bool touches_zero = !u.is_empty() && u.components().front().lo().kind == Cut::kBelow;
      if (touches_zero) {
        d = stepfn_add(d, StepFn::constant(1));
      } else {
        d = stepfn_add(d, StepFn::indicator(Interval::right(eps)));
      }
      return;
    }
    case IntervalKind::kLeft: {
      Rational t = v.hi().value;
      a = stepfn_add(a, StepFn::indicator(Interval::right(t - eps)));
      d = stepfn_add(d, StepFn::constant(1));
      return;
    }
    case IntervalKind::kRight: {
      Rational s = v.lo().value;
      d = stepfn_add(d, StepFn::indicator(Interval::right(s + eps)));
      return;
    }
    case IntervalKind::kOpen: {
      // d needs a strictly smaller margin than a, or the two right
      // intervals share an endpoint when t - s is the minimal gap.
      Rational s = v.lo().value, t = v.hi().value;
      a = stepfn_add(a, StepFn::indicator(Interval::right(t - eps)));
      d = stepfn_add(d, StepFn::indicator(Interval::right(s + eps / Rational(2))));
      return;
    }
  }
}

}  // namespace

std::pair<StepFn, StepFn> basic_reduce(const StepFn& x, const StepFn& y) {
  if (!stepfn_ll(x, y)) throw PreconditionError("basic_reduce requires x << y");
  Rational eps = min_positive_gap(x, y) / Rational(2);
  StepFn a, d;
  for (long k = 1; k <= y.sup(); ++k) {
    const OpenSet& yk = y.level(k);
    const OpenSet& xk = x.level(k);
    for (const Interval& v : yk.components()) {
      OpenSet u = openset_intersect(xk, OpenSet(v));
      reduce_component(u, v, eps, a, d);
    }
  }
  return {a, d};
}

bool in_Ln(const StepFn& f, long n) {
  if (n <= 0) throw PreconditionError("in_Ln requires n >= 1");
  std::vector<Rational> pts;
  for (const OpenSet& l : f.levels()) collect_endpoints(l, pts);
  for (const Rational& p : pts) {
    Rational scaled = p * Rational(n);
    if (!scaled.is_integer()) return false;
  }
  return true;
}

bool in_Ln0(const StepFn& f, long n) {
  if (!in_Ln(f, n)) return false;
  Rational two_over_n = Rational(2) / Rational(n);
  for (const OpenSet& l : f.levels()) {
    const auto& comps = l.components();
    for (size_t i = 0; i + 1 < comps.size(); ++i) {
      Rational gap = comps[i + 1].lo().clamp() - comps[i].hi().clamp();
      if (gap < two_over_n) return false;
    }
  }
  return true;
}

}  // namespace cusemi
