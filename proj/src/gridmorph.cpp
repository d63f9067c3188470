#include "cusemi/gridmorph.hpp"

#include <algorithm>
#include <numeric>

namespace cusemi {

std::string ValidationReport::str() const {
  if (ok) return "ok";
  std::string s;
  for (const auto& f : failures) {
    if (!s.empty()) s += "; ";
    s += f;
  }
  return s;
}

GridMorphism::GridMorphism(long resolution, SumSignature target, std::vector<SemigroupElem> v,
                           std::vector<SemigroupElem> w, SemigroupElem unit, int slack)
    : n_(resolution), target_(target), v_(std::move(v)), w_(std::move(w)), unit_(std::move(unit)), slack_(slack) {
  if (n_ < 1) throw PreconditionError("grid morphism needs resolution >= 1");
  if (slack_ != 1 && slack_ != 2) throw PreconditionError("slack must be 1 or 2");
  if (v_.size() != static_cast<size_t>(n_ + 1) || w_.size() != static_cast<size_t>(n_ + 1))
    throw PreconditionError("grid morphism needs N+1 values for v and w");
}

GridMorphism GridMorphism::from_v_chain(std::vector<SemigroupElem> v, SemigroupElem unit, int slack) {
  long n = static_cast<long>(v.size()) - 1;
  long arity = unit.arity();
  std::vector<SemigroupElem> w;
  w.push_back(SemigroupElem::zero(arity));
  for (long i = 1; i <= n; ++i) w.push_back(subtract_from_compact(unit, v[i - 1]));
  GridMorphism phi(n, SumSignature{arity}, std::move(v), std::move(w), std::move(unit), slack);
  ValidationReport rep = validate(phi);
  if (!rep.ok) throw PreconditionError("constructed grid morphism fails validation: " + rep.str());
  return phi;
}

ValidationReport validate(const GridMorphism& phi) {
  ValidationReport rep;
  long n = phi.resolution();
  int sigma = phi.slack();

  if (!is_compact(phi.unit())) rep.fail("unit is not compact");
  for (long i = 0; i <= n; ++i) {
    if (phi.v_at(i).arity() != phi.target().arity || phi.w_at(i).arity() != phi.target().arity) {
      rep.fail("value arity differs from target signature at index " + std::to_string(i));
      return rep;
    }
  }
  if (!phi.v_at(n).is_zero()) rep.fail("v_N must be zero");
  if (!phi.w_at(0).is_zero()) rep.fail("w_0 must be zero");
  if (!elem_leq(phi.v_at(0), phi.unit())) rep.fail("v_0 <= unit fails");
  if (!elem_leq(phi.w_at(n), phi.unit())) rep.fail("w_N <= unit fails");

  bool chains_ok = true;
  for (long i = 0; i + 1 <= n; ++i) {
    if (!elem_ll(phi.v_at(i + 1), phi.v_at(i))) {
      rep.fail("v-chain not way-below decreasing at index " + std::to_string(i));
      chains_ok = false;
    }
    if (!elem_leq(phi.w_at(i), phi.w_at(i + 1))) {
      rep.fail("w not increasing at index " + std::to_string(i));
      chains_ok = false;
    }
  }
  if (!chains_ok) return rep;

  // With the chains verified, the binding instances carry the whole
  // tightness/fullness families: v_j <= v_i for j >= i and w increases.
  for (long i = 0; i <= n; ++i) {
    if (!elem_leq(elem_add(phi.w_at(i), phi.v_at(i)), phi.unit()))
      rep.fail("tightness (c) fails at i = j = " + std::to_string(i));
  }
  for (long j = 0; j + sigma <= n; ++j) {
    if (!elem_leq(phi.unit(), elem_add(phi.w_at(j + sigma), phi.v_at(j))))
      rep.fail("fullness (d) fails at j = " + std::to_string(j));
  }
  return rep;
}

ValidationReport validate(const MultiGridMorphism& phi) {
  ValidationReport rep;
  if (phi.sources.empty()) {
    rep.fail("no sources");
    return rep;
  }
  for (long s = 0; s < phi.source_count(); ++s) {
    if (!(phi.source(s).target() == phi.sources.front().target())) rep.fail("sources disagree on target signature");
    ValidationReport sub = validate(phi.source(s));
    if (!sub.ok) rep.fail("source " + std::to_string(s) + ": " + sub.str());
  }
  return rep;
}

SemigroupElem interpolate_between(const SemigroupElem& f, const SemigroupElem& g) {
  if (!elem_ll(f, g)) throw PreconditionError("interpolate_between requires f << g");

  // delta: half the least margin between closure{f>=k} and the complement
  // of {g>=k}, over all parts and levels; capped at 1/(3 * common den).
  BigInt den = 1;
  std::optional<Rational> margin;
  for (long s = 0; s < f.arity(); ++s) {
    den = lcm(den, common_denominator(f.part(s)));
    den = lcm(den, common_denominator(g.part(s)));
    auto m = ll_margin(f.part(s), g.part(s));
    if (m) margin = margin ? min(*margin, *m) : *m;
  }
  Rational cap = Rational(1) / Rational(BigInt(3) * den);
  Rational delta = margin ? min(*margin / Rational(2), cap) : cap;

  std::vector<StepFn> parts;
  for (long s = 0; s < f.arity(); ++s) {
    long sup = g.part(s).sup();
    std::vector<OpenSet> levels;
    for (long k = 1; k <= sup; ++k) {
      OpenSet grown = f.part(s).level(k).is_empty() ? OpenSet::empty()
                                                    : neighborhood(f.part(s).level(k), delta);
      levels.push_back(openset_union(grown, retract(g.part(s).level(k), delta)));
    }
    parts.push_back(StepFn::from_levels(std::move(levels)));
  }
  SemigroupElem h(std::move(parts));
  if (!elem_ll(f, h) || !elem_ll(h, g)) throw std::logic_error("interpolation margin failed its sandwich");
  return h;
}

GridMorphism lift_from_chain(const std::vector<SemigroupElem>& chain, const SemigroupElem& p) {
  if (chain.empty()) throw PreconditionError("lift_from_chain needs a nonempty chain");
  if (!is_compact(p)) throw PreconditionError("lift_from_chain requires a compact bound");
  long j = static_cast<long>(chain.size());
  for (long k = 0; k + 1 < j; ++k)
    if (!elem_ll(chain[k], chain[k + 1])) throw PreconditionError("lift_from_chain requires s_1 << ... << s_j");
  if (!elem_leq(chain.back(), p)) throw PreconditionError("lift_from_chain requires s_j <= p");

  long arity = p.arity();
  long n = 2 * j;
  // v_{2(j-k)} = s_k, s_0 = 0; odd points interpolate their neighbours.
  std::vector<SemigroupElem> v(n + 1, SemigroupElem::zero(arity));
  for (long k = 1; k <= j; ++k) v[2 * (j - k)] = chain[k - 1];
  for (long i = 1; i <= n; i += 2) v[i] = interpolate_between(v[i + 1], v[i - 1]);
  return GridMorphism::from_v_chain(std::move(v), p, 2);
}

namespace {

long grid_index(const Rational& x, long n, const char* what) {
  Rational scaled = x * Rational(n);
  if (!scaled.is_integer()) throw PreconditionError(std::string(what) + ": endpoint " + x.str() +
                                                    " is not aligned to the 1/" + std::to_string(n) + " grid");
  return static_cast<long>(scaled.num());
}

SemigroupElem map_component(const GridMorphism& phi, const Interval& c) {
  long n = phi.resolution();
  switch (c.kind()) {
    case IntervalKind::kFull:
      return phi.unit();
    case IntervalKind::kRight:
      return phi.v_at(grid_index(c.lo().value, n, "evaluate"));
    case IntervalKind::kLeft:
      return phi.w_at(grid_index(c.hi().value, n, "evaluate"));
    case IntervalKind::kOpen: {
      long i = grid_index(c.lo().value, n, "evaluate");
      long j = grid_index(c.hi().value, n, "evaluate");
      if (j < i + phi.slack())
        throw PreconditionError("evaluate: open component " + c.str() + " narrower than the slack " +
                                std::to_string(phi.slack()) + " cells");
      // exact pointwise difference (v_i + w_j) - unit, valid by fullness
      SemigroupElem sum = elem_add(phi.v_at(i), phi.w_at(j));
      std::vector<StepFn> parts;
      for (long s = 0; s < sum.arity(); ++s)
        parts.push_back(stepfn_drop_levels(sum.part(s), phi.unit().part(s).sup()));
      return SemigroupElem(std::move(parts));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

SemigroupElem evaluate(const GridMorphism& phi, const StepFn& f) {
  std::vector<OpenSet> pieces(f.levels().begin(), f.levels().end());
  return evaluate_pieces(phi, pieces);
}

SemigroupElem evaluate_pieces(const GridMorphism& phi, const std::vector<OpenSet>& pieces) {
  SemigroupElem acc = SemigroupElem::zero(phi.target().arity);
  for (const OpenSet& piece : pieces)
    for (const Interval& c : piece.components()) acc = elem_add(acc, map_component(phi, c));
  return acc;
}

GridBasicElement GridBasicElement::zero(long l, long summands) {
  GridBasicElement x;
  x.l = l;
  x.unit_counts.assign(summands, 0);
  x.counts.assign(summands, std::vector<long>(l, 0));
  return x;
}

StepFn GridBasicElement::realize(long s) const {
  StepFn f = StepFn::constant(unit_counts.at(s));
  for (long i = 0; i < l; ++i) {
    long c = counts.at(s).at(i);
    if (c == 0) continue;
    StepFn ind = StepFn::indicator(Interval::right(Rational(BigInt(i), BigInt(l))));
    f = stepfn_add(f, stepfn_scale(c, ind));
  }
  return f;
}

SemigroupElem GridBasicElement::realize_all() const {
  std::vector<StepFn> parts;
  for (long s = 0; s < summands(); ++s) parts.push_back(realize(s));
  return SemigroupElem(std::move(parts));
}

SemigroupElem evaluate_multi(const MultiGridMorphism& phi, const GridBasicElement& x) {
  if (x.summands() != phi.source_count()) throw PreconditionError("evaluate_multi: summand count mismatch");
  SemigroupElem acc = SemigroupElem::zero(phi.sources.front().target().arity);
  for (long s = 0; s < x.summands(); ++s) {
    const GridMorphism& src = phi.source(s);
    if (src.resolution() % x.l != 0)
      throw PreconditionError("evaluate_multi: l does not divide the source resolution");
    long stride = src.resolution() / x.l;
    acc = elem_add(acc, elem_scale(x.unit_counts[s], src.unit()));
    for (long i = 0; i < x.l; ++i)
      if (x.counts[s][i] != 0) acc = elem_add(acc, elem_scale(x.counts[s][i], src.v_at(i * stride)));
  }
  return acc;
}

namespace {

// Minimal c on the common grid with v^phi_{i+c} <= v^psi_i and
// v^psi_{i+c} <= v^phi_i for all i; monotone in c, so binary search.
long minimal_shift(const GridMorphism& a, const GridMorphism& b, long common) {
  auto va = [&](long i) -> const SemigroupElem& { return a.v_at(std::min(i, common) * (a.resolution() / common)); };
  auto vb = [&](long i) -> const SemigroupElem& { return b.v_at(std::min(i, common) * (b.resolution() / common)); };
  auto works = [&](long c) {
    for (long i = 0; i <= common; ++i) {
      if (!elem_leq(va(std::min(i + c, common)), vb(i))) return false;
      if (!elem_leq(vb(std::min(i + c, common)), va(i))) return false;
    }
    return true;
  };
  long lo = 0, hi = common;
  while (lo < hi) {
    long mid = (lo + hi) / 2;
    if (works(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

}  // namespace

DistanceBracket distance_bracket(const MultiGridMorphism& phi, const MultiGridMorphism& psi) {
  if (phi.source_count() != psi.source_count()) throw PreconditionError("distance: source count mismatch");
  DistanceBracket out{Rational(0), Rational(0), {}, {}};
  for (long s = 0; s < phi.source_count(); ++s) {
    const GridMorphism& a = phi.source(s);
    const GridMorphism& b = psi.source(s);
    if (!(a.unit() == b.unit())) throw PreconditionError("distance: units differ in summand " + std::to_string(s));
    long common = std::gcd(a.resolution(), b.resolution());
    long c = minimal_shift(a, b, common);
    Rational glo = c == 0 ? Rational(0) : Rational(BigInt(c - 1), BigInt(common));
    Rational ghi = Rational(BigInt(c + 1), BigInt(common));
    out.lo = max(out.lo, glo);
    out.hi = max(out.hi, ghi);
    out.cells.push_back(c);
    out.grids.push_back(common);
  }
  return out;
}

bool retraction_distance_check(const MultiGridMorphism& phi, const MultiGridMorphism& psi,
                               const Rational& eps, const StepFn& f) {
  DistanceBracket br = distance_bracket(phi, psi);
  if (eps < br.hi)
    throw PreconditionError("retraction_distance_check requires distance bracket hi <= eps");
  StepFn rf = stepfn_retract(f, eps);
  for (long s = 0; s < phi.source_count(); ++s) {
    SemigroupElem a = evaluate(phi.source(s), rf);
    SemigroupElem b = evaluate(psi.source(s), f);
    if (!elem_leq(a, b)) return false;
    SemigroupElem a2 = evaluate(psi.source(s), rf);
    SemigroupElem b2 = evaluate(phi.source(s), f);
    if (!elem_leq(a2, b2)) return false;
  }
  return true;
}

PairMargin margin_for_pair(const GridMorphism& phi, const StepFn& f_lo, const StepFn& f_hi) {
  if (!stepfn_ll(f_lo, f_hi)) throw PreconditionError("margin_for_pair requires f' << f");
  long n = phi.resolution();
  if (!in_Ln(f_lo, n) || !in_Ln(f_hi, n)) throw PreconditionError("margin_for_pair requires grid-aligned inputs");
  auto margin = ll_margin(f_lo, f_hi);
  if (!margin) {
    // Nothing constrains the retraction: wherever f' is nonzero, f is
    // full.  A compact f is its own midpoint; otherwise any positive
    // retraction works, so take half the minimal endpoint gap.
    if (f_hi.is_constant()) return PairMargin{Rational(1), f_hi};
    margin = min_positive_gap(f_lo, f_hi);
  }
  Rational h = *margin / Rational(2);
  return PairMargin{h / Rational(2), stepfn_retract(f_hi, h)};
}

Rational composition_modulus(const GridMorphism& theta, const Rational& eps) {
  if (eps.sign() <= 0) throw PreconditionError("composition_modulus requires eps > 0");
  ValidationReport rep = validate(theta);
  if (!rep.ok) throw PreconditionError("composition_modulus requires a validated certificate: " + rep.str());
  long n = theta.resolution();
  // Step roughly eps/2 along the grid and take the worst retraction
  // margin between the straddling v-values.
  Rational half_cells = eps * Rational(n) / Rational(2);
  long step = std::max<long>(1, static_cast<long>(half_cells.num() / half_cells.den()));
  Rational out = eps / Rational(2);
  for (long i = 0; i + step <= n; ++i) {
    const SemigroupElem& hi = theta.v_at(i + step);
    const SemigroupElem& lo = theta.v_at(i);
    for (long s = 0; s < hi.arity(); ++s) {
      auto m = ll_margin(hi.part(s), lo.part(s));
      if (m) out = min(out, *m / Rational(2));
    }
  }
  return out;
}

MultiGridMorphism compose(const MultiGridMorphism& outer, const MultiGridMorphism& inner) {
  long r = outer.source_count();
  for (const GridMorphism& g : inner.sources)
    if (g.target().arity != r)
      throw PreconditionError("compose: inner target arity differs from outer source count");

  auto push = [&](const SemigroupElem& value) {
    SemigroupElem acc = SemigroupElem::zero(outer.sources.front().target().arity);
    for (long t = 0; t < r; ++t) acc = elem_add(acc, evaluate(outer.source(t), value.part(t)));
    return acc;
  };

  MultiGridMorphism composed;
  for (const GridMorphism& g : inner.sources) {
    long n = g.resolution();
    std::vector<SemigroupElem> v;
    for (long i = 0; i <= n; ++i) v.push_back(push(g.v_at(i)));
    SemigroupElem unit = push(g.unit());
    // The w-values are rebuilt as lsc hulls of the composed v-chain.
    // Pushing the inner w-values through loses one cell of slack per
    // composition and cannot stay within slack 2; the hulls dominate the
    // pushed values and keep the certificate uniform.
    try {
      composed.sources.push_back(GridMorphism::from_v_chain(std::move(v), std::move(unit), 2));
    } catch (const PreconditionError& e) {
      throw PreconditionError(std::string("composition failed validation: ") + e.what());
    }
  }
  return composed;
}

CauchyBound cauchy_limit_bound(const std::vector<MultiGridMorphism>& prefix, const std::vector<Rational>& eps) {
  if (prefix.empty()) throw PreconditionError("cauchy_limit_bound needs a nonempty prefix");
  size_t J = prefix.size();
  if (eps.size() + 1 < J) throw PreconditionError("cauchy_limit_bound needs an eps bound per adjacent pair");
  for (size_t i = 0; i < eps.size(); ++i) {
    if (eps[i].sign() <= 0) throw PreconditionError("eps values must be positive");
    if (i + 1 < eps.size() && !(eps[i + 1] < eps[i]))
      throw PreconditionError("eps values must be strictly decreasing");
  }
  for (size_t i = 0; i + 1 < J; ++i) {
    DistanceBracket br = distance_bracket(prefix[i], prefix[i + 1]);
    if (!(br.hi < eps[i]))
      throw PreconditionError("bracket exceeds declared eps at step " + std::to_string(i));
  }
  const MultiGridMorphism& last = prefix.back();
  long g = 0;
  for (const GridMorphism& src : last.sources) g = std::gcd(g, src.resolution());
  Rational bound = Rational(1) / Rational(BigInt(g));
  for (size_t i = J - 1; i < eps.size(); ++i) bound += eps[i];
  return CauchyBound{last, bound};
}

}  // namespace cusemi
