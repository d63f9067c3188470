#include "cusemi/chainable.hpp"

#include <algorithm>

namespace cusemi {

ChainableWitness ChainableWitness::canonical(long n, long ambient_arity, long component, long m_check) {
  SemigroupElem e = SemigroupElem::unit_vector(ambient_arity, component, StepFn::constant(1));
  ChainableWitness w(n, RefinementRule::kScaledCanonical, std::move(e), m_check);
  w.component_ = component;
  return w;
}

ChainableWitness ChainableWitness::constant_multiples(long n, SemigroupElem e, long m_check) {
  if (!is_compact(e)) throw PreconditionError("constant-multiples witness needs a compact e");
  return ChainableWitness(n, RefinementRule::kConstantMultiples, std::move(e), m_check);
}

ChainableWitness ChainableWitness::explicit_table(long n, SemigroupElem e,
                                                  std::map<XnPair, SemigroupElem> table,
                                                  std::map<long, std::map<XnPair, SemigroupElem>> refined,
                                                  long m_check) {
  ChainableWitness w(n, RefinementRule::kExplicit, std::move(e), m_check);
  w.table_ = std::move(table);
  w.refined_ = std::move(refined);
  return w;
}

SemigroupElem ChainableWitness::value(const XnPair& p) const {
  switch (rule_) {
    case RefinementRule::kScaledCanonical:
      return SemigroupElem::unit_vector(ambient_arity(), component_, StepFn::indicator(pair_interval(p, n_)));
    case RefinementRule::kConstantMultiples:
      return p.hi.is_pos() ? e_ : SemigroupElem::zero(ambient_arity());
    case RefinementRule::kExplicit: {
      auto it = table_.find(p);
      if (it == table_.end()) throw PreconditionError("witness table has no entry for " + p.str());
      return it->second;
    }
  }
  throw std::logic_error("unreachable");
}

ChainableWitness ChainableWitness::refined(long m) const {
  if (m < 1) throw PreconditionError("refinement needs m >= 1");
  if (m == 1) return *this;
  switch (rule_) {
    case RefinementRule::kScaledCanonical:
      return canonical(n_ * m, ambient_arity(), component_, m_check_);
    case RefinementRule::kConstantMultiples:
      return constant_multiples(n_ * m, e_, m_check_);
    case RefinementRule::kExplicit: {
      auto it = refined_.find(m);
      if (it == refined_.end())
        throw PreconditionError("explicit witness has no refined table for m = " + std::to_string(m));
      return explicit_table(n_ * m, e_, it->second, {}, m_check_);
    }
  }
  throw std::logic_error("unreachable");
}

SemigroupElem ChainableWitness::apply(const XnElem& w) const {
  if (w.n() != n_) throw PreconditionError("witness_apply: X_n mismatch");
  SemigroupElem acc = SemigroupElem::zero(ambient_arity());
  for (const XnPair& p : w.pairs()) acc = elem_add(acc, value(p));
  return acc;
}

std::vector<XnPair> ChainableWitness::generator_pairs() const {
  std::vector<XnPair> out;
  for (long lo = -1; lo <= n_; ++lo) {
    for (long hi = lo + 1; hi <= n_ + 1; ++hi) {
      Omega a = lo < 0 ? Omega::neg_inf() : Omega::fin(static_cast<int32_t>(lo));
      Omega b = hi > n_ ? Omega::pos_inf() : Omega::fin(static_cast<int32_t>(hi));
      if (a < b) out.push_back({a, b});
    }
  }
  return out;
}

ChainableWitness ChainableWitness::mapped_through(const MultiGridMorphism& phi) const {
  if (phi.source_count() != ambient_arity())
    throw PreconditionError("mapped_through: morphism source count differs from witness arity");
  auto push = [&](const SemigroupElem& val) {
    SemigroupElem acc = SemigroupElem::zero(phi.sources.front().target().arity);
    for (long t = 0; t < phi.source_count(); ++t) acc = elem_add(acc, evaluate(phi.source(t), val.part(t)));
    return acc;
  };
  std::map<XnPair, SemigroupElem> table;
  for (const XnPair& p : generator_pairs()) table.emplace(p, push(value(p)));
  std::map<long, std::map<XnPair, SemigroupElem>> refined_tables;
  for (long m = 2; m <= m_check_; ++m) {
    ChainableWitness rw = refined(m);
    std::map<XnPair, SemigroupElem> rt;
    for (const XnPair& p : rw.generator_pairs()) rt.emplace(p, push(rw.value(p)));
    refined_tables.emplace(m, std::move(rt));
  }
  return explicit_table(n_, push(e_), std::move(table), std::move(refined_tables), m_check_);
}

namespace {

bool valid_pair_of(long n, Omega a, Omega b) {
  bool lo_ok = a.is_neg() || (a.finite() && 0 <= a.v && a.v <= n);
  bool hi_ok = b.is_pos() || (b.finite() && 0 <= b.v && b.v <= n);
  return lo_ok && hi_ok && a < b;
}

std::vector<Omega> omega_points(long n) {
  std::vector<Omega> pts{Omega::neg_inf()};
  for (long k = 0; k <= n; ++k) pts.push_back(Omega::fin(static_cast<int32_t>(k)));
  pts.push_back(Omega::pos_inf());
  return pts;
}

// Does some pair fit strictly between the boundaries?
bool gap_admits_pair(Omega lo, Omega hi, const std::vector<XnPair>& pairs) {
  for (const XnPair& p : pairs)
    if (omega_prec(lo, p.lo) && omega_prec(p.hi, hi)) return true;
  return false;
}

struct ChainEnum {
  long n;
  const std::vector<XnPair>& alphabet;
  XnPair target;
  long* budget;
  bool capped = false;
  std::vector<XnPair> cur;
  std::vector<std::vector<XnPair>> out;

  void run(Omega boundary) {
    if (*budget <= 0) {
      capped = true;
      return;
    }
    if (!gap_admits_pair(boundary, target.hi, alphabet)) {
      --*budget;
      out.push_back(cur);
    }
    for (const XnPair& p : alphabet) {
      if (!omega_prec(boundary, p.lo) || !omega_prec(p.hi, target.hi)) continue;
      // Skipping past an insertable gap can never yield a maximal chain.
      if (gap_admits_pair(boundary, p.lo, alphabet)) continue;
      cur.push_back(p);
      run(p.hi);
      cur.pop_back();
      if (capped) return;
    }
  }
};

// Core verification, optionally without the refinement condition (used
// on the refined witnesses themselves).
void verify_core(const ChainableWitness& w, const VerifyOptions& opts, bool check_refinements,
                 long& chain_budget, const std::string& where, ValidationReport& rep) {
  long n = w.n();
  const SemigroupElem& e = w.e();
  auto pairs = w.generator_pairs();

  if (!is_compact(e)) rep.fail(where + "(i) e is not compact");
  if (!(w.value({Omega::neg_inf(), Omega::pos_inf()}) == e)) rep.fail(where + "(i) g(-inf,inf) differs from e");
  if (opts.ambient && w.ambient_arity() != opts.ambient->arity)
    rep.fail(where + "(i) witness values do not live in the requested ambient sum");
  for (const XnPair& p : pairs) {
    if (!elem_leq(w.value(p), e)) {
      rep.fail(where + "(i) generator image at " + p.str() + " is not bounded by e");
      break;
    }
  }

  for (const XnPair& p : pairs) {
    if (!p.hi.finite()) continue;
    XnPair tail{p.hi, Omega::pos_inf()};
    XnPair full{p.lo, Omega::pos_inf()};
    if (!elem_leq(elem_add(w.value(p), w.value(tail)), w.value(full))) {
      rep.fail(where + "(ii) telescoping fails at " + p.str());
      break;
    }
  }

  auto points = omega_points(n);
  bool exchange_ok = true;
  for (Omega al : points) {
    for (Omega ga : points) {
      if (!omega_prec(al, ga)) continue;
      for (Omega be : points) {
        if (!omega_prec(ga, be)) continue;
        for (Omega de : points) {
          if (!omega_prec(be, de)) continue;
          if (!valid_pair_of(n, al, be) || !valid_pair_of(n, ga, de) || !valid_pair_of(n, al, de) ||
              !valid_pair_of(n, ga, be))
            continue;
          SemigroupElem lhs = elem_add(w.value({al, be}), w.value({ga, de}));
          SemigroupElem rhs = elem_add(w.value({al, de}), w.value({ga, be}));
          if (!(lhs == rhs)) {
            rep.fail(where + "(iii) exchange identity fails at (" + al.str() + "," + be.str() + ")+(" + ga.str() +
                     "," + de.str() + ")");
            exchange_ok = false;
          }
          if (!exchange_ok) break;
        }
        if (!exchange_ok) break;
      }
      if (!exchange_ok) break;
    }
    if (!exchange_ok) break;
  }

  bool capped = false;
  for (const XnPair& target : pairs) {
    ChainEnum en{n, pairs, target, &chain_budget, false, {}, {}};
    en.run(target.lo);
    capped = capped || en.capped;
    for (const auto& chain : en.out) {
      if (chain.empty()) continue;
      SemigroupElem sum = SemigroupElem::zero(w.ambient_arity());
      for (const XnPair& p : chain) sum = elem_add(sum, w.value(p));
      if (!elem_ll(sum, w.value(target))) {
        rep.fail(where + "(iv) maximal chain into " + target.str() + " is not way-below its image");
        break;
      }
    }
    if (chain_budget <= 0) break;
  }
  if (capped)
    rep.failures.push_back(where + "(iv) note: chain enumeration capped by budget (check passed on the enumerated part)");

  if (check_refinements) {
    for (long m = 2; m <= w.m_check(); ++m) {
      std::optional<ChainableWitness> maybe;
      try {
        maybe.emplace(w.refined(m));
      } catch (const PreconditionError& e) {
        rep.fail(where + "(v) m = " + std::to_string(m) + ": " + e.what());
        continue;
      }
      const ChainableWitness& rw = *maybe;
      for (const XnPair& p : pairs) {
        XnPair scaled{p.lo.scaled(static_cast<int32_t>(m)), p.hi.scaled(static_cast<int32_t>(m))};
        if (!(rw.value(scaled) == w.value(p))) {
          rep.fail(where + "(v) refined table at m = " + std::to_string(m) + " does not restrict to g at " +
                   p.str());
          break;
        }
      }
      verify_core(rw, opts, false, chain_budget, where + "(v) m = " + std::to_string(m) + ": ", rep);
    }
  }
}

}  // namespace

ValidationReport verify_chainable(const ChainableWitness& w, const VerifyOptions& opts) {
  ValidationReport rep;
  long budget = opts.chain_budget;
  try {
    verify_core(w, opts, true, budget, "", rep);
  } catch (const PreconditionError& e) {
    rep.fail(std::string("witness data error: ") + e.what());
  }
  return rep;
}

GridMorphism rho_build(const ChainableWitness& w, long m) {
  if (m < 1) throw PreconditionError("rho_build needs m >= 1");
  ChainableWitness rw = w.refined(m);  // throws for explicit rule beyond M_check
  long big_n = w.n() * m;
  std::vector<SemigroupElem> v;
  v.reserve(big_n + 1);
  for (long i = 0; i < big_n; ++i) v.push_back(rw.value({Omega::fin(static_cast<int32_t>(i)), Omega::pos_inf()}));
  v.push_back(SemigroupElem::zero(w.ambient_arity()));
  return GridMorphism::from_v_chain(std::move(v), w.e(), 2);
}

namespace {

// (lo,hi) meant inside [0,1]; values may stick out and get clamped to
// closed ends, exactly like the alpha/n +- eps intervals do.
OpenSet clamped_interval(const Rational& lo, bool lo_below, const Rational& hi, bool hi_above) {
  Cut l = lo_below || lo < Rational(0) ? Cut::below() : Cut::at(lo);
  Cut h = hi_above || Rational(1) < hi ? Cut::above() : Cut::at(hi);
  if (!nonempty(l, h)) return OpenSet::empty();
  return OpenSet(Interval::from_cuts(l, h));
}

}  // namespace

bool tebelow_check(const ChainableWitness& w, long m, const Rational& eps) {
  long n = w.n();
  if (eps.sign() <= 0 || Rational(m) * eps < Rational(1))
    throw PreconditionError("tebelow_check requires m >= 1/eps");
  if (!(eps * Rational(n * m)).is_integer())
    throw PreconditionError("tebelow_check requires eps aligned to the 1/(nm) grid");
  GridMorphism rho = rho_build(w, m);

  auto eval_set = [&](const OpenSet& u) { return evaluate_pieces(rho, {u}); };
  Rational zero(0), one(1);

  for (long al = 0; al <= n; ++al) {
    Rational t{BigInt(al), BigInt(n)};
    SemigroupElem fv = w.value({Omega::fin(static_cast<int32_t>(al)), Omega::pos_inf()});
    if (!elem_ll(eval_set(clamped_interval(t + eps, false, one, true)), fv)) return false;
    if (!elem_ll(fv, eval_set(clamped_interval(t - eps, false, one, true)))) return false;
  }
  for (long al = 0; al <= n; ++al) {
    for (long be = al + 1; be <= n; ++be) {
      Rational ta{BigInt(al), BigInt(n)}, tb{BigInt(be), BigInt(n)};
      SemigroupElem fv = w.value({Omega::fin(static_cast<int32_t>(al)), Omega::fin(static_cast<int32_t>(be))});
      if (!elem_ll(eval_set(clamped_interval(ta + eps, false, tb - eps, false)), fv)) return false;
      if (!elem_ll(fv, eval_set(clamped_interval(ta - eps, false, tb + eps, false)))) return false;
    }
  }
  for (long be = 0; be <= n; ++be) {
    Rational tb{BigInt(be), BigInt(n)};
    SemigroupElem fv = w.value({Omega::neg_inf(), Omega::fin(static_cast<int32_t>(be))});
    if (!elem_ll(eval_set(clamped_interval(zero, true, tb - eps, false)), fv)) return false;
    if (!elem_ll(fv, eval_set(clamped_interval(zero, true, tb + eps, false)))) return false;
  }
  return true;
}

PrecConvertResult prec_convert(long n, const std::vector<std::pair<XnElem, XnElem>>& family) {
  for (const auto& [q, t] : family) {
    if (q.n() != n || t.n() != n) throw PreconditionError("prec_convert: X_n mismatch");
    if (!prec(q, t)) throw PreconditionError("prec_convert requires q < t for every relation");
  }
  Rational eps(BigInt(1), BigInt(4 * n + 1));
  long m = 4 * n + 1;
  PrecConvertResult out{eps, m, {}};
  GridMorphism rho = rho_build(ChainableWitness::canonical(n), m);
  for (const auto& [q, t] : family) {
    StepFn fq = feval(q), ft = feval(t);
    StepFn f = fq.is_zero() ? StepFn() : stepfn_retract(fq, eps);
    StepFn g = ft.is_zero() ? StepFn() : stepfn_retract(ft, eps);
    if (!stepfn_ll(f, g)) throw std::logic_error("prec_convert: retraction broke f << g");
    SemigroupElem F_q = SemigroupElem::single(fq), F_t = SemigroupElem::single(ft);
    SemigroupElem rf = evaluate(rho, f), rg = evaluate(rho, g);
    if (!elem_ll(rf, F_q) || !elem_ll(F_q, rg) || !elem_ll(rg, F_t))
      throw std::logic_error("prec_convert: rho sandwich failed");
    out.pairs.emplace_back(std::move(f), std::move(g));
  }
  return out;
}

SemigroupElem I0Problem::sum(const std::vector<TermRef>& refs) const {
  SemigroupElem acc = SemigroupElem::zero(ambient_arity());
  for (const TermRef& r : refs) acc = elem_add(acc, term(r));
  return acc;
}

ValidationReport validate(const I0Problem& prob) {
  ValidationReport rep;
  long M = prob.summands();
  if (M < 1) {
    rep.fail("problem: no summands");
    return rep;
  }
  if (prob.l < 1) rep.fail("problem: l must be >= 1");
  if (prob.z.size() != static_cast<size_t>(prob.l + 1)) {
    rep.fail("problem: z must have l+1 rows");
    return rep;
  }
  long arity = prob.ambient_arity();
  for (long i = 0; i <= prob.l; ++i) {
    if (prob.z[i].size() != static_cast<size_t>(M)) {
      rep.fail("problem: z row " + std::to_string(i) + " has the wrong width");
      return rep;
    }
    for (long s = 0; s < M; ++s)
      if (prob.z[i][s].arity() != arity) rep.fail("problem: mixed ambient arities");
  }
  for (long s = 0; s < M; ++s) {
    if (!is_compact(prob.p[s])) rep.fail("problem: p_" + std::to_string(s) + " is not compact");
    if (!prob.z[prob.l][s].is_zero()) rep.fail("problem: z_{l,s} must be 0 at s = " + std::to_string(s));
    for (long i = prob.l; i >= 1; --i)
      if (!elem_ll(prob.z[i][s], prob.z[i - 1][s]))
        rep.fail("problem: z chain not way-below decreasing at (i,s) = (" + std::to_string(i) + "," +
                 std::to_string(s) + ")");
    if (!elem_ll(prob.z[0][s], prob.p[s])) rep.fail("problem: z_{0,s} << p_s fails at s = " + std::to_string(s));
  }
  for (const auto* refs : {&prob.I, &prob.J}) {
    for (const TermRef& r : *refs)
      if (r.i < -1 || r.i > prob.l || r.s < 0 || r.s >= M) rep.fail("problem: multiset reference out of range");
  }
  if (rep.ok && !elem_ll(prob.sum(prob.I), prob.sum(prob.J))) rep.fail("problem: sum(I) << sum(J) fails");
  return rep;
}

XnElem I0Witness::a_term(const TermRef& r, long l) const {
  if (r.i < 0) return XnElem::max_multiple(chain.n(), ks.at(r.s));
  if (r.i >= l) return XnElem(chain.n());
  return a_seqs.at(r.s).at(r.i);
}

XnElem I0Witness::sum_terms(const std::vector<TermRef>& refs, long l) const {
  XnElem acc(chain.n());
  for (const TermRef& r : refs) acc = acc + a_term(r, l);
  return acc;
}

XnElem IWitnessPart::a_term(const TermRef& r, long l) const {
  if (r.i < 0) return XnElem::max_multiple(chain.n(), ms.at(r.s));
  if (r.i >= l) return XnElem(chain.n());
  return a_seqs.at(r.s).at(r.i);
}

XnElem IWitnessPart::sum_terms(const std::vector<TermRef>& refs, long l) const {
  XnElem acc(chain.n());
  for (const TermRef& r : refs) acc = acc + a_term(r, l);
  return acc;
}

ValidationReport verify_I0_witness(const I0Problem& prob, const I0Witness& wit) {
  ValidationReport rep = validate(prob);
  if (!rep.ok) return rep;
  long M = prob.summands(), l = prob.l;
  if (wit.ks.size() != static_cast<size_t>(M) || wit.a_seqs.size() != static_cast<size_t>(M)) {
    rep.fail("witness: dimension mismatch");
    return rep;
  }
  for (long s = 0; s < M; ++s)
    if (wit.a_seqs[s].size() != static_cast<size_t>(l)) {
      rep.fail("witness: a-sequence at s = " + std::to_string(s) + " must have l entries");
      return rep;
    }

  // (i) p_s = k_s e
  for (long s = 0; s < M; ++s) {
    if (wit.ks[s] < 0 || !(prob.p[s] == elem_scale(wit.ks[s], wit.chain.e())))
      rep.fail("I0 (i): p_" + std::to_string(s) + " differs from k_s * e");
  }

  // (ii) prec chains and the sandwich through the table
  for (long s = 0; s < M; ++s) {
    for (long i = l - 1; i >= 1; --i) {
      if (!prec(wit.a_seqs[s][i], wit.a_seqs[s][i - 1]))
        rep.fail("I0 (ii): a-chain fails at (i,s) = (" + std::to_string(i) + "," + std::to_string(s) + ")");
    }
    if (!prec(wit.a_seqs[s][0], XnElem::max_multiple(wit.chain.n(), wit.ks[s])))
      rep.fail("I0 (ii): a_{0,s} < k_s(-inf,inf) fails at s = " + std::to_string(s));
    for (long i = 1; i <= l; ++i) {
      SemigroupElem mid = wit.chain.apply(wit.a_seqs[s][i - 1]);
      if (!elem_ll(prob.z[i][s], mid) || !elem_ll(mid, prob.z[i - 1][s]))
        rep.fail("I0 (ii): sandwich fails at (i,s) = (" + std::to_string(i) + "," + std::to_string(s) + ")");
    }
  }

  // (iii) sum(I) ~ a < b ~ sum(J)
  if (!simeq(wit.sum_terms(prob.I, l), wit.a)) rep.fail("I0 (iii): sum over I is not exchange-equivalent to a");
  if (!prec(wit.a, wit.b)) rep.fail("I0 (iii): a < b fails");
  if (!simeq(wit.b, wit.sum_terms(prob.J, l))) rep.fail("I0 (iii): sum over J is not exchange-equivalent to b");
  return rep;
}

namespace {

StepFn interp_step(const StepFn& lo, const StepFn& hi) {
  return interpolate_between(SemigroupElem::single(lo), SemigroupElem::single(hi)).part(0);
}

long ceil_to_long(const Rational& q) {
  BigInt c = (q.num() + q.den() - 1) / q.den();
  return static_cast<long>(c);
}

}  // namespace

I0Witness construct_I0_witness_lsc(const I0Problem& prob) {
  ValidationReport rep = validate(prob);
  if (!rep.ok) throw PreconditionError("construct_I0_witness_lsc: " + rep.str());
  if (prob.ambient_arity() != 1)
    throw PreconditionError("construct_I0_witness_lsc works over a single Lsc summand");
  long M = prob.summands(), l = prob.l;

  // Interpolants f_{i,s} with z_{i+1,s} << f_{i,s} << z_{i,s}.
  std::vector<std::vector<StepFn>> f(l, std::vector<StepFn>(M));
  for (long i = 0; i < l; ++i)
    for (long s = 0; s < M; ++s) f[i][s] = interp_step(prob.z[i + 1][s].part(0), prob.z[i][s].part(0));

  auto fsum = [&](const std::vector<TermRef>& refs) {
    StepFn acc;
    for (const TermRef& r : refs) {
      if (r.i < 0)
        acc = stepfn_add(acc, prob.p[r.s].part(0));
      else if (r.i < l)
        acc = stepfn_add(acc, f[r.i][r.s]);
    }
    return acc;
  };

  // Tighten toward the z's until the sums separate.
  int rounds = 0;
  while (!stepfn_ll(fsum(prob.I), fsum(prob.J))) {
    if (++rounds > 64) throw std::logic_error("construct_I0_witness_lsc: interpolation failed to separate the sums");
    for (long i = 0; i < l; ++i)
      for (long s = 0; s < M; ++s) f[i][s] = interp_step(f[i][s], prob.z[i][s].part(0));
  }

  // Retraction margin: below every sandwich margin and the additivity cap.
  std::optional<Rational> m1;
  BigInt den = 1;
  for (long i = 0; i < l; ++i) {
    for (long s = 0; s < M; ++s) {
      den = lcm(den, common_denominator(f[i][s]));
      if (i + 1 <= l) {
        auto m = ll_margin(prob.z[i + 1][s].part(0), f[i][s]);
        if (m) m1 = m1 ? min(*m1, *m) : *m;
      }
    }
  }
  Rational cap = Rational(1) / Rational(BigInt(3) * den);
  Rational eps = m1 ? min(*m1 / Rational(2), cap) : cap;

  std::vector<std::vector<StepFn>> g(l, std::vector<StepFn>(M));
  for (long i = 0; i < l; ++i)
    for (long s = 0; s < M; ++s) g[i][s] = f[i][s].is_zero() ? StepFn() : stepfn_retract(f[i][s], eps);
  StepFn sum_i = fsum(prob.I), sum_j = fsum(prob.J);
  StepFn big_i = sum_i.is_zero() ? StepFn() : stepfn_retract(sum_i, eps);
  StepFn big_j = sum_j.is_zero() ? StepFn() : stepfn_retract(sum_j, eps);

  // Grid scale: a common denominator for all retracted data, blown up
  // until the component gaps clear 2/n.
  BigInt den_all = 1;
  std::optional<Rational> min_gap;
  auto absorb = [&](const StepFn& h) {
    den_all = lcm(den_all, common_denominator(h));
    for (const OpenSet& level : h.levels()) {
      const auto& comps = level.components();
      for (size_t c = 0; c + 1 < comps.size(); ++c) {
        Rational gap = comps[c + 1].lo().clamp() - comps[c].hi().clamp();
        if (gap.sign() > 0) min_gap = min_gap ? min(*min_gap, gap) : gap;
      }
    }
  };
  for (long i = 0; i < l; ++i)
    for (long s = 0; s < M; ++s) absorb(g[i][s]);
  absorb(big_i);
  absorb(big_j);
  long d_all = static_cast<long>(den_all);
  long n = d_all;
  if (min_gap) {
    long factor = ceil_to_long(Rational(2) / (*min_gap * Rational(d_all)));
    n = d_all * std::max(1L, factor);
  }

  I0Witness wit{ChainableWitness::canonical(n), {}, {}, XnElem(n), XnElem(n)};
  for (long s = 0; s < M; ++s) wit.ks.push_back(prob.p[s].part(0).sup());
  wit.a_seqs.assign(M, {});
  for (long s = 0; s < M; ++s)
    for (long i = 0; i < l; ++i) wit.a_seqs[s].push_back(canonical_qf(g[i][s], n));
  wit.a = canonical_qf(big_i, n);
  wit.b = canonical_qf(big_j, n);

  ValidationReport check = verify_I0_witness(prob, wit);
  if (!check.ok) throw std::logic_error("construct_I0_witness_lsc output failed verification: " + check.str());
  return wit;
}

ValidationReport verify_I_witness(const I0Problem& prob, const IWitness& wit) {
  ValidationReport rep = validate(prob);
  if (!rep.ok) return rep;
  long M = prob.summands(), l = prob.l;
  if (wit.parts.empty()) {
    rep.fail("witness: no chainable parts");
    return rep;
  }
  for (const IWitnessPart& part : wit.parts) {
    if (part.ms.size() != static_cast<size_t>(M) || part.a_seqs.size() != static_cast<size_t>(M)) {
      rep.fail("witness: dimension mismatch in a part");
      return rep;
    }
    for (long s = 0; s < M; ++s)
      if (part.a_seqs[s].size() != static_cast<size_t>(l)) {
        rep.fail("witness: a-sequence must have l entries");
        return rep;
      }
  }

  // (i) p_s = sum_k m_{k,s} e_k
  for (long s = 0; s < M; ++s) {
    SemigroupElem acc = SemigroupElem::zero(prob.ambient_arity());
    for (const IWitnessPart& part : wit.parts) acc = elem_add(acc, elem_scale(part.ms[s], part.chain.e()));
    if (!(acc == prob.p[s])) rep.fail("I (i): p_" + std::to_string(s) + " differs from sum m_{k,s} e_k");
  }

  // (ii) per-part prec chains and the combined sandwich
  for (size_t k = 0; k < wit.parts.size(); ++k) {
    const IWitnessPart& part = wit.parts[k];
    for (long s = 0; s < M; ++s) {
      for (long i = l - 1; i >= 1; --i)
        if (!prec(part.a_seqs[s][i], part.a_seqs[s][i - 1]))
          rep.fail("I (ii): a-chain fails in part " + std::to_string(k) + " at (i,s) = (" + std::to_string(i) +
                   "," + std::to_string(s) + ")");
      if (!prec(part.a_seqs[s][0], XnElem::max_multiple(part.chain.n(), part.ms[s])))
        rep.fail("I (ii): a_{0,s} < m_{k,s}(-inf,inf) fails in part " + std::to_string(k));
    }
  }
  for (long s = 0; s < M; ++s) {
    for (long i = 1; i <= l; ++i) {
      SemigroupElem mid = SemigroupElem::zero(prob.ambient_arity());
      for (const IWitnessPart& part : wit.parts) mid = elem_add(mid, part.chain.apply(part.a_seqs[s][i - 1]));
      if (!elem_ll(prob.z[i][s], mid) || !elem_ll(mid, prob.z[i - 1][s]))
        rep.fail("I (ii): sandwich fails at (i,s) = (" + std::to_string(i) + "," + std::to_string(s) + ")");
    }
  }

  // (iii) per part: sum(I) ~ a_k < b_k ~ sum(J)
  for (size_t k = 0; k < wit.parts.size(); ++k) {
    const IWitnessPart& part = wit.parts[k];
    if (!simeq(part.sum_terms(prob.I, l), part.a))
      rep.fail("I (iii): sum over I differs from a_k in part " + std::to_string(k));
    if (!prec(part.a, part.b)) rep.fail("I (iii): a_k < b_k fails in part " + std::to_string(k));
    if (!simeq(part.b, part.sum_terms(prob.J, l)))
      rep.fail("I (iii): sum over J differs from b_k in part " + std::to_string(k));
  }
  return rep;
}

IWitness construct_I_witness(const I0Problem& prob) {
  ValidationReport rep = validate(prob);
  if (!rep.ok) throw PreconditionError("construct_I_witness: " + rep.str());
  long arity = prob.ambient_arity();
  long M = prob.summands(), l = prob.l;

  IWitness wit;
  for (long c = 0; c < arity; ++c) {
    I0Problem comp;
    comp.l = l;
    comp.z.assign(l + 1, {});
    for (long i = 0; i <= l; ++i)
      for (long s = 0; s < M; ++s) comp.z[i].push_back(SemigroupElem::single(prob.z[i][s].part(c)));
    for (long s = 0; s < M; ++s) comp.p.push_back(SemigroupElem::single(prob.p[s].part(c)));
    comp.I = prob.I;
    comp.J = prob.J;
    I0Witness w0 = construct_I0_witness_lsc(comp);
    IWitnessPart part{ChainableWitness::canonical(w0.chain.n(), arity, c), w0.ks, w0.a_seqs, w0.a, w0.b};
    wit.parts.push_back(std::move(part));
  }

  ValidationReport check = verify_I_witness(prob, wit);
  if (!check.ok) throw std::logic_error("construct_I_witness output failed verification: " + check.str());
  return wit;
}

namespace {

long aligned_index(long i, long l, long n, const char* what) {
  if (n % l != 0) throw PreconditionError(std::string(what) + ": l does not divide a grid resolution");
  return i * (n / l);
}

}  // namespace

ValidationReport verify_factorization(const MultiGridMorphism& phi, long l, const GridBasicElement& x,
                                      const GridBasicElement& x1, const GridBasicElement& y,
                                      const MultiGridMorphism& theta, const MultiGridMorphism& psi) {
  ValidationReport rep;
  long M = phi.source_count();
  if (theta.source_count() != M) {
    rep.fail("theta source count differs from phi");
    return rep;
  }
  if (x.summands() != M || x1.summands() != M || y.summands() != M || x.l != l || x1.l != l || y.l != l) {
    rep.fail("basic elements do not match (l, M)");
    return rep;
  }

  MultiGridMorphism composed = compose(psi, theta);

  // (i) interleaving at every grid index
  for (long s = 0; s < M; ++s) {
    const GridMorphism& f = phi.source(s);
    const GridMorphism& c = composed.source(s);
    for (long i = 0; i < l; ++i) {
      const SemigroupElem& f_hi = f.v_at(aligned_index(i + 1, l, f.resolution(), "verify_factorization"));
      const SemigroupElem& f_lo = f.v_at(aligned_index(i, l, f.resolution(), "verify_factorization"));
      const SemigroupElem& c_hi = c.v_at(aligned_index(i + 1, l, c.resolution(), "verify_factorization"));
      const SemigroupElem& c_lo = c.v_at(aligned_index(i, l, c.resolution(), "verify_factorization"));
      if (!elem_ll(f_hi, c_lo))
        rep.fail("(i) phi(chi_((i+1)/l,1]) << psi.theta(chi_(i/l,1]) fails at (s,i) = (" + std::to_string(s) +
                 "," + std::to_string(i) + ")");
      if (!elem_ll(c_hi, f_lo))
        rep.fail("(i) psi.theta(chi_((i+1)/l,1]) << phi(chi_(i/l,1]) fails at (s,i) = (" + std::to_string(s) +
                 "," + std::to_string(i) + ")");
    }
  }

  // (ii) theta separates x from y
  if (!elem_ll(evaluate_multi(theta, x), evaluate_multi(theta, y))) rep.fail("(ii) theta(x) << theta(y) fails");

  // (iii) exact unit equality
  for (long s = 0; s < M; ++s) {
    if (!(phi.source(s).unit() == composed.source(s).unit()))
      rep.fail("(iii) unit mismatch at s = " + std::to_string(s));
  }
  return rep;
}

Factorization construct_factorization(const MultiGridMorphism& phi, long l, const GridBasicElement& x,
                                      const GridBasicElement& x1, const GridBasicElement& y) {
  long M = phi.source_count();
  if (x.summands() != M || x1.summands() != M || y.summands() != M || x.l != l || x1.l != l || y.l != l)
    throw PreconditionError("construct_factorization: basic elements must live in B_l^M");
  if (!elem_ll(x.realize_all(), x1.realize_all()))
    throw PreconditionError("construct_factorization requires x << x'");
  if (!elem_ll(evaluate_multi(phi, x1), evaluate_multi(phi, y)))
    throw PreconditionError("construct_factorization requires phi(x') << phi(y)");
  for (long s = 0; s < M; ++s)
    if (phi.source(s).resolution() % (2 * l) != 0)
      throw PreconditionError("construct_factorization requires 2l to divide every grid resolution");

  // The half-grid problem read out of phi.
  I0Problem prob;
  prob.l = 2 * l;
  prob.z.assign(2 * l + 1, {});
  for (long i = 0; i <= 2 * l; ++i) {
    for (long s = 0; s < M; ++s) {
      const GridMorphism& src = phi.source(s);
      prob.z[i].push_back(src.v_at(i * (src.resolution() / (2 * l))));
    }
  }
  for (long s = 0; s < M; ++s) prob.p.push_back(phi.source(s).unit());
  auto to_refs = [&](const GridBasicElement& el) {
    std::vector<TermRef> refs;
    for (long s = 0; s < M; ++s) {
      for (long c = 0; c < el.unit_counts[s]; ++c) refs.push_back({-1, s});
      for (long i = 0; i < l; ++i)
        for (long c = 0; c < el.counts[s][i]; ++c) refs.push_back({2 * i, s});
    }
    return refs;
  };
  prob.I = to_refs(x1);
  prob.J = to_refs(y);

  IWitness wit = construct_I_witness(prob);
  long K = static_cast<long>(wit.parts.size());

  // Per part: convert the prec relations into retracted step functions.
  std::vector<std::vector<std::vector<StepFn>>> f(K);  // f[k][j][s], j = 0..2l
  std::vector<long> m_of(K);
  for (long k = 0; k < K; ++k) {
    const IWitnessPart& part = wit.parts[k];
    long n_k = part.chain.n();
    std::vector<std::pair<XnElem, XnElem>> family;
    for (long s = 0; s < M; ++s) {
      for (long i = 2 * l - 1; i >= 1; --i) family.emplace_back(part.a_seqs[s][i], part.a_seqs[s][i - 1]);
      family.emplace_back(part.a_seqs[s][0], XnElem::max_multiple(n_k, part.ms[s]));
    }
    family.emplace_back(part.a, part.b);
    PrecConvertResult conv = prec_convert(n_k, family);
    m_of[k] = conv.m;

    f[k].assign(2 * l + 1, std::vector<StepFn>(M));
    for (long s = 0; s < M; ++s) {
      for (long j = 0; j < 2 * l; ++j) {
        StepFn base = feval(part.a_seqs[s][j]);
        f[k][j][s] = base.is_zero() ? StepFn() : stepfn_retract(base, conv.eps);
      }
      f[k][2 * l][s] = StepFn();
    }
  }

  // theta_s: the lift of the f_{j,s} chains, bounded by the m_{k,s}.
  MultiGridMorphism theta;
  for (long s = 0; s < M; ++s) {
    std::vector<SemigroupElem> v;
    for (long j = 0; j <= 2 * l; ++j) {
      std::vector<StepFn> parts;
      for (long k = 0; k < K; ++k) parts.push_back(f[k][j][s]);
      v.push_back(SemigroupElem(std::move(parts)));
    }
    std::vector<long> ms;
    for (long k = 0; k < K; ++k) ms.push_back(wit.parts[k].ms[s]);
    theta.sources.push_back(GridMorphism::from_v_chain(std::move(v), SemigroupElem::compact(ms), 2));
  }

  // psi: the rho certificates of the chainable parts.
  MultiGridMorphism psi;
  for (long k = 0; k < K; ++k) psi.sources.push_back(rho_build(wit.parts[k].chain, m_of[k]));

  ValidationReport rep = verify_factorization(phi, l, x, x1, y, theta, psi);
  if (!rep.ok) throw std::logic_error("construct_factorization output failed verification: " + rep.str());
  return Factorization{std::move(theta), std::move(psi), std::move(wit), std::move(prob)};
}

}  // namespace cusemi
