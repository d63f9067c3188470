#include "cusemi/xn.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cusemi {

std::string Omega::str() const {
  if (is_neg()) return "-inf";
  if (is_pos()) return "inf";
  return std::to_string(v);
}

XnElem::XnElem(long n, std::vector<XnPair> pairs) : XnElem(n) {
  for (const XnPair& p : pairs) check_pair(p);
  std::sort(pairs.begin(), pairs.end());
  pairs_ = std::move(pairs);
}

void XnElem::check_pair(const XnPair& p) const {
  bool lo_ok = p.lo.is_neg() || (p.lo.finite() && 0 <= p.lo.v && p.lo.v <= n_);
  bool hi_ok = p.hi.is_pos() || (p.hi.finite() && 0 <= p.hi.v && p.hi.v <= n_);
  if (!lo_ok || !hi_ok || !(p.lo < p.hi))
    throw PreconditionError("invalid pair " + p.str() + " for X_" + std::to_string(n_));
}

XnElem& XnElem::add(const XnPair& p) {
  check_pair(p);
  pairs_.insert(std::upper_bound(pairs_.begin(), pairs_.end(), p), p);
  return *this;
}

XnElem XnElem::operator+(const XnElem& o) const {
  if (n_ != o.n_) throw PreconditionError("X_n mismatch");
  XnElem out = *this;
  for (const XnPair& p : o.pairs_) out.add(p);
  return out;
}

XnElem XnElem::max_multiple(long n, long m) {
  XnElem out(n);
  for (long i = 0; i < m; ++i) out.add({Omega::neg_inf(), Omega::pos_inf()});
  return out;
}

std::string XnElem::str() const {
  if (pairs_.empty()) return "(0,0)";
  std::string s;
  for (size_t i = 0; i < pairs_.size(); ++i) {
    if (i) s += "+";
    s += pairs_[i].str();
  }
  return s;
}

bool check_chain(const XnElem& w_group, const XnPair& target, const ChainCert& chain) {
  std::vector<XnPair> sorted = chain;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != w_group.pairs()) return false;
  if (chain.empty()) return true;
  Omega prev = target.lo;
  for (const XnPair& p : chain) {
    if (!omega_prec(prev, p.lo) || !omega_prec(p.lo, p.hi)) return false;
    prev = p.hi;
  }
  return omega_prec(prev, target.hi);
}

bool check_prec_cert(const XnElem& w, const XnElem& v, const PrecCert& cert) {
  if (cert.groups.size() != v.size()) return false;
  std::vector<XnPair> all;
  for (size_t j = 0; j < cert.groups.size(); ++j) {
    XnElem group(w.n(), cert.groups[j]);
    if (!check_chain(group, v.pairs()[j], cert.groups[j])) return false;
    all.insert(all.end(), cert.groups[j].begin(), cert.groups[j].end());
  }
  std::sort(all.begin(), all.end());
  return all == w.pairs();
}

std::optional<ChainCert> prec_single(const XnElem& w, const XnPair& target) {
  // In a valid chain the lows are forced into sorted order (repeated
  // finite lows cannot interleave), so sorting and verifying is complete.
  ChainCert chain = w.pairs();
  if (check_chain(w, target, chain)) return chain;
  return std::nullopt;
}

namespace {

int64_t boundary_key(const std::optional<Omega>& b) {
  return b ? static_cast<int64_t>(b->v) : INT64_MIN;
}

struct PrecSearch {
  const std::vector<XnPair>& pairs;    // sorted pairs of w
  const std::vector<XnPair>& targets;  // sorted pairs of v
  std::vector<std::optional<Omega>> boundary;
  std::vector<std::vector<XnPair>> groups;
  std::set<std::pair<size_t, std::vector<int64_t>>> dead;

  bool run(size_t idx) {
    if (idx == pairs.size()) return true;
    std::vector<int64_t> key(boundary.size());
    for (size_t j = 0; j < boundary.size(); ++j) key[j] = boundary_key(boundary[j]);
    if (dead.count({idx, key})) return false;

    const XnPair& q = pairs[idx];
    for (size_t j = 0; j < targets.size(); ++j) {
      // Equal targets are interchangeable; always fill the leftmost
      // empty copy first.
      if (j > 0 && targets[j] == targets[j - 1] && !boundary[j - 1]) continue;
      Omega prev = boundary[j] ? *boundary[j] : targets[j].lo;
      if (!omega_prec(prev, q.lo)) continue;
      if (!omega_prec(q.hi, targets[j].hi)) continue;  // forced transitively
      auto saved = boundary[j];
      boundary[j] = q.hi;
      groups[j].push_back(q);
      if (run(idx + 1)) return true;
      groups[j].pop_back();
      boundary[j] = saved;
    }
    dead.insert({idx, std::move(key)});
    return false;
  }
};

}  // namespace

std::optional<PrecCert> prec(const XnElem& w, const XnElem& v) {
  if (w.n() != v.n()) throw PreconditionError("X_n mismatch");
  if (w.is_unit()) return PrecCert{std::vector<ChainCert>(v.size())};
  if (v.is_unit()) return std::nullopt;
  PrecSearch search{w.pairs(), v.pairs(), {}, {}, {}};
  search.boundary.resize(v.size());
  search.groups.resize(v.size());
  if (!search.run(0)) return std::nullopt;
  return PrecCert{std::move(search.groups)};
}

bool prec_oracle(const XnElem& w, const XnElem& v) {
  if (w.n() != v.n()) throw PreconditionError("X_n mismatch");
  if (w.size() > 6 || v.size() > 4) throw PreconditionError("prec_oracle bound exceeded (|w| <= 6, |v| <= 4)");
  if (w.is_unit()) return true;
  if (v.is_unit()) return false;

  size_t groups = v.size();
  std::vector<size_t> assign(w.size(), 0);
  while (true) {
    bool ok = true;
    for (size_t j = 0; j < groups && ok; ++j) {
      std::vector<XnPair> group;
      for (size_t i = 0; i < w.size(); ++i)
        if (assign[i] == j) group.push_back(w.pairs()[i]);
      std::sort(group.begin(), group.end());
      bool chained = false;
      do {
        if (check_chain(XnElem(w.n(), group), v.pairs()[j], group)) {
          chained = true;
          break;
        }
      } while (std::next_permutation(group.begin(), group.end()));
      ok = chained;
    }
    if (ok) return true;
    // next assignment in base |v|
    size_t i = 0;
    while (i < assign.size() && ++assign[i] == groups) assign[i++] = 0;
    if (i == assign.size()) return false;
  }
}

OpenSet pair_interval(const XnPair& p, long n) {
  Cut lo = p.lo.is_neg() ? Cut::below() : Cut::at(Rational(BigInt(p.lo.v), BigInt(n)));
  Cut hi = p.hi.is_pos() ? Cut::above() : Cut::at(Rational(BigInt(p.hi.v), BigInt(n)));
  if (!nonempty(lo, hi)) return OpenSet::empty();
  return OpenSet(Interval::from_cuts(lo, hi));
}

StepFn feval(const XnElem& x) {
  StepFn acc;
  for (const XnPair& p : x.pairs()) acc = stepfn_add(acc, StepFn::indicator(pair_interval(p, x.n())));
  return acc;
}

XnElem canonical_qf(const StepFn& f, long n) {
  if (!in_Ln(f, n)) throw PreconditionError("canonical_qf requires f in L_n");
  XnElem q(n);
  for (const OpenSet& level : f.levels()) {
    for (const Interval& c : level.components()) {
      Omega lo = c.lo().finite() ? Omega::fin(static_cast<int32_t>((c.lo().value * Rational(n)).num()))
                                 : Omega::neg_inf();
      Omega hi = c.hi().finite() ? Omega::fin(static_cast<int32_t>((c.hi().value * Rational(n)).num()))
                                 : Omega::pos_inf();
      q.add({lo, hi});
    }
  }
  return q;
}

bool simeq(const XnElem& w, const XnElem& v) {
  if (w.n() != v.n()) throw PreconditionError("X_n mismatch");
  return feval(w) == feval(v);
}

namespace {

// The rewriting works on pairs as intervals of the n-grid; a pair is
// degenerate when its interval is empty ((-inf,0) and (n,inf)).
bool degenerate(const XnPair& p, long n) {
  if (p.lo.is_neg() && p.hi.finite() && p.hi.v == 0) return true;
  if (p.hi.is_pos() && p.lo.finite() && p.lo.v == n) return true;
  return false;
}

// Strict interval order on Omega used for overlap geometry: plain <, so
// that equal infinities do NOT count as crossing the boundary.
bool olt(Omega a, Omega b) { return a < b; }

struct Rewriter {
  long n;
  std::vector<std::vector<XnPair>> levels;  // canonical prefix, by level
  std::vector<ExchangeStep> steps;

  // Merges pair p into level d; cascades intersections downward.
  void merge(XnPair p, size_t d) {
    if (d == levels.size()) {
      levels.push_back({p});
      return;
    }
    auto& level = levels[d];
    std::vector<XnPair> kept, banked;
    XnPair cur = p;
    bool consumed = false;
    for (const XnPair& c : level) {
      if (consumed || !olt(c.lo, cur.hi) || !olt(cur.lo, c.hi)) {
        // No overlap with the growing component (touching stays apart).
        kept.push_back(c);
        continue;
      }
      if (!olt(cur.lo, c.lo) && !olt(c.hi, cur.hi)) {
        // cur inside c (endpoints may coincide): union is c,
        // intersection is cur; just a regrouping, no exchange.
        kept.push_back(c);
        banked.push_back(cur);
        consumed = true;
      } else if (!olt(c.lo, cur.lo) && !olt(cur.hi, c.hi)) {
        // c inside cur's span: absorbed, intersection is c.
        banked.push_back(c);
      } else if (olt(c.lo, cur.lo)) {
        // Genuine crossing of the left boundary: c.lo < cur.lo < c.hi < cur.hi.
        steps.push_back({c, cur, {c.lo, cur.hi}, {cur.lo, c.hi}});
        banked.push_back({cur.lo, c.hi});
        cur = {c.lo, cur.hi};
      } else {
        // Crossing of the right boundary: cur.lo < c.lo < cur.hi < c.hi.
        steps.push_back({cur, c, {cur.lo, c.hi}, {c.lo, cur.hi}});
        banked.push_back({c.lo, cur.hi});
        cur = {cur.lo, c.hi};
      }
    }
    if (!consumed) kept.push_back(cur);
    std::sort(kept.begin(), kept.end());
    level = std::move(kept);
    for (const XnPair& b : banked) merge(b, d + 1);
  }
};

}  // namespace

std::vector<ExchangeStep> simeq_certificate(const XnElem& w) {
  for (const XnPair& p : w.pairs())
    if (degenerate(p, w.n()))
      throw PreconditionError("exchange certificate requires pairs with nonempty image");
  Rewriter rw{w.n(), {}, {}};
  for (const XnPair& p : w.pairs()) rw.merge(p, 0);

  XnElem result(w.n());
  for (const auto& level : rw.levels)
    for (const XnPair& p : level) result.add(p);
  XnElem expected = canonical_qf(feval(w), w.n());
  if (!(result == expected))
    throw std::logic_error("exchange rewriting did not reach the canonical form");
  return rw.steps;
}

namespace {

bool exchange_pattern(const XnPair& t0, const XnPair& t1, const XnPair& g0, const XnPair& g1) {
  auto try_orient = [&](const XnPair& a, const XnPair& b) {
    // a = (alpha,beta), b = (gamma,delta) with alpha < gamma < beta < delta.
    if (!(omega_prec(a.lo, b.lo) && omega_prec(b.lo, a.hi) && omega_prec(a.hi, b.hi))) return false;
    XnPair x{a.lo, b.hi}, y{b.lo, a.hi};
    return (x == g0 && y == g1) || (x == g1 && y == g0);
  };
  return try_orient(t0, t1) || try_orient(t1, t0);
}

}  // namespace

std::optional<XnElem> apply_exchange_steps(const XnElem& w, const std::vector<ExchangeStep>& steps) {
  XnElem cur = w;
  for (const ExchangeStep& st : steps) {
    bool forward = exchange_pattern(st.take0, st.take1, st.give0, st.give1);
    bool backward = exchange_pattern(st.give0, st.give1, st.take0, st.take1);
    if (!forward && !backward) return std::nullopt;
    std::vector<XnPair> pairs = cur.pairs();
    for (const XnPair& t : {st.take0, st.take1}) {
      auto it = std::find(pairs.begin(), pairs.end(), t);
      if (it == pairs.end()) return std::nullopt;
      pairs.erase(it);
    }
    pairs.push_back(st.give0);
    pairs.push_back(st.give1);
    cur = XnElem(w.n(), std::move(pairs));
  }
  return cur;
}

bool check_exchange_certificate(const XnElem& w, const std::vector<ExchangeStep>& steps) {
  auto end = apply_exchange_steps(w, steps);
  if (!end) return false;
  return feval(*end) == feval(w);
}

}  // namespace cusemi
