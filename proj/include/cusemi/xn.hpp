#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cusemi/stepfn.hpp"

namespace cusemi {

/// A point of the chain {-inf, 0, ..., n, inf}.
struct Omega {
  static constexpr int32_t kNeg = INT32_MIN;
  static constexpr int32_t kPos = INT32_MAX;

  int32_t v = 0;

  static Omega neg_inf() { return {kNeg}; }
  static Omega pos_inf() { return {kPos}; }
  static Omega fin(int32_t k) { return {k}; }

  bool is_neg() const { return v == kNeg; }
  bool is_pos() const { return v == kPos; }
  bool finite() const { return v != kNeg && v != kPos; }

  /// The scaled point m*alpha of the refined chain; infinities are fixed.
  Omega scaled(int32_t m) const { return finite() ? fin(v * m) : *this; }

  auto operator<=>(const Omega&) const = default;
  std::string str() const;
};

/// alpha' strictly precedes alpha: equal infinities precede themselves,
/// finite points only by strict inequality.
inline bool omega_prec(Omega a, Omega b) {
  if (a == b) return a.is_neg() || a.is_pos();
  return a < b;
}

/// A generator (alpha,beta) with alpha < beta; the monoid unit (0,0) is
/// represented by the empty multiset, never by a pair.
struct XnPair {
  Omega lo, hi;
  auto operator<=>(const XnPair&) const = default;
  std::string str() const { return "(" + lo.str() + "," + hi.str() + ")"; }
};

/// An element of the free abelian monoid X_n: a sorted multiset of pairs.
class XnElem {
 public:
  explicit XnElem(long n) : n_(n) {
    if (n < 1) throw PreconditionError("X_n requires n >= 1");
  }
  XnElem(long n, std::vector<XnPair> pairs);

  long n() const { return n_; }
  const std::vector<XnPair>& pairs() const { return pairs_; }
  size_t size() const { return pairs_.size(); }
  bool is_unit() const { return pairs_.empty(); }

  XnElem& add(const XnPair& p);
  XnElem operator+(const XnElem& o) const;
  bool operator==(const XnElem& o) const { return n_ == o.n_ && pairs_ == o.pairs_; }

  /// m copies of (-inf, inf).
  static XnElem max_multiple(long n, long m);

  std::string str() const;

 private:
  void check_pair(const XnPair& p) const;
  long n_;
  std::vector<XnPair> pairs_;  // sorted
};

/// An interleaved-chain certificate: the order in which the pairs of w
/// thread through the target, alpha < a_1 < b_1 < ... < b_m < beta.
using ChainCert = std::vector<XnPair>;

/// A partition certificate for w < v: one chain per pair of v (in sorted
/// order of v's pairs), some possibly empty.
struct PrecCert {
  std::vector<ChainCert> groups;
};

/// Verification helpers (pure, certificate in, bool out).
bool check_chain(const XnElem& w_group, const XnPair& target, const ChainCert& chain);
bool check_prec_cert(const XnElem& w, const XnElem& v, const PrecCert& cert);

std::optional<ChainCert> prec_single(const XnElem& w, const XnPair& target);

/// Backtracking search over canonically ordered pair assignments with
/// memoized dead states.  Worst case exponential; intended for desk-scale
/// elements (|w| up to around 32 pairs).
std::optional<PrecCert> prec(const XnElem& w, const XnElem& v);

/// Exhaustive reference decision for prec: all labeled partitions, all
/// orderings.  Hard-bounded to |w| <= 6, |v| <= 4.
bool prec_oracle(const XnElem& w, const XnElem& v);

/// The canonical evaluation into L_n: each pair maps to the indicator of
/// (lo/n, hi/n) ∩ [0,1], -inf giving a closed left end and +inf a closed
/// right end.
StepFn feval(const XnElem& x);
OpenSet pair_interval(const XnPair& p, long n);

/// Inverse of the evaluation on level-set components of an f in L_n.
XnElem canonical_qf(const StepFn& f, long n);

bool simeq(const XnElem& w, const XnElem& v);

/// One application of the exchange relation: `take` is replaced by `give`
/// inside the ambient multiset; in one orientation the four points
/// satisfy a < c < b < d with take = {(a,b),(c,d)}, give = {(a,d),(c,b)}.
struct ExchangeStep {
  XnPair take0, take1;
  XnPair give0, give1;
};

/// Rewrites w to canonical_qf(feval(w), n), recording the exchanges made.
std::vector<ExchangeStep> simeq_certificate(const XnElem& w);

/// Applies steps to w, validating each against the exchange pattern;
/// returns the final element, or nullopt if a step is malformed or does
/// not apply.
std::optional<XnElem> apply_exchange_steps(const XnElem& w, const std::vector<ExchangeStep>& steps);

bool check_exchange_certificate(const XnElem& w, const std::vector<ExchangeStep>& steps);

}  // namespace cusemi
