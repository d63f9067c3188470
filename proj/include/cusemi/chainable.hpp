#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cusemi/gridmorph.hpp"
#include "cusemi/xn.hpp"

namespace cusemi {

/// How a witness table extends to the refined monoids X_{mn}.  The two
/// built-in rules are closed forms valid for every m; an explicit witness
/// carries one refined table per m up to its M_check.
enum class RefinementRule { kScaledCanonical, kConstantMultiples, kExplicit };

/// Finite witness that a subsemigroup is (n,e)-chainable: a table g on
/// the generating pairs of X_n together with a refinement rule.  The
/// additive extension of g is the I-morphism; its image spans the
/// subsemigroup.
class ChainableWitness {
 public:
  /// g(alpha,beta) = indicator of (alpha/n, beta/n) embedded in the given
  /// summand of an arity-wide ambient sum; e is the embedded unit.
  static ChainableWitness canonical(long n, long ambient_arity = 1, long component = 0, long m_check = 4);

  /// g(alpha,inf) = e and everything else 0: the span of a compact.
  static ChainableWitness constant_multiples(long n, SemigroupElem e, long m_check = 4);

  static ChainableWitness explicit_table(long n, SemigroupElem e,
                                         std::map<XnPair, SemigroupElem> table,
                                         std::map<long, std::map<XnPair, SemigroupElem>> refined,
                                         long m_check = 4);

  long n() const { return n_; }
  long m_check() const { return m_check_; }
  RefinementRule rule() const { return rule_; }
  const SemigroupElem& e() const { return e_; }
  long ambient_arity() const { return e_.arity(); }

  /// The table value at a generating pair of X_n.
  SemigroupElem value(const XnPair& p) const;

  /// The witness over X_{mn} given by the refinement rule.
  ChainableWitness refined(long m) const;

  /// Additive extension to all of X_n.
  SemigroupElem apply(const XnElem& w) const;

  /// All generating pairs of X_n.
  std::vector<XnPair> generator_pairs() const;

  /// Pushes every table value through a validated morphism certificate;
  /// the result is an explicit witness over the morphism's target.
  ChainableWitness mapped_through(const MultiGridMorphism& phi) const;

 private:
  ChainableWitness(long n, RefinementRule rule, SemigroupElem e, long m_check)
      : n_(n), rule_(rule), e_(std::move(e)), m_check_(m_check) {}

  long n_;
  RefinementRule rule_;
  SemigroupElem e_;
  long m_check_;
  long component_ = 0;  // canonical embedding slot
  std::map<XnPair, SemigroupElem> table_;
  std::map<long, std::map<XnPair, SemigroupElem>> refined_;
};

struct VerifyOptions {
  /// Cap on the number of maximal interleaved chains enumerated per
  /// verify call; beyond it condition (iv) reports a capped check.
  long chain_budget = 20000;
  std::optional<SumSignature> ambient;  // expected value signature, if any
};

/// Checks the witness conditions, naming each failed clause:
///   (i)   g(-inf,inf) = e, e compact, every value bounded by e
///   (ii)  g(a,b) + g(b,inf) <= g(a,inf)
///   (iii) the exchange identity on crossing quadruples
///   (iv)  sum over every maximal interleaved chain is way-below the
///         target value (maximality suffices: x <= y << z gives x << z)
///   (v)   each refined table up to M_check restricts correctly and
///         passes (i)-(iv) itself
ValidationReport verify_chainable(const ChainableWitness& w, const VerifyOptions& opts = {});

/// The morphism certificate rho_m at resolution n*m: v_i is the refined
/// table at (i,inf), the unit is e, w-values are lsc hulls.  The witness
/// is trusted (verify_chainable is the caller's precondition; built-in
/// rules are correct by construction) but the certificate itself is
/// validated.
GridMorphism rho_build(const ChainableWitness& w, long m);

/// Evaluates the approximation sandwich
///   rho_m(retract by eps) << table value << rho_m(neighborhood by eps)
/// over the generator pairs, at grid-aligned eps with m >= 1/eps.
bool tebelow_check(const ChainableWitness& w, long m, const Rational& eps);

struct PrecConvertResult {
  Rational eps;
  long m;
  std::vector<std::pair<StepFn, StepFn>> pairs;  // (f_i, g_i) per relation
};

/// Converts a family of prec relations q_i < t_i into step functions
/// f_i = R_eps(feval(q_i)), g_i = R_eps(feval(t_i)) with f_i << g_i and
/// the rho-sandwich rho_m(f_i) << F(q_i) << rho_m(g_i) << F(t_i) verified
/// against the canonical witness.  eps = 1/(4n+1), m = 4n+1: one fixed
/// retraction, so equal inputs give equal outputs.
PrecConvertResult prec_convert(long n, const std::vector<std::pair<XnElem, XnElem>>& family);

/// Index into the z-matrix: row -1 stands for the compact row p_s.
struct TermRef {
  long i = 0;
  long s = 0;
  bool operator==(const TermRef&) const = default;
};

/// The data the interpolation properties quantify over: finite descending
/// chains 0 = z_l << ... << z_0 << p_s per summand, and two multisets
/// I, J of (row, summand) references with sum(I) << sum(J).
struct I0Problem {
  long l = 1;
  std::vector<std::vector<SemigroupElem>> z;  // z[i][s], i = 0..l
  std::vector<SemigroupElem> p;               // per s
  std::vector<TermRef> I, J;

  long summands() const { return static_cast<long>(p.size()); }
  long ambient_arity() const { return p.empty() ? 0 : p.front().arity(); }
  const SemigroupElem& term(const TermRef& r) const { return r.i < 0 ? p.at(r.s) : z.at(r.i).at(r.s); }
  SemigroupElem sum(const std::vector<TermRef>& refs) const;
};

ValidationReport validate(const I0Problem& prob);

struct I0Witness {
  ChainableWitness chain;
  std::vector<long> ks;                      // p_s = ks[s] * e
  std::vector<std::vector<XnElem>> a_seqs;   // per summand: a_{i,s}, i = 0..l-1
  XnElem a, b;

  /// a_{i,s} with the conventions a_{-inf,s} = ks[s]*(-inf,inf) and
  /// a_{l,s} = unit.
  XnElem a_term(const TermRef& r, long l) const;
  XnElem sum_terms(const std::vector<TermRef>& refs, long l) const;
};

ValidationReport verify_I0_witness(const I0Problem& prob, const I0Witness& wit);

/// The constructive interpolation for a single-Lsc ambient: interpolate
/// between consecutive z's, retract by a deterministic rational margin,
/// land in some L_n^0, and read off canonical forms.  The result always
/// passes verify_I0_witness.
I0Witness construct_I0_witness_lsc(const I0Problem& prob);

struct IWitnessPart {
  ChainableWitness chain;
  std::vector<long> ms;                      // m_{k,s} per summand s
  std::vector<std::vector<XnElem>> a_seqs;   // per summand: a^{(k)}_{i,s}
  XnElem a, b;

  XnElem a_term(const TermRef& r, long l) const;
  XnElem sum_terms(const std::vector<TermRef>& refs, long l) const;
};

struct IWitness {
  std::vector<IWitnessPart> parts;
};

ValidationReport verify_I_witness(const I0Problem& prob, const IWitness& wit);

/// Splits the problem per ambient component, constructs a single-summand
/// witness for each and embeds it with its unit supported on that
/// component.
IWitness construct_I_witness(const I0Problem& prob);

/// Checks a factorization phi ~ psi . theta at grid scale:
///   (i)   phi(chi^s_((i+1)/l,1]) << (psi.theta)(chi^s_(i/l,1]) and the
///         mirrored family, for every summand and i < l
///   (ii)  theta(x) << theta(y)
///   (iii) phi(1_s) = (psi.theta)(1_s) exactly
ValidationReport verify_factorization(const MultiGridMorphism& phi, long l, const GridBasicElement& x,
                                      const GridBasicElement& x1, const GridBasicElement& y,
                                      const MultiGridMorphism& theta, const MultiGridMorphism& psi);

struct Factorization {
  MultiGridMorphism theta;
  MultiGridMorphism psi;
  IWitness witness;
  I0Problem problem;
};

/// The single factorization step: reads the half-grid chains out of phi,
/// constructs an I-witness, converts its prec relations to step
/// functions, lifts theta from them and assembles psi from the rho
/// certificates.  The output always passes verify_factorization.
Factorization construct_factorization(const MultiGridMorphism& phi, long l, const GridBasicElement& x,
                                      const GridBasicElement& x1, const GridBasicElement& y);

}  // namespace cusemi
