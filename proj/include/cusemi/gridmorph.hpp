#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cusemi/elem.hpp"

namespace cusemi {

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;
  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
  std::string str() const;
};

/// Finite certificate of a Cu-morphism Lsc([0,1],N) -> (direct sum of
/// Lsc): the images of the right intervals chi_(i/N,1] (v), the left
/// intervals chi_[0,i/N) (w) and the unit.  `slack` is the number of grid
/// cells after which the fullness inequality unit <= w_{j+slack} + v_j is
/// guaranteed; constructors emit 2 because the lsc-hull w-values can miss
/// it at j+1 exactly at jump points.
class GridMorphism {
 public:
  GridMorphism(long resolution, SumSignature target, std::vector<SemigroupElem> v,
               std::vector<SemigroupElem> w, SemigroupElem unit, int slack);

  /// Builds the w-values as lsc hulls w_i = unit - v_{i-1} and validates.
  static GridMorphism from_v_chain(std::vector<SemigroupElem> v, SemigroupElem unit, int slack = 2);

  long resolution() const { return n_; }
  const SumSignature& target() const { return target_; }
  int slack() const { return slack_; }
  const SemigroupElem& unit() const { return unit_; }
  const std::vector<SemigroupElem>& v() const { return v_; }
  const std::vector<SemigroupElem>& w() const { return w_; }
  const SemigroupElem& v_at(long i) const { return v_.at(i); }
  const SemigroupElem& w_at(long i) const { return w_.at(i); }

  bool operator==(const GridMorphism& o) const = default;

 private:
  long n_;
  SumSignature target_;
  std::vector<SemigroupElem> v_, w_;
  SemigroupElem unit_;
  int slack_;
};

/// Checks every certificate invariant.  The order conditions are checked
/// in full; the tightness and fullness families are checked at their
/// binding instances (j = i, resp. i' = j + slack), which is equivalent
/// once the v-chain and w-monotonicity have been verified.
ValidationReport validate(const GridMorphism& phi);

/// h with f << h << g, assuming f << g.  Per part and level k the result
/// is N_delta({f>=k}) united with R_delta({g>=k}), where delta is half
/// the minimal positive margin between closure({f>=k}) and the complement
/// of {g>=k}, capped at 1/(3 * common denominator).
SemigroupElem interpolate_between(const SemigroupElem& f, const SemigroupElem& g);

/// The certificate of a morphism with phi(chi_((j-k)/j,1]) = s_k and
/// phi(1) = p, for a chain s_1 << ... << s_j <= p with p compact.
/// Resolution 2j: even grid points carry the chain, odd points carry
/// interpolants, w-values are lsc hulls.
GridMorphism lift_from_chain(const std::vector<SemigroupElem>& chain, const SemigroupElem& p);

/// Exact evaluation at a grid-aligned basic element: levels decompose
/// into components, components map to certificate data ((i/N,1] -> v_i,
/// [0,j/N) -> w_j, full -> unit, (i/N,j/N) -> v_i + w_j - unit), and the
/// results are summed.  Open components need j >= i + slack.
SemigroupElem evaluate(const GridMorphism& phi, const StepFn& f);

/// Same mapping applied to an explicit list of indicator pieces; used to
/// confirm the evaluation is decomposition independent.
SemigroupElem evaluate_pieces(const GridMorphism& phi, const std::vector<OpenSet>& pieces);

/// A morphism certificate out of a finite direct sum: one GridMorphism
/// per summand, sharing the target signature.
struct MultiGridMorphism {
  std::vector<GridMorphism> sources;

  long source_count() const { return static_cast<long>(sources.size()); }
  const GridMorphism& source(long s) const { return sources.at(s); }
  bool operator==(const MultiGridMorphism& o) const = default;
};

ValidationReport validate(const MultiGridMorphism& phi);

/// An element of the additive span of {1_s} u {chi^s_(i/l,1]}: counts per
/// summand for the unit (index -inf) and for each i in 0..l-1.
struct GridBasicElement {
  long l = 1;
  std::vector<long> unit_counts;          // per summand
  std::vector<std::vector<long>> counts;  // per summand, per i in 0..l-1

  static GridBasicElement zero(long l, long summands);
  long summands() const { return static_cast<long>(unit_counts.size()); }
  /// The step function this spells in summand s.
  StepFn realize(long s) const;
  SemigroupElem realize_all() const;
};

SemigroupElem evaluate_multi(const MultiGridMorphism& phi, const GridBasicElement& x);

struct DistanceBracket {
  Rational lo, hi;
  std::vector<long> cells;  // minimal shift count per source
  std::vector<long> grids;  // common grid per source
};

/// Sound enclosure of the distance between the certified morphisms: on
/// the common grid G = gcd of the resolutions, c is the minimal shift
/// with v^phi_{i+c} <= v^psi_i and v^psi_{i+c} <= v^phi_i for all i; the
/// distance then lies in [max(0,(c-1)/G), (c+1)/G].  Units must agree.
DistanceBracket distance_bracket(const MultiGridMorphism& phi, const MultiGridMorphism& psi);

/// Checks evaluate(phi_s, R_eps(f)) <= evaluate(psi_s, f) and the
/// symmetric inequality for every summand s.
bool retraction_distance_check(const MultiGridMorphism& phi, const MultiGridMorphism& psi,
                               const Rational& eps, const StepFn& f);

struct PairMargin {
  Rational eps;
  StepFn mid;  // f'' with f' << f'' << f
};

/// For f' << f (grid aligned), a margin eps > 0 and midpoint f'' such
/// that any validated psi with the same unit and distance bracket below
/// eps satisfies evaluate(phi,f') << evaluate(psi,f'') << evaluate(phi,f).
/// f'' is the retraction of f by half the minimal margin (so it lives on
/// the doubled grid when margins are a single cell wide).
PairMargin margin_for_pair(const GridMorphism& phi, const StepFn& f_lo, const StepFn& f_hi);

/// eps' such that pairs of morphisms at distance below eps' compose with
/// theta to morphisms at distance below eps.
Rational composition_modulus(const GridMorphism& theta, const Rational& eps);

/// Componentwise composition outer . inner; every inner grid value must
/// be evaluable by the matching outer source.  The result is revalidated
/// and construction fails loudly if it does not check out.
MultiGridMorphism compose(const MultiGridMorphism& outer, const MultiGridMorphism& inner);

struct CauchyBound {
  MultiGridMorphism approx;
  Rational bound;
};

/// For a prefix of a Cauchy sequence with declared strictly decreasing
/// bounds eps_i (checked against the actual brackets), returns the last
/// prefix element together with B = (declared tail sum) + 1/G such that
/// the unique limit is within B of it.
CauchyBound cauchy_limit_bound(const std::vector<MultiGridMorphism>& prefix,
                               const std::vector<Rational>& eps);

}  // namespace cusemi
