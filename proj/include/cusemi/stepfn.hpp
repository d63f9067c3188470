#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cusemi/interval.hpp"

namespace cusemi {

/// A basic element of Lsc([0,1],N): a finite-valued lower-semicontinuous
/// step function with rational breakpoints, stored as its nested chain of
/// level sets L_k = {f >= k}.  The empty chain is the zero function.
class StepFn {
 public:
  StepFn() = default;

  /// Validates nesting (L_{k+1} subset of L_k) and drops empty tail levels.
  static StepFn from_levels(std::vector<OpenSet> levels);

  /// Indicator function of an open set (possibly empty -> zero).
  static StepFn indicator(const OpenSet& u);
  static StepFn indicator(const Interval& iv) { return indicator(OpenSet(iv)); }

  /// The constant function k.
  static StepFn constant(long k);

  const std::vector<OpenSet>& levels() const { return levels_; }

  /// {f >= k}, with the convention that it is empty above sup f and full
  /// at k <= 0.
  const OpenSet& level(size_t k) const;

  bool is_zero() const { return levels_.empty(); }
  long sup() const { return static_cast<long>(levels_.size()); }
  long value_at(const Rational& x) const;

  /// True iff every level set is all of [0,1], i.e. f is a constant
  /// integer; these are exactly the compact elements.
  bool is_constant() const;

  bool operator==(const StepFn& o) const { return levels_ == o.levels_; }

  std::string str() const;

 private:
  std::vector<OpenSet> levels_;
};

StepFn stepfn_add(const StepFn& f, const StepFn& g);
StepFn stepfn_scale(long k, const StepFn& f);

/// f <= g pointwise: {f>=k} subset of {g>=k} for every k >= 1.
bool stepfn_leq(const StepFn& f, const StepFn& g);

/// f way-below g: {f>=k} compactly contained in {g>=k} for every k >= 1.
bool stepfn_ll(const StepFn& f, const StepFn& g);

/// (f v g, f ^ g); satisfies f+g = (f v g) + (f ^ g).
std::pair<StepFn, StepFn> stepfn_sup_inf(const StepFn& f, const StepFn& g);

/// eps-retraction / eps-neighborhood applied to every connected component
/// of every level set.
StepFn stepfn_retract(const StepFn& f, const Rational& eps);
StepFn stepfn_neighborhood(const StepFn& f, const Rational& eps);

/// Drops the first k levels: the exact pointwise difference f - k*1 when
/// f >= k is not required (negative values simply clip to the remaining
/// levels); used where f + something covers k*1.
StepFn stepfn_drop_levels(const StepFn& f, long k);

/// Smallest positive difference among the finite endpoints of f and g
/// together with 0 and 1.  Used to pick deterministic rational margins.
Rational min_positive_gap(const StepFn& f, const StepFn& g);

/// Least positive distance between closure{lo >= k} and the complement of
/// {hi >= k} over all levels; nullopt when nothing constrains it (then hi
/// has full levels wherever lo is nonzero).
std::optional<Rational> ll_margin(const StepFn& lo, const StepFn& hi);

/// lcm of all endpoint denominators of f (1 for constants).
BigInt common_denominator(const StepFn& f);

/// Given x way-below y, produces basic increasing elements (a, d) --
/// finite sums of right intervals and full levels -- with
/// x + a << d << y + a, following a fixed per-component case split with
/// margins of half the minimal endpoint gap.
std::pair<StepFn, StepFn> basic_reduce(const StepFn& x, const StepFn& y);

/// True iff every endpoint is a multiple of 1/n.
bool in_Ln(const StepFn& f, long n);

/// in_Ln plus: the components of each level set are pairwise at distance
/// at least 2/n.
bool in_Ln0(const StepFn& f, long n);

}  // namespace cusemi
