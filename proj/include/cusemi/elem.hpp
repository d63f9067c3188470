#pragma once

#include <optional>
#include <vector>

#include "cusemi/stepfn.hpp"

namespace cusemi {

/// Arity of a finite direct sum of copies of Lsc([0,1],N).
struct SumSignature {
  long arity = 1;
  bool operator==(const SumSignature&) const = default;
};

/// An element of the direct sum: one basic step function per summand.
class SemigroupElem {
 public:
  SemigroupElem() = default;
  explicit SemigroupElem(std::vector<StepFn> parts) : parts_(std::move(parts)) {}

  static SemigroupElem zero(long arity) { return SemigroupElem(std::vector<StepFn>(arity)); }
  static SemigroupElem single(StepFn f) { return SemigroupElem({std::move(f)}); }

  /// The compact element with the given constant value per summand.
  static SemigroupElem compact(const std::vector<long>& values);

  /// f placed in summand `slot` of an arity-`arity` sum, zero elsewhere.
  static SemigroupElem unit_vector(long arity, long slot, StepFn f);

  long arity() const { return static_cast<long>(parts_.size()); }
  const std::vector<StepFn>& parts() const { return parts_; }
  const StepFn& part(long s) const { return parts_.at(s); }

  bool is_zero() const;
  bool operator==(const SemigroupElem& o) const { return parts_ == o.parts_; }

  std::string str() const;

 private:
  std::vector<StepFn> parts_;
};

SemigroupElem elem_add(const SemigroupElem& x, const SemigroupElem& y);
SemigroupElem elem_scale(long k, const SemigroupElem& x);
bool elem_leq(const SemigroupElem& x, const SemigroupElem& y);
bool elem_ll(const SemigroupElem& x, const SemigroupElem& y);

/// Compact elements are tuples of constant integer functions,
/// equivalently x << x.
bool is_compact(const SemigroupElem& x);

/// The integer vector of a compact element.
std::vector<long> compact_values(const SemigroupElem& x);

/// Largest basic element x with x + f <= u pointwise, for compact u and
/// f <= u: per summand of constant value k, {x >= c} is the complement of
/// the closure of {f >= k-c+1}.  (The raw pointwise difference is upper
/// semicontinuous; this is its lsc regularization.)
SemigroupElem subtract_from_compact(const SemigroupElem& u, const SemigroupElem& f);

struct CompactDivisor {
  SemigroupElem e;
  std::vector<long> ks;
};

/// A compact e with p_s = k_s * e for all s, if one exists.  e is the
/// primitive vector of the common direction; all-zero input returns the
/// zero element with ks = 1.
std::optional<CompactDivisor> common_compact_divisor(const std::vector<SemigroupElem>& ps);

}  // namespace cusemi
