#include "cusemi/elem.hpp"

#include <algorithm>
#include <numeric>

namespace cusemi {

SemigroupElem SemigroupElem::compact(const std::vector<long>& values) {
  std::vector<StepFn> parts;
  parts.reserve(values.size());
  for (long v : values) parts.push_back(StepFn::constant(v));
  return SemigroupElem(std::move(parts));
}

SemigroupElem SemigroupElem::unit_vector(long arity, long slot, StepFn f) {
  SemigroupElem e = zero(arity);
  e.parts_.at(slot) = std::move(f);
  return e;
}

bool SemigroupElem::is_zero() const {
  for (const StepFn& p : parts_)
    if (!p.is_zero()) return false;
  return true;
}

std::string SemigroupElem::str() const {
  std::string s = "(";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += " | ";
    s += parts_[i].str();
  }
  return s + ")";
}

namespace {
void check_signature(const SemigroupElem& x, const SemigroupElem& y) {
  if (x.arity() != y.arity()) throw PreconditionError("signature mismatch");
}
}  // namespace

SemigroupElem elem_add(const SemigroupElem& x, const SemigroupElem& y) {
  check_signature(x, y);
  std::vector<StepFn> parts;
  parts.reserve(x.arity());
  for (long s = 0; s < x.arity(); ++s) parts.push_back(stepfn_add(x.part(s), y.part(s)));
  return SemigroupElem(std::move(parts));
}

SemigroupElem elem_scale(long k, const SemigroupElem& x) {
  std::vector<StepFn> parts;
  parts.reserve(x.arity());
  for (long s = 0; s < x.arity(); ++s) parts.push_back(stepfn_scale(k, x.part(s)));
  return SemigroupElem(std::move(parts));
}

bool elem_leq(const SemigroupElem& x, const SemigroupElem& y) {
  check_signature(x, y);
  for (long s = 0; s < x.arity(); ++s)
    if (!stepfn_leq(x.part(s), y.part(s))) return false;
  return true;
}

bool elem_ll(const SemigroupElem& x, const SemigroupElem& y) {
  check_signature(x, y);
  for (long s = 0; s < x.arity(); ++s)
    if (!stepfn_ll(x.part(s), y.part(s))) return false;
  return true;
}

bool is_compact(const SemigroupElem& x) {
  for (const StepFn& p : x.parts())
    if (!p.is_constant()) return false;
  return true;
}

std::vector<long> compact_values(const SemigroupElem& x) {
  if (!is_compact(x)) throw PreconditionError("compact_values on non-compact element");
  std::vector<long> v;
  v.reserve(x.arity());
  for (const StepFn& p : x.parts()) v.push_back(p.sup());
  return v;
}

SemigroupElem subtract_from_compact(const SemigroupElem& u, const SemigroupElem& f) {
  if (!is_compact(u)) throw PreconditionError("subtract_from_compact requires a compact minuend");
  check_signature(u, f);
  if (!elem_leq(f, u)) throw PreconditionError("subtract_from_compact requires f <= u");
  std::vector<StepFn> parts;
  for (long s = 0; s < u.arity(); ++s) {
    long k = u.part(s).sup();
    std::vector<OpenSet> levels;
    for (long c = 1; c <= k; ++c) {
      levels.push_back(complement_of_closure(f.part(s).level(k - c + 1)));
    }
    parts.push_back(StepFn::from_levels(std::move(levels)));
  }
  return SemigroupElem(std::move(parts));
}

std::optional<CompactDivisor> common_compact_divisor(const std::vector<SemigroupElem>& ps) {
  if (ps.empty()) throw PreconditionError("common_compact_divisor needs at least one element");
  long arity = ps.front().arity();
  std::vector<std::vector<long>> vals;
  for (const SemigroupElem& p : ps) {
    if (p.arity() != arity) throw PreconditionError("signature mismatch");
    vals.push_back(compact_values(p));  // throws on non-compact input
  }

  auto is_zero_vec = [](const std::vector<long>& v) {
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
  };

  const std::vector<long>* dir = nullptr;
  for (const auto& v : vals)
    if (!is_zero_vec(v)) {
      dir = &v;
      break;
    }
  if (dir == nullptr) {
    // All zero: any compact works, pick the zero element.
    return CompactDivisor{SemigroupElem::zero(arity), std::vector<long>(ps.size(), 1)};
  }

  long g = 0;
  for (long x : *dir) g = std::gcd(g, x);
  std::vector<long> e(arity);
  for (long s = 0; s < arity; ++s) e[s] = (*dir)[s] / g;

  std::vector<long> ks;
  for (const auto& v : vals) {
    if (is_zero_vec(v)) {
      ks.push_back(0);
      continue;
    }
    long k = 0;
    for (long s = 0; s < arity; ++s) {
      if (e[s] != 0) {
        if (v[s] % e[s] != 0) return std::nullopt;
        long cand = v[s] / e[s];
        if (k != 0 && cand != k) return std::nullopt;
        k = cand;
      }
    }
    for (long s = 0; s < arity; ++s)
      if (v[s] != k * e[s]) return std::nullopt;
    ks.push_back(k);
  }
  return CompactDivisor{SemigroupElem::compact(e), std::move(ks)};
}

}  // namespace cusemi
