#pragma once

// Morphism-certificate fixtures shared by the unit and acceptance suites.

#include "cusemi/chainable.hpp"
#include "cusemi/gridmorph.hpp"
#include "generators.hpp"

namespace cusemi::testing {

/// The identity-like certificate at resolution n: v_i = chi_(i/n,1],
/// unit = 1, lsc-hull w-values.
inline GridMorphism identity_cert(long n) {
  std::vector<SemigroupElem> v;
  for (long i = 0; i < n; ++i)
    v.push_back(SemigroupElem::single(StepFn::indicator(Interval::right(Rational(BigInt(i), BigInt(n))))));
  v.push_back(SemigroupElem::zero(1));
  return GridMorphism::from_v_chain(std::move(v), SemigroupElem::single(StepFn::constant(1)), 2);
}

/// phi shifted by `cells` grid cells: v_i -> v_{i+cells}, clamped, with
/// fresh lsc-hull w-values.  Same unit, so distances make sense.
inline GridMorphism shifted(const GridMorphism& phi, long cells) {
  std::vector<SemigroupElem> v;
  for (long i = 0; i <= phi.resolution(); ++i)
    v.push_back(phi.v_at(std::min(i + cells, phi.resolution())));
  return GridMorphism::from_v_chain(std::move(v), phi.unit(), 2);
}

inline MultiGridMorphism as_multi(GridMorphism phi) { return MultiGridMorphism{{std::move(phi)}}; }

/// Random certificate: the lift of a random descending chain.
inline GridMorphism rand_cert(Rng& rng, long den, int chain_len, long arity = 1) {
  std::vector<SemigroupElem> chain;
  std::vector<long> bound(arity, 0);
  std::vector<std::vector<StepFn>> cols(arity);
  for (long s = 0; s < arity; ++s) {
    auto col = rand_ll_chain(rng, den, chain_len, 4);
    while (static_cast<int>(col.size()) < chain_len) col.insert(col.begin(), StepFn());
    cols[s] = col;
    bound[s] = std::max(1L, col.back().sup());
  }
  for (int i = 0; i < chain_len; ++i) {
    std::vector<StepFn> parts;
    for (long s = 0; s < arity; ++s) parts.push_back(cols[s][i]);
    chain.push_back(SemigroupElem(std::move(parts)));
  }
  return lift_from_chain(chain, SemigroupElem::compact(bound));
}

}  // namespace cusemi::testing
