#include <doctest.h>

#include "cusemi/elem.hpp"
#include "generators.hpp"

using namespace cusemi;
using cusemi::testing::Rng;

namespace {
Rational rat(long n, long d) { return Rational(BigInt(n), BigInt(d)); }
}  // namespace

TEST_CASE("componentwise ops and compactness") {
  SemigroupElem one_zero = SemigroupElem::compact({1, 0});
  SemigroupElem zero_one = SemigroupElem::compact({0, 1});
  CHECK(elem_ll(one_zero, one_zero));
  CHECK(is_compact(one_zero));
  CHECK(elem_add(one_zero, zero_one) == SemigroupElem::compact({1, 1}));
  CHECK(is_compact(SemigroupElem::zero(3)));

  SemigroupElem x({StepFn::indicator(Interval::right(rat(0, 1))), StepFn()});
  CHECK(!is_compact(x));
  CHECK(!elem_ll(x, x));  // (0,1] is not compactly contained in itself
  CHECK(elem_ll(x, one_zero));
  CHECK_THROWS_AS(elem_add(one_zero, SemigroupElem::zero(3)), PreconditionError);
}

TEST_CASE("subtract_from_compact formula") {
  SemigroupElem u = SemigroupElem::single(StepFn::constant(1));
  SemigroupElem f = SemigroupElem::single(StepFn::indicator(Interval::right(rat(1, 2))));
  CHECK(subtract_from_compact(u, f) == SemigroupElem::single(StepFn::indicator(Interval::left(rat(1, 2)))));

  SemigroupElem g = SemigroupElem::single(StepFn::indicator(Interval::open(rat(1, 4), rat(1, 2))));
  SemigroupElem diff = subtract_from_compact(u, g);
  OpenSet expect = OpenSet::from_pieces({Interval::left(rat(1, 4)), Interval::right(rat(1, 2))});
  CHECK(diff == SemigroupElem::single(StepFn::indicator(expect)));

  SemigroupElem k3 = SemigroupElem::single(StepFn::constant(3));
  CHECK(subtract_from_compact(k3, SemigroupElem::zero(1)) == k3);
  CHECK_THROWS_AS(subtract_from_compact(f, f), PreconditionError);
}

TEST_CASE("subtract_from_compact is the pointwise usc difference, regularized") {
  Rng rng(424242);
  for (int t = 0; t < 100; ++t) {
    long k = testing::rand_int(rng, 1, 3);
    SemigroupElem u = SemigroupElem::single(StepFn::constant(k));
    StepFn f0 = testing::rand_stepfn(rng, 8, 2);
    while (!stepfn_leq(f0, StepFn::constant(k))) f0 = stepfn_drop_levels(f0, 1);
    SemigroupElem f = SemigroupElem::single(f0);
    SemigroupElem x = subtract_from_compact(u, f);
    CHECK(elem_leq(elem_add(x, f), u));
    // cross-check on the 1/100 grid: x = k - (usc envelope of f)
    for (long j = 0; j <= 100; ++j) {
      Rational p(BigInt(j), BigInt(100));
      long usc = 0;
      for (long lvl = 1; lvl <= f0.sup(); ++lvl)
        if (closure_contains(f0.level(lvl), p)) ++usc;
      CHECK(x.part(0).value_at(p) == k - usc);
    }
  }
}

TEST_CASE("subtract_from_compact is maximal among sampled candidates") {
  Rng rng(7);
  for (int t = 0; t < 40; ++t) {
    long k = testing::rand_int(rng, 1, 2);
    SemigroupElem u = SemigroupElem::single(StepFn::constant(k));
    StepFn f0 = testing::rand_stepfn(rng, 8, 2);
    while (!stepfn_leq(f0, StepFn::constant(k))) f0 = stepfn_drop_levels(f0, 1);
    SemigroupElem f = SemigroupElem::single(f0);
    SemigroupElem x = subtract_from_compact(u, f);
    for (int c = 0; c < 60; ++c) {
      StepFn cand = testing::rand_stepfn(rng, 8, 2);
      if (stepfn_leq(stepfn_add(cand, f0), StepFn::constant(k))) {
        CHECK(stepfn_leq(cand, x.part(0)));
      }
    }
  }
}

TEST_CASE("weak cancellation by a compact") {
  Rng rng(1009);
  int hits = 0;
  for (int t = 0; t < 500; ++t) {
    SemigroupElem p = SemigroupElem::compact({testing::rand_int(rng, 0, 2), testing::rand_int(rng, 0, 2)});
    SemigroupElem x = testing::rand_elem(rng, 2, 8, 2);
    SemigroupElem y = testing::rand_elem(rng, 2, 8, 2);
    if (elem_ll(elem_add(p, x), elem_add(p, y))) {
      ++hits;
      CHECK(elem_ll(x, y));
    }
  }
  CHECK(hits > 0);
}

TEST_CASE("common_compact_divisor") {
  auto none = common_compact_divisor({SemigroupElem::compact({1, 0}), SemigroupElem::compact({0, 1})});
  CHECK(!none.has_value());

  auto d = common_compact_divisor({SemigroupElem::compact({2, 4}), SemigroupElem::compact({1, 2})});
  REQUIRE(d.has_value());
  CHECK(d->e == SemigroupElem::compact({1, 2}));
  CHECK(d->ks == std::vector<long>{2, 1});

  auto z = common_compact_divisor({SemigroupElem::zero(1)});
  REQUIRE(z.has_value());
  CHECK(z->e.is_zero());
  CHECK(z->ks == std::vector<long>{1});

  auto mixed = common_compact_divisor({SemigroupElem::compact({3, 3}), SemigroupElem::zero(2)});
  REQUIRE(mixed.has_value());
  CHECK(mixed->e == SemigroupElem::compact({1, 1}));
  CHECK(mixed->ks == std::vector<long>{3, 0});

  CHECK(!common_compact_divisor({SemigroupElem::compact({2, 1}), SemigroupElem::compact({1, 2})}).has_value());
  CHECK_THROWS_AS(common_compact_divisor({SemigroupElem::single(StepFn::indicator(Interval::right(Rational(0))))}),
                  PreconditionError);

  // verify p_s = k_s * e on a random parallel family
  Rng rng(88);
  for (int t = 0; t < 50; ++t) {
    std::vector<long> e{testing::rand_int(rng, 0, 3), testing::rand_int(rng, 1, 3)};
    std::vector<SemigroupElem> ps;
    std::vector<long> mult;
    for (int i = 0; i < 3; ++i) {
      long k = testing::rand_int(rng, 0, 4);
      mult.push_back(k);
      ps.push_back(SemigroupElem::compact({e[0] * k, e[1] * k}));
    }
    auto got = common_compact_divisor(ps);
    REQUIRE(got.has_value());
    for (size_t i = 0; i < ps.size(); ++i) CHECK(ps[i] == elem_scale(got->ks[i], got->e));
  }
}
