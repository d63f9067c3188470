#include <doctest.h>

#include "cusemi/xn.hpp"
#include "generators.hpp"

using namespace cusemi;
using cusemi::testing::Rng;

namespace {
Omega NI = Omega::neg_inf();
Omega PI = Omega::pos_inf();
Omega F(int k) { return Omega::fin(k); }
XnElem elem(long n, std::vector<XnPair> ps) { return XnElem(n, std::move(ps)); }
Rational rat(long n, long d) { return Rational(BigInt(n), BigInt(d)); }
}  // namespace

TEST_CASE("omega_prec") {
  CHECK(omega_prec(NI, NI));
  CHECK(omega_prec(PI, PI));
  CHECK(!omega_prec(F(2), F(2)));
  CHECK(omega_prec(F(0), PI));
  CHECK(omega_prec(NI, F(0)));
  CHECK(!omega_prec(F(1), F(0)));
}

TEST_CASE("pair validation and the unit") {
  CHECK_THROWS_AS(elem(4, {{F(2), F(2)}}), PreconditionError);
  CHECK_THROWS_AS(elem(4, {{F(3), F(1)}}), PreconditionError);
  CHECK_THROWS_AS(elem(4, {{F(0), F(5)}}), PreconditionError);
  CHECK(elem(4, {}).is_unit());
}

TEST_CASE("prec_single chains") {
  auto c1 = prec_single(elem(4, {{F(1), F(2)}}), {F(0), F(3)});
  REQUIRE(c1.has_value());
  CHECK(c1->size() == 1);

  CHECK(!prec_single(elem(4, {{F(1), F(2)}, {F(2), F(3)}}), {F(0), F(4)}).has_value());

  auto c3 = prec_single(elem(4, {{NI, F(0)}, {F(1), PI}}), {NI, PI});
  REQUIRE(c3.has_value());
  CHECK(check_chain(elem(4, {{NI, F(0)}, {F(1), PI}}), {NI, PI}, *c3));

  CHECK(prec_single(elem(4, {}), {F(0), F(1)}).has_value());
  // two pairs with equal finite lows never chain
  CHECK(!prec_single(elem(4, {{F(1), F(2)}, {F(1), F(3)}}), {F(0), F(4)}).has_value());
}

TEST_CASE("prec with certificates") {
  XnElem w = elem(4, {{F(1), F(2)}, {F(2), F(3)}});
  XnElem v = elem(4, {{F(0), F(4)}});
  CHECK(!prec(w, v).has_value());

  XnElem w2 = elem(4, {{F(0), F(1)}, {F(2), F(3)}});
  XnElem v2 = elem(4, {{NI, F(4)}});
  auto cert = prec(w2, v2);
  REQUIRE(cert.has_value());
  CHECK(check_prec_cert(w2, v2, *cert));

  CHECK(prec(elem(4, {}), v).has_value());
  CHECK(prec(elem(4, {}), elem(4, {})).has_value());
  CHECK(!prec(w, elem(4, {})).has_value());
  CHECK_THROWS_AS(prec(w, elem(3, {})), PreconditionError);
}

TEST_CASE("prec agrees with the exhaustive oracle on X_2") {
  auto all = cusemi::testing::enumerate_xn(2, 2);
  for (const XnElem& w : all) {
    for (const XnElem& v : all) {
      auto got = prec(w, v);
      bool expect = prec_oracle(w, v);
      CHECK(got.has_value() == expect);
      if (got) CHECK(check_prec_cert(w, v, *got));
    }
  }
}

TEST_CASE("max element laws") {
  XnElem top = XnElem::max_multiple(4, 1);
  CHECK(prec(elem(4, {}) + top, top).has_value());
  CHECK(!prec(elem(4, {{F(0), F(1)}}) + top, top).has_value());
  CHECK(!prec_oracle(elem(4, {{NI, PI}, {F(0), F(1)}}), top));
}

TEST_CASE("feval maps pairs to grid indicators") {
  CHECK(feval(elem(4, {{NI, PI}})) == StepFn::constant(1));
  StepFn two_bumps = stepfn_add(StepFn::indicator(Interval::open(rat(1, 4), rat(1, 2))),
                                StepFn::indicator(Interval::open(rat(1, 2), rat(3, 4))));
  CHECK(feval(elem(4, {{F(1), F(2)}, {F(2), F(3)}})) == two_bumps);
  // finite upper endpoint n stays open at 1; +inf closes it
  CHECK(feval(elem(4, {{F(0), F(4)}})) == StepFn::indicator(Interval::open(rat(0, 1), rat(1, 1))));
  CHECK(feval(elem(4, {{F(0), PI}})) == StepFn::indicator(Interval::right(rat(0, 1))));
  CHECK(feval(elem(4, {{NI, F(1)}})) == StepFn::indicator(Interval::left(rat(1, 4))));
  // degenerate pairs have empty image
  CHECK(feval(elem(4, {{NI, F(0)}})).is_zero());
  CHECK(feval(elem(4, {{F(4), PI}})).is_zero());
}

TEST_CASE("canonical_qf inverts feval on L_n") {
  StepFn f = stepfn_add(StepFn::indicator(Interval::left(rat(1, 2))), StepFn::indicator(Interval::right(rat(1, 4))));
  XnElem q = canonical_qf(f, 4);
  CHECK(q == elem(4, {{NI, PI}, {F(1), F(2)}}));
  CHECK(feval(q) == f);
  CHECK(canonical_qf(StepFn(), 4).is_unit());
  CHECK(canonical_qf(StepFn::constant(2), 4) == XnElem::max_multiple(4, 2));
  CHECK_THROWS_AS(canonical_qf(StepFn::indicator(Interval::right(rat(1, 3))), 4), PreconditionError);

  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    XnElem w = cusemi::testing::rand_xn(rng, 4, 5);
    StepFn g = feval(w);
    CHECK(feval(canonical_qf(g, 4)) == g);
  }
}

TEST_CASE("simeq via evaluation") {
  CHECK(simeq(elem(4, {{F(0), F(2)}, {F(1), F(3)}}), elem(4, {{F(0), F(3)}, {F(1), F(2)}})));
  CHECK(!simeq(elem(4, {{F(1), F(2)}}), elem(4, {{F(2), F(3)}})));
  XnElem w = elem(4, {{F(0), F(2)}});
  CHECK(simeq(w, w));
}

TEST_CASE("exchange certificates") {
  // one crossing: (0,2)+(1,3) -> (0,3)+(1,2)
  XnElem w = elem(4, {{F(0), F(2)}, {F(1), F(3)}});
  auto steps = simeq_certificate(w);
  CHECK(steps.size() == 1);
  auto end = apply_exchange_steps(w, steps);
  REQUIRE(end.has_value());
  CHECK(*end == canonical_qf(feval(w), 4));
  CHECK(check_exchange_certificate(w, steps));

  // already canonical: no steps
  XnElem canon = canonical_qf(feval(w), 4);
  CHECK(simeq_certificate(canon).empty());

  // a bad step is rejected: disjoint non-crossing pattern
  ExchangeStep bad{{F(0), F(1)}, {F(2), F(3)}, {F(0), F(3)}, {F(2), F(1)}};
  CHECK(!apply_exchange_steps(elem(4, {{F(0), F(1)}, {F(2), F(3)}}), {bad}).has_value());

  CHECK(check_exchange_certificate(w, {}) == true);  // empty chain, w = w

  CHECK_THROWS_AS(simeq_certificate(elem(4, {{NI, F(0)}})), PreconditionError);

  Rng rng(99);
  for (int t = 0; t < 500; ++t) {
    XnElem q = cusemi::testing::rand_xn(rng, 4, 5, /*nondegenerate=*/true);
    auto st = simeq_certificate(q);
    auto fin = apply_exchange_steps(q, st);
    REQUIRE(fin.has_value());
    CHECK(*fin == canonical_qf(feval(q), 4));
    CHECK(check_exchange_certificate(q, st));
  }
}

TEST_CASE("prec respects addition and maps to way-below through feval") {
  Rng rng(123);
  int related = 0;
  for (int t = 0; t < 800; ++t) {
    XnElem w = cusemi::testing::rand_xn(rng, 3, 3);
    XnElem v = cusemi::testing::rand_xn(rng, 3, 3);
    auto c = prec(w, v);
    if (!c) continue;
    ++related;
    CHECK(stepfn_ll(feval(w), feval(v)));
    XnElem w2 = cusemi::testing::rand_xn(rng, 3, 2);
    XnElem v2 = cusemi::testing::rand_xn(rng, 3, 2);
    if (prec(w2, v2)) {
      CHECK(prec(w + w2, v + v2).has_value());
    }
  }
  CHECK(related > 20);
}

TEST_CASE("L0 comparison bridge") {
  // f,g in L_n^0: f << g iff q_f prec q_g
  Rng rng(31415);
  int checked = 0;
  for (int t = 0; t < 2000 && checked < 200; ++t) {
    long n = cusemi::testing::rand_int(rng, 2, 6);
    StepFn f = cusemi::testing::rand_stepfn(rng, n, 2);
    StepFn g = cusemi::testing::rand_stepfn(rng, n, 2);
    if (!in_Ln0(f, n) || !in_Ln0(g, n)) continue;
    ++checked;
    CHECK(stepfn_ll(f, g) == prec(canonical_qf(f, n), canonical_qf(g, n)).has_value());
  }
  CHECK(checked == 200);
}
