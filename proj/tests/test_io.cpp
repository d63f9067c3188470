#include <doctest.h>

#include "cusemi/io.hpp"
#include "fixtures.hpp"

using namespace cusemi;
using cusemi::testing::Rng;
namespace io = cusemi::io;

namespace {
Rational rat(long n, long d) { return Rational(BigInt(n), BigInt(d)); }
}  // namespace

TEST_CASE("interval and step function json round-trip") {
  io::json j = io::to_json(Interval::open(rat(1, 4), rat(1, 2)));
  CHECK(j["kind"] == "open");
  CHECK(j["a"] == "1/4");
  CHECK(io::interval_from_json(j) == Interval::open(rat(1, 4), rat(1, 2)));

  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    StepFn f = cusemi::testing::rand_stepfn(rng, 12);
    CHECK(io::stepfn_from_json(io::to_json(f)) == f);
  }
}

TEST_CASE("element and xn round-trips") {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    SemigroupElem x = cusemi::testing::rand_elem(rng, cusemi::testing::rand_int(rng, 1, 3), 8);
    CHECK(io::elem_from_json(io::to_json(x)) == x);
    XnElem w = cusemi::testing::rand_xn(rng, 5, 4);
    CHECK(io::xn_from_json(io::to_json(w), 0) == w);
  }
  // the documented wire shape
  io::json j = io::json::parse(R"({"n":4,"pairs":[["-inf","2"],["1","3"]]})");
  XnElem w = io::xn_from_json(j, 4);
  CHECK(w.size() == 2);
  CHECK(io::to_json(w)["pairs"][0][0] == "-inf");
}

TEST_CASE("morphism round-trip preserves validation") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    GridMorphism phi = cusemi::testing::rand_cert(rng, 8, 3);
    GridMorphism back = io::gridmorphism_from_json(io::to_json(phi));
    CHECK(back == phi);
    CHECK(validate(back).ok);
  }
  MultiGridMorphism m{{cusemi::testing::identity_cert(4), cusemi::testing::identity_cert(4)}};
  CHECK(io::multi_from_json(io::to_json(m)) == m);

  GridBasicElement x = GridBasicElement::zero(3, 2);
  x.unit_counts[1] = 2;
  x.counts[0][1] = 1;
  GridBasicElement x2 = io::basic_element_from_json(io::to_json(x));
  CHECK(x2.l == x.l);
  CHECK(x2.unit_counts == x.unit_counts);
  CHECK(x2.counts == x.counts);
}

TEST_CASE("witness and problem round-trips") {
  ChainableWitness canon = ChainableWitness::canonical(3);
  io::json cj = io::to_json(canon);
  ChainableWitness canon2 = io::witness_from_json(cj);
  CHECK(canon2.n() == 3);
  CHECK(canon2.value({Omega::fin(0), Omega::pos_inf()}) == canon.value({Omega::fin(0), Omega::pos_inf()}));

  // explicit tables survive
  std::map<XnPair, SemigroupElem> table;
  for (const XnPair& p : canon.generator_pairs()) table.emplace(p, canon.value(p));
  std::map<long, std::map<XnPair, SemigroupElem>> refined;
  for (long m = 2; m <= 4; ++m) {
    ChainableWitness rw = canon.refined(m);
    std::map<XnPair, SemigroupElem> rt;
    for (const XnPair& p : rw.generator_pairs()) rt.emplace(p, rw.value(p));
    refined.emplace(m, std::move(rt));
  }
  ChainableWitness expl = ChainableWitness::explicit_table(3, canon.e(), table, refined);
  ChainableWitness expl2 = io::witness_from_json(io::to_json(expl));
  for (const XnPair& p : expl.generator_pairs()) CHECK(expl2.value(p) == expl.value(p));

  // problem + witness
  I0Problem prob;
  prob.l = 1;
  prob.z = {{SemigroupElem::single(StepFn::indicator(Interval::right(rat(1, 2))))}, {SemigroupElem::zero(1)}};
  prob.p = {SemigroupElem::single(StepFn::constant(1))};
  prob.I = {{0, 0}};
  prob.J = {{-1, 0}};
  I0Problem prob2 = io::problem_from_json(io::to_json(prob));
  CHECK(prob2.l == prob.l);
  CHECK(prob2.I == prob.I);
  CHECK(prob2.z[0][0] == prob.z[0][0]);

  I0Witness wit = construct_I0_witness_lsc(prob);
  I0Witness wit2 = io::i0_witness_from_json(io::to_json(wit));
  CHECK(verify_I0_witness(prob, wit2).ok);

  IWitness iw = construct_I_witness(prob);
  IWitness iw2 = io::i_witness_from_json(io::to_json(iw));
  CHECK(verify_I_witness(prob, iw2).ok);
}

TEST_CASE("exchange certificates round-trip") {
  XnElem w(4, {{Omega::fin(0), Omega::fin(2)}, {Omega::fin(1), Omega::fin(3)}});
  auto steps = simeq_certificate(w);
  auto steps2 = io::steps_from_json(io::to_json(steps));
  CHECK(check_exchange_certificate(w, steps2));
}

TEST_CASE("compact text forms") {
  XnElem w = io::parse_xn_text(4, "(1,2)+(2,3)");
  CHECK(w.size() == 2);
  CHECK(io::parse_xn_text(4, "(0,0)").is_unit());
  CHECK(io::parse_xn_text(4, "(-inf, inf)+(0,0)").size() == 1);
  CHECK_THROWS_AS(io::parse_xn_text(4, "(2,1)"), PreconditionError);
  CHECK_THROWS_AS(io::parse_xn_text(4, "(1 2)"), ParseError);

  auto vecs = io::parse_compact_vectors("[(1,0),(0,1)]");
  REQUIRE(vecs.size() == 2);
  CHECK(vecs[0] == SemigroupElem::compact({1, 0}));
  CHECK(vecs[1] == SemigroupElem::compact({0, 1}));

  CHECK(io::parse_stepfn_text("0").is_zero());
  CHECK(io::parse_stepfn_text("2") == StepFn::constant(2));
  CHECK(io::parse_stepfn_text("chi(1/4,1/2)") == StepFn::indicator(Interval::open(rat(1, 4), rat(1, 2))));
  CHECK(io::parse_stepfn_text("chi(1/4,1]") == StepFn::indicator(Interval::right(rat(1, 4))));
  CHECK(io::parse_stepfn_text("chi[0,1/2)") == StepFn::indicator(Interval::left(rat(1, 2))));
  CHECK(io::parse_stepfn_text("chi[0,1/2) + chi(1/4,1]") ==
        stepfn_add(StepFn::indicator(Interval::left(rat(1, 2))), StepFn::indicator(Interval::right(rat(1, 4)))));
  CHECK(io::parse_stepfn_text("2*chi(0,1)") == stepfn_scale(2, StepFn::indicator(Interval::open(rat(0, 1), rat(1, 1)))));
  // out-of-range endpoints surface as precondition errors from Interval
  CHECK_THROWS_AS(io::parse_stepfn_text("chi(1/2,2)"), PreconditionError);
  CHECK_THROWS_AS(io::parse_stepfn_text("chi+"), ParseError);
}
