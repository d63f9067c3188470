#include "cusemi/io.hpp"

#include <algorithm>
#include <cctype>

namespace cusemi::io {

namespace {

ParseError bad(const std::string& what, const json& j) {
  return ParseError(what + " (got: " + j.dump() + ")");
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "' in " + j.dump());
  return *it;
}

}  // namespace

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<int64_t>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw bad("rational must be a \"p/q\" string", j);
}

json to_json(const Interval& iv) {
  json j;
  switch (iv.kind()) {
    case IntervalKind::kFull:
      j["kind"] = "full";
      break;
    case IntervalKind::kLeft:
      j["kind"] = "left";
      j["b"] = to_json(iv.hi().value);
      break;
    case IntervalKind::kRight:
      j["kind"] = "right";
      j["a"] = to_json(iv.lo().value);
      break;
    case IntervalKind::kOpen:
      j["kind"] = "open";
      j["a"] = to_json(iv.lo().value);
      j["b"] = to_json(iv.hi().value);
      break;
  }
  return j;
}

Interval interval_from_json(const json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "full") return Interval::full();
  if (kind == "left") return Interval::left(rational_from_json(field(j, "b")));
  if (kind == "right") return Interval::right(rational_from_json(field(j, "a")));
  if (kind == "open")
    return Interval::open(rational_from_json(field(j, "a")), rational_from_json(field(j, "b")));
  throw bad("interval kind must be open|left|right|full", j);
}

json to_json(const OpenSet& u) {
  json j = json::array();
  for (const Interval& c : u.components()) j.push_back(to_json(c));
  return j;
}

OpenSet openset_from_json(const json& j) {
  if (!j.is_array()) throw bad("open set must be an array of intervals", j);
  std::vector<Interval> pieces;
  for (const json& c : j) pieces.push_back(interval_from_json(c));
  return OpenSet::from_pieces(std::move(pieces));
}

json to_json(const StepFn& f) {
  json levels = json::array();
  for (const OpenSet& l : f.levels()) levels.push_back(to_json(l));
  return json{{"levels", levels}};
}

StepFn stepfn_from_json(const json& j) {
  std::vector<OpenSet> levels;
  for (const json& l : field(j, "levels")) levels.push_back(openset_from_json(l));
  return StepFn::from_levels(std::move(levels));
}

json to_json(const SemigroupElem& x) {
  json parts = json::array();
  for (const StepFn& p : x.parts()) parts.push_back(to_json(p));
  return json{{"parts", parts}};
}

SemigroupElem elem_from_json(const json& j) {
  std::vector<StepFn> parts;
  for (const json& p : field(j, "parts")) parts.push_back(stepfn_from_json(p));
  if (parts.empty()) throw bad("element needs at least one part", j);
  return SemigroupElem(std::move(parts));
}

namespace {

json omega_to_json(Omega a) { return a.str(); }

Omega omega_from_json(const json& j) {
  std::string s = j.is_string() ? j.get<std::string>() : j.dump();
  if (s == "-inf") return Omega::neg_inf();
  if (s == "inf" || s == "+inf") return Omega::pos_inf();
  try {
    return Omega::fin(static_cast<int32_t>(std::stol(s)));
  } catch (const std::exception&) {
    throw bad("omega value must be -inf, inf or an integer", j);
  }
}

}  // namespace

json to_json(const XnPair& p) { return json::array({omega_to_json(p.lo), omega_to_json(p.hi)}); }

XnPair pair_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw bad("pair must be a two-element array", j);
  return XnPair{omega_from_json(j[0]), omega_from_json(j[1])};
}

json to_json(const XnElem& w) {
  json pairs = json::array();
  for (const XnPair& p : w.pairs()) pairs.push_back(to_json(p));
  return json{{"n", w.n()}, {"pairs", pairs}};
}

XnElem xn_from_json(const json& j, long n) {
  long use_n = n;
  const json* pairs = &j;
  if (j.is_object()) {
    use_n = field(j, "n").get<long>();
    if (n > 0 && use_n != n) throw bad("X_n mismatch against the requested n", j);
    pairs = &field(j, "pairs");
  }
  if (use_n <= 0) throw ParseError("X_n element needs a positive n");
  XnElem w(use_n);
  for (const json& p : *pairs) w.add(pair_from_json(p));
  return w;
}

json to_json(const PrecCert& cert) {
  json groups = json::array();
  for (const auto& g : cert.groups) {
    json chain = json::array();
    for (const XnPair& p : g) chain.push_back(to_json(p));
    groups.push_back(chain);
  }
  return json{{"groups", groups}};
}

json to_json(const std::vector<ExchangeStep>& steps) {
  json out = json::array();
  for (const ExchangeStep& s : steps) {
    out.push_back(json{{"take", json::array({to_json(s.take0), to_json(s.take1)})},
                       {"give", json::array({to_json(s.give0), to_json(s.give1)})}});
  }
  return out;
}

std::vector<ExchangeStep> steps_from_json(const json& j) {
  std::vector<ExchangeStep> steps;
  for (const json& s : j) {
    const json& take = field(s, "take");
    const json& give = field(s, "give");
    if (take.size() != 2 || give.size() != 2) throw bad("step needs two taken and two given pairs", s);
    steps.push_back(ExchangeStep{pair_from_json(take[0]), pair_from_json(take[1]), pair_from_json(give[0]),
                                 pair_from_json(give[1])});
  }
  return steps;
}

json to_json(const GridMorphism& phi) {
  json v = json::array(), w = json::array();
  for (long i = 0; i <= phi.resolution(); ++i) {
    v.push_back(to_json(phi.v_at(i)));
    w.push_back(to_json(phi.w_at(i)));
  }
  return json{{"N", phi.resolution()}, {"slack", phi.slack()}, {"unit", to_json(phi.unit())}, {"v", v}, {"w", w}};
}

GridMorphism gridmorphism_from_json(const json& j) {
  long n = field(j, "N").get<long>();
  int slack = field(j, "slack").get<int>();
  SemigroupElem unit = elem_from_json(field(j, "unit"));
  long arity = unit.arity();
  std::vector<SemigroupElem> v, w;
  for (const json& e : field(j, "v")) v.push_back(elem_from_json(e));
  for (const json& e : field(j, "w")) w.push_back(elem_from_json(e));
  return GridMorphism(n, SumSignature{arity}, std::move(v), std::move(w), std::move(unit), slack);
}

json to_json(const MultiGridMorphism& phi) {
  json sources = json::array();
  for (const GridMorphism& s : phi.sources) sources.push_back(to_json(s));
  return json{{"sources", sources}};
}

MultiGridMorphism multi_from_json(const json& j) {
  MultiGridMorphism phi;
  if (j.is_object() && j.contains("sources")) {
    for (const json& s : field(j, "sources")) phi.sources.push_back(gridmorphism_from_json(s));
  } else {
    phi.sources.push_back(gridmorphism_from_json(j));
  }
  if (phi.sources.empty()) throw bad("morphism needs at least one source", j);
  return phi;
}

json to_json(const GridBasicElement& x) {
  json counts = json::array();
  for (const auto& row : x.counts) counts.push_back(row);
  return json{{"l", x.l}, {"units", x.unit_counts}, {"counts", counts}};
}

GridBasicElement basic_element_from_json(const json& j) {
  GridBasicElement x;
  x.l = field(j, "l").get<long>();
  x.unit_counts = field(j, "units").get<std::vector<long>>();
  for (const json& row : field(j, "counts")) x.counts.push_back(row.get<std::vector<long>>());
  if (x.counts.size() != x.unit_counts.size()) throw bad("units/counts summand mismatch", j);
  for (const auto& row : x.counts)
    if (row.size() != static_cast<size_t>(x.l)) throw bad("counts rows must have l entries", j);
  return x;
}

json to_json(const ChainableWitness& w) {
  json j{{"n", w.n()}, {"m_check", w.m_check()}, {"e", to_json(w.e())}};
  switch (w.rule()) {
    case RefinementRule::kScaledCanonical: {
      j["rule"] = "scaled_canonical";
      // the embedding slot is recoverable from e
      auto vals = compact_values(w.e());
      long comp = 0;
      for (size_t s = 0; s < vals.size(); ++s)
        if (vals[s] != 0) comp = static_cast<long>(s);
      j["component"] = comp;
      j["arity"] = w.ambient_arity();
      break;
    }
    case RefinementRule::kConstantMultiples:
      j["rule"] = "constant_multiples";
      break;
    case RefinementRule::kExplicit: {
      j["rule"] = "explicit";
      json table = json::array();
      for (const XnPair& p : w.generator_pairs())
        table.push_back(json{{"pair", to_json(p)}, {"value", to_json(w.value(p))}});
      j["table"] = table;
      json refined = json::object();
      for (long m = 2; m <= w.m_check(); ++m) {
        ChainableWitness rw = w.refined(m);
        json rt = json::array();
        for (const XnPair& p : rw.generator_pairs())
          rt.push_back(json{{"pair", to_json(p)}, {"value", to_json(rw.value(p))}});
        refined[std::to_string(m)] = rt;
      }
      j["refined"] = refined;
      break;
    }
  }
  return j;
}

ChainableWitness witness_from_json(const json& j) {
  long n = field(j, "n").get<long>();
  long m_check = j.value("m_check", 4L);
  std::string rule = field(j, "rule").get<std::string>();
  if (rule == "scaled_canonical")
    return ChainableWitness::canonical(n, j.value("arity", 1L), j.value("component", 0L), m_check);
  if (rule == "constant_multiples")
    return ChainableWitness::constant_multiples(n, elem_from_json(field(j, "e")), m_check);
  if (rule != "explicit") throw bad("rule must be scaled_canonical|constant_multiples|explicit", j);
  auto read_table = [](const json& t) {
    std::map<XnPair, SemigroupElem> table;
    for (const json& row : t) table.emplace(pair_from_json(field(row, "pair")), elem_from_json(field(row, "value")));
    return table;
  };
  std::map<long, std::map<XnPair, SemigroupElem>> refined;
  if (j.contains("refined"))
    for (auto it = j["refined"].begin(); it != j["refined"].end(); ++it)
      refined.emplace(std::stol(it.key()), read_table(it.value()));
  return ChainableWitness::explicit_table(n, elem_from_json(field(j, "e")), read_table(field(j, "table")),
                                          std::move(refined), m_check);
}

namespace {

json termref_to_json(const TermRef& r) {
  return json::array({r.i < 0 ? json("-inf") : json(r.i), json(r.s)});
}

TermRef termref_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw bad("multiset entry must be [row, summand]", j);
  TermRef r;
  r.i = j[0].is_string() ? -1 : j[0].get<long>();
  r.s = j[1].get<long>();
  return r;
}

}  // namespace

json to_json(const I0Problem& prob) {
  json z = json::array();
  for (const auto& row : prob.z) {
    json jr = json::array();
    for (const SemigroupElem& e : row) jr.push_back(to_json(e));
    z.push_back(jr);
  }
  json p = json::array(), I = json::array(), J = json::array();
  for (const SemigroupElem& e : prob.p) p.push_back(to_json(e));
  for (const TermRef& r : prob.I) I.push_back(termref_to_json(r));
  for (const TermRef& r : prob.J) J.push_back(termref_to_json(r));
  return json{{"l", prob.l}, {"z", z}, {"p", p}, {"I", I}, {"J", J}};
}

I0Problem problem_from_json(const json& j) {
  I0Problem prob;
  prob.l = field(j, "l").get<long>();
  for (const json& row : field(j, "z")) {
    std::vector<SemigroupElem> r;
    for (const json& e : row) r.push_back(elem_from_json(e));
    prob.z.push_back(std::move(r));
  }
  for (const json& e : field(j, "p")) prob.p.push_back(elem_from_json(e));
  for (const json& r : field(j, "I")) prob.I.push_back(termref_from_json(r));
  for (const json& r : field(j, "J")) prob.J.push_back(termref_from_json(r));
  return prob;
}

namespace {

json aseqs_to_json(const std::vector<std::vector<XnElem>>& seqs) {
  json out = json::array();
  for (const auto& seq : seqs) {
    json row = json::array();
    for (const XnElem& a : seq) row.push_back(to_json(a));
    out.push_back(row);
  }
  return out;
}

std::vector<std::vector<XnElem>> aseqs_from_json(const json& j, long n) {
  std::vector<std::vector<XnElem>> out;
  for (const json& row : j) {
    std::vector<XnElem> seq;
    for (const json& a : row) seq.push_back(xn_from_json(a, n));
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace

json to_json(const I0Witness& wit) {
  return json{{"chain", to_json(wit.chain)},
              {"ks", wit.ks},
              {"a_seqs", aseqs_to_json(wit.a_seqs)},
              {"a", to_json(wit.a)},
              {"b", to_json(wit.b)}};
}

I0Witness i0_witness_from_json(const json& j) {
  ChainableWitness chain = witness_from_json(field(j, "chain"));
  long n = chain.n();
  return I0Witness{std::move(chain), field(j, "ks").get<std::vector<long>>(),
                   aseqs_from_json(field(j, "a_seqs"), n), xn_from_json(field(j, "a"), n),
                   xn_from_json(field(j, "b"), n)};
}

json to_json(const IWitness& wit) {
  json parts = json::array();
  for (const IWitnessPart& part : wit.parts) {
    parts.push_back(json{{"chain", to_json(part.chain)},
                         {"ms", part.ms},
                         {"a_seqs", aseqs_to_json(part.a_seqs)},
                         {"a", to_json(part.a)},
                         {"b", to_json(part.b)}});
  }
  return json{{"parts", parts}};
}

IWitness i_witness_from_json(const json& j) {
  IWitness wit;
  for (const json& pj : field(j, "parts")) {
    ChainableWitness chain = witness_from_json(field(pj, "chain"));
    long n = chain.n();
    wit.parts.push_back(IWitnessPart{std::move(chain), field(pj, "ms").get<std::vector<long>>(),
                                     aseqs_from_json(field(pj, "a_seqs"), n), xn_from_json(field(pj, "a"), n),
                                     xn_from_json(field(pj, "b"), n)});
  }
  return wit;
}

// --- compact text forms ----------------------------------------------------

namespace {

struct Scanner {
  std::string s;
  size_t pos = 0;

  explicit Scanner(std::string text) : s(std::move(text)) {}
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_word(const char* w) {
    skip_ws();
    size_t len = std::string(w).size();
    if (s.compare(pos, len, w) == 0) {
      pos += len;
      return true;
    }
    return false;
  }
  bool done() {
    skip_ws();
    return pos == s.size();
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(pos) + " in '" + s + "'");
  }

  std::string token_until(const std::string& stop) {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && stop.find(s[pos]) == std::string::npos) ++pos;
    std::string t = s.substr(start, pos - start);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    if (t.empty()) fail("expected a value");
    return t;
  }
};

Omega parse_omega(const std::string& t) {
  if (t == "-inf") return Omega::neg_inf();
  if (t == "inf" || t == "+inf") return Omega::pos_inf();
  try {
    return Omega::fin(static_cast<int32_t>(std::stol(t)));
  } catch (const std::exception&) {
    throw ParseError("expected -inf, inf or an integer, got '" + t + "'");
  }
}

Rational parse_rat_token(Scanner& sc, const std::string& stop) { return Rational::parse(sc.token_until(stop)); }

}  // namespace

XnElem parse_xn_text(long n, const std::string& text) {
  XnElem w(n);
  Scanner sc(text);
  do {
    if (!sc.eat('(')) sc.fail("expected '('");
    Omega lo = parse_omega(sc.token_until(","));
    if (!sc.eat(',')) sc.fail("expected ','");
    Omega hi = parse_omega(sc.token_until(")"));
    if (!sc.eat(')')) sc.fail("expected ')'");
    if (lo == Omega::fin(0) && hi == Omega::fin(0)) continue;  // the unit, normalized away
    w.add({lo, hi});
  } while (sc.eat('+'));
  if (!sc.done()) sc.fail("trailing input");
  return w;
}

std::vector<SemigroupElem> parse_compact_vectors(const std::string& text) {
  Scanner sc(text);
  if (!sc.eat('[')) sc.fail("expected '['");
  std::vector<SemigroupElem> out;
  if (!sc.eat(']')) {
    do {
      if (!sc.eat('(')) sc.fail("expected '('");
      std::vector<long> vals;
      do {
        std::string t = sc.token_until(",)");
        try {
          vals.push_back(std::stol(t));
        } catch (const std::exception&) {
          sc.fail("expected an integer");
        }
      } while (sc.eat(','));
      if (!sc.eat(')')) sc.fail("expected ')'");
      out.push_back(SemigroupElem::compact(vals));
    } while (sc.eat(','));
    if (!sc.eat(']')) sc.fail("expected ']'");
  }
  if (!sc.done()) sc.fail("trailing input");
  if (out.empty()) throw ParseError("empty vector list");
  return out;
}

namespace {

StepFn parse_stepfn_atom(Scanner& sc) {
  sc.skip_ws();
  if (sc.eat_word("chi")) {
    sc.skip_ws();
    if (sc.eat('[')) {
      // chi[0,b)
      Rational zero = parse_rat_token(sc, ",");
      if (!zero.is_zero()) sc.fail("left-closed intervals start at 0");
      if (!sc.eat(',')) sc.fail("expected ','");
      Rational b = parse_rat_token(sc, ")]");
      if (sc.eat(')')) return StepFn::indicator(Interval::left(b));
      if (sc.eat(']')) {
        if (b == Rational(1)) return StepFn::constant(1);
        sc.fail("closed right end must be 1");
      }
      sc.fail("expected ')' or ']'");
    }
    if (!sc.eat('(')) sc.fail("expected '(' or '[' after chi");
    Rational a = parse_rat_token(sc, ",");
    if (!sc.eat(',')) sc.fail("expected ','");
    Rational b = parse_rat_token(sc, ")]");
    if (sc.eat(']')) {
      if (b == Rational(1)) return StepFn::indicator(Interval::right(a));
      sc.fail("closed right end must be 1");
    }
    if (sc.eat(')')) return StepFn::indicator(Interval::open(a, b));
    sc.fail("expected ')' or ']'");
  }
  // a bare integer constant
  std::string t = sc.token_until("+*");
  try {
    long k = std::stol(t);
    if (k < 0) sc.fail("constants must be nonnegative");
    return StepFn::constant(k);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    sc.fail("expected chi(...), chi[...) or an integer");
  }
}

}  // namespace

StepFn parse_stepfn_text(const std::string& text) {
  Scanner sc(text);
  StepFn acc;
  do {
    sc.skip_ws();
    // optional k* multiplier
    size_t save = sc.pos;
    long mult = 1;
    bool have_mult = false;
    {
      size_t p = sc.pos;
      while (p < sc.s.size() && std::isdigit(static_cast<unsigned char>(sc.s[p]))) ++p;
      if (p > sc.pos && p < sc.s.size() && sc.s[p] == '*') {
        mult = std::stol(sc.s.substr(sc.pos, p - sc.pos));
        sc.pos = p + 1;
        have_mult = true;
      }
    }
    if (!have_mult) sc.pos = save;
    StepFn atom = parse_stepfn_atom(sc);
    acc = stepfn_add(acc, stepfn_scale(mult, atom));
  } while (sc.eat('+'));
  if (!sc.done()) sc.fail("trailing input");
  return acc;
}

}  // namespace cusemi::io
