// Batch CLI over the step-function semigroup library: every verb reads
// values inline or from @file arguments, prints one document (JSON mode)
// or a short human summary, and exits 0 when the queried relation holds
// or the verification passes, 1 when it is refuted, 2 on input errors.

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "cusemi/io.hpp"

using namespace cusemi;
namespace io = cusemi::io;
using io::json;

namespace {

struct Options {
  std::string format = "text";
  int jobs = 1;
};

Options g_opts;

bool json_mode() { return g_opts.format == "json"; }

std::string read_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw ParseError("cannot open file '" + arg.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

json parse_json_arg(const std::string& arg) {
  std::string text = read_arg(arg);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

// Step functions and elements share one reader: JSON objects with
// "parts" are elements, others are step functions, plain text uses the
// small chi-term syntax.
struct Value {
  bool is_elem = false;
  StepFn f;
  SemigroupElem x;

  SemigroupElem as_elem() const { return is_elem ? x : SemigroupElem::single(f); }
};

Value read_value(const std::string& arg) {
  std::string text = read_arg(arg);
  Value v;
  if (looks_like_json(text)) {
    json j = json::parse(text);
    if (j.contains("parts")) {
      v.is_elem = true;
      v.x = io::elem_from_json(j);
    } else {
      v.f = io::stepfn_from_json(j);
    }
  } else {
    v.f = io::parse_stepfn_text(text);
  }
  return v;
}

XnElem read_xn(const std::string& arg, long n) {
  std::string text = read_arg(arg);
  if (looks_like_json(text)) return io::xn_from_json(json::parse(text), n);
  if (n <= 0) throw ParseError("textual X_n elements need --n");
  return io::parse_xn_text(n, text);
}

void emit(const json& doc, const std::string& text_summary) {
  if (json_mode())
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text_summary << "\n";
}

int report_outcome(bool ok, const json& doc, const std::string& text_summary) {
  emit(doc, text_summary);
  return ok ? 0 : 1;
}

std::string stepfn_text(const StepFn& f) { return f.str(); }

// ---------------------------------------------------------------------------

int cmd_relate(const std::string& rel, const std::string& a, const std::string& b) {
  Value va = read_value(a), vb = read_value(b);
  SemigroupElem x = va.as_elem(), y = vb.as_elem();
  bool leq = elem_leq(x, y), ll = elem_ll(x, y);
  bool asked = rel == "leq" ? leq : ll;
  return report_outcome(asked, json{{"leq", leq}, {"ll", ll}},
                        std::string("leq: ") + (leq ? "yes" : "no") + ", ll: " + (ll ? "yes" : "no"));
}

int cmd_add(const std::string& a, const std::string& b) {
  Value va = read_value(a), vb = read_value(b);
  if (va.is_elem || vb.is_elem) {
    SemigroupElem sum = elem_add(va.as_elem(), vb.as_elem());
    return report_outcome(true, io::to_json(sum), sum.str());
  }
  StepFn sum = stepfn_add(va.f, vb.f);
  return report_outcome(true, io::to_json(sum), stepfn_text(sum));
}

int cmd_retract(const std::string& a, const std::string& eps_s, bool grow) {
  Value v = read_value(a);
  Rational eps = Rational::parse(read_arg(eps_s));
  auto apply = [&](const StepFn& f) {
    if (f.is_zero()) return f;
    return grow ? stepfn_neighborhood(f, eps) : stepfn_retract(f, eps);
  };
  if (v.is_elem) {
    std::vector<StepFn> parts;
    for (const StepFn& p : v.x.parts()) parts.push_back(apply(p));
    SemigroupElem out{std::move(parts)};
    return report_outcome(true, io::to_json(out), out.str());
  }
  StepFn out = apply(v.f);
  return report_outcome(true, io::to_json(out), stepfn_text(out));
}

int cmd_qf(long n, const std::string& a) {
  StepFn f = read_value(a).f;
  XnElem q = canonical_qf(f, n);
  return report_outcome(true, io::to_json(q), q.str());
}

int cmd_feval(long n, const std::string& a) {
  XnElem w = read_xn(a, n);
  StepFn f = feval(w);
  return report_outcome(true, io::to_json(f), stepfn_text(f));
}

int cmd_prec(long n, const std::string& ws, const std::string& vs, bool oracle) {
  XnElem w = read_xn(ws, n), v = read_xn(vs, n);
  if (oracle) {
    bool ok = prec_oracle(w, v);
    return report_outcome(ok, json{{"holds", ok}}, ok ? "holds" : "does not hold");
  }
  auto cert = prec(w, v);
  if (!cert) return report_outcome(false, json{{"holds", false}}, "no partition");
  json doc = io::to_json(*cert);
  doc["holds"] = true;
  return report_outcome(true, doc, "holds; partition certificate with " + std::to_string(cert->groups.size()) +
                                      " group(s)");
}

int cmd_simeq(long n, const std::string& ws, const std::string& vs) {
  XnElem w = read_xn(ws, n), v = read_xn(vs, n);
  if (!simeq(w, v)) return report_outcome(false, json{{"holds", false}}, "not exchange-equivalent");
  // certificate: rewrite w to the canonical form, then undo v's rewrite
  auto down = simeq_certificate(w);
  auto up = simeq_certificate(v);
  std::vector<ExchangeStep> steps = down;
  for (auto it = up.rbegin(); it != up.rend(); ++it)
    steps.push_back(ExchangeStep{it->give0, it->give1, it->take0, it->take1});
  if (!check_exchange_certificate(w, steps)) throw std::logic_error("generated certificate failed its check");
  json doc{{"holds", true}, {"steps", io::to_json(steps)}};
  return report_outcome(true, doc, "exchange-equivalent; " + std::to_string(steps.size()) + " step(s)");
}

int cmd_check_cert(long n, const std::string& ws, const std::string& steps_s, const std::string& to) {
  XnElem w = read_xn(ws, n);
  auto steps = io::steps_from_json(parse_json_arg(steps_s));
  auto end = apply_exchange_steps(w, steps);
  bool ok = end.has_value() && feval(*end) == feval(w);
  if (ok && !to.empty()) ok = *end == read_xn(to, w.n());
  return report_outcome(ok, json{{"valid", ok}}, ok ? "certificate checks out" : "certificate invalid");
}

int cmd_lift(const std::string& in) {
  json j = parse_json_arg(in);
  std::vector<SemigroupElem> chain;
  for (const json& e : j.at("chain")) chain.push_back(io::elem_from_json(e));
  SemigroupElem p = io::elem_from_json(j.at("p"));
  GridMorphism phi = lift_from_chain(chain, p);
  return report_outcome(true, io::to_json(phi),
                        "lifted certificate at resolution " + std::to_string(phi.resolution()));
}

template <typename Fn>
int run_verifications(const std::vector<std::string>& files, Fn&& verify_one) {
  std::vector<std::future<std::pair<std::string, ValidationReport>>> futs;
  auto task = [&verify_one](std::string file) {
    return std::make_pair(file, verify_one(file));
  };
  if (g_opts.jobs > 1 && files.size() > 1) {
    for (const auto& f : files) futs.push_back(std::async(std::launch::async, task, f));
  } else {
    for (const auto& f : files) {
      std::promise<std::pair<std::string, ValidationReport>> pr;
      pr.set_value(task(f));
      futs.push_back(pr.get_future());
    }
  }
  bool all_ok = true;
  json results = json::array();
  std::string text;
  for (auto& fut : futs) {
    auto [file, rep] = fut.get();
    all_ok = all_ok && rep.ok;
    results.push_back(json{{"input", file}, {"ok", rep.ok}, {"report", rep.failures}});
    if (!text.empty()) text += "\n";
    text += file + ": " + (rep.ok ? "pass" : "FAIL: " + rep.str());
  }
  return report_outcome(all_ok, results, text);
}

int cmd_validate_morphism(const std::vector<std::string>& files) {
  return run_verifications(files, [](const std::string& f) {
    return validate(io::multi_from_json(parse_json_arg(f)));
  });
}

int cmd_dist(const std::string& a, const std::string& b) {
  auto phi = io::multi_from_json(parse_json_arg(a));
  auto psi = io::multi_from_json(parse_json_arg(b));
  DistanceBracket br = distance_bracket(phi, psi);
  json doc{{"lo", io::to_json(br.lo)}, {"hi", io::to_json(br.hi)}, {"cells", br.cells}, {"grids", br.grids}};
  return report_outcome(true, doc, "distance in [" + br.lo.str() + ", " + br.hi.str() + "]");
}

int cmd_margin(const std::string& phi_s, const std::string& lo_s, const std::string& hi_s) {
  auto phi = io::multi_from_json(parse_json_arg(phi_s));
  StepFn lo = read_value(lo_s).f, hi = read_value(hi_s).f;
  PairMargin pm = margin_for_pair(phi.source(0), lo, hi);
  json doc{{"eps", io::to_json(pm.eps)}, {"mid", io::to_json(pm.mid)}};
  return report_outcome(true, doc, "eps = " + pm.eps.str() + ", mid = " + stepfn_text(pm.mid));
}

int cmd_comp_modulus(const std::string& theta_s, const std::string& eps_s) {
  auto theta = io::multi_from_json(parse_json_arg(theta_s));
  Rational eps = Rational::parse(read_arg(eps_s));
  Rational out = composition_modulus(theta.source(0), eps);
  return report_outcome(true, json{{"eps_prime", io::to_json(out)}}, "eps' = " + out.str());
}

int cmd_compose(const std::string& outer_s, const std::string& inner_s) {
  auto outer = io::multi_from_json(parse_json_arg(outer_s));
  auto inner = io::multi_from_json(parse_json_arg(inner_s));
  MultiGridMorphism out = compose(outer, inner);
  return report_outcome(true, io::to_json(out), "composed certificate with " +
                                                    std::to_string(out.source_count()) + " source(s)");
}

int cmd_cauchy(const std::string& in) {
  json j = parse_json_arg(in);
  std::vector<MultiGridMorphism> prefix;
  for (const json& e : j.at("prefix")) prefix.push_back(io::multi_from_json(e));
  std::vector<Rational> eps;
  for (const json& e : j.at("eps")) eps.push_back(io::rational_from_json(e));
  CauchyBound out = cauchy_limit_bound(prefix, eps);
  json doc{{"approx", io::to_json(out.approx)}, {"bound", io::to_json(out.bound)}};
  return report_outcome(true, doc, "limit within " + out.bound.str() + " of the last prefix element");
}

int cmd_verify_chainable(const std::vector<std::string>& files, long budget) {
  return run_verifications(files, [budget](const std::string& f) {
    VerifyOptions opts;
    opts.chain_budget = budget;
    return verify_chainable(io::witness_from_json(parse_json_arg(f)), opts);
  });
}

int cmd_build_rho(const std::string& wit_s, long m) {
  ChainableWitness w = io::witness_from_json(parse_json_arg(wit_s));
  GridMorphism rho = rho_build(w, m);
  return report_outcome(true, io::to_json(rho),
                        "rho certificate at resolution " + std::to_string(rho.resolution()));
}

int cmd_tebelow(const std::string& wit_s, long m, const std::string& eps_s) {
  ChainableWitness w = io::witness_from_json(parse_json_arg(wit_s));
  bool ok = tebelow_check(w, m, Rational::parse(read_arg(eps_s)));
  return report_outcome(ok, json{{"holds", ok}}, ok ? "sandwich holds" : "sandwich fails");
}

int cmd_prec_convert(long n, const std::string& in) {
  json j = parse_json_arg(in);
  std::vector<std::pair<XnElem, XnElem>> family;
  for (const json& e : j.at("family")) {
    if (e.is_array() && e.size() == 2)
      family.emplace_back(io::xn_from_json(e[0], n), io::xn_from_json(e[1], n));
    else
      family.emplace_back(io::xn_from_json(e.at("q"), n), io::xn_from_json(e.at("t"), n));
  }
  PrecConvertResult out = prec_convert(n, family);
  json pairs = json::array();
  for (const auto& [f, g] : out.pairs)
    pairs.push_back(json{{"f", io::to_json(f)}, {"g", io::to_json(g)}});
  json doc{{"eps", io::to_json(out.eps)}, {"m", out.m}, {"pairs", pairs}};
  return report_outcome(true, doc,
                        "eps = " + out.eps.str() + ", m = " + std::to_string(out.m) + ", " +
                            std::to_string(out.pairs.size()) + " pair(s)");
}

int cmd_verify_i0(const std::string& prob_s, const std::string& wit_s) {
  I0Problem prob = io::problem_from_json(parse_json_arg(prob_s));
  I0Witness wit = io::i0_witness_from_json(parse_json_arg(wit_s));
  ValidationReport rep = verify_I0_witness(prob, wit);
  return report_outcome(rep.ok, json{{"ok", rep.ok}, {"report", rep.failures}},
                        rep.ok ? "witness verified" : "FAIL: " + rep.str());
}

int cmd_construct_i0(const std::string& prob_s) {
  I0Problem prob = io::problem_from_json(parse_json_arg(prob_s));
  I0Witness wit = construct_I0_witness_lsc(prob);
  return report_outcome(true, io::to_json(wit),
                        "witness over X_" + std::to_string(wit.chain.n()) + " constructed and verified");
}

int cmd_verify_i(const std::string& prob_s, const std::string& wit_s) {
  I0Problem prob = io::problem_from_json(parse_json_arg(prob_s));
  IWitness wit = io::i_witness_from_json(parse_json_arg(wit_s));
  ValidationReport rep = verify_I_witness(prob, wit);
  return report_outcome(rep.ok, json{{"ok", rep.ok}, {"report", rep.failures}},
                        rep.ok ? "witness verified" : "FAIL: " + rep.str());
}

int cmd_construct_i(const std::string& prob_s) {
  I0Problem prob = io::problem_from_json(parse_json_arg(prob_s));
  IWitness wit = construct_I_witness(prob);
  return report_outcome(true, io::to_json(wit),
                        "witness with " + std::to_string(wit.parts.size()) + " chainable part(s)");
}

int cmd_divisor(const std::string& in) {
  std::string text = read_arg(in);
  std::vector<SemigroupElem> ps;
  bool parsed = false;
  if (looks_like_json(text)) {
    // the compact "[(1,0),(0,1)]" form also starts with '[', so fall back
    try {
      json j = json::parse(text);
      for (const json& e : j) ps.push_back(io::elem_from_json(e));
      parsed = true;
    } catch (const json::parse_error&) {
    }
  }
  if (!parsed) ps = io::parse_compact_vectors(text);
  auto div = common_compact_divisor(ps);
  if (!div) return report_outcome(false, json{{"exists", false}}, "none");
  json doc{{"exists", true}, {"e", io::to_json(div->e)}, {"ks", div->ks}};
  return report_outcome(true, doc, "e = " + div->e.str());
}

struct FactArgs {
  MultiGridMorphism phi;
  long l;
  GridBasicElement x, x1, y;
};

FactArgs read_fact_args(const json& j) {
  FactArgs args{io::multi_from_json(j.at("phi")), j.at("l").get<long>(),
                io::basic_element_from_json(j.at("x")), io::basic_element_from_json(j.at("x1")),
                io::basic_element_from_json(j.at("y"))};
  return args;
}

int cmd_verify_fact(const std::string& in) {
  json j = parse_json_arg(in);
  FactArgs args = read_fact_args(j);
  auto theta = io::multi_from_json(j.at("theta"));
  auto psi = io::multi_from_json(j.at("psi"));
  ValidationReport rep = verify_factorization(args.phi, args.l, args.x, args.x1, args.y, theta, psi);
  return report_outcome(rep.ok, json{{"ok", rep.ok}, {"report", rep.failures}},
                        rep.ok ? "factorization verified" : "FAIL: " + rep.str());
}

int cmd_construct_fact(const std::string& in) {
  FactArgs args = read_fact_args(parse_json_arg(in));
  Factorization fact = construct_factorization(args.phi, args.l, args.x, args.x1, args.y);
  json doc{{"theta", io::to_json(fact.theta)},
           {"psi", io::to_json(fact.psi)},
           {"witness", io::to_json(fact.witness)}};
  return report_outcome(true, doc, "factorization constructed and verified");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in step-function Cuntz semigroups"};
  app.require_subcommand(1);
  app.add_option("--format", g_opts.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", g_opts.jobs, "parallelize independent verifications");
  app.fallthrough();

  int rc = 0;
  auto wrap = [&rc](auto fn) {
    return [&rc, fn]() { rc = fn(); };
  };

  static long n = 0, m = 0, budget = 20000;
  static std::string a, b, c, rel = "ll", to;
  static std::vector<std::string> files;
  static bool grow = false;

  auto* relate = app.add_subcommand("relate", "compare two step functions or elements");
  relate->add_option("--rel", rel, "relation deciding the exit code")->check(CLI::IsMember({"leq", "ll"}));
  relate->add_option("a", a)->required();
  relate->add_option("b", b)->required();
  relate->callback(wrap([&] { return cmd_relate(rel, a, b); }));

  auto* add = app.add_subcommand("add", "pointwise sum");
  add->add_option("a", a)->required();
  add->add_option("b", b)->required();
  add->callback(wrap([&] { return cmd_add(a, b); }));

  auto* retract = app.add_subcommand("retract", "eps-retraction (or -neighborhood) of every component");
  retract->add_flag("--neighborhood", grow, "grow instead of shrink");
  retract->add_option("value", a)->required();
  retract->add_option("eps", b)->required();
  retract->callback(wrap([&] { return cmd_retract(a, b, grow); }));

  auto* qf = app.add_subcommand("qf", "canonical X_n form of a grid step function");
  qf->add_option("--n", n)->required();
  qf->add_option("f", a)->required();
  qf->callback(wrap([&] { return cmd_qf(n, a); }));

  auto* fe = app.add_subcommand("feval", "evaluate an X_n element to a step function");
  fe->add_option("--n", n);
  fe->add_option("w", a)->required();
  fe->callback(wrap([&] { return cmd_feval(n, a); }));

  auto* pr = app.add_subcommand("prec", "decide w < v and emit a partition certificate");
  pr->add_option("--n", n);
  pr->add_option("w", a)->required();
  pr->add_option("v", b)->required();
  pr->callback(wrap([&] { return cmd_prec(n, a, b, false); }));

  auto* pro = app.add_subcommand("prec-oracle", "exhaustive reference decision for w < v");
  pro->add_option("--n", n);
  pro->add_option("w", a)->required();
  pro->add_option("v", b)->required();
  pro->callback(wrap([&] { return cmd_prec(n, a, b, true); }));

  auto* sq = app.add_subcommand("simeq", "decide exchange equivalence and emit a rewrite certificate");
  sq->add_option("--n", n);
  sq->add_option("w", a)->required();
  sq->add_option("v", b)->required();
  sq->callback(wrap([&] { return cmd_simeq(n, a, b); }));

  auto* cc = app.add_subcommand("check-cert", "check an exchange-rewrite certificate");
  cc->add_option("--n", n);
  cc->add_option("--to", to, "expected final element");
  cc->add_option("w", a)->required();
  cc->add_option("steps", b)->required();
  cc->callback(wrap([&] { return cmd_check_cert(n, a, b, to); }));

  auto* lift = app.add_subcommand("lift", "lift a way-below chain to a morphism certificate");
  lift->add_option("input", a, "{\"chain\":[elem,...],\"p\":elem}")->required();
  lift->callback(wrap([&] { return cmd_lift(a); }));

  auto* vm = app.add_subcommand("validate-morphism", "validate morphism certificates");
  vm->add_option("files", files)->required();
  vm->callback(wrap([&] { return cmd_validate_morphism(files); }));

  auto* dist = app.add_subcommand("dist", "distance bracket between two certificates");
  dist->add_option("phi", a)->required();
  dist->add_option("psi", b)->required();
  dist->callback(wrap([&] { return cmd_dist(a, b); }));

  auto* margin = app.add_subcommand("margin", "robustness margin for a way-below pair");
  margin->add_option("phi", a)->required();
  margin->add_option("f_lo", b)->required();
  margin->add_option("f_hi", c)->required();
  margin->callback(wrap([&] { return cmd_margin(a, b, c); }));

  auto* cm = app.add_subcommand("comp-modulus", "distance modulus for composition with theta");
  cm->add_option("theta", a)->required();
  cm->add_option("eps", b)->required();
  cm->callback(wrap([&] { return cmd_comp_modulus(a, b); }));

  auto* comp = app.add_subcommand("compose", "compose two morphism certificates");
  comp->add_option("outer", a)->required();
  comp->add_option("inner", b)->required();
  comp->callback(wrap([&] { return cmd_compose(a, b); }));

  auto* cauchy = app.add_subcommand("cauchy-bound", "limit bound for a Cauchy prefix");
  cauchy->add_option("input", a, "{\"prefix\":[...],\"eps\":[...]}")->required();
  cauchy->callback(wrap([&] { return cmd_cauchy(a); }));

  auto* vc = app.add_subcommand("verify-chainable", "verify chainable-subset witnesses");
  vc->add_option("--budget", budget, "maximal-chain enumeration budget");
  vc->add_option("files", files)->required();
  vc->callback(wrap([&] { return cmd_verify_chainable(files, budget); }));

  auto* rho = app.add_subcommand("build-rho", "build the rho certificate of a witness");
  rho->add_option("witness", a)->required();
  rho->add_option("m", m)->required();
  rho->callback(wrap([&] { return cmd_build_rho(a, m); }));

  auto* tb = app.add_subcommand("tebelow", "check the rho approximation sandwich");
  tb->add_option("witness", a)->required();
  tb->add_option("m", m)->required();
  tb->add_option("eps", b)->required();
  tb->callback(wrap([&] { return cmd_tebelow(a, m, b); }));

  auto* pc = app.add_subcommand("prec-convert", "convert prec relations to step-function pairs");
  pc->add_option("--n", n)->required();
  pc->add_option("input", a, "{\"family\":[[q,t],...]}")->required();
  pc->callback(wrap([&] { return cmd_prec_convert(n, a); }));

  auto* vi0 = app.add_subcommand("verify-i0", "verify an interpolation witness");
  vi0->add_option("problem", a)->required();
  vi0->add_option("witness", b)->required();
  vi0->callback(wrap([&] { return cmd_verify_i0(a, b); }));

  auto* ci0 = app.add_subcommand("construct-i0", "construct a single-summand interpolation witness");
  ci0->add_option("problem", a)->required();
  ci0->callback(wrap([&] { return cmd_construct_i0(a); }));

  auto* vi = app.add_subcommand("verify-i", "verify a multi-part interpolation witness");
  vi->add_option("problem", a)->required();
  vi->add_option("witness", b)->required();
  vi->callback(wrap([&] { return cmd_verify_i(a, b); }));

  auto* ci = app.add_subcommand("construct-i", "construct a multi-part interpolation witness");
  ci->add_option("problem", a)->required();
  ci->callback(wrap([&] { return cmd_construct_i(a); }));

  auto* dv = app.add_subcommand("divisor", "common compact divisor of a family");
  dv->add_option("elements", a)->required();
  dv->callback(wrap([&] { return cmd_divisor(a); }));

  auto* vf = app.add_subcommand("verify-fact", "verify a grid factorization");
  vf->add_option("input", a, "{\"phi\",\"l\",\"x\",\"x1\",\"y\",\"theta\",\"psi\"}")->required();
  vf->callback(wrap([&] { return cmd_verify_fact(a); }));

  auto* cf = app.add_subcommand("construct-fact", "construct a grid factorization");
  cf->add_option("input", a, "{\"phi\",\"l\",\"x\",\"x1\",\"y\"}")->required();
  cf->callback(wrap([&] { return cmd_construct_fact(a); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
