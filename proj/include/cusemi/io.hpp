#pragma once

#include <json.hpp>

#include "cusemi/chainable.hpp"

namespace cusemi::io {

using nlohmann::json;

// Every value type serializes to the documented exchange format;
// rationals are always "p/q" strings so round-trips are bit exact.

json to_json(const Rational& r);
json to_json(const Interval& iv);
json to_json(const OpenSet& u);
json to_json(const StepFn& f);
json to_json(const SemigroupElem& x);
json to_json(const XnPair& p);
json to_json(const XnElem& w);
json to_json(const PrecCert& cert);
json to_json(const std::vector<ExchangeStep>& steps);
json to_json(const GridMorphism& phi);
json to_json(const MultiGridMorphism& phi);
json to_json(const GridBasicElement& x);
json to_json(const ChainableWitness& w);
json to_json(const I0Problem& prob);
json to_json(const I0Witness& wit);
json to_json(const IWitness& wit);

Rational rational_from_json(const json& j);
Interval interval_from_json(const json& j);
OpenSet openset_from_json(const json& j);
StepFn stepfn_from_json(const json& j);
SemigroupElem elem_from_json(const json& j);
XnPair pair_from_json(const json& j);
XnElem xn_from_json(const json& j, long n);
std::vector<ExchangeStep> steps_from_json(const json& j);
GridMorphism gridmorphism_from_json(const json& j);
MultiGridMorphism multi_from_json(const json& j);
GridBasicElement basic_element_from_json(const json& j);
ChainableWitness witness_from_json(const json& j);
I0Problem problem_from_json(const json& j);
I0Witness i0_witness_from_json(const json& j);
IWitness i_witness_from_json(const json& j);

/// Compact text for X_n elements: "(1,2)+(2,3)", "(-inf,4)", and the
/// unit "(0,0)" (normalized away).
XnElem parse_xn_text(long n, const std::string& text);

/// Compact text for tuples of compact elements: "[(1,0),(0,1)]".
std::vector<SemigroupElem> parse_compact_vectors(const std::string& text);

/// Small step-function term syntax:
///   0 | 1 | k | chi(a,b) | chi(a,1] | chi[0,b) | k*term | term+term
StepFn parse_stepfn_text(const std::string& text);

}  // namespace cusemi::io
