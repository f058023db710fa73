#pragma once

#include "hylo/instance.hpp"

namespace hylo {

// Least fixpoint of a predicate operator on A. rank[a] is the round in
// which a first entered the set (1-based, 0 = never); trace records the
// member count after every round including the stabilizing one.
struct PredResult {
  ElemSet member;
  std::vector<std::size_t> rank;
  std::vector<std::size_t> trace;
};

// The inductive definedness predicate: least D with
// D = { a | every argument of alpha(a) is in D }.
PredResult compute_dom(const EquationInstance& inst);

struct WellfoundedVerdict {
  bool wellfounded = false;
  PredResult dom;
  ElemSet counterexample;  // domain elements outside dom; empty when wellfounded
};

WellfoundedVerdict is_wellfounded(const EquationInstance& inst);

// Least fixpoint of the graph operator between A and B:
// R = { (a, beta(bs)) | bs in F B, alpha(a) and bs pointwise in R }.
struct RelResult {
  PairRel pairs;
  std::vector<std::size_t> rank;  // indexed a * |B| + b, 0 = absent
  std::vector<std::size_t> trace;
};

RelResult compute_graph_lfp(const EquationInstance& inst);

struct FunctionalCheck {
  bool ok = true;
  std::size_t a = npos, b = npos, b_star = npos;  // set when !ok
};

// No domain element may relate to two distinct codomain elements.
FunctionalCheck check_functional(const RelResult& rel);

struct AgreementCheck {
  bool ok = true;
  std::size_t counterexample = npos;
};

// The projection of the inductive graph onto A must coincide with dom.
AgreementCheck check_dom_graph_agreement(const EquationInstance& inst);

// A (possibly partial) candidate solution. value[a] is a codomain element
// index (or a quotient class index, depending on context), npos when
// undefined.
struct SolutionTable {
  ElemSet defined_on;
  std::vector<std::size_t> value;

  friend bool operator==(const SolutionTable&, const SolutionTable&) = default;
};

// The unique solution of the equation restricted to dom, computed by rank
// recursion and cross-checked against the inductive graph. Disagreement
// between the two routes throws EngineInconsistency.
SolutionTable extract_partial_solution(const EquationInstance& inst);

struct PrincipleCheck {
  bool premise_holds = false;
  bool conclusion_holds = false;
};

// premise: P is closed under the rule "all arguments of alpha(a) in P
// implies a in P"; conclusion: P covers all of A.
PrincipleCheck check_induction_principle(const EquationInstance& inst,
                                         const ElemSet& p);

}  // namespace hylo
