#pragma once

#include <optional>

#include "hylo/inductive.hpp"

namespace hylo {

// Greatest fixpoint of the presentation-compatibility operator on B: two
// elements stay related when they have same-shape presentations whose
// arguments are related under the reflexive-transitive closure of the
// current iterate. The closure is recomputed inside every round; the rule
// genuinely uses the closure, not the raw relation, and this is the single
// most error-prone spot of the whole engine.
struct BisimResult {
  PairRel pairs;     // the relation itself; symmetric, not necessarily reflexive
  Partition closure;  // partition of B by the reflexive-transitive closure
  std::vector<std::size_t> trace;  // pair count after every round
};

BisimResult compute_bisim(const EquationInstance& inst);

struct AntifoundedVerdict {
  bool antifounded = false;
  BisimResult bisim;
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

// Antifounded iff the bisimilarity relation is within equality
// (equivalently: all closure classes are singletons).
AntifoundedVerdict is_antifounded(const EquationInstance& inst);

// The codomain quotient: classes of the closure partition, least-index
// representatives, and the induced algebra on class structures. Well-
// definedness of the induced algebra is asserted over every concrete
// structure; a violation would contradict the fixpoint property and throws
// EngineInconsistency.
struct Quotient {
  Partition classes;
  std::vector<std::size_t> induced_beta;  // indexed over class structures

  std::size_t class_count() const { return classes.count(); }
};

Quotient compute_quotient(const EquationInstance& inst);

// Greatest fixpoint of the graph operator (same operator as the inductive
// graph, iterated downward from the total relation), with its domain
// projection and the codomain identification it induces.
struct CoGraphResult {
  PairRel pairs;   // A x B
  ElemSet dom_inf;  // domain elements with at least one partner
  PairRel equiv;   // pairs of codomain elements sharing a partner
  std::vector<std::size_t> trace;
};

CoGraphResult compute_cograph(const EquationInstance& inst);

// The aggregated checkable conditions, each with a certificate or a
// counterexample.
struct Verdict {
  bool wellfounded = false;
  ElemSet wf_counterexample;

  bool antifounded = false;
  std::optional<std::pair<std::size_t, std::size_t>> af_counterexample;

  bool dom_inf_total = false;
  std::optional<std::size_t> dom_inf_missing;

  bool equiv_within_equality = false;
  std::optional<std::pair<std::size_t, std::size_t>> equiv_counterexample;

  bool criterion_bisim = false;  // dom_inf_total && antifounded
  bool criterion_equiv = false;  // dom_inf_total && equiv_within_equality
};

Verdict check_criteria(const EquationInstance& inst);

// Same verdict computed from already-available analysis results.
Verdict make_verdict(const PredResult& dom, const BisimResult& bisim,
                     const CoGraphResult& cograph);

// The solution on the coinductive domain into the quotient. value[a] is a
// class index of the quotient. All coinductive-graph witnesses of one
// element must land in a single class; the quotiented square is verified
// pointwise before returning.
struct QuotientSolution {
  Quotient quotient;
  SolutionTable table;  // values are class indices
};

QuotientSolution extract_quotient_solution(const EquationInstance& inst);

// premise: every related pair has same-shape presentations with arguments
// related under the reflexive-transitive closure of r; conclusion: r is
// within equality.
PrincipleCheck check_coinduction_principle(const EquationInstance& inst,
                                           const PairRel& r);

enum class VerifyMode { plain, restricted, quotiented };

struct VerifyResult {
  bool ok = true;
  std::size_t failing = npos;  // first failing domain element
};

// Pointwise check of f(a) = beta(F f (alpha a)) in the carrier or quotient
// demanded by the mode. Throws DomainMismatch when f is not defined on
// exactly the demanded domain.
VerifyResult verify_solution(const EquationInstance& inst,
                             const SolutionTable& f, VerifyMode mode);

}  // namespace hylo
