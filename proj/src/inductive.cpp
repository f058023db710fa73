#include "hylo/inductive.hpp"

#include <algorithm>
#include <numeric>

namespace hylo {

// Fixpoints are computed by naive round-based iteration so that ranks and
// traces stay auditable; carriers are desk-scale by construction.

PredResult compute_dom(const EquationInstance& inst) {
  const std::size_t na = inst.domain_size();
  PredResult res{ElemSet(na), std::vector<std::size_t>(na, 0), {}};
  for (;;) {
    ElemSet next(na);
    for (std::size_t a = 0; a < na; ++a)
      if (lift_pred(inst.functor(), res.member, inst.apply_alpha(a)))
        next.set(a);
    const std::size_t round = res.trace.size() + 1;
    for (std::size_t a = 0; a < na; ++a)
      if (next.test(a) && res.rank[a] == 0) res.rank[a] = round;
    res.trace.push_back(next.count());
    if (next == res.member) break;
    res.member = std::move(next);
  }
  return res;
}

WellfoundedVerdict is_wellfounded(const EquationInstance& inst) {
  WellfoundedVerdict v;
  v.dom = compute_dom(inst);
  v.wellfounded = v.dom.member.all();
  v.counterexample = v.dom.member.complement();
  return v;
}

RelResult compute_graph_lfp(const EquationInstance& inst) {
  const std::size_t na = inst.domain_size();
  const std::size_t nb = inst.codomain_size();
  const auto& fb = inst.fb_structures();
  RelResult res{PairRel(na, nb), std::vector<std::size_t>(na * nb, 0), {}};
  for (;;) {
    PairRel next(na, nb);
    for (std::size_t a = 0; a < na; ++a) {
      const FStructure& as = inst.apply_alpha(a);
      const std::size_t off = fstructure_offset(inst.functor(), nb, as.shape);
      std::size_t block = 1;
      for (std::size_t i = 0; i < inst.functor().shape(as.shape).arity; ++i)
        block *= nb;
      for (std::size_t i = off; i < off + block; ++i)
        if (lift_rel(inst.functor(), res.pairs, as, fb[i]))
          next.set(a, inst.beta_at(i));
    }
    const std::size_t round = res.trace.size() + 1;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < nb; ++b)
        if (next.test(a, b) && res.rank[a * nb + b] == 0)
          res.rank[a * nb + b] = round;
    res.trace.push_back(next.count());
    if (next == res.pairs) break;
    res.pairs = std::move(next);
  }
  return res;
}

FunctionalCheck check_functional(const RelResult& rel) {
  for (std::size_t a = 0; a < rel.pairs.rows(); ++a) {
    std::size_t found = npos;
    for (std::size_t b = 0; b < rel.pairs.cols(); ++b) {
      if (!rel.pairs.test(a, b)) continue;
      if (found == npos) {
        found = b;
      } else {
        return {false, a, found, b};
      }
    }
  }
  return {};
}

AgreementCheck check_dom_graph_agreement(const EquationInstance& inst) {
  const PredResult dom = compute_dom(inst);
  const RelResult graph = compute_graph_lfp(inst);
  for (std::size_t a = 0; a < inst.domain_size(); ++a) {
    const bool in_graph = !graph.pairs.row_empty(a);
    if (in_graph != dom.member.test(a)) return {false, a};
  }
  return {};
}

SolutionTable extract_partial_solution(const EquationInstance& inst) {
  const std::size_t na = inst.domain_size();
  const std::size_t nb = inst.codomain_size();
  const PredResult dom = compute_dom(inst);

  SolutionTable f{dom.member, std::vector<std::size_t>(na, npos)};

  // Rank recursion: every argument of alpha(a) entered dom strictly before
  // a did, so ascending rank order makes the recursion well-defined.
  std::vector<std::size_t> order = dom.member.members();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return dom.rank[x] < dom.rank[y];
                   });
  for (std::size_t a : order) {
    FStructure image = map_functor(inst.functor(), f.value, inst.apply_alpha(a));
    f.value[a] = inst.beta_at(fstructure_index(inst.functor(), nb, image));
  }

  // Cross-check against the inductive graph: dom must be its projection and
  // the graph must assign exactly the value computed above.
  const RelResult graph = compute_graph_lfp(inst);
  if (!check_functional(graph).ok)
    throw EngineInconsistency("inductive graph is not functional");
  for (std::size_t a = 0; a < na; ++a) {
    const auto row = graph.pairs.row_members(a);
    if (dom.member.test(a)) {
      if (row.size() != 1 || row[0] != f.value[a])
        throw EngineInconsistency(
            "rank recursion and inductive graph disagree at '" +
            inst.domain().element(a) + "'");
    } else if (!row.empty()) {
      throw EngineInconsistency("inductive graph relates an element outside dom");
    }
  }
  return f;
}

PrincipleCheck check_induction_principle(const EquationInstance& inst,
                                         const ElemSet& p) {
  PrincipleCheck out;
  out.premise_holds = true;
  for (std::size_t a = 0; a < inst.domain_size(); ++a)
    if (lift_pred(inst.functor(), p, inst.apply_alpha(a)) && !p.test(a)) {
      out.premise_holds = false;
      break;
    }
  out.conclusion_holds = p.all();
  return out;
}

}  // namespace hylo
