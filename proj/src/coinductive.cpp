#include "hylo/coinductive.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace hylo {

namespace {

// One descending round of the bisimilarity operator. Because the iterate is
// symmetric, its reflexive-transitive closure is an equivalence, so
// "arguments pairwise related under the closure" is the same as "arguments
// in the same closure class". Bucketing structures by (shape, class tuple)
// then relates exactly the outputs of presentations that the literal rule
// relates, without scanning all structure pairs.
PairRel bisim_step(const EquationInstance& inst, const PairRel& rel) {
  const std::size_t nb = inst.codomain_size();
  const Partition part =
      partition_from_equivalence(reflexive_transitive_closure(rel));

  PairRel next(nb, nb);
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
  const auto& fb = inst.fb_structures();
  for (std::size_t i = 0; i < fb.size(); ++i) {
    std::vector<std::size_t> key;
    key.reserve(fb[i].args.size() + 1);
    key.push_back(fb[i].shape);
    for (std::size_t arg : fb[i].args) key.push_back(part.class_of[arg]);
    buckets[std::move(key)].push_back(inst.beta_at(i));
  }
  for (auto& [key, outs] : buckets) {
    std::sort(outs.begin(), outs.end());
    outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
    for (std::size_t b : outs)
      for (std::size_t b2 : outs) next.set(b, b2);
  }
  return next;
}

}  // namespace

BisimResult compute_bisim(const EquationInstance& inst) {
  const std::size_t nb = inst.codomain_size();
  BisimResult res;
  res.pairs = PairRel::full(nb, nb);
  for (;;) {
    PairRel next = bisim_step(inst, res.pairs);
    assert(next.is_symmetric());
    res.trace.push_back(next.count());
    if (next == res.pairs) break;
    res.pairs = std::move(next);
  }
  res.closure =
      partition_from_equivalence(reflexive_transitive_closure(res.pairs));
  return res;
}

AntifoundedVerdict is_antifounded(const EquationInstance& inst) {
  AntifoundedVerdict v;
  v.bisim = compute_bisim(inst);
  v.counterexample = v.bisim.pairs.first_off_diagonal();
  v.antifounded = !v.counterexample.has_value();
  return v;
}

Quotient compute_quotient(const EquationInstance& inst) {
  const BisimResult bisim = compute_bisim(inst);
  Quotient q;
  q.classes = bisim.closure;

  const std::size_t nc = q.classes.count();
  const std::size_t table_size = fstructure_count(inst.functor(), nc);
  q.induced_beta.assign(table_size, npos);

  // Fill from every concrete structure and demand agreement: classwise-equal
  // argument tuples must map into one class, or the relation was no fixpoint.
  const auto& fb = inst.fb_structures();
  for (std::size_t i = 0; i < fb.size(); ++i) {
    FStructure cs;
    cs.shape = fb[i].shape;
    for (std::size_t arg : fb[i].args)
      cs.args.push_back(q.classes.class_of[arg]);
    const std::size_t idx = fstructure_index(inst.functor(), nc, cs);
    const std::size_t out = q.classes.class_of[inst.beta_at(i)];
    if (q.induced_beta[idx] == npos) {
      q.induced_beta[idx] = out;
    } else if (q.induced_beta[idx] != out) {
      throw EngineInconsistency(
          "induced algebra is not well-defined on " +
          inst.describe_codomain_structure(fb[i]));
    }
  }
  // Every class structure has a concrete instance through representatives.
  for (std::size_t idx = 0; idx < table_size; ++idx)
    if (q.induced_beta[idx] == npos)
      throw EngineInconsistency("induced algebra left a class structure unset");
  return q;
}

CoGraphResult compute_cograph(const EquationInstance& inst) {
  const std::size_t na = inst.domain_size();
  const std::size_t nb = inst.codomain_size();
  const auto& fb = inst.fb_structures();

  CoGraphResult res;
  res.pairs = PairRel::full(na, nb);
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
    res.trace.push_back(next.count());
    if (next == res.pairs) break;
    res.pairs = std::move(next);
  }

  res.dom_inf = ElemSet(na);
  for (std::size_t a = 0; a < na; ++a)
    if (!res.pairs.row_empty(a)) res.dom_inf.set(a);

  res.equiv = PairRel(nb, nb);
  for (std::size_t a = 0; a < na; ++a) {
    const auto row = res.pairs.row_members(a);
    for (std::size_t b : row)
      for (std::size_t b2 : row) res.equiv.set(b, b2);
  }
  return res;
}

Verdict make_verdict(const PredResult& dom, const BisimResult& bisim,
                     const CoGraphResult& cograph) {
  Verdict v;
  v.wellfounded = dom.member.all();
  v.wf_counterexample = dom.member.complement();

  v.af_counterexample = bisim.pairs.first_off_diagonal();
  v.antifounded = !v.af_counterexample.has_value();

  v.dom_inf_missing = cograph.dom_inf.first_missing();
  v.dom_inf_total = !v.dom_inf_missing.has_value();

  v.equiv_counterexample = cograph.equiv.first_off_diagonal();
  v.equiv_within_equality = !v.equiv_counterexample.has_value();

  v.criterion_bisim = v.dom_inf_total && v.antifounded;
  v.criterion_equiv = v.dom_inf_total && v.equiv_within_equality;
  return v;
}

Verdict check_criteria(const EquationInstance& inst) {
  return make_verdict(compute_dom(inst), compute_bisim(inst),
                      compute_cograph(inst));
}

QuotientSolution extract_quotient_solution(const EquationInstance& inst) {
  const CoGraphResult cograph = compute_cograph(inst);
  QuotientSolution out{compute_quotient(inst),
                       SolutionTable{cograph.dom_inf,
                                     std::vector<std::size_t>(
                                         inst.domain_size(), npos)}};
  const Partition& part = out.quotient.classes;

  for (std::size_t a = 0; a < inst.domain_size(); ++a) {
    if (!cograph.dom_inf.test(a)) continue;
    std::size_t cls = npos;
    for (std::size_t b : cograph.pairs.row_members(a)) {
      if (cls == npos) {
        cls = part.class_of[b];
      } else if (part.class_of[b] != cls) {
        // Two witnesses in distinct classes would mean the induced
        // identification escapes bisimilarity.
        throw EngineInconsistency(
            "coinductive graph witnesses for '" + inst.domain().element(a) +
            "' land in different quotient classes");
      }
    }
    out.table.value[a] = cls;
  }

  const VerifyResult check = verify_solution(inst, out.table, VerifyMode::quotiented);
  if (!check.ok)
    throw EngineInconsistency("quotiented square fails at '" +
                              inst.domain().element(check.failing) + "'");
  return out;
}

PrincipleCheck check_coinduction_principle(const EquationInstance& inst,
                                           const PairRel& r) {
  const std::size_t nb = inst.codomain_size();
  const PairRel star = reflexive_transitive_closure(r);
  const auto& fb = inst.fb_structures();

  // Presentations of each codomain element.
  std::vector<std::vector<std::size_t>> pres(nb);
  for (std::size_t i = 0; i < fb.size(); ++i)
    pres[inst.beta_at(i)].push_back(i);

  PrincipleCheck out;
  out.premise_holds = true;
  for (std::size_t b = 0; b < nb && out.premise_holds; ++b)
    for (std::size_t b2 = 0; b2 < nb && out.premise_holds; ++b2) {
      if (!r.test(b, b2)) continue;
      bool found = false;
      for (std::size_t i : pres[b]) {
        for (std::size_t j : pres[b2])
          if (lift_rel(inst.functor(), star, fb[i], fb[j])) {
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found) out.premise_holds = false;
    }
  out.conclusion_holds = r.is_within_equality();
  return out;
}

VerifyResult verify_solution(const EquationInstance& inst,
                             const SolutionTable& f, VerifyMode mode) {
  const std::size_t na = inst.domain_size();
  if (f.defined_on.universe() != na || f.value.size() != na)
    throw DomainMismatch("solution table sized for a different domain");
  for (std::size_t a = 0; a < na; ++a)
    if (f.defined_on.test(a) != (f.value[a] != npos))
      throw DomainMismatch("solution table defined_on disagrees with values");

  switch (mode) {
    case VerifyMode::plain: {
      if (!f.defined_on.all())
        throw DomainMismatch("plain verification demands a total solution");
      for (std::size_t a = 0; a < na; ++a) {
        const FStructure image =
            map_functor(inst.functor(), f.value, inst.apply_alpha(a));
        if (inst.apply_beta(image) != f.value[a]) return {false, a};
      }
      return {};
    }
    case VerifyMode::restricted: {
      const PredResult dom = compute_dom(inst);
      if (f.defined_on != dom.member)
        throw DomainMismatch(
            "restricted verification demands definedness exactly on dom");
      for (std::size_t a = 0; a < na; ++a) {
        if (!f.defined_on.test(a)) continue;
        // dom is closed under the rule, so arguments are defined.
        const FStructure image =
            map_functor(inst.functor(), f.value, inst.apply_alpha(a));
        if (inst.apply_beta(image) != f.value[a]) return {false, a};
      }
      return {};
    }
    case VerifyMode::quotiented: {
      const CoGraphResult cograph = compute_cograph(inst);
      if (f.defined_on != cograph.dom_inf)
        throw DomainMismatch(
            "quotiented verification demands definedness exactly on the "
            "coinductive domain");
      const Quotient q = compute_quotient(inst);
      for (std::size_t v : f.value)
        if (v != npos && v >= q.class_count())
          throw DomainMismatch("solution value is not a quotient class");
      for (std::size_t a = 0; a < na; ++a) {
        if (!f.defined_on.test(a)) continue;
        const FStructure& as = inst.apply_alpha(a);
        for (std::size_t arg : as.args)
          if (!f.defined_on.test(arg))
            throw EngineInconsistency(
                "coinductive domain is not closed under alpha arguments");
        const FStructure image = map_functor(inst.functor(), f.value, as);
        const std::size_t idx =
            fstructure_index(inst.functor(), q.class_count(), image);
        if (q.induced_beta[idx] != f.value[a]) return {false, a};
      }
      return {};
    }
  }
  return {};
}

}  // namespace hylo
