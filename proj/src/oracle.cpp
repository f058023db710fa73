#include "hylo/oracle.hpp"

#include <algorithm>
#include <random>

#include <json.hpp>

namespace hylo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kSaturated = UINT64_MAX;

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t pow_sat(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) acc = mul_sat(acc, base);
  return acc;
}

// Precomputed per-element lookup for the plain square: f solves iff for
// every a, beta[offset_a + sum f(arg_i) * |B|^(r-1-i)] == f(a).
struct FastChecker {
  const EquationInstance& inst;
  std::vector<std::size_t> offset;
  std::vector<std::vector<std::size_t>> scaled_args;  // (arg, scale) flattened

  explicit FastChecker(const EquationInstance& i) : inst(i) {
    const std::size_t nb = inst.codomain_size();
    for (std::size_t a = 0; a < inst.domain_size(); ++a) {
      const FStructure& fs = inst.apply_alpha(a);
      offset.push_back(fstructure_offset(inst.functor(), nb, fs.shape));
      std::vector<std::size_t> sa;
      std::size_t scale = 1;
      for (std::size_t i = fs.args.size(); i-- > 0;) {
        sa.push_back(fs.args[i]);
        sa.push_back(scale);
        scale *= nb;
      }
      scaled_args.push_back(std::move(sa));
    }
  }

  bool solves(const std::vector<std::size_t>& f) const {
    for (std::size_t a = 0; a < offset.size(); ++a) {
      std::size_t idx = offset[a];
      const auto& sa = scaled_args[a];
      for (std::size_t i = 0; i < sa.size(); i += 2) idx += f[sa[i]] * sa[i + 1];
      if (inst.beta_at(idx) != f[a]) return false;
    }
    return true;
  }
};

Carrier canonical_carrier(const std::string& name, char prefix,
                          std::size_t size) {
  Carrier c;
  c.name = name;
  for (std::size_t i = 0; i < size; ++i)
    c.elements.push_back(prefix + std::to_string(i));
  return c;
}

ContainerSpec profile_functor(const std::vector<std::size_t>& profile) {
  std::vector<Shape> shapes;
  for (std::size_t i = 0; i < profile.size(); ++i)
    shapes.push_back({"s" + std::to_string(i), profile[i]});
  return ContainerSpec(std::move(shapes));
}

}  // namespace

SolutionCount enumerate_solutions(const EquationInstance& inst,
                                  std::size_t retain_cap,
                                  const OracleBudgets& budgets) {
  const std::size_t na = inst.domain_size();
  const std::size_t nb = inst.codomain_size();
  const std::uint64_t candidates = pow_sat(nb, na);
  if (candidates > budgets.max_candidates)
    throw BudgetExceeded("candidate function space of size " +
                             std::to_string(candidates) +
                             " exceeds the budget of " +
                             std::to_string(budgets.max_candidates),
                         candidates);

  SolutionCount out;
  const FastChecker checker(inst);
  std::vector<std::size_t> f(na, 0);
  for (std::uint64_t i = 0; i < candidates; ++i) {
    if (checker.solves(f)) {
      ++out.count;
      if (out.solutions.size() < retain_cap) {
        SolutionTable t{ElemSet::full(na), f};
        out.solutions.push_back(std::move(t));
      }
    }
    // Odometer: element 0 is the fastest digit.
    for (std::size_t d = 0; d < na; ++d) {
      if (++f[d] < nb) break;
      f[d] = 0;
    }
  }
  out.truncated = out.count > out.solutions.size();
  return out;
}

std::uint64_t count_solutions_capped(const EquationInstance& inst,
                                     std::uint64_t limit) {
  const std::size_t na = inst.domain_size();
  const std::size_t nb = inst.codomain_size();
  const std::uint64_t candidates = pow_sat(nb, na);
  const FastChecker checker(inst);
  std::vector<std::size_t> f(na, 0);
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < candidates; ++i) {
    if (checker.solves(f) && ++count >= limit) return count;
    for (std::size_t d = 0; d < na; ++d) {
      if (++f[d] < nb) break;
      f[d] = 0;
    }
  }
  return count;
}

ExhaustiveInstances::ExhaustiveInstances(std::vector<std::size_t> profile,
                                         std::size_t size_a, std::size_t size_b,
                                         const OracleBudgets& budgets)
    : functor_(profile_functor(profile)),
      a_(canonical_carrier("A", 'a', size_a)),
      b_(canonical_carrier("B", 'b', size_b)) {
  fa_count_ = fstructure_count(functor_, size_a);
  const std::size_t fb_count = fstructure_count(functor_, size_b);
  alpha_choices_ = pow_sat(fa_count_, size_a);
  beta_choices_ = pow_sat(size_b, fb_count);
  total_ = mul_sat(alpha_choices_, beta_choices_);
  if (total_ > budgets.max_instances)
    throw BudgetExceeded("instance space of size " + std::to_string(total_) +
                             " exceeds the budget of " +
                             std::to_string(budgets.max_instances),
                         total_);
}

EquationInstance ExhaustiveInstances::at(std::uint64_t index) const {
  std::uint64_t ai = index % alpha_choices_;
  std::uint64_t bi = index / alpha_choices_;

  std::vector<FStructure> alpha;
  for (std::size_t a = 0; a < a_.size(); ++a) {
    alpha.push_back(fstructure_at(functor_, a_.size(),
                                  static_cast<std::size_t>(ai % fa_count_)));
    ai /= fa_count_;
  }
  std::vector<std::size_t> beta;
  const std::size_t fb_count = fstructure_count(functor_, b_.size());
  for (std::size_t i = 0; i < fb_count; ++i) {
    beta.push_back(static_cast<std::size_t>(bi % b_.size()));
    bi /= b_.size();
  }
  return EquationInstance(functor_, a_, b_, std::move(alpha), std::move(beta));
}

EquationInstance random_instance(const std::vector<std::size_t>& profile,
                                 std::size_t size_a, std::size_t size_b,
                                 std::uint64_t seed) {
  ContainerSpec functor = profile_functor(profile);
  Carrier a = canonical_carrier("A", 'a', size_a);
  Carrier b = canonical_carrier("B", 'b', size_b);
  const std::size_t fa_count = fstructure_count(functor, size_a);
  const std::size_t fb_count = fstructure_count(functor, size_b);

  std::mt19937_64 gen(seed);
  std::vector<FStructure> alpha;
  for (std::size_t i = 0; i < size_a; ++i)
    alpha.push_back(fstructure_at(functor, size_a, gen() % fa_count));
  std::vector<std::size_t> beta;
  for (std::size_t i = 0; i < fb_count; ++i) beta.push_back(gen() % size_b);
  return EquationInstance(std::move(functor), std::move(a), std::move(b),
                          std::move(alpha), std::move(beta));
}

ProbeResult probe_recursive(const EquationInstance& inst, std::size_t max_b,
                            const OracleBudgets& budgets) {
  // Budget: total candidate functions checked across the whole sweep.
  std::uint64_t work = 0;
  for (std::size_t nb = 1; nb <= max_b; ++nb) {
    const std::uint64_t algebras =
        pow_sat(nb, fstructure_count(inst.functor(), nb));
    work = work + mul_sat(algebras, pow_sat(nb, inst.domain_size()));
  }
  if (work > budgets.max_candidates)
    throw BudgetExceeded("recursiveness sweep of " + std::to_string(work) +
                             " checks exceeds the budget",
                         work);

  for (std::size_t nb = 1; nb <= max_b; ++nb) {
    Carrier b = canonical_carrier("B", 'b', nb);
    const std::size_t fb_count = fstructure_count(inst.functor(), nb);
    const std::uint64_t algebras = pow_sat(nb, fb_count);
    for (std::uint64_t bi = 0; bi < algebras; ++bi) {
      std::vector<std::size_t> beta;
      std::uint64_t rest = bi;
      for (std::size_t i = 0; i < fb_count; ++i) {
        beta.push_back(static_cast<std::size_t>(rest % nb));
        rest /= nb;
      }
      EquationInstance candidate(inst.functor(), inst.domain(), b,
                                 inst.alpha_table(), std::move(beta));
      const std::uint64_t count = count_solutions_capped(candidate, 2);
      if (count != 1)
        return {false, emit_instance(candidate), count};
    }
  }
  return {true, {}, 0};
}

ProbeResult probe_corecursive(const EquationInstance& inst, std::size_t max_a,
                              const OracleBudgets& budgets) {
  std::uint64_t work = 0;
  for (std::size_t na = 0; na <= max_a; ++na) {
    const std::uint64_t coalgebras =
        pow_sat(fstructure_count(inst.functor(), na), na);
    work = work + mul_sat(coalgebras, pow_sat(inst.codomain_size(), na));
  }
  if (work > budgets.max_candidates)
    throw BudgetExceeded("corecursiveness sweep of " + std::to_string(work) +
                             " checks exceeds the budget",
                         work);

  for (std::size_t na = 0; na <= max_a; ++na) {
    Carrier a = canonical_carrier("A", 'a', na);
    const std::size_t fa_count = fstructure_count(inst.functor(), na);
    const std::uint64_t coalgebras = pow_sat(fa_count, na);
    for (std::uint64_t ai = 0; ai < coalgebras; ++ai) {
      std::vector<FStructure> alpha;
      std::uint64_t rest = ai;
      for (std::size_t i = 0; i < na; ++i) {
        alpha.push_back(fstructure_at(inst.functor(), na,
                                      static_cast<std::size_t>(rest % fa_count)));
        rest /= fa_count;
      }
      EquationInstance candidate(inst.functor(), a, inst.codomain(),
                                 std::move(alpha), inst.beta_table());
      const std::uint64_t count = count_solutions_capped(candidate, 2);
      if (count != 1)
        return {false, emit_instance(candidate), count};
    }
  }
  return {true, {}, 0};
}

namespace {

struct CampaignState {
  const CampaignConfig& config;
  CampaignReport& report;
  std::mt19937_64 beta_rng;  // for the algebra-independence property

  PropertyTally& tally(const std::string& name) {
    for (PropertyTally& t : report.tallies)
      if (t.name == name) return t;
    report.tallies.push_back({name, 0, 0});
    return report.tallies.back();
  }

  void record(const std::string& property, bool ok, const EquationInstance& inst,
              const std::string& detail) {
    PropertyTally& t = tally(property);
    ++t.checked;
    if (ok) {
      ++t.passed;
    } else {
      ++report.failures_total;
      if (report.failures.size() < config.max_failures_kept)
        report.failures.push_back({property, emit_instance(inst), detail});
    }
  }
};

void evaluate_instance(CampaignState& state, const EquationInstance& inst) {
  ++state.report.instances_run;

  const PredResult dom = compute_dom(inst);
  const RelResult graph = compute_graph_lfp(inst);
  const BisimResult bisim = compute_bisim(inst);
  const CoGraphResult cograph = compute_cograph(inst);
  const Verdict verdict = make_verdict(dom, bisim, cograph);
  const std::uint64_t count =
      enumerate_solutions(inst, 0, state.config.budgets).count;

  const FunctionalCheck functional = check_functional(graph);
  state.record("graph_functional", functional.ok, inst,
               functional.ok ? ""
                             : "element index " + std::to_string(functional.a) +
                                   " relates to two codomain elements");

  bool dom_matches = true;
  for (std::size_t a = 0; a < inst.domain_size(); ++a)
    if (dom.member.test(a) == graph.pairs.row_empty(a)) dom_matches = false;
  state.record("dom_matches_graph_domain", dom_matches, inst, "");

  state.record("graph_within_cograph", graph.pairs.is_subset_of(cograph.pairs),
               inst, "");
  state.record("equiv_within_bisim", cograph.equiv.is_subset_of(bisim.pairs),
               inst, "");
  state.record("bisim_symmetric", bisim.pairs.is_symmetric(), inst, "");

  state.record("wellfounded_unique_solution",
               !verdict.wellfounded || count == 1, inst,
               "solution count " + std::to_string(count));
  state.record("criterion_unique_solution",
               !(verdict.criterion_bisim || verdict.criterion_equiv) ||
                   count == 1,
               inst, "solution count " + std::to_string(count));
  state.record("antifounded_at_most_one", !verdict.antifounded || count <= 1,
               inst, "solution count " + std::to_string(count));

  // A probe/wellfoundedness mismatch would falsify the engine or the
  // small-codomain adequacy of the sweep, so it is a hard failure.
  const ProbeResult probe =
      probe_recursive(inst, state.config.probe_max_b, state.config.budgets);
  state.record("probe_matches_wellfounded", probe.verdict == verdict.wellfounded,
               inst,
               probe.verdict ? "probe recursive but not wellfounded"
                             : "witness algebra has solution count " +
                                   std::to_string(probe.witness_count));

  // dom must not depend on the algebra side: swap in random algebras over
  // the same codomain and recompute the graph projection.
  bool indep = true;
  for (std::size_t s = 0; s < state.config.dom_indep_samples && indep; ++s) {
    std::vector<std::size_t> beta;
    for (std::size_t i = 0; i < inst.fb_count(); ++i)
      beta.push_back(state.beta_rng() % inst.codomain_size());
    EquationInstance swapped(inst.functor(), inst.domain(), inst.codomain(),
                             inst.alpha_table(), std::move(beta));
    const RelResult g2 = compute_graph_lfp(swapped);
    for (std::size_t a = 0; a < inst.domain_size(); ++a)
      if (dom.member.test(a) == g2.pairs.row_empty(a)) indep = false;
  }
  state.record("dom_independent_of_algebra", indep, inst, "");

  if (!bisim.pairs.is_subset_of(cograph.equiv)) {
    if (state.report.bisim_beyond_equiv == 0)
      state.report.first_bisim_beyond_equiv_json = emit_instance(inst);
    ++state.report.bisim_beyond_equiv;
  }
  if (count == 1 && !verdict.criterion_bisim && !verdict.criterion_equiv) {
    if (state.report.unique_without_criterion == 0)
      state.report.first_unique_without_criterion_json = emit_instance(inst);
    ++state.report.unique_without_criterion;
  }
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& config) {
  CampaignReport report;
  report.seed = config.seed;
  CampaignState state{config, report, std::mt19937_64(config.seed ^ 0x9e3779b97f4a7c15ull)};

  std::mt19937_64 seeder(config.seed);
  for (const CampaignRun& run : config.runs) {
    if (run.mode == CampaignRun::Mode::exhaustive) {
      ExhaustiveInstances stream(run.profile, run.size_a, run.size_b,
                                 config.budgets);
      for (std::uint64_t i = 0; i < stream.size(); ++i)
        evaluate_instance(state, stream.at(i));
    } else {
      if (run.count > config.budgets.max_instances)
        throw BudgetExceeded("random run of " + std::to_string(run.count) +
                                 " instances exceeds the budget",
                             run.count);
      for (std::uint64_t i = 0; i < run.count; ++i)
        evaluate_instance(state, random_instance(run.profile, run.size_a,
                                                 run.size_b, seeder()));
    }
  }

  std::sort(report.failures.begin(), report.failures.end(),
            [](const CampaignFailure& x, const CampaignFailure& y) {
              return std::tie(x.property, x.instance_json, x.detail) <
                     std::tie(y.property, y.instance_json, y.detail);
            });
  return report;
}

std::string CampaignReport::to_json() const {
  ordered_json doc;
  doc["seed"] = seed;
  doc["instances_run"] = instances_run;
  ordered_json props = ordered_json::array();
  for (const PropertyTally& t : tallies)
    props.push_back(
        {{"name", t.name}, {"checked", t.checked}, {"passed", t.passed}});
  doc["properties"] = std::move(props);
  doc["failures_total"] = failures_total;
  ordered_json fails = ordered_json::array();
  for (const CampaignFailure& f : failures)
    fails.push_back({{"property", f.property},
                     {"instance", json::parse(f.instance_json)},
                     {"detail", f.detail}});
  doc["failures"] = std::move(fails);
  doc["bisim_beyond_equiv"] = bisim_beyond_equiv;
  doc["first_bisim_beyond_equiv_instance"] =
      first_bisim_beyond_equiv_json.empty()
          ? ordered_json(nullptr)
          : ordered_json(json::parse(first_bisim_beyond_equiv_json));
  doc["unique_without_criterion"] = unique_without_criterion;
  doc["first_unique_without_criterion_instance"] =
      first_unique_without_criterion_json.empty()
          ? ordered_json(nullptr)
          : ordered_json(json::parse(first_unique_without_criterion_json));
  doc["all_passed"] = all_passed();
  return doc.dump(2) + "\n";
}

CampaignConfig campaign_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.what());
  }
  CampaignConfig config;
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("probe_max_b"))
    config.probe_max_b = doc["probe_max_b"].get<std::size_t>();
  if (doc.contains("dom_indep_samples"))
    config.dom_indep_samples = doc["dom_indep_samples"].get<std::size_t>();
  if (doc.contains("budgets")) {
    const json& b = doc["budgets"];
    if (b.contains("max_candidates"))
      config.budgets.max_candidates = b["max_candidates"].get<std::uint64_t>();
    if (b.contains("max_instances"))
      config.budgets.max_instances = b["max_instances"].get<std::uint64_t>();
  }
  if (!doc.contains("runs") || !doc["runs"].is_array())
    throw SyntaxError("campaign config needs a 'runs' array");
  for (const json& jr : doc["runs"]) {
    CampaignRun run;
    const std::string mode = jr.at("mode").get<std::string>();
    if (mode == "exhaustive") {
      run.mode = CampaignRun::Mode::exhaustive;
    } else if (mode == "random") {
      run.mode = CampaignRun::Mode::random;
      run.count = jr.at("count").get<std::uint64_t>();
    } else {
      throw SyntaxError("run mode must be 'exhaustive' or 'random'");
    }
    run.profile = jr.at("profile").get<std::vector<std::size_t>>();
    run.size_a = jr.at("size_a").get<std::size_t>();
    run.size_b = jr.at("size_b").get<std::size_t>();
    config.runs.push_back(std::move(run));
  }
  return config;
}

}  // namespace hylo
