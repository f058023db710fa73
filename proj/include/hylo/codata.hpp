#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hylo/errors.hpp"

namespace hylo::codata {

// Stream elements are arbitrary-precision integers.
using Int = mpz_class;

enum class TermKind { literal, variable, apply, list };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Closed or open term over a system's symbols. Literals carry an integer,
// applications a head symbol; a list node is only legal as an argument of
// the cycle builtin.
struct Term {
  TermKind kind = TermKind::literal;
  Int value;
  std::string head;
  std::vector<TermPtr> args;

  static TermPtr lit(Int v);
  static TermPtr var(std::string name);
  static TermPtr app(std::string head, std::vector<TermPtr> args);
  static TermPtr make_list(std::vector<TermPtr> items);
};

TermPtr parse_term(const std::string& text);
std::string term_to_string(const Term& t);

enum class Sort { value, codata };

struct Destructor {
  std::string name;
  Sort result = Sort::codata;
};

struct Operation {
  std::string name;
  std::size_t arity = 0;
};

struct Generator {
  std::string name;
  std::size_t arity = 0;
};

struct Rule {
  TermPtr lhs;
  TermPtr rhs;
  std::string source;  // original text, for messages
};

// A system of observation rewrite rules over possibly-infinite data: a
// destructor signature, operations with exactly one rule per
// (destructor, operation) pair, equation rules expanding the recursive
// symbol, and argument generators. The builtins arith(start, step) and
// cycle(list) are always available in stream signatures.
class CodataSystem {
 public:
  static CodataSystem parse(const std::string& text);
  static CodataSystem load(const std::string& path);

  const std::vector<Destructor>& destructors() const { return destructors_; }
  const std::vector<Operation>& operations() const { return operations_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::string& equation_symbol() const { return equation_symbol_; }

  std::optional<std::size_t> find_destructor(std::string_view name) const;
  std::optional<std::size_t> find_operation(std::string_view name) const;
  std::optional<std::size_t> find_generator(std::string_view name) const;

  const Rule& rule_for(std::size_t destructor, std::size_t operation) const;
  const Rule* equation_variable_rule() const;        // null unless present
  const Rule* equation_rule_for(std::size_t generator) const;

  // Stream signature: exactly one value destructor and one codata
  // destructor.
  bool is_stream_signature() const;
  std::size_t value_destructor() const;   // requires stream signature
  std::size_t codata_destructor() const;  // requires stream signature

  const std::vector<Rule>& observation_rules() const { return obs_rules_; }
  std::vector<const Rule*> all_rules() const;

  // Rejects unknown symbols, arity mismatches, free variables and
  // misplaced list nodes before any rewriting happens.
  void validate_closed_term(const Term& t) const;

 private:
  CodataSystem() = default;

  std::vector<Destructor> destructors_;
  std::vector<Operation> operations_;
  std::vector<Generator> generators_;
  std::string equation_symbol_;
  std::vector<Rule> obs_rules_;
  std::vector<std::size_t> rule_table_;  // destructor * |ops| + op -> rule idx
  std::optional<Rule> equation_var_rule_;
  std::vector<std::optional<Rule>> equation_gen_rules_;
};

struct UnfoldResult {
  bool ok = false;
  Int value;                 // valid when ok
  std::string remaining;     // demand description when fuel ran out
  std::size_t steps_used = 0;
};

// Head-normalizes destructor applications along the path (all but the
// last destructor must be codata-sorted, the last value-sorted) and
// returns the observed value, or FuelExhausted as a result. StuckTerm is
// thrown and indicts the system, never the budget.
UnfoldResult unfold(const CodataSystem& sys, const TermPtr& t,
                    std::span<const std::string> path, std::size_t fuel);

inline constexpr std::size_t kDefaultFuel = 10'000;

struct PrefixResult {
  std::vector<Int> values;
  std::optional<std::size_t> failed_at;  // index whose observation ran dry
  std::size_t max_steps = 0;             // per observation
};

// First n stream elements: observation i unfolds along tl^i then hd, each
// with a fresh fuel allowance.
PrefixResult prefix(const CodataSystem& sys, const TermPtr& t, std::size_t n,
                    std::size_t fuel = kDefaultFuel);

struct ProductivityCertificate {
  bool ok = false;
  std::size_t depth = 0;
  std::size_t max_steps_per_observation = 0;
  std::optional<std::size_t> failed_depth;
  std::string detail;
};

// Depth-k observability: every observation down to `depth` must produce a
// value within the fuel allowance. Failure is a report, not an error.
ProductivityCertificate productivity_probe(const CodataSystem& sys,
                                           const TermPtr& t, std::size_t depth,
                                           std::size_t fuel = kDefaultFuel);

struct GuardednessVerdict {
  bool guarded = true;
  std::string offending_rule;
};

// Syntactic productivity condition: in every rule right-hand side,
// destructors may be applied to variables, destructor chains and
// generators, never to operation- or equation-rooted terms.
GuardednessVerdict check_guardedness(const CodataSystem& sys);

}  // namespace hylo::codata
