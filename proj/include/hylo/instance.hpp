#pragma once

#include <string>
#include <vector>

#include "hylo/container.hpp"

namespace hylo {

// A named finite carrier. Elements are referred to by position everywhere;
// the names exist for input/output only.
struct Carrier {
  std::string name;
  std::vector<std::string> elements;

  std::size_t size() const { return elements.size(); }
  const std::string& element(std::size_t i) const { return elements[i]; }
  std::optional<std::size_t> index_of(std::string_view elem) const;
};

// The equation data model: functor F, carriers A and B, a total coalgebra
// table alpha : A -> F A and a total algebra table beta : F B -> B. The
// beta table is indexed by the canonical structure enumeration over B.
// Instances are immutable after construction and safe to share.
class EquationInstance {
 public:
  EquationInstance(ContainerSpec functor, Carrier domain, Carrier codomain,
                   std::vector<FStructure> alpha, std::vector<std::size_t> beta);

  const ContainerSpec& functor() const { return functor_; }
  const Carrier& domain() const { return domain_; }
  const Carrier& codomain() const { return codomain_; }
  std::size_t domain_size() const { return domain_.size(); }
  std::size_t codomain_size() const { return codomain_.size(); }

  const FStructure& apply_alpha(std::size_t a) const;
  std::size_t apply_beta(const FStructure& fs) const;
  std::size_t beta_at(std::size_t structure_index) const {
    return beta_[structure_index];
  }

  std::size_t fb_count() const { return fb_.size(); }
  const std::vector<FStructure>& fb_structures() const { return fb_; }
  const std::vector<FStructure>& alpha_table() const { return alpha_; }
  const std::vector<std::size_t>& beta_table() const { return beta_; }

  std::string describe_domain_structure(const FStructure& fs) const;
  std::string describe_codomain_structure(const FStructure& fs) const;

  friend bool operator==(const EquationInstance&, const EquationInstance&);

 private:
  ContainerSpec functor_;
  Carrier domain_;
  Carrier codomain_;
  std::vector<FStructure> alpha_;
  std::vector<std::size_t> beta_;
  std::vector<FStructure> fb_;
};

std::string format_structure(const ContainerSpec& functor,
                             const Carrier& carrier, const FStructure& fs);

// Instance file format: one JSON object with fields "functor", "domain",
// "codomain", "alpha", "beta". Parsing is total-or-error, never partial.
EquationInstance parse_instance(const std::string& text,
                                const ValidationLimits& limits = {});
EquationInstance load_instance(const std::string& path,
                               const ValidationLimits& limits = {});

// Canonical emission: alpha keyed in carrier order, beta in enumeration
// order. parse_instance(emit_instance(i)) == i.
std::string emit_instance(const EquationInstance& inst);

// Shipped example families.
EquationInstance make_isort(std::size_t alphabet_size, std::size_t max_len,
                            const ValidationLimits& limits = {});
EquationInstance make_qsort(std::size_t alphabet_size, std::size_t max_len,
                            const ValidationLimits& limits = {});
EquationInstance make_modsucc(std::size_t modulus,
                              const ValidationLimits& limits = {});
EquationInstance make_identity(std::size_t size_a, std::size_t size_b,
                               const ValidationLimits& limits = {});

// The list carrier used by the sorting families: all sequences over
// {0..alphabet-1} of length <= max_len, ordered by length then
// lexicographically. Exposed so tests can decode solution tables.
std::vector<std::vector<int>> bounded_lists(std::size_t alphabet_size,
                                            std::size_t max_len);
std::string list_element_name(const std::vector<int>& xs);

}  // namespace hylo
