#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hylo/errors.hpp"
#include "hylo/sets.hpp"

namespace hylo {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct ValidationLimits {
  std::size_t max_arity = 4;
  std::size_t max_elements = 100000;
};

struct Shape {
  std::string name;
  std::size_t arity = 0;
};

// A polynomial functor F X = sum over shapes s of X^arity(s), given by
// finitely many named shapes. Immutable once constructed.
class ContainerSpec {
 public:
  explicit ContainerSpec(std::vector<Shape> shapes,
                         const ValidationLimits& limits = {});

  const std::vector<Shape>& shapes() const { return shapes_; }
  std::size_t size() const { return shapes_.size(); }
  const Shape& shape(std::size_t i) const { return shapes_[i]; }
  std::optional<std::size_t> find_shape(std::string_view name) const;
  std::size_t max_arity() const;
  std::string profile() const;  // "z/0 s/1", for summaries

  friend bool operator==(const ContainerSpec&, const ContainerSpec&) = default;

 private:
  std::vector<Shape> shapes_;
};

// One F-structure: a shape applied to elements of a carrier, both referred
// to by position.
struct FStructure {
  std::size_t shape = 0;
  std::vector<std::size_t> args;

  friend bool operator==(const FStructure&, const FStructure&) = default;
};

void check_structure(const ContainerSpec& functor, std::size_t carrier_size,
                     const FStructure& fs);

// The arrow F h applied to one structure. h maps carrier positions of X to
// carrier positions of Y, with npos marking an undefined entry.
FStructure map_functor(const ContainerSpec& functor,
                       std::span<const std::size_t> h, const FStructure& fs);

// Predicate lifting: true iff every argument position satisfies p
// (vacuously true for arity 0).
bool lift_pred(const ContainerSpec& functor, const ElemSet& p,
               const FStructure& fs);

// Relation lifting: same shape and argumentwise related.
bool lift_rel(const ContainerSpec& functor, const PairRel& r,
              const FStructure& fs, const FStructure& gs);

// Canonical enumeration of F X over a finite carrier: shapes in declaration
// order, argument tuples lexicographic by carrier order. fstructure_index
// and fstructure_at convert between a structure and its position in that
// enumeration in O(arity).
std::size_t fstructure_count(const ContainerSpec& functor,
                             std::size_t carrier_size);
std::size_t fstructure_offset(const ContainerSpec& functor,
                              std::size_t carrier_size, std::size_t shape);
std::size_t fstructure_index(const ContainerSpec& functor,
                             std::size_t carrier_size, const FStructure& fs);
FStructure fstructure_at(const ContainerSpec& functor, std::size_t carrier_size,
                         std::size_t index);
std::vector<FStructure> enumerate_fstructures(const ContainerSpec& functor,
                                              std::size_t carrier_size);

}  // namespace hylo
