#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace hylo {

// Subset of a carrier, indexed by carrier position. Iteration order is
// always ascending index, which keeps every report deterministic.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(std::size_t universe) : bits_(universe, false) {}

  static ElemSet full(std::size_t universe) {
    ElemSet s(universe);
    s.bits_.assign(universe, true);
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value = true) { bits_[i] = value; }

  std::size_t count() const;
  bool none() const { return count() == 0; }
  bool all() const { return count() == bits_.size(); }
  bool is_subset_of(const ElemSet& other) const;
  ElemSet complement() const;
  std::optional<std::size_t> first_missing() const;
  std::vector<std::size_t> members() const;

  friend bool operator==(const ElemSet&, const ElemSet&) = default;

 private:
  std::vector<bool> bits_;
};

// Relation between two carriers as a dense bit matrix.
class PairRel {
 public:
  PairRel() = default;
  PairRel(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), bits_(rows * cols, false) {}

  static PairRel full(std::size_t rows, std::size_t cols) {
    PairRel r(rows, cols);
    r.bits_.assign(rows * cols, true);
    return r;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool test(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, bool value = true) {
    bits_[i * cols_ + j] = value;
  }

  std::size_t count() const;
  bool is_subset_of(const PairRel& other) const;
  bool is_symmetric() const;  // requires rows == cols
  bool is_within_equality() const;
  std::optional<std::pair<std::size_t, std::size_t>> first_off_diagonal() const;
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  std::vector<std::size_t> row_members(std::size_t i) const;
  bool row_empty(std::size_t i) const;

  friend bool operator==(const PairRel&, const PairRel&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<bool> bits_;
};

// Warshall closure plus the diagonal. Works for arbitrary relations on a
// single carrier, not just symmetric ones.
PairRel reflexive_transitive_closure(const PairRel& rel);

// Partition of a carrier. Classes are numbered in order of their least
// member; members within a class are ascending.
struct Partition {
  std::vector<std::size_t> class_of;
  std::vector<std::vector<std::size_t>> classes;

  std::size_t count() const { return classes.size(); }
  std::size_t representative(std::size_t cls) const { return classes[cls].front(); }
  bool all_singletons() const;
};

// The input must be an equivalence relation (reflexive closure of a
// symmetric relation is enough in practice).
Partition partition_from_equivalence(const PairRel& eq);

}  // namespace hylo
