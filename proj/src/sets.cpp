#include "hylo/sets.hpp"

#include <algorithm>

namespace hylo {

std::size_t ElemSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool ElemSet::is_subset_of(const ElemSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

ElemSet ElemSet::complement() const {
  ElemSet out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = !bits_[i];
  return out;
}

std::optional<std::size_t> ElemSet::first_missing() const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (!bits_[i]) return i;
  return std::nullopt;
}

std::vector<std::size_t> ElemSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

std::size_t PairRel::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool PairRel::is_subset_of(const PairRel& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

bool PairRel::is_symmetric() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (test(i, j) != test(j, i)) return false;
  return true;
}

bool PairRel::is_within_equality() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (test(i, j) && i != j) return false;
  return true;
}

std::optional<std::pair<std::size_t, std::size_t>> PairRel::first_off_diagonal()
    const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (test(i, j) && i != j) return std::make_pair(i, j);
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> PairRel::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (test(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::size_t> PairRel::row_members(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < cols_; ++j)
    if (test(i, j)) out.push_back(j);
  return out;
}

bool PairRel::row_empty(std::size_t i) const {
  for (std::size_t j = 0; j < cols_; ++j)
    if (test(i, j)) return false;
  return true;
}

PairRel reflexive_transitive_closure(const PairRel& rel) {
  const std::size_t n = rel.rows();
  PairRel out = rel;
  for (std::size_t i = 0; i < n; ++i) out.set(i, i);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!out.test(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (out.test(k, j)) out.set(i, j);
    }
  return out;
}

bool Partition::all_singletons() const {
  for (const auto& cls : classes)
    if (cls.size() != 1) return false;
  return true;
}

Partition partition_from_equivalence(const PairRel& eq) {
  const std::size_t n = eq.rows();
  Partition part;
  part.class_of.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j = i; j < n; ++j) {
      if (eq.test(i, j)) {
        cls.push_back(j);
        seen[j] = true;
        part.class_of[j] = part.classes.size();
      }
    }
    part.classes.push_back(std::move(cls));
  }
  return part;
}

}  // namespace hylo
