#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "loopforge/permutation.hpp"

namespace loopforge {

/// A finite permutation group stored as its full element list.
///
/// Elements are sorted lexicographically by image, which makes element-set
/// comparison a plain vector comparison.
class PermGroup {
 public:
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }

  bool contains(const Permutation& p) const;
  bool is_subset_of(const PermGroup& other) const;
  bool same_elements(const PermGroup& other) const {
    return elements_ == other.elements_;
  }
  bool is_abelian() const;
  // Every element squares to the identity.
  bool is_boolean() const;

 private:
  friend PermGroup group_closure(std::span<const Permutation>,
                                 std::optional<std::size_t>);
  friend PermGroup group_from_elements(std::vector<Permutation>,
                                       std::vector<Permutation>);

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

// Breadth-first product closure of `gens`, including the identity.
// Throws DegreeMismatch, InputError on an empty list, or
// ElementBudgetExceeded when the closure passes `cap` (default n!).
PermGroup group_closure(std::span<const Permutation> gens,
                        std::optional<std::size_t> cap = std::nullopt);

// Wraps an element list already known to be a group (e.g. the automorphism
// scan). Sorts and deduplicates; does not re-verify closure.
PermGroup group_from_elements(std::vector<Permutation> generators,
                              std::vector<Permutation> elements);

}  // namespace loopforge
