#include "loopforge/perm_group.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "loopforge/error.hpp"

namespace loopforge {

bool PermGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

bool PermGroup::is_subset_of(const PermGroup& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(),
                       elements_.begin(), elements_.end());
}

bool PermGroup::is_abelian() const {
  const auto& gens = generators_.empty() ? elements_ : generators_;
  for (const auto& g : gens) {
    for (const auto& h : gens) {
      if (g * h != h * g) return false;
    }
  }
  return true;
}

bool PermGroup::is_boolean() const {
  return std::all_of(elements_.begin(), elements_.end(),
                     [](const Permutation& p) { return (p * p).is_identity(); });
}

namespace {

std::size_t factorial_capped(std::size_t n) {
  std::size_t out = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (out > SIZE_MAX / i) return SIZE_MAX;
    out *= i;
  }
  return out;
}

}  // namespace

PermGroup group_closure(std::span<const Permutation> gens,
                        std::optional<std::size_t> cap) {
  if (gens.empty()) throw InputError("group_closure needs at least one generator");
  const std::size_t degree = gens.front().degree();
  for (const auto& g : gens) {
    if (g.degree() != degree) {
      throw DegreeMismatch("generators of degree " + std::to_string(degree) +
                           " and " + std::to_string(g.degree()));
    }
  }
  const std::size_t limit = cap.value_or(factorial_capped(degree));

  PermGroup group;
  group.degree_ = degree;
  for (const auto& g : gens) {
    if (std::find(group.generators_.begin(), group.generators_.end(), g) ==
        group.generators_.end()) {
      group.generators_.push_back(g);
    }
  }

  // In a finite group, closing {I} under right multiplication by the
  // generators reaches every element; inverses come for free.
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  seen.insert(frontier.front());
  std::vector<Permutation> next;
  while (!frontier.empty()) {
    next.clear();
    for (const auto& p : frontier) {
      for (const auto& g : group.generators_) {
        Permutation q = p * g;
        if (seen.insert(q).second) {
          if (seen.size() > limit) {
            throw ElementBudgetExceeded("group closure exceeded " +
                                        std::to_string(limit) + " elements");
          }
          next.push_back(std::move(q));
        }
      }
    }
    std::swap(frontier, next);
  }
  group.elements_.assign(seen.begin(), seen.end());
  std::sort(group.elements_.begin(), group.elements_.end());
  return group;
}

PermGroup group_from_elements(std::vector<Permutation> generators,
                              std::vector<Permutation> elements) {
  PermGroup group;
  group.degree_ = elements.empty() ? 0 : elements.front().degree();
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  group.generators_ = std::move(generators);
  group.elements_ = std::move(elements);
  return group;
}

}  // namespace loopforge
