#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "loopforge/permutation.hpp"

namespace loopforge {

/// A finite loop given by its Cayley table over labels 0..n-1.
///
/// Construction goes through validate_table(), so every LoopTable is a
/// Latin square with a two-sided identity. The identity is stored
/// explicitly and need not be label 0; principal isotopes generally move
/// it.
class LoopTable {
 public:
  std::size_t order() const { return order_; }
  Label identity() const { return identity_; }

  // x.y
  Label operator()(Label x, Label y) const { return cells_[x * order_ + y]; }

  // Row-major cells, order()*order() entries.
  std::span<const Label> cells() const { return cells_; }
  std::vector<std::vector<Label>> rows() const;

  friend bool operator==(const LoopTable&, const LoopTable&) = default;
  friend auto operator<=>(const LoopTable& a, const LoopTable& b) {
    if (auto c = a.order_ <=> b.order_; c != 0) return c;
    if (auto c = a.cells_ <=> b.cells_; c != 0) return c;
    return a.identity_ <=> b.identity_;
  }

 private:
  LoopTable(std::size_t order, std::vector<Label> cells, Label identity)
      : order_(order), cells_(std::move(cells)), identity_(identity) {}

  friend LoopTable validate_table(const std::vector<std::vector<Label>>&,
                                  std::optional<Label>);
  friend LoopTable validate_cells(std::size_t, std::vector<Label>,
                                  std::optional<Label>);

  std::size_t order_ = 0;
  std::vector<Label> cells_;
  Label identity_ = 0;
};

// Checks squareness, label range, the Latin property and the identity.
// Throws InputError, NotLatin (naming the row or column) or NoIdentity.
// When `identity` is given it is verified rather than searched for.
LoopTable validate_table(const std::vector<std::vector<Label>>& raw,
                         std::optional<Label> identity = std::nullopt);

// Same checks on a flat row-major buffer.
LoopTable validate_cells(std::size_t order, std::vector<Label> cells,
                         std::optional<Label> identity = std::nullopt);

enum class Side { left, right };

// left: y -> x.y (row x); right: y -> y.x (column x).
Permutation translation(const LoopTable& g, Side side, Label x);
inline Permutation left_translation(const LoopTable& g, Label x) {
  return translation(g, Side::left, x);
}
inline Permutation right_translation(const LoopTable& g, Label x) {
  return translation(g, Side::right, x);
}

struct PrincipalIsotope {
  LoopTable table;
  MappingTriple triple;  // (R_g, L_f, I), an isotopism from the source
};

// x o y = (x R_g^-1).(y L_f^-1), with identity f.g.
PrincipalIsotope principal_isotope(const LoopTable& g, Label f, Label h);

// Isomorphic copy under the relabeling x -> sigma(x).
LoopTable relabel(const LoopTable& g, const Permutation& sigma);

// Isomorphic copy with the identity moved to label 0 (by swapping 0 and e).
LoopTable normalized(const LoopTable& g);

bool is_associative(const LoopTable& g);
bool is_commutative(const LoopTable& g);

}  // namespace loopforge
