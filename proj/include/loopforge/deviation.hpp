#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loopforge/loop_table.hpp"
#include "loopforge/permutation.hpp"
#include "loopforge/report.hpp"

namespace loopforge {

// mu_x(phi) = phi^-1 L_x phi L_{x phi}^-1
Permutation deviation(const LoopTable& g, const Permutation& phi, Label x);

// P(x, phi) = 0, read as equality of the composites
//   L_x phi  and  phi L_{x phi}^-1 phi L_x phi^-1 L_{x phi}.
bool p_vanishes(const LoopTable& g, const Permutation& phi, Label x);
bool p_vanishes_all(const LoopTable& g, const Permutation& phi);

// xA o yB = (x.y)C for all x, y, where o is the target's operation.
bool is_isotopism(const LoopTable& source, const LoopTable& target,
                  const MappingTriple& t);

// First (x, y) violating the isotopism identity, if any.
std::optional<std::pair<Label, Label>> isotopism_counterexample(
    const LoopTable& source, const LoopTable& target, const MappingTriple& t);

enum class TheoremId {
  lemma_deviation,
  p_implies_aut,
  deviation_characterization,
  p_implies_exp2,
  rita_iso,
  main_equivalences,
  main_specialized,
  corollary_identities,
};

std::string_view to_string(TheoremId id);
std::optional<TheoremId> parse_theorem_id(std::string_view s);
const std::vector<TheoremId>& all_theorem_ids();

// Theorems about a single permutation phi of one loop.
bool needs_phi(TheoremId id);
// Theorems about a triple between a source and a target loop.
bool needs_triple(TheoremId id);

struct TheoremInstance {
  TheoremId theorem_id = TheoremId::lemma_deviation;
  LoopTable source;
  std::optional<LoopTable> target;
  std::optional<MappingTriple> triple;
  std::optional<Permutation> phi;
  // lemma-deviation: an optional single x; otherwise every x is graded.
  std::vector<Label> args;
};

// Throws MalformedInstance when fields required by the theorem are missing
// or degrees disagree.
TheoremReport verify_theorem(const TheoremInstance& inst);

}  // namespace loopforge
