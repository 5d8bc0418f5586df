#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "loopforge/loop_table.hpp"
#include "loopforge/permutation.hpp"
#include "loopforge/report.hpp"

namespace loopforge {

// Which inner mappings occupy the (A, B, C) slots:
//   rlt = (R(x,y), L(u,v), T(z))
//   lrt = (L(x,y), R(u,v), T(z))
//   trl = (T(z), R(x,y), L(u,v))
enum class Arrangement { rlt, lrt, trl };

std::string_view to_string(Arrangement a);
std::optional<Arrangement> parse_arrangement(std::string_view s);

struct InnerTripleLabels {
  Label x = 0, y = 0, u = 0, v = 0, z = 0;

  std::string to_string() const;
  friend bool operator==(const InnerTripleLabels&, const InnerTripleLabels&) = default;
  friend auto operator<=>(const InnerTripleLabels&, const InnerTripleLabels&) = default;
};

struct InnerTripleOptions {
  // Also grade the label-corrected reading of the T(z)-first arrangement:
  // part (a) concludes |T(x)| = 2 and part (c) uses L(x,y) throughout.
  bool corrected_reading = false;
  // Also grade the generated-group equalities with L'_{e'} at the target's
  // own identity instead of at the source identity e.
  bool alternative_identity = false;
};

MappingTriple inner_triple(const LoopTable& g, Arrangement arrangement,
                           const InnerTripleLabels& labels);

/// Grades the conclusions about an inner-mapping triple that is an
/// isotopism onto a distinct loop.
///
/// Each part (a), (b), (c) and the combined corollary part carries its own
/// premise "P(z, phi) = 0 for every z" on one inner mapping; parts whose
/// premise fails are reported SKIPPED. The report's precondition is violated
/// when the triple is not an isotopism or no part premise holds. Throws
/// TablesEqual when g == target and DegreeMismatch on an order mismatch.
TheoremReport analyze_inner_triple(const LoopTable& g, const LoopTable& target,
                                   Arrangement arrangement,
                                   const InnerTripleLabels& labels,
                                   const InnerTripleOptions& options = {});

}  // namespace loopforge
