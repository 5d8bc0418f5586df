#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "loopforge/loop_table.hpp"
#include "loopforge/perm_group.hpp"
#include "loopforge/permutation.hpp"
#include "loopforge/report.hpp"

namespace loopforge {

enum class InnerKind { rho, lambda, mu, full };

std::string_view to_string(InnerKind k);
std::optional<InnerKind> parse_inner_kind(std::string_view s);

// R(x,y) = R_x R_y R_{xy}^-1
Permutation right_inner(const LoopTable& g, Label x, Label y);
// L(x,y) = L_x L_y L_{yx}^-1
Permutation left_inner(const LoopTable& g, Label x, Label y);
// T(x) = R_x L_x^-1
Permutation middle_inner(const LoopTable& g, Label x);

// rho/lambda take (x, y), mu takes (x). Throws InputError on wrong arity
// (including kind == full) and LabelOutOfRange.
Permutation inner_mapping(const LoopTable& g, InnerKind kind,
                          std::span<const Label> args);

// All inner mappings of the kind, indexed x*n+y for rho/lambda and x for mu.
std::vector<Permutation> inner_mapping_table(const LoopTable& g, InnerKind kind);

// Distinct generators of the kind in sorted order; `full` is the union.
std::vector<Permutation> inner_generators(const LoopTable& g, InnerKind kind);

PermGroup inner_group(const LoopTable& g, InnerKind kind);

// Group generated by all left and right translations.
PermGroup multiplication_group(const LoopTable& g);

bool is_automorphism(const LoopTable& g, const Permutation& phi);

inline constexpr std::size_t kDefaultBruteForceCap = 8;

// Scans all (n-1)! permutations fixing the identity. Throws CapExceeded when
// the order passes `cap`.
PermGroup automorphism_group(const LoopTable& g,
                             std::size_t cap = kDefaultBruteForceCap);

bool is_autotopism(const LoopTable& g, const MappingTriple& t);

// right: every c with (phi, phi R_c, phi R_c) an autotopism;
// left:  every c with (phi L_c, phi, phi L_c) an autotopism.
std::vector<Label> pseudo_automorphism_companions(const LoopTable& g,
                                                  const Permutation& phi,
                                                  Side side);

// Intersection of the left, middle and right nuclei.
std::vector<Label> nucleus(const LoopTable& g);

// Every conjugate L_x^-1 L_y L_x is a left translation and every
// R_x^-1 R_y R_x is a right translation.
bool is_conjugacy_closed(const LoopTable& g);

// x(y.zx) = (xy.z)x for all x, y, z.
bool is_extra(const LoopTable& g);

enum class LoopFlag {
  group,
  commutative,
  a_rho,
  a_lambda,
  a_mu,
  a_loop,
  cc,
  extra,
};
inline constexpr std::size_t kLoopFlagCount = 8;

std::string_view to_string(LoopFlag f);
// Accepts "A_rho", "is_A_rho", "CC", "is_CC", ... (case-insensitive).
std::optional<LoopFlag> parse_loop_flag(std::string_view s);

struct LoopFlags {
  std::array<bool, kLoopFlagCount> values{};

  bool operator[](LoopFlag f) const { return values[static_cast<std::size_t>(f)]; }
  bool& operator[](LoopFlag f) { return values[static_cast<std::size_t>(f)]; }
  friend bool operator==(const LoopFlags&, const LoopFlags&) = default;
};

// Flags only; skips the group-size computations of classify_loop.
LoopFlags classify_flags(const LoopTable& g);

struct ClassificationReport {
  LoopFlags flags;
  std::size_t inn_rho_size = 0;
  std::size_t inn_lambda_size = 0;
  std::size_t inn_mu_size = 0;
  std::size_t inn_size = 0;
  std::size_t automorphism_group_size = 0;
  std::size_t multiplication_group_size = 0;
  std::size_t nucleus_size = 0;

  bool flag(LoopFlag f) const { return flags[f]; }
  std::string to_text() const;
  // "is_group=1 is_commutative=0 ..."
  std::string flags_line() const;
  nlohmann::json to_json() const;
};

ClassificationReport classify_loop(const LoopTable& g,
                                   std::size_t cap = kDefaultBruteForceCap);

enum class LoopFamily { cc, extra, aloop };

std::string_view to_string(LoopFamily f);
std::optional<LoopFamily> parse_loop_family(std::string_view s);

// Grades the identities known to hold in the family. Throws
// PreconditionViolated when `g` is not a member.
TheoremReport check_known_facts(const LoopTable& g, LoopFamily family);

}  // namespace loopforge
