#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/inner_maps.hpp"
#include "loopforge/inner_triple.hpp"
#include "loopforge/loop_table.hpp"

namespace loopforge {

inline constexpr std::size_t kDefaultEnumerationCap = 6;
inline constexpr std::size_t kMaxEnumerationCap = 7;

struct EnumerationOptions {
  std::size_t cap = kDefaultEnumerationCap;
  std::size_t workers = 1;
};

// Every normalized loop of order n (identity 0, first row and column in
// natural order), in lexicographic order of the row-major cells. Throws
// CapExceeded when n is outside 1..cap or cap exceeds kMaxEnumerationCap.
std::vector<LoopTable> enumerate_loops(std::size_t n, const EnumerationOptions& opts = {});

// Streams the same sequence to `sink` (serial).
void for_each_loop(std::size_t n, const std::function<void(const LoopTable&)>& sink,
                   std::size_t cap = kDefaultEnumerationCap);

// Number of normalized loops without materializing them.
std::size_t count_loops(std::size_t n, const EnumerationOptions& opts = {});

struct IsomorphismClass {
  LoopTable representative;  // lexicographically least normalized relabeling
  std::size_t size = 0;      // input tables in the class
};

// Lexicographically least table among all identity-fixing relabelings of
// normalized(g).
LoopTable canonical_form(const LoopTable& g);

// Representatives sorted by table; sizes sum to tables.size(). Throws
// DegreeMismatch on mixed orders.
std::vector<IsomorphismClass> isomorphism_classes(const std::vector<LoopTable>& tables,
                                                  std::size_t workers = 1);

/// Existence condition on the inner mappings of one family.
struct InnerCondition {
  enum class Type {
    // some inner mapping of the family has order exactly `k`
    order_equals,
    // some inner mapping of the family satisfies P(z, phi) = 0 for every z
    p_vanishes_all,
  };
  Type type = Type::order_equals;
  InnerKind family = InnerKind::rho;  // rho, lambda or mu
  std::size_t k = 2;

  std::string to_string() const;
};

// "order:rho:2" or "pvanish:lambda".
std::optional<InnerCondition> parse_inner_condition(const std::string& s);

bool satisfies(const LoopTable& g, const InnerCondition& cond);

struct WitnessQuery {
  std::size_t min_order = 1;
  std::size_t max_order = 1;
  // Conjunction: each flag must take the paired value.
  std::vector<std::pair<LoopFlag, bool>> required_flags;
  std::vector<InnerCondition> inner_conditions;
  std::optional<Arrangement> arrangement;
  std::size_t cap = kDefaultEnumerationCap;
  std::size_t workers = 1;
};

// Parses "A_rho,!CC,!extra" (also '&' separated, "not" / "~" / "!"
// negation). Throws InputError on unknown flag names.
std::vector<std::pair<LoopFlag, bool>> parse_flag_expression(const std::string& expr);
std::string format_flag_expression(const std::vector<std::pair<LoopFlag, bool>>& flags);

// An inner-mapping triple instance: target is the principal isotope with
// parameters (f, g) and the arranged triple is an isotopism onto it.
struct InnerTripleInstance {
  Arrangement arrangement = Arrangement::rlt;
  InnerTripleLabels labels;
  Label f = 0;
  Label g = 0;
  LoopTable target;
};

struct Witness {
  LoopTable table;
  ClassificationReport classification;
  std::optional<InnerTripleInstance> instance;
};

// First (labels, principal isotope) in lexicographic order for which the
// arranged triple maps `g` onto a principal isotope distinct from g and at
// least one part premise of analyze_inner_triple holds.
std::optional<InnerTripleInstance> find_inner_triple_instance(const LoopTable& g,
                                                              Arrangement arrangement);

bool matches_flags(const LoopFlags& flags, const std::vector<std::pair<LoopFlag, bool>>& req);

// Enumerates orders min..max, filters, and returns witnesses in
// enumeration order. With an arrangement, only loops that carry an
// inner-triple instance are kept. Identical for every worker count.
std::vector<Witness> find_witnesses(const WitnessQuery& q);

// Comment line plus table block, the witness output format.
std::string format_witness(const Witness& w);

}  // namespace loopforge
