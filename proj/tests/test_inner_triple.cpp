#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopforge/deviation.hpp"
#include "loopforge/error.hpp"
#include "loopforge/inner_maps.hpp"
#include "loopforge/inner_triple.hpp"
#include "loopforge/search.hpp"
#include "support/fixtures.hpp"

using namespace loopforge;

namespace {

LoopTable z(int n) { return fixtures::to_loop(fixtures::cyclic(n)); }

// An order-6 loop whose R(3,1), L(1,2) and T(3) coincide, have order 3
// and satisfy P(x, .) = 0 for every x.
LoopTable loop6() {
  return validate_table({{0, 1, 2, 3, 4, 5},
                         {1, 0, 3, 2, 5, 4},
                         {2, 3, 4, 5, 1, 0},
                         {3, 5, 1, 4, 0, 2},
                         {4, 2, 5, 0, 3, 1},
                         {5, 4, 0, 1, 2, 3}});
}

const Clause* find_clause(const TheoremReport& r, const std::string& label) {
  for (const auto& c : r.clauses)
    if (c.label == label) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("arrangements") {
  CHECK(parse_arrangement("RLT") == Arrangement::rlt);
  CHECK(parse_arrangement("trl") == Arrangement::trl);
  CHECK_FALSE(parse_arrangement("XYZ").has_value());
  const auto g = loop6();
  const InnerTripleLabels labels{3, 1, 1, 2, 3};
  const auto t = inner_triple(g, Arrangement::rlt, labels);
  CHECK(t.a() == right_inner(g, 3, 1));
  CHECK(t.b() == left_inner(g, 1, 2));
  CHECK(t.c() == middle_inner(g, 3));
  const auto u = inner_triple(g, Arrangement::trl, labels);
  CHECK(u.a() == middle_inner(g, 3));
  CHECK(u.b() == right_inner(g, 3, 1));
  CHECK(u.c() == left_inner(g, 1, 2));
}

TEST_CASE("distinct loops are required") {
  CHECK_THROWS_AS(analyze_inner_triple(z(3), z(3), Arrangement::rlt, {}), TablesEqual);
  CHECK_THROWS_AS(analyze_inner_triple(z(3), z(4), Arrangement::rlt, {}), DegreeMismatch);
  CHECK_THROWS_AS(analyze_inner_triple(z(3), principal_isotope(z(3), 0, 1).table, Arrangement::rlt,
                                       {0, 0, 0, 0, 7}),
                  LabelOutOfRange);
}

TEST_CASE("identity triple onto a shifted isotope violates the isotopism premise") {
  const auto shifted = principal_isotope(z(3), 0, 1).table;
  const auto r = analyze_inner_triple(z(3), shifted, Arrangement::rlt, {1, 2, 1, 2, 1});
  CHECK_FALSE(r.preconditions_satisfied());
  CHECK(r.clauses.empty());
  CHECK(r.theorem_id == "inner-triple-RLT");
}

TEST_CASE("order-6 instance: premises hold, conclusions fail") {
  const auto g = loop6();
  const auto target = principal_isotope(g, 3, 4).table;
  CHECK(target != g);
  const InnerTripleLabels labels{3, 1, 1, 2, 3};
  CHECK(is_isotopism(g, target, inner_triple(g, Arrangement::rlt, labels)));

  const auto r = analyze_inner_triple(g, target, Arrangement::rlt, labels);
  REQUIRE(r.preconditions_satisfied());
  const auto* aloop = find_clause(r, "a-i-A-rho");
  REQUIRE(aloop != nullptr);
  CHECK(aloop->verdict == Verdict::fail);
  const auto* exp2 = find_clause(r, "a-i-R(x,y)-exponent-2");
  REQUIRE(exp2 != nullptr);
  CHECK(exp2->verdict == Verdict::fail);
  const auto* commute = find_clause(r, "a-iii-commute");
  REQUIRE(commute != nullptr);
  CHECK(commute->verdict == Verdict::pass);
  CHECK_FALSE(classify_flags(g)[LoopFlag::a_rho]);
}

TEST_CASE("options add the alternative readings") {
  const auto g = loop6();
  const auto target = principal_isotope(g, 3, 4).table;
  const InnerTripleLabels labels{3, 1, 1, 2, 3};
  const auto plain = analyze_inner_triple(g, target, Arrangement::trl, labels);
  const auto extended = analyze_inner_triple(g, target, Arrangement::trl, labels, {true, true});
  CHECK(extended.clauses.size() > plain.clauses.size());
  CHECK(find_clause(plain, "a-ii-inn-rho-alt-identity") == nullptr);
  CHECK(find_clause(extended, "a-ii-inn-rho-alt-identity") != nullptr);
}

TEST_CASE("instance search returns what the analysis accepts") {
  const auto g = loop6();
  for (const auto a : {Arrangement::rlt, Arrangement::lrt, Arrangement::trl}) {
    const auto inst = find_inner_triple_instance(g, a);
    REQUIRE(inst.has_value());
    CHECK(inst->target == principal_isotope(g, inst->f, inst->g).table);
    CHECK(inst->target != g);
    const auto r = analyze_inner_triple(g, inst->target, a, inst->labels);
    CHECK(r.preconditions_satisfied());
  }
  CHECK_FALSE(find_inner_triple_instance(fixtures::to_loop(fixtures::order5_loop()), Arrangement::rlt));
}
