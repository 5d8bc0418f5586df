#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopforge/error.hpp"
#include "loopforge/loop_table.hpp"
#include "loopforge/perm_group.hpp"
#include "loopforge/permutation.hpp"
#include "loopforge/table_io.hpp"
#include "support/fixtures.hpp"

using namespace loopforge;

namespace {

LoopTable z(int n) { return fixtures::to_loop(fixtures::cyclic(n)); }

}  // namespace

TEST_CASE("validate_table accepts Z3 and finds its identity") {
  const auto g = validate_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(g.order() == 3);
  CHECK(g.identity() == 0);
  CHECK(g(1, 2) == 0);
}

TEST_CASE("validate_table rejects bad tables") {
  CHECK_THROWS_AS(validate_table({{0, 1}, {1, 1}}), NotLatin);
  CHECK_THROWS_AS(validate_table({{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}), NoIdentity);
  CHECK_THROWS_AS(validate_table({{0, 1}, {1}}), InputError);
  CHECK_THROWS_AS(validate_table({{0, 1}, {1, 2}}), InputError);
  CHECK_THROWS_AS(validate_table({}), InputError);
  // declared identity is checked, not trusted
  CHECK_THROWS_AS(validate_table({{0, 1}, {1, 0}}, Label{1}), NoIdentity);
}

TEST_CASE("NotLatin names the offending line") {
  try {
    validate_table({{0, 1, 2}, {1, 2, 0}, {2, 2, 1}});
    FAIL("expected NotLatin");
  } catch (const NotLatin& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
}

TEST_CASE("translations") {
  const auto g = z(3);
  CHECK(translation(g, Side::left, 1) == Permutation{1, 2, 0});
  CHECK(translation(g, Side::right, 2) == Permutation{2, 0, 1});
  for (const auto& [name, t] : fixtures::small_groups()) {
    const auto h = fixtures::to_loop(t);
    CAPTURE(name);
    CHECK(left_translation(h, h.identity()).is_identity());
    CHECK(right_translation(h, h.identity()).is_identity());
  }
}

TEST_CASE("perm_product composes left to right") {
  const Permutation a{1, 0, 2}, b{0, 2, 1};
  CHECK(perm_product({a, b}) == Permutation{2, 0, 1});
  const Permutation p{3, 0, 1, 2};
  CHECK(perm_product({p, p.inverse()}).is_identity());
  const auto l1 = left_translation(z(3), 1);
  CHECK(perm_product({l1, l1, l1}).is_identity());
  CHECK_THROWS_AS(perm_product(std::span<const Permutation>{}), InputError);
  CHECK_THROWS_AS(a * Permutation({0, 1}), DegreeMismatch);
}

TEST_CASE("Permutation rejects non-bijections") {
  CHECK_THROWS_AS(Permutation({0, 0, 1}), InputError);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), InputError);
}

TEST_CASE("perm_order") {
  CHECK(perm_order(Permutation::identity(4)) == 1);
  CHECK(perm_order(Permutation{0, 3, 2, 1}) == 2);
  CHECK(perm_order(Permutation{1, 2, 0}) == 3);
  CHECK(perm_order(Permutation{1, 0, 3, 4, 2}) == 6);
  CHECK(perm_power(Permutation{1, 2, 0}, 3).is_identity());
}

TEST_CASE("group_closure") {
  const std::vector<Permutation> c3{Permutation{1, 2, 0}};
  CHECK(group_closure(c3).size() == 3);
  const std::vector<Permutation> s3{Permutation{1, 0, 2}, Permutation{1, 2, 0}};
  CHECK(group_closure(s3).size() == 6);

  const auto g = z(3);
  std::vector<Permutation> ls;
  for (Label x = 0; x < 3; ++x) ls.push_back(left_translation(g, x));
  const auto closed = group_closure(ls);
  std::vector<Permutation> sorted = ls;
  std::sort(sorted.begin(), sorted.end());
  CHECK(closed.elements() == sorted);

  CHECK_THROWS_AS(group_closure(s3, 5), ElementBudgetExceeded);
  CHECK_THROWS_AS(group_closure(std::span<const Permutation>{}), InputError);
}

TEST_CASE("group_closure agrees with the oracle closure") {
  const std::vector<std::vector<oracle::Map>> gen_sets{
      {{1, 2, 3, 0}, {0, 3, 2, 1}},
      {{1, 0, 2, 3, 4}, {1, 2, 3, 4, 0}},
      {{1, 0, 3, 2, 4}, {0, 2, 1, 4, 3}},
      {{2, 0, 1, 4, 3, 5}},
  };
  for (const auto& gens : gen_sets) {
    std::vector<Permutation> ps;
    for (const auto& m : gens) ps.push_back(fixtures::to_perm(m));
    const auto expect = oracle::closure(gens, static_cast<int>(gens[0].size()));
    const auto got = group_closure(ps);
    REQUIRE(got.size() == expect.size());
    std::size_t i = 0;
    for (const auto& m : expect) CHECK(fixtures::to_map(got.elements()[i++]) == m);
  }
}

TEST_CASE("principal_isotope") {
  const auto g = z(3);
  const auto iso = principal_isotope(g, 0, 1);
  CHECK(iso.table.rows() == std::vector<std::vector<Label>>{{2, 0, 1}, {0, 1, 2}, {1, 2, 0}});
  CHECK(iso.table.identity() == 1);
  CHECK(iso.triple ==
        MappingTriple(right_translation(g, 1), left_translation(g, 0), Permutation::identity(3)));

  const auto same = principal_isotope(g, 0, 0);
  CHECK(same.table == g);
  CHECK(same.triple == MappingTriple::identity(3));

  CHECK(principal_isotope(z(4), 0, 2).table.identity() == 2);
}

TEST_CASE("principal isotopes satisfy the isotopism identity (oracle)") {
  for (const auto& t : {fixtures::cyclic(4), fixtures::s3(), fixtures::order5_loop()}) {
    const auto g = fixtures::to_loop(t);
    for (Label f = 0; f < g.order(); ++f)
      for (Label h = 0; h < g.order(); ++h) {
        const auto iso = principal_isotope(g, f, h);
        CHECK(iso.table.identity() == g(f, h));
        CHECK(oracle::is_isotopism(t, fixtures::to_table(iso.table), fixtures::to_map(iso.triple.a()),
                                   fixtures::to_map(iso.triple.b()), fixtures::to_map(iso.triple.c())));
      }
  }
}

TEST_CASE("normalized and relabel") {
  const auto iso = principal_isotope(z(3), 0, 1).table;
  const auto n = normalized(iso);
  CHECK(n.identity() == 0);
  CHECK(oracle::isomorphic(fixtures::to_table(n), fixtures::to_table(iso)));
  const auto r = relabel(z(3), Permutation{0, 2, 1});
  CHECK(r == z(3));  // x -> 2x is an automorphism
}

TEST_CASE("associativity and commutativity") {
  CHECK(is_associative(z(5)));
  CHECK(is_commutative(z(5)));
  const auto s3 = fixtures::to_loop(fixtures::s3());
  CHECK(is_associative(s3));
  CHECK_FALSE(is_commutative(s3));
  CHECK_FALSE(is_associative(fixtures::to_loop(fixtures::order5_loop())));
}

TEST_CASE("table text format") {
  const auto g = parse_table("# Z3\n3\n0 1 2\n1 2 0\n2 0 1\n", "z3");
  CHECK(g == z(3));
  CHECK(parse_table(format_table(g)) == g);

  const auto shifted = principal_isotope(z(3), 0, 1).table;
  CHECK(parse_table(format_table(shifted)) == shifted);

  try {
    parse_table("3\n0 1 2\n1 1 0\n2 0 1\n", "bad.tbl");
    FAIL("expected NotLatin");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad.tbl") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_table("3\n0 1 2\n1 2 0\n", "short"), InputError);
  CHECK_THROWS_AS(parse_table("x\n", "nan"), InputError);
  CHECK_THROWS_AS(read_table_file("/nonexistent/table.tbl"), InputError);
}

TEST_CASE("table stream splits blocks") {
  const auto text = format_table(z(2)) + "\n" + format_table(z(3));
  const auto tables = parse_table_stream(text, "stream");
  REQUIRE(tables.size() == 2);
  CHECK(tables[1] == z(3));
}

TEST_CASE("permutation and triple formats round-trip") {
  const Permutation p{0, 3, 1, 2};
  CHECK(format_permutation(p) == "0 3 1 2\n");
  CHECK(parse_permutation(format_permutation(p)) == p);
  CHECK_THROWS_AS(parse_permutation("0 0 1"), InputError);
  const MappingTriple t(Permutation{1, 2, 0}, Permutation{0, 1, 2}, Permutation{2, 1, 0});
  CHECK(parse_triple(format_triple(t)) == t);
  CHECK_THROWS_AS(parse_triple("0 1\n0 1 2\n0 1 2\n"), InputError);
}
