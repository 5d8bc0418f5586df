// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion 3   run one

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "loopforge/deviation.hpp"
#include "loopforge/inner_maps.hpp"
#include "loopforge/inner_triple.hpp"
#include "loopforge/search.hpp"
#include "loopforge/table_io.hpp"
#include "support/fixtures.hpp"
#include "support/theorem_oracle.hpp"

using namespace loopforge;

namespace {

constexpr double kExhaustiveBudgetSeconds = 60.0;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::vector<LoopTable> loops_up_to(std::size_t max) {
  std::vector<LoopTable> out;
  for (std::size_t n = 1; n <= max; ++n)
    for (auto& g : enumerate_loops(n)) out.push_back(std::move(g));
  return out;
}

std::vector<Permutation> fixing_perms(const LoopTable& g) {
  std::vector<Permutation> out;
  for (const auto& m : oracle::fixing_maps(static_cast<int>(g.order()), g.identity()))
    out.push_back(fixtures::to_perm(m));
  return out;
}

std::vector<Permutation> all_perms(std::size_t n) {
  std::vector<Permutation> out;
  std::vector<Label> image(n);
  std::iota(image.begin(), image.end(), Label{0});
  do out.emplace_back(image);
  while (std::next_permutation(image.begin(), image.end()));
  return out;
}

TheoremReport verify_phi(TheoremId id, const LoopTable& g, const Permutation& phi) {
  return verify_theorem({id, g, std::nullopt, std::nullopt, phi, {}});
}

TheoremReport verify_triple(TheoremId id, const LoopTable& g, const LoopTable& h, const MappingTriple& t) {
  return verify_theorem({id, g, h, t, std::nullopt, {}});
}

std::size_t failed(const TheoremReport& r) {
  return static_cast<std::size_t>(std::count_if(r.clauses.begin(), r.clauses.end(),
                                                [](const Clause& c) { return c.verdict == Verdict::fail; }));
}

Outcome ac1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto loops = loops_up_to(5);
  o.require(loops.size() == 63, "63 normalized tables at orders 1..5 (got " + std::to_string(loops.size()) + ")");

  struct Tally {
    std::size_t instances = 0, satisfied = 0, fails = 0;
    std::string first;
  };
  std::map<TheoremId, Tally> tally;
  std::size_t phis = 0;
  for (const auto& g : loops) {
    for (const auto& phi : fixing_perms(g)) {
      ++phis;
      for (const auto id : {TheoremId::lemma_deviation, TheoremId::p_implies_aut, TheoremId::p_implies_exp2,
                            TheoremId::deviation_characterization}) {
        const auto r = verify_phi(id, g, phi);
        auto& t = tally[id];
        ++t.instances;
        t.satisfied += r.preconditions_satisfied();
        const auto f = failed(r);
        if (f > 0 && t.first.empty()) {
          std::ostringstream s;
          s << "first: loop rows";
          for (const auto& row : g.rows()) {
            s << ' ';
            for (auto v : row) s << v;
          }
          s << " phi=[" << phi.to_string() << "]";
          t.first = s.str();
        }
        t.fails += f;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::pair<TheoremId, const char*> parts[] = {
      {TheoremId::lemma_deviation, "(a) lemma-deviation"},
      {TheoremId::p_implies_aut, "(b) p-implies-aut"},
      {TheoremId::p_implies_exp2, "(c) p-implies-exp2"},
      {TheoremId::deviation_characterization, "(d) deviation-characterization"},
  };
  std::size_t total_fails = 0;
  for (const auto& [id, name] : parts) {
    const auto& t = tally[id];
    total_fails += t.fails;
    o.require(t.fails == 0, std::string(name) + ": " + std::to_string(t.instances) + " instances, " +
                                std::to_string(t.satisfied) + " with premises, " + std::to_string(t.fails) +
                                " clause failures" + (t.first.empty() ? "" : "; " + t.first));
  }
  o.require(secs < kExhaustiveBudgetSeconds, "runtime " + std::to_string(secs) + " s < 60 s");
  o.summary = std::to_string(phis) + " (loop, phi) pairs, " + std::to_string(total_fails) + " clause failures";
  return o;
}

Outcome ac2() {
  Outcome o;
  std::size_t principal = 0, disagreements = 0;
  for (const auto& g : loops_up_to(5))
    for (Label f = 0; f < g.order(); ++f)
      for (Label h = 0; h < g.order(); ++h) {
        const auto iso = principal_isotope(g, f, h);
        ++principal;
        disagreements += failed(verify_triple(TheoremId::rita_iso, g, iso.table, iso.triple));
      }
  o.require(disagreements == 0, std::to_string(principal) + " principal isotopes, " +
                                    std::to_string(disagreements) + " disagreements");

  std::mt19937 rng(5);
  std::size_t rejected = 0, inconsistent = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto tables = enumerate_loops(n);
    std::size_t got = 0;
    for (std::size_t attempt = 0; got < 100 && attempt < 100000; ++attempt) {
      const auto& g = tables[rng() % tables.size()];
      const auto target = principal_isotope(g, static_cast<Label>(rng() % n), static_cast<Label>(rng() % n)).table;
      auto rand_perm = [&] {
        std::vector<Label> v(n);
        std::iota(v.begin(), v.end(), Label{0});
        std::shuffle(v.begin(), v.end(), rng);
        return Permutation(v);
      };
      const MappingTriple t(rand_perm(), rand_perm(), rand_perm());
      if (is_isotopism(g, target, t)) continue;
      ++got;
      const auto r = verify_triple(TheoremId::rita_iso, g, target, t);
      // all three conditions false: every equivalence clause passes
      inconsistent += failed(r);
    }
    o.require(got == 100, "order " + std::to_string(n) + ": " + std::to_string(got) + " random non-isotopism triples");
    rejected += got;
  }
  o.notes.push_back("note order 1 admits no non-isotopism triple");
  o.require(inconsistent == 0, std::to_string(rejected) + " non-isotopism triples, " +
                                   std::to_string(inconsistent) + " inconsistent rejections");
  o.summary = std::to_string(disagreements + inconsistent) + " disagreements";
  return o;
}

Outcome ac3() {
  Outcome o;
  std::size_t trivial_fail = 0, trivial_violated = 0, loops = 0;
  std::size_t graded = 0, graded_fail = 0, oracle_mismatch = 0, premise_instances = 0;
  for (const auto& g : loops_up_to(5)) {
    ++loops;
    const auto r = verify_triple(TheoremId::main_equivalences, g, g, MappingTriple::identity(g.order()));
    trivial_violated += !r.preconditions_satisfied();
    trivial_fail += failed(r);
    const auto t = fixtures::to_table(g);
    for (Label f = 0; f < g.order(); ++f)
      for (Label h = 0; h < g.order(); ++h) {
        const auto iso = principal_isotope(g, f, h);
        const auto rep = verify_triple(TheoremId::main_equivalences, g, iso.table, iso.triple);
        if (!rep.preconditions_satisfied()) continue;
        ++premise_instances;
        const auto expect = oracle::main_items_agree(t, fixtures::to_table(iso.table), fixtures::to_map(iso.triple.a()),
                                                     fixtures::to_map(iso.triple.b()),
                                                     fixtures::to_map(iso.triple.c()));
        for (std::size_t k = 0; k < rep.clauses.size(); ++k) {
          ++graded;
          graded_fail += rep.clauses[k].verdict == Verdict::fail;
          oracle_mismatch += (rep.clauses[k].verdict == Verdict::pass) != expect[k];
        }
      }
  }
  o.require(trivial_violated == 0 && trivial_fail == 0,
            "(G,G,(I,I,I)) on " + std::to_string(loops) + " loops: " + std::to_string(trivial_violated) +
                " premise violations, " + std::to_string(trivial_fail) + " failures");
  o.require(graded_fail == 0, std::to_string(premise_instances) + " principal-isotope instances with premises, " +
                                  std::to_string(graded) + " graded clauses, " + std::to_string(graded_fail) +
                                  " failures");
  o.require(oracle_mismatch == 0, "pointwise oracle agrees on every graded clause (" +
                                      std::to_string(oracle_mismatch) + " mismatches)");
  o.summary = std::to_string(trivial_fail + graded_fail) + " failures among graded clauses";
  return o;
}

Outcome ac4() {
  Outcome o;
  std::size_t group_fails = 0;
  for (const auto& [name, t] : fixtures::small_groups()) {
    const auto g = fixtures::to_loop(t);
    for (const auto fam : {LoopFamily::cc, LoopFamily::extra, LoopFamily::aloop}) {
      const auto r = check_known_facts(g, fam);
      const auto f = failed(r);
      group_fails += f;
      if (f) o.notes.push_back("FAIL " + name + " " + std::string(to_string(fam)));
    }
  }
  o.require(group_fails == 0, std::to_string(fixtures::small_groups().size()) +
                                  " groups of order <= 8 x {cc, extra, aloop}: " + std::to_string(group_fails) +
                                  " failures");
  std::size_t cc = 0, extra = 0, cc_fail = 0, extra_fail = 0;
  for (std::size_t n = 1; n <= 6; ++n)
    for_each_loop(n, [&](const LoopTable& g) {
      const auto f = classify_flags(g);
      if (f[LoopFlag::cc]) {
        ++cc;
        cc_fail += failed(check_known_facts(g, LoopFamily::cc));
      }
      if (f[LoopFlag::extra]) {
        ++extra;
        extra_fail += failed(check_known_facts(g, LoopFamily::extra));
      }
    });
  o.require(cc_fail == 0, std::to_string(cc) + " CC loops at orders 1..6: " + std::to_string(cc_fail) + " failures");
  o.require(extra_fail == 0,
            std::to_string(extra) + " extra loops at orders 1..6: " + std::to_string(extra_fail) + " failures");
  o.summary = std::to_string(group_fails + cc_fail + extra_fail) + " failures";
  return o;
}

Outcome ac5() {
  Outcome o;
  const std::size_t frozen[] = {1, 1, 1, 4, 56};
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto got = enumerate_loops(n).size();
    const auto brute = oracle::count_reduced_latin(static_cast<int>(n));
    o.require(got == frozen[n - 1] && brute == frozen[n - 1],
              "n=" + std::to_string(n) + ": enumerated " + std::to_string(got) + ", oracle " +
                  std::to_string(brute) + ", fixture " + std::to_string(frozen[n - 1]));
  }
  const auto classes = isomorphism_classes(enumerate_loops(4));
  o.require(classes.size() == 2, "order-4 isomorphism classes: " + std::to_string(classes.size()));

  auto dump = [](const std::vector<LoopTable>& ts) {
    std::string s;
    for (const auto& t : ts) s += format_table(t) + '\n';
    return s;
  };
  const auto serial = dump(enumerate_loops(6, {6, 1}));
  const auto parallel = dump(enumerate_loops(6, {6, 4}));
  const auto count6 = count_loops(6);
  o.require(count6 == 9408, "n=6 count " + std::to_string(count6) + " (frozen 9408)");
  o.require(serial == parallel, "n=6 serial and 4-worker output byte-identical (" +
                                    std::to_string(serial.size()) + " bytes)");
  o.summary = "counts 1 1 1 4 56 9408, 2 classes at order 4";
  return o;
}

Outcome ac6() {
  Outcome o;
  WitnessQuery base;
  base.min_order = 5;
  base.max_order = 6;
  base.required_flags = parse_flag_expression("A_rho,!CC,!extra");
  base.inner_conditions = {*parse_inner_condition("order:rho:2")};

  auto render = [](const std::vector<Witness>& ws) {
    std::string s;
    for (const auto& w : ws) s += format_witness(w) + '\n';
    return s;
  };
  std::size_t witnesses = 0, instances = 0, instance_fails = 0, reverify_fails = 0;
  const std::optional<Arrangement> arrangements[] = {std::nullopt, Arrangement::rlt, Arrangement::lrt,
                                                     Arrangement::trl};
  for (const auto& arr : arrangements) {
    auto q = base;
    q.arrangement = arr;
    const std::string tag = arr ? std::string(to_string(*arr)) : "none";
    const auto first = find_witnesses(q);
    const auto second = find_witnesses(q);
    q.workers = 4;
    const auto parallel = find_witnesses(q);
    o.require(render(first) == render(second) && render(first) == render(parallel),
              "arrangement " + tag + ": " + std::to_string(first.size()) +
                  " witnesses, identical across two runs and 4 workers");
    witnesses = std::max(witnesses, first.size());
    for (const auto& w : first) {
      const auto t = fixtures::to_table(w.table);
      const auto f = classify_flags(w.table);
      bool order2 = false;
      for (int x = 0; x < static_cast<int>(t.size()); ++x)
        for (int y = 0; y < static_cast<int>(t.size()); ++y) {
          const auto r = oracle::rho(t, x, y);
          order2 |= r != oracle::id_map(static_cast<int>(t.size())) &&
                    oracle::then(r, r) == oracle::id_map(static_cast<int>(t.size()));
        }
      const bool ok = f[LoopFlag::a_rho] && !oracle::is_cc(t) && !oracle::is_extra(t) && order2 &&
                      classify_loop(w.table).flags == w.classification.flags;
      reverify_fails += !ok;
      if (w.instance) {
        ++instances;
        const auto r = analyze_inner_triple(w.table, w.instance->target, w.instance->arrangement, w.instance->labels);
        instance_fails += !r.preconditions_satisfied() || r.any_failed() ||
                          std::any_of(r.clauses.begin(), r.clauses.end(), [](const Clause& c) {
                            return c.verdict != Verdict::pass && c.label.find("premise") == std::string::npos;
                          });
      }
    }
  }
  o.require(reverify_fails == 0, "every witness re-verifies from scratch (" + std::to_string(reverify_fails) +
                                     " failures)");
  o.require(instance_fails == 0, std::to_string(instances) + " inner-triple instances returned, " +
                                     std::to_string(instance_fails) + " with a non-PASS conclusion");
  if (instances == 0) o.notes.push_back("note no inner-triple instance exists among the witnesses at orders 5..6");
  o.summary = std::to_string(witnesses) + " witnesses at orders 5..6, " + std::to_string(instances) +
              " inner-triple instances";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::size_t checked = 0, disagree = 0, automorphisms = 0;
  for (const auto& g : loops_up_to(5))
    for (const auto& phi : all_perms(g.order())) {
      ++checked;
      const bool aut = is_automorphism(g, phi);
      const bool auto_topism = is_autotopism(g, MappingTriple(phi, phi, phi));
      bool trivial = true;
      for (Label x = 0; x < g.order() && trivial; ++x) trivial = deviation(g, phi, x).is_identity();
      automorphisms += aut;
      disagree += !(aut == auto_topism && aut == trivial);
    }
  o.require(disagree == 0, std::to_string(checked) + " (loop, phi) pairs, " + std::to_string(automorphisms) +
                               " automorphisms, " + std::to_string(disagree) + " disagreements");
  o.summary = std::to_string(disagree) + " disagreements";
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
      {"exhaustive single-permutation suite, orders <= 5", ac1},
      {"translation-form equivalence for isotopisms", ac2},
      {"ten-way equivalence smoke suite", ac3},
      {"known-fact suites on groups, CC and extra loops", ac4},
      {"enumeration fixtures", ac5},
      {"witness pipeline", ac6},
      {"automorphism cross-path consistency", ac7},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "run a single criterion (1-7)")->check(CLI::Range(1, 7));
  app.add_flag("-v,--verbose", verbose, "print per-check notes");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    const auto& [name, fn] = criteria()[i];
    const auto start = std::chrono::steady_clock::now();
    const auto o = fn();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all_pass = all_pass && o.pass;
    std::cout << "AC" << i + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.summary << " ["
              << std::fixed << std::setprecision(2) << secs << " s]\n";
    for (const auto& n : o.notes)
      if (verbose || !o.pass || n.starts_with("note")) std::cout << "    " << n << '\n';
  }
  return all_pass ? 0 : 1;
}
