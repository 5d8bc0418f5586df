#include "loopforge/deviation.hpp"

#include <algorithm>
#include <array>

#include "loopforge/error.hpp"
#include "loopforge/inner_maps.hpp"

namespace loopforge {

namespace {

void check_degree(const LoopTable& g, const Permutation& phi) {
  if (phi.degree() != g.order()) {
    throw DegreeMismatch("permutation of degree " + std::to_string(phi.degree()) +
                         " on a loop of order " + std::to_string(g.order()));
  }
}

std::string at(const char* name, std::size_t v) {
  return std::string(name) + '=' + std::to_string(v);
}

// Left translations of one loop and their inverses, computed once.
class LeftTranslations {
 public:
  explicit LeftTranslations(const LoopTable& g) {
    for (std::size_t x = 0; x < g.order(); ++x) {
      l_.push_back(left_translation(g, static_cast<Label>(x)));
      l_inv_.push_back(l_.back().inverse());
    }
  }
  const Permutation& operator[](Label x) const { return l_[x]; }
  const Permutation& inv(Label x) const { return l_inv_[x]; }

 private:
  std::vector<Permutation> l_;
  std::vector<Permutation> l_inv_;
};

Permutation deviation_with(const LeftTranslations& l, const Permutation& phi,
                           const Permutation& phi_inv, Label x) {
  return phi_inv * l[x] * phi * l.inv(phi(x));
}

bool p_vanishes_with(const LeftTranslations& l, const Permutation& phi,
                     const Permutation& phi_inv, Label x) {
  const Label xp = phi(x);
  return l[x] * phi == phi * l.inv(xp) * phi * l[x] * phi_inv * l[xp];
}

bool p_vanishes_all_with(const LeftTranslations& l, const Permutation& phi,
                         const Permutation& phi_inv) {
  for (std::size_t x = 0; x < phi.degree(); ++x) {
    if (!p_vanishes_with(l, phi, phi_inv, static_cast<Label>(x))) return false;
  }
  return true;
}

}  // namespace

Permutation deviation(const LoopTable& g, const Permutation& phi, Label x) {
  check_degree(g, phi);
  const auto phi_inv = phi.inverse();
  return phi_inv * left_translation(g, x) * phi *
         left_translation(g, phi(x)).inverse();
}

bool p_vanishes(const LoopTable& g, const Permutation& phi, Label x) {
  check_degree(g, phi);
  if (x >= g.order()) {
    throw LabelOutOfRange("label " + std::to_string(x) + " is outside 0.." +
                          std::to_string(g.order() - 1));
  }
  return p_vanishes_with(LeftTranslations(g), phi, phi.inverse(), x);
}

bool p_vanishes_all(const LoopTable& g, const Permutation& phi) {
  check_degree(g, phi);
  return p_vanishes_all_with(LeftTranslations(g), phi, phi.inverse());
}

std::optional<std::pair<Label, Label>> isotopism_counterexample(
    const LoopTable& source, const LoopTable& target, const MappingTriple& t) {
  if (source.order() != target.order() || t.degree() != source.order()) {
    throw DegreeMismatch("isotopism between loops of orders " +
                         std::to_string(source.order()) + " and " +
                         std::to_string(target.order()) + " with a triple of degree " +
                         std::to_string(t.degree()));
  }
  const auto n = static_cast<Label>(source.order());
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      if (target(t.a()(x), t.b()(y)) != t.c()(source(x, y))) return {{x, y}};
    }
  }
  return std::nullopt;
}

bool is_isotopism(const LoopTable& source, const LoopTable& target,
                  const MappingTriple& t) {
  return !isotopism_counterexample(source, target, t).has_value();
}

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::lemma_deviation:
      return "lemma-deviation";
    case TheoremId::p_implies_aut:
      return "p-implies-aut";
    case TheoremId::deviation_characterization:
      return "deviation-characterization";
    case TheoremId::p_implies_exp2:
      return "p-implies-exp2";
    case TheoremId::rita_iso:
      return "rita-iso";
    case TheoremId::main_equivalences:
      return "main-equivalences";
    case TheoremId::main_specialized:
      return "main-specialized";
    case TheoremId::corollary_identities:
      return "corollary-identities";
  }
  return "?";
}

const std::vector<TheoremId>& all_theorem_ids() {
  static const std::vector<TheoremId> ids{
      TheoremId::lemma_deviation,   TheoremId::p_implies_aut,
      TheoremId::deviation_characterization, TheoremId::p_implies_exp2,
      TheoremId::rita_iso,          TheoremId::main_equivalences,
      TheoremId::main_specialized,  TheoremId::corollary_identities,
  };
  return ids;
}

std::optional<TheoremId> parse_theorem_id(std::string_view s) {
  for (auto id : all_theorem_ids()) {
    if (to_string(id) == s) return id;
  }
  return std::nullopt;
}

bool needs_phi(TheoremId id) {
  switch (id) {
    case TheoremId::lemma_deviation:
    case TheoremId::p_implies_aut:
    case TheoremId::deviation_characterization:
    case TheoremId::p_implies_exp2:
      return true;
    default:
      return false;
  }
}

bool needs_triple(TheoremId id) { return !needs_phi(id); }

namespace {

struct PhiContext {
  const LoopTable& g;
  const Permutation& phi;
  Permutation phi_inv;
  LeftTranslations l;

  PhiContext(const LoopTable& table, const Permutation& p)
      : g(table), phi(p), phi_inv(p.inverse()), l(table) {}

  std::size_t n() const { return g.order(); }
};

void grade_lemma(const PhiContext& c, const std::vector<Label>& args,
                 TheoremReport& report) {
  std::vector<Label> xs;
  if (!args.empty()) {
    xs.push_back(args.front());
  } else {
    for (std::size_t x = 0; x < c.n(); ++x) xs.push_back(static_cast<Label>(x));
  }
  std::string cx;
  bool any = false;
  for (Label x : xs) {
    if (!p_vanishes_with(c.l, c.phi, c.phi_inv, x)) continue;
    any = true;
    const auto lhs = deviation_with(c.l, c.phi, c.phi_inv, x);
    const auto rhs = c.l.inv(c.phi(x)) * c.phi * c.l[x] * c.phi_inv;
    if (lhs != rhs && cx.empty()) cx = at("x", x);
  }
  if (!any) {
    report.violate("P(x,phi)=0 holds at no graded x");
    return;
  }
  report.add("deviation-conjugate-form", cx.empty(), cx);
}

bool phi_premises(const PhiContext& c, TheoremReport& report) {
  if (!c.phi.fixes(c.g.identity())) {
    report.violate("phi fixes e");
    return false;
  }
  if (!p_vanishes_all_with(c.l, c.phi, c.phi_inv)) {
    report.violate("P(x,phi)=0 for all x");
    return false;
  }
  return true;
}

void grade_deviation_characterization(const PhiContext& c, TheoremReport& report) {
  const Label e = c.g.identity();
  const std::size_t n = c.n();
  std::vector<Permutation> mu;
  for (std::size_t x = 0; x < n; ++x) {
    mu.push_back(deviation_with(c.l, c.phi, c.phi_inv, static_cast<Label>(x)));
  }

  std::string cx;
  for (std::size_t x = 0; x < n && cx.empty(); ++x) {
    if (c.phi.fixes(e) != mu[x].fixes(e)) cx = at("x", x);
  }
  report.add("fixes-identity-iff-deviation-fixes-identity", cx.empty(), cx);

  // For each candidate companion c, compare the deviation form with the
  // autotopism definition of a left pseudo-automorphism.
  const auto companions = pseudo_automorphism_companions(c.g, c.phi, Side::left);
  cx.clear();
  for (std::size_t comp = 0; comp < n && cx.empty(); ++comp) {
    const auto cl = static_cast<Label>(comp);
    bool deviation_form = true;
    for (std::size_t x = 0; x < n && deviation_form; ++x) {
      const auto l_inner = left_inner(c.g, c.phi(static_cast<Label>(x)), cl);
      deviation_form = mu[x] == l_inner.inverse();
    }
    const bool companion =
        std::binary_search(companions.begin(), companions.end(), cl);
    if (deviation_form != companion) cx = at("c", comp);
  }
  report.add("left-pseudo-automorphism-iff-deviation-form", cx.empty(), cx);

  const bool aut = is_automorphism(c.g, c.phi);
  const bool trivial = std::all_of(mu.begin(), mu.end(),
                                   [](const Permutation& m) { return m.is_identity(); });
  report.add("automorphism-iff-deviation-trivial", aut == trivial,
             std::string("automorphism=") + (aut ? "true" : "false") +
                 " deviation-trivial=" + (trivial ? "true" : "false"));
}

struct TripleContext {
  const LoopTable& g;
  const LoopTable& h;
  const MappingTriple& t;
  LeftTranslations l;
  LeftTranslations lp;
  Permutation a, b, c, a_inv, b_inv, c_inv, id;

  TripleContext(const LoopTable& source, const LoopTable& target,
                const MappingTriple& triple)
      : g(source),
        h(target),
        t(triple),
        l(source),
        lp(target),
        a(triple.a()),
        b(triple.b()),
        c(triple.c()),
        a_inv(a.inverse()),
        b_inv(b.inverse()),
        c_inv(c.inverse()),
        id(Permutation::identity(source.order())) {}

  std::size_t n() const { return g.order(); }
  Permutation mu(const Permutation& phi, Label x) const {
    return deviation_with(l, phi, phi.inverse(), x);
  }
  bool iso(const Permutation& p, const Permutation& q, const Permutation& r) const {
    return is_isotopism(g, h, MappingTriple(p, q, r));
  }
};

void grade_rita_iso(const TripleContext& c, TheoremReport& report) {
  const bool iso = c.iso(c.a, c.b, c.c);
  bool right_form = true;
  bool left_form = true;
  for (std::size_t x = 0; x < c.n(); ++x) {
    const auto xl = static_cast<Label>(x);
    if (right_translation(c.h, c.b(xl)) != c.a_inv * right_translation(c.g, xl) * c.c) {
      right_form = false;
    }
    if (c.lp[c.a(xl)] != c.b_inv * c.l[xl] * c.c) left_form = false;
  }
  auto detail = [](bool p, bool q) {
    return std::string(p ? "true" : "false") + " vs " + (q ? "true" : "false");
  };
  report.add("isotopism-iff-right-translation-form", iso == right_form,
             detail(iso, right_form));
  report.add("isotopism-iff-left-translation-form", iso == left_form,
             detail(iso, left_form));
  report.add("right-iff-left-translation-form", right_form == left_form,
             detail(right_form, left_form));
}

void grade_main_equivalences(const TripleContext& c, TheoremReport& report) {
  for (const auto* p : {&c.a, &c.b, &c.c}) {
    if (!p_vanishes_all_with(c.l, *p, p->inverse())) {
      const char* name = p == &c.a ? "A" : p == &c.b ? "B" : "C";
      report.violate(std::string("P(x,") + name + ")=0 for all x");
      return;
    }
  }
  const bool item1 = c.iso(c.a, c.b, c.c);
  const Permutation& a = c.a;
  const Permutation& b = c.b;
  const Permutation& cc = c.c;
  const auto aa = a * a;
  const auto bb = b * b;
  const auto ccc = cc * cc;
  const auto ab = a * b;
  const auto ba = b * a;
  const auto ca = cc * a;
  const auto cb = cc * b;

  std::vector<std::string> failures(9);
  for (std::size_t xi = 0; xi < c.n(); ++xi) {
    const auto x = static_cast<Label>(xi);
    const std::array<bool, 9> items{
        c.mu(a, x) == cc * c.lp.inv(aa(x)) * c.b_inv * a * c.l[x] * c.a_inv,
        c.mu(a, x) == c.l.inv(a(x)) * ab * c.lp[a(x)] * (a * cc).inverse(),
        c.mu(b, x) == cc * c.lp.inv(ba(x)) * c.l[x] * c.b_inv,
        c.mu(b, x) == c.l.inv(b(x)) * bb * c.lp[a(x)] * (b * cc).inverse(),
        c.mu(cc, x) == cc * c.lp.inv(ca(x)) * c.b_inv * cc * c.l[x] * c.c_inv,
        c.mu(cc, x) == c.l.inv(cc(x)) * cb * c.lp[a(x)] * ccc.inverse(),
        c.iso(c.id, ab, c.mu(a, c.a_inv(x)) * a * cc),
        c.iso(c.b_inv * a, bb, c.mu(b, c.b_inv(x)) * b * cc),
        c.iso(c.c_inv * a, cb, c.mu(cc, c.c_inv(x)) * ccc),
    };
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (items[k] != item1 && failures[k].empty()) {
        failures[k] = at("x", xi) + std::string(" item1=") + (item1 ? "true" : "false");
      }
    }
  }
  for (std::size_t k = 0; k < failures.size(); ++k) {
    report.add("item-" + std::to_string(k + 2) + "-iff-item-1", failures[k].empty(),
               failures[k]);
  }
}

// Grades "for all x: stmt(x)" against the isotopism verdict.
template <typename Stmt>
void grade_forall_iff(const TripleContext& c, bool iso, const std::string& label,
                      Stmt stmt, TheoremReport& report) {
  bool all = true;
  std::string cx;
  for (std::size_t x = 0; x < c.n(); ++x) {
    if (!stmt(static_cast<Label>(x))) {
      all = false;
      if (cx.empty()) cx = at("x", x);
    }
  }
  report.add(label, all == iso,
             std::string("isotopism=") + (iso ? "true" : "false") +
                 (all ? " statement holds for all x" : " statement fails at " + cx));
}

bool block_premise(const TripleContext& c, const Permutation& p) {
  return p.fixes(c.g.identity()) && p_vanishes_all_with(c.l, p, p.inverse());
}

void grade_main_specialized(const TripleContext& c, TheoremReport& report) {
  const bool iso = c.iso(c.a, c.b, c.c);
  const Permutation& a = c.a;
  const Permutation& b = c.b;
  const Permutation& cc = c.c;
  bool any = false;
  if (block_premise(c, a)) {
    any = true;
    const bool ii = c.iso(c.id, a * b, a * cc);
    report.add("A-ii-iff-i", ii == iso,
               std::string("(I,AB,AC) isotopism=") + (ii ? "true" : "false"));
    grade_forall_iff(c, iso, "A-iii-iff-i", [&](Label x) {
      return a * c.l[a(x)] * a * cc == b * c.lp[a(x)];
    }, report);
    grade_forall_iff(c, iso, "A-iv-iff-i", [&](Label x) {
      return a == cc * c.lp[x] * c.b_inv * a * c.l[x];
    }, report);
  } else {
    report.skip("A-block", "premise A fixes e and P(x,A)=0 for all x fails");
  }
  if (block_premise(c, b)) {
    any = true;
    const bool ii = c.iso(b * a, c.id, b * cc);
    report.add("B-ii-iff-i", ii == iso,
               std::string("(BA,I,BC) isotopism=") + (ii ? "true" : "false"));
    grade_forall_iff(c, iso, "B-iii-iff-i", [&](Label x) {
      return b == cc * c.lp.inv((b * a)(x)) * c.l[x];
    }, report);
  } else {
    report.skip("B-block", "premise B fixes e and P(x,B)=0 for all x fails");
  }
  if (block_premise(c, cc)) {
    any = true;
    const bool ii = c.iso(cc * a, cc * b, c.id);
    report.add("C-ii-iff-i", ii == iso,
               std::string("(CA,CB,I) isotopism=") + (ii ? "true" : "false"));
    grade_forall_iff(c, iso, "C-iii-iff-i", [&](Label x) {
      return c.l[x] == cc * b * c.lp[(cc * a)(x)];
    }, report);
  } else {
    report.skip("C-block", "premise C fixes e and P(x,C)=0 for all x fails");
  }
  if (!any) report.violate("one of A, B, C fixes e with P(x,.)=0 for all x");
}

void grade_corollary(const TripleContext& c, TheoremReport& report) {
  if (!c.iso(c.a, c.b, c.c)) {
    report.violate("(A,B,C) is an isotopism G -> G'");
    return;
  }
  if (c.g.identity() == c.h.identity()) {
    report.violate("G and G' have different identity elements");
    return;
  }
  const Permutation& a = c.a;
  const Permutation& b = c.b;
  const Permutation& cc = c.c;
  const Label e = c.g.identity();
  const auto& le = c.lp[e];
  bool any = false;
  if (block_premise(c, a)) {
    any = true;
    std::string cx;
    for (std::size_t x = 0; x < c.n() && cx.empty(); ++x) {
      const auto xl = static_cast<Label>(x);
      if (c.lp[xl] != c.b_inv * c.l[a(xl)] * cc) cx = at("x", x);
    }
    report.add("A-translation-form", cx.empty(), cx);
    report.add("A-i-C-equals-BLe'", cc == b * le);
    report.add("A-i-B-equals-CLe'", b == cc * le);
    report.add("A-i-Le'-squared-identity", (le * le).is_identity());
    report.add("A-ii-Cinv-B-equals-Binv-C", c.c_inv * b == c.b_inv * cc);
    report.add("A-ii-CB-equals-BC", cc * b == b * cc);
  } else {
    report.skip("A-block", "premise A fixes e and P(x,A)=0 for all x fails");
  }
  const auto& le_a = c.lp[a(e)];
  if (block_premise(c, b)) {
    any = true;
    report.add("B-C-equals-BLeA'", cc == b * le_a);
  } else {
    report.skip("B-block", "premise B fixes e and P(x,B)=0 for all x fails");
  }
  if (block_premise(c, cc)) {
    any = true;
    report.add("C-C-equals-BLeA'", cc == b * le_a);
  } else {
    report.skip("C-block", "premise C fixes e and P(x,C)=0 for all x fails");
  }
  if (!any) report.violate("one of A, B, C fixes e with P(x,.)=0 for all x");
}

}  // namespace

TheoremReport verify_theorem(const TheoremInstance& inst) {
  TheoremReport report;
  report.theorem_id = std::string(to_string(inst.theorem_id));
  const LoopTable& g = inst.source;

  if (needs_phi(inst.theorem_id)) {
    if (!inst.phi) {
      throw MalformedInstance(report.theorem_id + " needs a permutation phi");
    }
    if (inst.phi->degree() != g.order()) {
      throw MalformedInstance(report.theorem_id + ": phi has degree " +
                              std::to_string(inst.phi->degree()) + ", loop has order " +
                              std::to_string(g.order()));
    }
    for (Label x : inst.args) {
      if (x >= g.order()) {
        throw MalformedInstance(report.theorem_id + ": label " + std::to_string(x) +
                                " out of range");
      }
    }
    const PhiContext c(g, *inst.phi);
    switch (inst.theorem_id) {
      case TheoremId::lemma_deviation:
        grade_lemma(c, inst.args, report);
        break;
      case TheoremId::p_implies_aut:
        if (phi_premises(c, report)) {
          report.add("phi-is-automorphism", is_automorphism(g, c.phi));
        }
        break;
      case TheoremId::p_implies_exp2:
        if (phi_premises(c, report)) {
          report.add("phi-squared-identity", (c.phi * c.phi).is_identity(),
                     "order " + std::to_string(perm_order(c.phi)));
        }
        break;
      case TheoremId::deviation_characterization:
        grade_deviation_characterization(c, report);
        break;
      default:
        break;
    }
    return report;
  }

  if (!inst.target || !inst.triple) {
    throw MalformedInstance(report.theorem_id + " needs a target loop and a triple");
  }
  if (inst.target->order() != g.order() || inst.triple->degree() != g.order()) {
    throw MalformedInstance(report.theorem_id + ": source, target and triple degrees differ");
  }
  const TripleContext c(g, *inst.target, *inst.triple);
  switch (inst.theorem_id) {
    case TheoremId::rita_iso:
      grade_rita_iso(c, report);
      break;
    case TheoremId::main_equivalences:
      grade_main_equivalences(c, report);
      break;
    case TheoremId::main_specialized:
      grade_main_specialized(c, report);
      break;
    case TheoremId::corollary_identities:
      grade_corollary(c, report);
      break;
    default:
      break;
  }
  return report;
}

}  // namespace loopforge
