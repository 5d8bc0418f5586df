#include "loopforge/inner_triple.hpp"

#include <cctype>
#include <functional>
#include <vector>

#include "loopforge/deviation.hpp"
#include "loopforge/error.hpp"
#include "loopforge/inner_maps.hpp"
#include "loopforge/perm_group.hpp"

namespace loopforge {

std::string_view to_string(Arrangement a) {
  switch (a) {
    case Arrangement::rlt:
      return "RLT";
    case Arrangement::lrt:
      return "LRT";
    case Arrangement::trl:
      return "TRL";
  }
  return "?";
}

std::optional<Arrangement> parse_arrangement(std::string_view s) {
  std::string up(s);
  for (auto& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (up == "RLT") return Arrangement::rlt;
  if (up == "LRT") return Arrangement::lrt;
  if (up == "TRL") return Arrangement::trl;
  return std::nullopt;
}

std::string InnerTripleLabels::to_string() const {
  return "x=" + std::to_string(x) + " y=" + std::to_string(y) + " u=" + std::to_string(u) +
         " v=" + std::to_string(v) + " z=" + std::to_string(z);
}

MappingTriple inner_triple(const LoopTable& g, Arrangement arrangement,
                           const InnerTripleLabels& l) {
  switch (arrangement) {
    case Arrangement::rlt:
      return {right_inner(g, l.x, l.y), left_inner(g, l.u, l.v), middle_inner(g, l.z)};
    case Arrangement::lrt:
      return {left_inner(g, l.x, l.y), right_inner(g, l.u, l.v), middle_inner(g, l.z)};
    case Arrangement::trl:
      return {middle_inner(g, l.z), right_inner(g, l.x, l.y), left_inner(g, l.u, l.v)};
  }
  throw InputError("unknown arrangement");
}

namespace {

struct Context {
  const LoopTable& g;
  const LoopTable& h;
  const InnerTripleOptions& options;
  Permutation rxy, lxy, ruv, luv, tz, tx, id;
  Permutation le;      // L'_e at the source identity
  Permutation le_alt;  // L'_{e'} at the target identity
  LoopFlags flags;
  // Lazily built groups.
  mutable std::optional<PermGroup> inn_rho, inn_lambda, inn_mu;

  Context(const LoopTable& source, const LoopTable& target, const InnerTripleLabels& l,
          const InnerTripleOptions& opts)
      : g(source),
        h(target),
        options(opts),
        rxy(right_inner(source, l.x, l.y)),
        lxy(left_inner(source, l.x, l.y)),
        ruv(right_inner(source, l.u, l.v)),
        luv(left_inner(source, l.u, l.v)),
        tz(middle_inner(source, l.z)),
        tx(middle_inner(source, l.x)),
        id(Permutation::identity(source.order())),
        le(left_translation(target, source.identity())),
        le_alt(left_translation(target, target.identity())),
        flags(classify_flags(source)) {}

  const PermGroup& inn(InnerKind kind) const {
    auto& slot = kind == InnerKind::rho ? inn_rho : kind == InnerKind::lambda ? inn_lambda : inn_mu;
    if (!slot) slot = inner_group(g, kind);
    return *slot;
  }

  bool iso(const Permutation& a, const Permutation& b, const Permutation& c) const {
    return is_isotopism(g, h, MappingTriple(a, b, c));
  }

  bool premise(const Permutation& phi) const { return p_vanishes_all(g, phi); }
};

// <phi L'_e : phi in family>, compared by element set with Inn_kind(G).
void grade_generated(const Context& c, TheoremReport& report, const std::string& label,
                     InnerKind inn_kind, InnerKind generator_family) {
  const auto& inn = c.inn(inn_kind);
  auto grade = [&](const std::string& lbl, const Permutation& shift) {
    std::vector<Permutation> gens;
    for (const auto& p : inner_generators(c.g, generator_family)) gens.push_back(p * shift);
    const auto generated = group_closure(gens);
    report.add(lbl, generated.same_elements(inn),
               "|Inn|=" + std::to_string(inn.size()) +
                   " |generated|=" + std::to_string(generated.size()));
  };
  grade(label, c.le);
  if (c.options.alternative_identity) grade(label + "-alt-identity", c.le_alt);
}

void grade_family(const Context& c, TheoremReport& report, const std::string& label,
                  LoopFlag flag) {
  report.add(label, c.flags[flag]);
}

void grade_exponent(TheoremReport& report, const std::string& label, const Permutation& p) {
  report.add(label, (p * p).is_identity(), "order " + std::to_string(perm_order(p)));
}

void grade_commutation(TheoremReport& report, const std::string& prefix,
                       const Permutation& p, const Permutation& q) {
  // p q = q p,  p^-1 q = q^-1 p,  q^2 = p^2
  report.add(prefix + "-commute", p * q == q * p);
  report.add(prefix + "-inverse-commute", p.inverse() * q == q.inverse() * p);
  report.add(prefix + "-squares-equal", q * q == p * p);
}

void grade_iso(const Context& c, TheoremReport& report, const std::string& label,
               const Permutation& a, const Permutation& b, const Permutation& d) {
  report.add(label, c.iso(a, b, d));
}

struct Part {
  std::string name;
  const Permutation* premise;
  std::string premise_text;
  std::function<void(TheoremReport&)> grade;
};

}  // namespace

TheoremReport analyze_inner_triple(const LoopTable& g, const LoopTable& target,
                                   Arrangement arrangement,
                                   const InnerTripleLabels& labels,
                                   const InnerTripleOptions& options) {
  if (g.order() != target.order()) {
    throw DegreeMismatch("loops of orders " + std::to_string(g.order()) + " and " +
                         std::to_string(target.order()));
  }
  if (g == target) throw TablesEqual("the two loops must be distinct");
  for (Label v : {labels.x, labels.y, labels.u, labels.v, labels.z}) {
    if (v >= g.order()) {
      throw LabelOutOfRange("label " + std::to_string(v) + " is outside 0.." +
                            std::to_string(g.order() - 1));
    }
  }

  TheoremReport report;
  report.theorem_id = "inner-triple-" + std::string(to_string(arrangement));
  const auto triple = inner_triple(g, arrangement, labels);
  if (!is_isotopism(g, target, triple)) {
    report.violate("triple is an isotopism G -> G'");
    return report;
  }

  const Context c(g, target, labels, options);
  std::vector<Part> parts;
  switch (arrangement) {
    case Arrangement::rlt:
      parts.push_back({"a", &c.rxy, "P(z,R(x,y))=0", [&](TheoremReport& r) {
                         grade_family(c, r, "a-i-A-rho", LoopFlag::a_rho);
                         grade_exponent(r, "a-i-R(x,y)-exponent-2", c.rxy);
                         grade_generated(c, r, "a-ii-inn-mu", InnerKind::mu, InnerKind::lambda);
                         grade_generated(c, r, "a-ii-inn-lambda", InnerKind::lambda, InnerKind::mu);
                         grade_commutation(r, "a-iii", c.tz, c.lxy);
                         grade_iso(c, r, "a-iv-isotopism", c.id, c.rxy * c.luv, c.rxy * c.tz);
                       }});
      parts.push_back({"b", &c.lxy, "P(z,L(x,y))=0", [&](TheoremReport& r) {
                         grade_family(c, r, "b-i-A-lambda", LoopFlag::a_lambda);
                         grade_exponent(r, "b-i-L(x,y)-exponent-2", c.lxy);
                         grade_generated(c, r, "b-ii-inn-mu", InnerKind::mu, InnerKind::lambda);
                         grade_iso(c, r, "b-iii-isotopism", c.luv * c.rxy, c.id, c.luv * c.tz);
                       }});
      parts.push_back({"c", &c.tx, "P(z,T(x))=0", [&](TheoremReport& r) {
                         grade_family(c, r, "c-i-A-mu", LoopFlag::a_mu);
                         grade_exponent(r, "c-i-T(x)-exponent-2", c.tx);
                         grade_generated(c, r, "c-ii-inn-mu", InnerKind::mu, InnerKind::lambda);
                         grade_iso(c, r, "c-iii-isotopism", c.tz * c.rxy, c.tz * c.luv, c.id);
                       }});
      break;
    case Arrangement::lrt:
      parts.push_back({"a", &c.lxy, "P(z,L(x,y))=0", [&](TheoremReport& r) {
                         grade_family(c, r, "a-i-A-lambda", LoopFlag::a_lambda);
                         grade_exponent(r, "a-i-L(x,y)-exponent-2", c.lxy);
                         grade_generated(c, r, "a-ii-inn-mu", InnerKind::mu, InnerKind::rho);
                         grade_generated(c, r, "a-ii-inn-rho", InnerKind::rho, InnerKind::mu);
                         grade_commutation(r, "a-iii", c.tz, c.rxy);
                         grade_iso(c, r, "a-iv-isotopism", c.id, c.lxy * c.ruv, c.lxy * c.tz);
                       }});
      parts.push_back({"b", &c.rxy, "P(z,R(x,y))=0", [&](TheoremReport& r) {
                         grade_family(c, r, "b-i-A-rho", LoopFlag::a_rho);
                         grade_exponent(r, "b-i-R(x,y)-exponent-2", c.rxy);
                         grade_generated(c, r, "b-ii-inn-mu", InnerKind::mu, InnerKind::rho);
                         grade_iso(c, r, "b-iii-isotopism", c.rxy * c.luv, c.id, c.rxy * c.tz);
                       }});
      parts.push_back({"c", &c.tx, "P(z,T(x))=0", [&](TheoremReport& r) {
                         grade_family(c, r, "c-i-A-mu", LoopFlag::a_mu);
                         grade_exponent(r, "c-i-T(x)-exponent-2", c.tx);
                         grade_generated(c, r, "c-ii-inn-mu", InnerKind::mu, InnerKind::rho);
                         grade_iso(c, r, "c-iii-isotopism", c.tz * c.lxy, c.tz * c.ruv, c.id);
                       }});
      break;
    case Arrangement::trl:
      parts.push_back({"a", &c.tx, "P(y,T(x))=0", [&](TheoremReport& r) {
                         grade_family(c, r, "a-i-A-mu", LoopFlag::a_mu);
                         grade_exponent(r, "a-i-L(x,y)-exponent-2", c.lxy);
                         if (options.corrected_reading) {
                           grade_exponent(r, "a-i-T(x)-exponent-2-corrected", c.tx);
                         }
                         grade_generated(c, r, "a-ii-inn-lambda", InnerKind::lambda, InnerKind::rho);
                         grade_generated(c, r, "a-ii-inn-rho", InnerKind::rho, InnerKind::lambda);
                         grade_commutation(r, "a-iii", c.luv, c.rxy);
                         grade_iso(c, r, "a-iv-isotopism", c.id, c.tz * c.rxy, c.tz * c.luv);
                       }});
      parts.push_back({"b", &c.rxy, "P(z,R(x,y))=0", [&](TheoremReport& r) {
                         grade_family(c, r, "b-i-A-rho", LoopFlag::a_rho);
                         grade_exponent(r, "b-i-R(x,y)-exponent-2", c.rxy);
                         grade_generated(c, r, "b-ii-inn-lambda", InnerKind::lambda, InnerKind::rho);
                         grade_iso(c, r, "b-iii-isotopism", c.rxy * c.tz, c.id, c.rxy * c.luv);
                       }});
      parts.push_back({"c", &c.rxy, "P(z,R(x,y))=0", [&](TheoremReport& r) {
                         grade_family(c, r, "c-i-A-lambda", LoopFlag::a_lambda);
                         grade_exponent(r, "c-i-R(x,y)-exponent-2", c.rxy);
                         grade_generated(c, r, "c-ii-inn-lambda", InnerKind::lambda, InnerKind::rho);
                         grade_iso(c, r, "c-iii-isotopism", c.lxy * c.tz, c.lxy * c.ruv, c.id);
                       }});
      if (options.corrected_reading) {
        parts.push_back({"c-corrected", &c.lxy, "P(z,L(x,y))=0", [&](TheoremReport& r) {
                           grade_family(c, r, "c-corrected-i-A-lambda", LoopFlag::a_lambda);
                           grade_exponent(r, "c-corrected-i-L(x,y)-exponent-2", c.lxy);
                           grade_generated(c, r, "c-corrected-ii-inn-lambda", InnerKind::lambda,
                                           InnerKind::rho);
                           grade_iso(c, r, "c-corrected-iii-isotopism", c.lxy * c.tz,
                                     c.lxy * c.ruv, c.id);
                         }});
      }
      break;
  }

  // Combined part: all three premises at once.
  const bool all_premises = c.premise(c.rxy) && c.premise(c.lxy) && c.premise(c.tx);
  auto grade_corollary = [&](TheoremReport& r) {
    grade_family(c, r, "cor-a-A-loop", LoopFlag::a_loop);
    grade_exponent(r, "cor-a-R(x,y)-exponent-2", c.rxy);
    grade_exponent(r, "cor-a-L(x,y)-exponent-2", c.lxy);
    grade_exponent(r, "cor-a-T(x)-exponent-2", c.tx);
    switch (arrangement) {
      case Arrangement::rlt:
        r.add("cor-b-commute", c.tz * c.lxy == c.lxy * c.tz);
        grade_generated(c, r, "cor-c-inn-mu", InnerKind::mu, InnerKind::lambda);
        grade_generated(c, r, "cor-c-inn-lambda", InnerKind::lambda, InnerKind::mu);
        grade_iso(c, r, "cor-d-isotopism-1", c.id, c.rxy * c.luv, c.rxy * c.tz);
        grade_iso(c, r, "cor-d-isotopism-2", c.luv * c.rxy, c.id, c.luv * c.tz);
        grade_iso(c, r, "cor-d-isotopism-3", c.tz * c.rxy, c.tz * c.luv, c.id);
        break;
      case Arrangement::lrt:
        r.add("cor-b-commute", c.tz * c.rxy == c.rxy * c.tz);
        grade_generated(c, r, "cor-c-inn-mu", InnerKind::mu, InnerKind::rho);
        grade_generated(c, r, "cor-c-inn-rho", InnerKind::rho, InnerKind::mu);
        grade_iso(c, r, "cor-d-isotopism-1", c.id, c.lxy * c.ruv, c.lxy * c.tz);
        grade_iso(c, r, "cor-d-isotopism-2", c.rxy * c.luv, c.id, c.rxy * c.tz);
        grade_iso(c, r, "cor-d-isotopism-3", c.tz * c.lxy, c.tz * c.ruv, c.id);
        break;
      case Arrangement::trl:
        r.add("cor-b-commute", c.rxy * c.luv == c.luv * c.rxy);
        grade_generated(c, r, "cor-c-inn-lambda", InnerKind::lambda, InnerKind::rho);
        grade_generated(c, r, "cor-c-inn-rho", InnerKind::rho, InnerKind::lambda);
        grade_iso(c, r, "cor-d-isotopism-1", c.id, c.tz * c.rxy, c.tz * c.luv);
        grade_iso(c, r, "cor-d-isotopism-2", c.rxy * c.tz, c.id, c.rxy * c.luv);
        grade_iso(c, r, "cor-d-isotopism-3", c.lxy * c.tz, c.lxy * c.ruv, c.id);
        break;
    }
  };

  bool any = false;
  for (const auto& part : parts) {
    if (c.premise(*part.premise)) {
      any = true;
      part.grade(report);
    } else {
      report.skip(part.name + "-premise", part.premise_text + " for all z fails");
    }
  }
  if (all_premises) {
    any = true;
    grade_corollary(report);
  } else {
    report.skip("cor-premise", "P(z,R(x,y))=P(z,L(x,y))=P(z,T(x))=0 for all z fails");
  }
  if (!any) report.violate("no part premise P(z,.)=0 for all z holds");
  return report;
}

}  // namespace loopforge
