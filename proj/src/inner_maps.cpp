#include "loopforge/inner_maps.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "loopforge/error.hpp"

namespace loopforge {

namespace {

std::vector<Permutation> translations(const LoopTable& g, Side side) {
  std::vector<Permutation> out;
  out.reserve(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    out.push_back(translation(g, side, static_cast<Label>(x)));
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

std::string labels(std::initializer_list<std::pair<const char*, std::size_t>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += ' ';
    out += std::string(k) + '=' + std::to_string(v);
  }
  return out;
}

void sort_unique(std::vector<Permutation>& ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
}

}  // namespace

std::string_view to_string(InnerKind k) {
  switch (k) {
    case InnerKind::rho:
      return "rho";
    case InnerKind::lambda:
      return "lambda";
    case InnerKind::mu:
      return "mu";
    case InnerKind::full:
      return "full";
  }
  return "?";
}

std::optional<InnerKind> parse_inner_kind(std::string_view s) {
  const auto l = lower(s);
  if (l == "rho") return InnerKind::rho;
  if (l == "lambda") return InnerKind::lambda;
  if (l == "mu") return InnerKind::mu;
  if (l == "full") return InnerKind::full;
  return std::nullopt;
}

Permutation right_inner(const LoopTable& g, Label x, Label y) {
  const auto rx = right_translation(g, x);
  const auto ry = right_translation(g, y);
  return rx * ry * right_translation(g, g(x, y)).inverse();
}

Permutation left_inner(const LoopTable& g, Label x, Label y) {
  const auto lx = left_translation(g, x);
  const auto ly = left_translation(g, y);
  return lx * ly * left_translation(g, g(y, x)).inverse();
}

Permutation middle_inner(const LoopTable& g, Label x) {
  return right_translation(g, x) * left_translation(g, x).inverse();
}

Permutation inner_mapping(const LoopTable& g, InnerKind kind,
                          std::span<const Label> args) {
  switch (kind) {
    case InnerKind::rho:
    case InnerKind::lambda:
      if (args.size() != 2) {
        throw InputError(std::string(to_string(kind)) + " inner mapping takes two labels, got " +
                         std::to_string(args.size()));
      }
      return kind == InnerKind::rho ? right_inner(g, args[0], args[1])
                                    : left_inner(g, args[0], args[1]);
    case InnerKind::mu:
      if (args.size() != 1) {
        throw InputError("mu inner mapping takes one label, got " +
                         std::to_string(args.size()));
      }
      return middle_inner(g, args[0]);
    case InnerKind::full:
      break;
  }
  throw InputError("inner_mapping needs kind rho, lambda or mu");
}

std::vector<Permutation> inner_mapping_table(const LoopTable& g, InnerKind kind) {
  const std::size_t n = g.order();
  const auto ls = translations(g, Side::left);
  const auto rs = translations(g, Side::right);
  std::vector<Permutation> out;
  switch (kind) {
    case InnerKind::rho:
      out.reserve(n * n);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          out.push_back(rs[x] * rs[y] *
                        rs[g(static_cast<Label>(x), static_cast<Label>(y))].inverse());
        }
      }
      break;
    case InnerKind::lambda:
      out.reserve(n * n);
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          out.push_back(ls[x] * ls[y] *
                        ls[g(static_cast<Label>(y), static_cast<Label>(x))].inverse());
        }
      }
      break;
    case InnerKind::mu:
      for (std::size_t x = 0; x < n; ++x) out.push_back(rs[x] * ls[x].inverse());
      break;
    case InnerKind::full:
      throw InputError("inner_mapping_table needs kind rho, lambda or mu");
  }
  return out;
}

std::vector<Permutation> inner_generators(const LoopTable& g, InnerKind kind) {
  std::vector<Permutation> out;
  if (kind == InnerKind::full) {
    for (auto k : {InnerKind::rho, InnerKind::lambda, InnerKind::mu}) {
      auto part = inner_mapping_table(g, k);
      out.insert(out.end(), part.begin(), part.end());
    }
  } else {
    out = inner_mapping_table(g, kind);
  }
  sort_unique(out);
  return out;
}

PermGroup inner_group(const LoopTable& g, InnerKind kind) {
  return group_closure(inner_generators(g, kind));
}

PermGroup multiplication_group(const LoopTable& g) {
  auto gens = translations(g, Side::left);
  auto rs = translations(g, Side::right);
  gens.insert(gens.end(), rs.begin(), rs.end());
  sort_unique(gens);
  return group_closure(gens);
}

bool is_automorphism(const LoopTable& g, const Permutation& phi) {
  if (phi.degree() != g.order()) {
    throw DegreeMismatch("permutation of degree " + std::to_string(phi.degree()) +
                         " on a loop of order " + std::to_string(g.order()));
  }
  const auto n = static_cast<Label>(g.order());
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      if (phi(g(x, y)) != g(phi(x), phi(y))) return false;
    }
  }
  return true;
}

PermGroup automorphism_group(const LoopTable& g, std::size_t cap) {
  const std::size_t n = g.order();
  if (n > cap) {
    throw CapExceeded("automorphism scan of order " + std::to_string(n) +
                      " exceeds the brute-force cap " + std::to_string(cap));
  }
  const Label e = g.identity();
  std::vector<Label> others;
  for (std::size_t x = 0; x < n; ++x) {
    if (x != e) others.push_back(static_cast<Label>(x));
  }
  std::vector<Permutation> found;
  std::vector<Label> image(n);
  do {
    image[e] = e;
    for (std::size_t i = 0, j = 0; i < n; ++i) {
      if (i != e) image[i] = others[j++];
    }
    Permutation phi(image);
    if (is_automorphism(g, phi)) found.push_back(std::move(phi));
  } while (std::next_permutation(others.begin(), others.end()));
  return group_from_elements({}, std::move(found));
}

bool is_autotopism(const LoopTable& g, const MappingTriple& t) {
  if (t.degree() != g.order()) {
    throw DegreeMismatch("triple of degree " + std::to_string(t.degree()) +
                         " on a loop of order " + std::to_string(g.order()));
  }
  const auto n = static_cast<Label>(g.order());
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      if (g(t.a()(x), t.b()(y)) != t.c()(g(x, y))) return false;
    }
  }
  return true;
}

std::vector<Label> pseudo_automorphism_companions(const LoopTable& g,
                                                  const Permutation& phi,
                                                  Side side) {
  std::vector<Label> out;
  for (std::size_t c = 0; c < g.order(); ++c) {
    const auto cl = static_cast<Label>(c);
    const auto shifted = phi * translation(g, side, cl);
    const bool ok = side == Side::right
                        ? is_autotopism(g, MappingTriple(phi, shifted, shifted))
                        : is_autotopism(g, MappingTriple(shifted, phi, shifted));
    if (ok) out.push_back(cl);
  }
  return out;
}

std::vector<Label> nucleus(const LoopTable& g) {
  const auto n = static_cast<Label>(g.order());
  std::vector<Label> out;
  for (Label a = 0; a < n; ++a) {
    bool nuclear = true;
    for (Label x = 0; x < n && nuclear; ++x) {
      for (Label y = 0; y < n && nuclear; ++y) {
        nuclear = g(g(a, x), y) == g(a, g(x, y)) &&
                  g(g(x, a), y) == g(x, g(a, y)) &&
                  g(g(x, y), a) == g(x, g(y, a));
      }
    }
    if (nuclear) out.push_back(a);
  }
  return out;
}

bool is_conjugacy_closed(const LoopTable& g) {
  for (auto side : {Side::left, Side::right}) {
    auto ts = translations(g, side);
    std::vector<Permutation> inverses;
    for (const auto& t : ts) inverses.push_back(t.inverse());
    auto sorted = ts;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t x = 0; x < ts.size(); ++x) {
      for (std::size_t y = 0; y < ts.size(); ++y) {
        if (!std::binary_search(sorted.begin(), sorted.end(),
                                inverses[x] * ts[y] * ts[x])) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_extra(const LoopTable& g) {
  const auto n = static_cast<Label>(g.order());
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      const Label xy = g(x, y);
      for (Label z = 0; z < n; ++z) {
        if (g(x, g(y, g(z, x))) != g(g(xy, z), x)) return false;
      }
    }
  }
  return true;
}

std::string_view to_string(LoopFlag f) {
  switch (f) {
    case LoopFlag::group:
      return "is_group";
    case LoopFlag::commutative:
      return "is_commutative";
    case LoopFlag::a_rho:
      return "is_A_rho";
    case LoopFlag::a_lambda:
      return "is_A_lambda";
    case LoopFlag::a_mu:
      return "is_A_mu";
    case LoopFlag::a_loop:
      return "is_A_loop";
    case LoopFlag::cc:
      return "is_CC";
    case LoopFlag::extra:
      return "is_extra";
  }
  return "?";
}

std::optional<LoopFlag> parse_loop_flag(std::string_view s) {
  auto l = lower(s);
  if (l.starts_with("is_")) l = l.substr(3);
  for (std::size_t i = 0; i < kLoopFlagCount; ++i) {
    const auto f = static_cast<LoopFlag>(i);
    if (lower(to_string(f)).substr(3) == l) return f;
  }
  return std::nullopt;
}

LoopFlags classify_flags(const LoopTable& g) {
  LoopFlags flags;
  flags[LoopFlag::group] = is_associative(g);
  flags[LoopFlag::commutative] = is_commutative(g);
  auto all_automorphisms = [&](InnerKind kind) {
    const auto gens = inner_generators(g, kind);
    return std::all_of(gens.begin(), gens.end(),
                       [&](const Permutation& p) { return is_automorphism(g, p); });
  };
  flags[LoopFlag::a_rho] = all_automorphisms(InnerKind::rho);
  flags[LoopFlag::a_lambda] = all_automorphisms(InnerKind::lambda);
  flags[LoopFlag::a_mu] = all_automorphisms(InnerKind::mu);
  flags[LoopFlag::a_loop] =
      flags[LoopFlag::a_rho] && flags[LoopFlag::a_lambda] && flags[LoopFlag::a_mu];
  flags[LoopFlag::cc] = is_conjugacy_closed(g);
  flags[LoopFlag::extra] = is_extra(g);
  return flags;
}

ClassificationReport classify_loop(const LoopTable& g, std::size_t cap) {
  ClassificationReport r;
  r.flags = classify_flags(g);
  r.automorphism_group_size = automorphism_group(g, cap).size();
  r.inn_rho_size = inner_group(g, InnerKind::rho).size();
  r.inn_lambda_size = inner_group(g, InnerKind::lambda).size();
  r.inn_mu_size = inner_group(g, InnerKind::mu).size();
  r.inn_size = inner_group(g, InnerKind::full).size();
  r.multiplication_group_size = multiplication_group(g).size();
  r.nucleus_size = nucleus(g).size();
  return r;
}

std::string ClassificationReport::flags_line() const {
  std::string out;
  for (std::size_t i = 0; i < kLoopFlagCount; ++i) {
    if (i) out += ' ';
    out += std::string(to_string(static_cast<LoopFlag>(i))) + '=' +
           (flags.values[i] ? "1" : "0");
  }
  return out;
}

std::string ClassificationReport::to_text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < kLoopFlagCount; ++i) {
    out << to_string(static_cast<LoopFlag>(i)) << ' '
        << (flags.values[i] ? "true" : "false") << '\n';
  }
  out << "inn_rho_size " << inn_rho_size << '\n'
      << "inn_lambda_size " << inn_lambda_size << '\n'
      << "inn_mu_size " << inn_mu_size << '\n'
      << "inn_size " << inn_size << '\n'
      << "automorphism_group_size " << automorphism_group_size << '\n'
      << "multiplication_group_size " << multiplication_group_size << '\n'
      << "nucleus_size " << nucleus_size << '\n';
  return out.str();
}

nlohmann::json ClassificationReport::to_json() const {
  nlohmann::json j;
  for (std::size_t i = 0; i < kLoopFlagCount; ++i) {
    j["flags"][std::string(to_string(static_cast<LoopFlag>(i)))] = flags.values[i];
  }
  j["group_sizes"] = {{"inn_rho", inn_rho_size},
                      {"inn_lambda", inn_lambda_size},
                      {"inn_mu", inn_mu_size},
                      {"inn", inn_size},
                      {"automorphism", automorphism_group_size},
                      {"multiplication", multiplication_group_size}};
  j["nucleus_size"] = nucleus_size;
  return j;
}

std::string_view to_string(LoopFamily f) {
  switch (f) {
    case LoopFamily::cc:
      return "cc";
    case LoopFamily::extra:
      return "extra";
    case LoopFamily::aloop:
      return "aloop";
  }
  return "?";
}

std::optional<LoopFamily> parse_loop_family(std::string_view s) {
  const auto l = lower(s);
  if (l == "cc") return LoopFamily::cc;
  if (l == "extra") return LoopFamily::extra;
  if (l == "aloop" || l == "a-loop") return LoopFamily::aloop;
  return std::nullopt;
}

namespace {

// Identities every CC-loop satisfies. Extra loops inherit them.
void grade_cc_facts(const LoopTable& g, TheoremReport& report) {
  const std::size_t n = g.order();
  const auto rho = inner_mapping_table(g, InnerKind::rho);
  const auto lambda = inner_mapping_table(g, InnerKind::lambda);

  auto first_non_automorphism = [&](const std::vector<Permutation>& table) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!is_automorphism(g, table[i])) return labels({{"x", i / n}, {"y", i % n}});
    }
    return std::string{};
  };
  auto cx = first_non_automorphism(rho);
  report.add("right-inner-automorphisms", cx.empty(), cx);
  cx = first_non_automorphism(lambda);
  report.add("left-inner-automorphisms", cx.empty(), cx);

  const auto inn_rho = inner_group(g, InnerKind::rho);
  const auto inn_lambda = inner_group(g, InnerKind::lambda);
  report.add("inn-lambda-equals-inn-rho", inn_rho.same_elements(inn_lambda),
             "|Inn_rho|=" + std::to_string(inn_rho.size()) +
                 " |Inn_lambda|=" + std::to_string(inn_lambda.size()));

  const auto inn = inner_group(g, InnerKind::full);
  const auto inn_mu = inner_group(g, InnerKind::mu);
  report.add("inn-generated-by-middle", inn.same_elements(inn_mu),
             "|Inn|=" + std::to_string(inn.size()) +
                 " |<T(x)>|=" + std::to_string(inn_mu.size()));

  auto first_noncommuting = [&](const std::vector<Permutation>& p,
                                const std::vector<Permutation>& q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < q.size(); ++j) {
        if (p[i] * q[j] != q[j] * p[i]) {
          return labels({{"x", i / n}, {"y", i % n}, {"u", j / n}, {"v", j % n}});
        }
      }
    }
    return std::string{};
  };
  cx = first_noncommuting(rho, rho);
  report.add("right-inner-commute", cx.empty(), cx);
  cx = first_noncommuting(rho, lambda);
  report.add("right-left-inner-commute", cx.empty(), cx);

  report.add("inn-rho-abelian", inn_rho.is_abelian());
  auto rl_gens = inner_generators(g, InnerKind::rho);
  const auto lg = inner_generators(g, InnerKind::lambda);
  rl_gens.insert(rl_gens.end(), lg.begin(), lg.end());
  report.add("right-left-inner-group-abelian", group_closure(rl_gens).is_abelian());
}

void grade_extra_facts(const LoopTable& g, TheoremReport& report) {
  const auto n = static_cast<Label>(g.order());
  std::string cx;
  for (Label x = 0; x < n && cx.empty(); ++x) {
    for (Label y = 0; y < n && cx.empty(); ++y) {
      const auto r = right_inner(g, x, y);
      if (r != left_inner(g, x, y) || r != right_inner(g, y, x) ||
          r != left_inner(g, y, x)) {
        cx = labels({{"x", x}, {"y", y}});
      }
    }
  }
  report.add("inner-mappings-coincide", cx.empty(), cx);

  cx.clear();
  for (Label x = 0; x < n && cx.empty(); ++x) {
    for (Label y = 0; y < n && cx.empty(); ++y) {
      const auto r = right_inner(g, x, y);
      if (!(r * r).is_identity()) cx = labels({{"x", x}, {"y", y}});
    }
  }
  report.add("right-inner-exponent-2", cx.empty(), cx);

  const auto inn_rho = inner_group(g, InnerKind::rho);
  const auto inn_lambda = inner_group(g, InnerKind::lambda);
  report.add("inn-lambda-rho-boolean",
             inn_rho.same_elements(inn_lambda) && inn_rho.is_boolean());

  const auto nuc = nucleus(g);
  cx.clear();
  for (Label x = 0; x < n && cx.empty(); ++x) {
    const bool aut = is_automorphism(g, middle_inner(g, x));
    const bool nuclear = std::binary_search(nuc.begin(), nuc.end(), x);
    if (aut != nuclear) cx = labels({{"x", x}});
  }
  report.add("middle-inner-automorphism-iff-nuclear", cx.empty(), cx);
}

void grade_aloop_facts(const LoopTable& g, TheoremReport& report) {
  const auto n = static_cast<Label>(g.order());
  std::string left_cx;
  std::string right_cx;
  for (Label x = 0; x < n; ++x) {
    const auto t = middle_inner(g, x);
    for (Label y = 0; y < n; ++y) {
      const auto l = left_inner(g, y, x);
      if (left_cx.empty() && t * l != l * t) left_cx = labels({{"x", x}, {"y", y}});
      const auto r = right_inner(g, x, y);
      if (right_cx.empty() && t * r != r * t) right_cx = labels({{"x", x}, {"y", y}});
    }
  }
  report.add("middle-commutes-left-inner", left_cx.empty(), left_cx);
  report.add("middle-commutes-right-inner", right_cx.empty(), right_cx);
}

}  // namespace

TheoremReport check_known_facts(const LoopTable& g, LoopFamily family) {
  const auto flags = classify_flags(g);
  TheoremReport report;
  report.theorem_id = "known-" + std::string(to_string(family));
  switch (family) {
    case LoopFamily::cc:
      if (!flags[LoopFlag::cc]) throw PreconditionViolated("loop is not conjugacy closed");
      grade_cc_facts(g, report);
      break;
    case LoopFamily::extra:
      if (!flags[LoopFlag::extra]) throw PreconditionViolated("loop is not extra");
      grade_cc_facts(g, report);
      grade_extra_facts(g, report);
      break;
    case LoopFamily::aloop:
      if (!flags[LoopFlag::a_loop]) throw PreconditionViolated("loop is not an A-loop");
      grade_aloop_facts(g, report);
      break;
  }
  return report;
}

}  // namespace loopforge
