#include "loopforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "loopforge/deviation.hpp"
#include "loopforge/error.hpp"
#include "loopforge/inner_maps.hpp"
#include "loopforge/inner_triple.hpp"
#include "loopforge/search.hpp"
#include "loopforge/table_io.hpp"

namespace loopforge::cli {

bool Command::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::optional<std::string> Command::option(const std::string& key) const {
  if (auto it = options.find(key); it != options.end()) return it->second;
  return std::nullopt;
}

namespace {

using nlohmann::json;

constexpr std::size_t kQuantifyMaxOrder = 6;

struct VerbDef {
  std::string verb;
  std::size_t positional;  // exact number of input files
  std::vector<std::string> options;
  std::vector<std::string> flags;
  std::vector<std::string> repeatable;
  std::string help;
};

const std::vector<VerbDef>& verb_defs() {
  static const std::vector<VerbDef> all{
      {"classify", 1, {}, {"json"}, {}, "Print the classification report of a loop"},
      {"inner", 1, {"kind"}, {"json"}, {}, "Print an inner mapping group"},
      {"check",
       1,
       {"theorem", "phi", "target", "triple", "x", "arrangement", "labels"},
       {"json", "corrected", "alt-identity"},
       {},
       "Grade a theorem on one or all applicable instances"},
      {"isotopism", 2, {"triple"}, {"json"}, {}, "Test whether a triple is an isotopism"},
      {"enumerate", 0, {"order", "workers"}, {"up-to-iso", "count"}, {},
       "Stream every normalized loop of an order"},
      {"witness",
       0,
       {"orders", "require", "arrangement", "workers"},
       {"json"},
       {"condition"},
       "Search small orders for witness loops"},
  };
  return all;
}

Result usage_error(const std::string& msg) { return {kInputError, {}, "error: " + msg + "\n"}; }

std::size_t parse_count(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size() || v < 0) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw InputError(what + " must be a non-negative integer, got \"" + text + "\"");
  }
}

std::vector<Label> parse_label_list(const std::string& text) {
  std::vector<Label> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    out.push_back(static_cast<Label>(parse_count(item, "label")));
  }
  return out;
}

// Enumeration cap: default 6, LOOPFORGE_MAX_ORDER overrides up to 7.
std::size_t enumeration_cap(Result& result) {
  std::size_t cap = kDefaultEnumerationCap;
  if (const char* env = std::getenv("LOOPFORGE_MAX_ORDER")) {
    cap = parse_count(env, "LOOPFORGE_MAX_ORDER");
    if (cap > kMaxEnumerationCap) {
      throw CapExceeded("LOOPFORGE_MAX_ORDER=" + std::string(env) + " exceeds " +
                        std::to_string(kMaxEnumerationCap));
    }
  }
  if (cap >= kMaxEnumerationCap) {
    result.err += "warning: enumeration cap " + std::to_string(cap) +
                  " admits order 7 (16942080 tables); expect long runs\n";
  }
  return cap;
}

std::size_t workers_of(const Command& cmd) {
  const auto w = cmd.option("workers");
  return w ? std::max<std::size_t>(1, parse_count(*w, "--workers")) : 1;
}

std::vector<Permutation> identity_fixing_permutations(const LoopTable& g) {
  if (g.order() > kQuantifyMaxOrder) {
    throw InputError("quantifying over all permutations needs order <= " +
                     std::to_string(kQuantifyMaxOrder) + "; pass --phi");
  }
  std::vector<Label> others;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (x != g.identity()) others.push_back(static_cast<Label>(x));
  }
  std::vector<Permutation> out;
  do {
    std::vector<Label> image(g.order());
    image[g.identity()] = g.identity();
    for (std::size_t i = 0, j = 0; i < image.size(); ++i) {
      if (i != g.identity()) image[i] = others[j++];
    }
    out.emplace_back(std::move(image));
  } while (std::next_permutation(others.begin(), others.end()));
  return out;
}

// Accumulates per-instance reports and derives the exit code.
struct Grading {
  std::string text;
  json instances = json::array();
  std::size_t count = 0;
  std::size_t satisfied = 0;
  std::size_t failed_clauses = 0;
  // Sweeps over many candidates list only instances whose premises hold.
  bool list_satisfied_only = false;

  void add(const std::string& description, const TheoremReport& report) {
    ++count;
    if (report.preconditions_satisfied()) ++satisfied;
    for (const auto& c : report.clauses) failed_clauses += c.verdict == Verdict::fail;
    if (list_satisfied_only && !report.preconditions_satisfied()) return;
    text += "# instance: " + description + '\n' + report.to_text();
    instances.push_back({{"instance", description}, {"report", report.to_json()}});
  }

  Result finish(bool as_json) const {
    Result r;
    r.exit_code = failed_clauses > 0 ? kClauseFailed
                  : satisfied == 0   ? kPreconditionViolated
                                     : kOk;
    if (as_json) {
      json j{{"instances", instances},
             {"summary",
              {{"instances", count}, {"satisfied", satisfied}, {"failed_clauses", failed_clauses}}},
             {"exit_code", r.exit_code}};
      r.out = j.dump(2) + '\n';
    } else {
      r.out = text + "# summary: instances=" + std::to_string(count) +
              " satisfied=" + std::to_string(satisfied) +
              " failed_clauses=" + std::to_string(failed_clauses) + '\n';
    }
    return r;
  }
};

Result run_classify(const Command& cmd) {
  const auto g = read_table_file(cmd.inputs[0]);
  const auto report = classify_loop(g);
  return {kOk, cmd.has_flag("json") ? report.to_json().dump(2) + '\n' : report.to_text(), {}};
}

Result run_inner(const Command& cmd) {
  const auto g = read_table_file(cmd.inputs[0]);
  const auto kind_text = cmd.option("kind").value_or("full");
  const auto kind = parse_inner_kind(kind_text);
  if (!kind) return usage_error("--kind must be rho, lambda, mu or full");
  const auto group = inner_group(g, *kind);
  if (cmd.has_flag("json")) {
    json j{{"kind", to_string(*kind)}, {"size", group.size()}, {"generators", json::array()}};
    for (const auto& p : group.generators()) j["generators"].push_back(p.image());
    return {kOk, j.dump(2) + '\n', {}};
  }
  std::string out = "kind " + std::string(to_string(*kind)) + "\nsize " +
                    std::to_string(group.size()) + "\ngenerators " +
                    std::to_string(group.generators().size()) + '\n';
  for (const auto& p : group.generators()) out += p.to_string() + '\n';
  return {kOk, out, {}};
}

Result run_known_facts(const LoopTable& g, LoopFamily family, bool as_json) {
  Grading grading;
  try {
    grading.add(std::string(to_string(family)), check_known_facts(g, family));
  } catch (const PreconditionViolated& e) {
    TheoremReport report;
    report.theorem_id = "known-" + std::string(to_string(family));
    report.violate(e.what());
    grading.add(std::string(to_string(family)), report);
  }
  return grading.finish(as_json);
}

Result run_inner_triple(const Command& cmd, const LoopTable& g) {
  const auto arrangement_text = cmd.option("arrangement");
  if (!arrangement_text) return usage_error("inner-triple needs --arrangement RLT|LRT|TRL");
  const auto arrangement = parse_arrangement(*arrangement_text);
  if (!arrangement) return usage_error("--arrangement must be RLT, LRT or TRL");
  InnerTripleOptions options;
  options.corrected_reading = cmd.has_flag("corrected");
  options.alternative_identity = cmd.has_flag("alt-identity");

  std::vector<std::pair<std::string, LoopTable>> targets;
  if (auto t = cmd.option("target")) {
    targets.emplace_back(*t, read_table_file(*t));
  } else {
    for (std::size_t f = 0; f < g.order(); ++f) {
      for (std::size_t h = 0; h < g.order(); ++h) {
        auto iso = principal_isotope(g, static_cast<Label>(f), static_cast<Label>(h));
        if (iso.table == g) continue;
        targets.emplace_back("principal-isotope f=" + std::to_string(f) +
                                 " g=" + std::to_string(h),
                             std::move(iso.table));
      }
    }
  }
  std::vector<InnerTripleLabels> label_sets;
  if (auto l = cmd.option("labels")) {
    const auto v = parse_label_list(*l);
    if (v.size() != 5) return usage_error("--labels takes five labels x,y,u,v,z");
    label_sets.push_back({v[0], v[1], v[2], v[3], v[4]});
  } else {
    const auto n = static_cast<Label>(g.order());
    for (Label x = 0; x < n; ++x)
      for (Label y = 0; y < n; ++y)
        for (Label u = 0; u < n; ++u)
          for (Label v = 0; v < n; ++v)
            for (Label z = 0; z < n; ++z) label_sets.push_back({x, y, u, v, z});
  }
  Grading grading;
  grading.list_satisfied_only = label_sets.size() * targets.size() > 1;
  for (const auto& [name, target] : targets) {
    for (const auto& labels : label_sets) {
      grading.add(name + ' ' + labels.to_string(),
                  analyze_inner_triple(g, target, *arrangement, labels, options));
    }
  }
  return grading.finish(cmd.has_flag("json"));
}

Result run_check(const Command& cmd) {
  const auto g = read_table_file(cmd.inputs[0]);
  const auto theorem = cmd.option("theorem");
  if (!theorem) return usage_error("check needs --theorem <id>");
  const bool as_json = cmd.has_flag("json");

  if (theorem->starts_with("known-")) {
    const auto family = parse_loop_family(theorem->substr(6));
    if (!family) return usage_error("unknown theorem id " + *theorem);
    return run_known_facts(g, *family, as_json);
  }
  if (*theorem == "inner-triple") return run_inner_triple(cmd, g);

  const auto id = parse_theorem_id(*theorem);
  if (!id) return usage_error("unknown theorem id " + *theorem);

  Grading grading;
  if (needs_phi(*id)) {
    std::vector<Label> args;
    if (auto x = cmd.option("x")) args.push_back(static_cast<Label>(parse_count(*x, "--x")));
    std::vector<Permutation> phis;
    if (auto p = cmd.option("phi")) {
      phis.push_back(read_permutation_file(*p));
    } else {
      phis = identity_fixing_permutations(g);
      grading.list_satisfied_only = true;
    }
    for (const auto& phi : phis) {
      TheoremInstance inst{*id, g, std::nullopt, std::nullopt, phi, args};
      grading.add("phi=" + phi.to_string(), verify_theorem(inst));
    }
    return grading.finish(as_json);
  }

  const auto target_path = cmd.option("target");
  const auto triple_path = cmd.option("triple");
  if (target_path && !triple_path) return usage_error("--target needs --triple");
  if (triple_path) {
    const auto target = target_path ? read_table_file(*target_path) : g;
    TheoremInstance inst{*id, g, target, read_triple_file(*triple_path), std::nullopt, {}};
    grading.add("triple=" + *triple_path, verify_theorem(inst));
    return grading.finish(as_json);
  }
  for (std::size_t f = 0; f < g.order(); ++f) {
    for (std::size_t h = 0; h < g.order(); ++h) {
      auto iso = principal_isotope(g, static_cast<Label>(f), static_cast<Label>(h));
      TheoremInstance inst{*id, g, iso.table, iso.triple, std::nullopt, {}};
      grading.add("principal-isotope f=" + std::to_string(f) + " g=" + std::to_string(h),
                  verify_theorem(inst));
    }
  }
  return grading.finish(as_json);
}

Result run_isotopism(const Command& cmd) {
  const auto g = read_table_file(cmd.inputs[0]);
  const auto h = read_table_file(cmd.inputs[1]);
  const auto triple_path = cmd.option("triple");
  if (!triple_path) return usage_error("isotopism needs --triple <file>");
  const auto triple = read_triple_file(*triple_path);
  const auto cx = isotopism_counterexample(g, h, triple);
  Result r;
  r.exit_code = cx ? kClauseFailed : kOk;
  if (cmd.has_flag("json")) {
    json j{{"isotopism", !cx}};
    if (cx) j["counterexample"] = {{"x", cx->first}, {"y", cx->second}};
    r.out = j.dump(2) + '\n';
  } else {
    r.out = cx ? "false\n# counterexample x=" + std::to_string(cx->first) +
                     " y=" + std::to_string(cx->second) + '\n'
               : "true\n";
  }
  return r;
}

Result run_enumerate(const Command& cmd) {
  Result r;
  const auto order_text = cmd.option("order");
  if (!order_text) return usage_error("enumerate needs --order n");
  const std::size_t n = parse_count(*order_text, "--order");
  const EnumerationOptions opts{enumeration_cap(r), workers_of(cmd)};
  std::ostringstream out;
  if (cmd.has_flag("count")) {
    out << count_loops(n, opts) << '\n';
  } else if (cmd.has_flag("up-to-iso")) {
    const auto classes = isomorphism_classes(enumerate_loops(n, opts), opts.workers);
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (i) out << '\n';
      out << "# class size " << classes[i].size << '\n' << format_table(classes[i].representative);
    }
    out << "# classes: " << classes.size() << '\n';
  } else if (opts.workers == 1) {
    bool first = true;
    for_each_loop(n, [&](const LoopTable& g) {
      if (!first) out << '\n';
      first = false;
      out << format_table(g);
    }, opts.cap);
  } else {
    const auto tables = enumerate_loops(n, opts);
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (i) out << '\n';
      out << format_table(tables[i]);
    }
  }
  r.out = out.str();
  return r;
}

Result run_witness(const Command& cmd) {
  Result r;
  WitnessQuery q;
  const auto orders = cmd.option("orders");
  if (!orders) return usage_error("witness needs --orders a..b");
  if (const auto dots = orders->find(".."); dots != std::string::npos) {
    q.min_order = parse_count(orders->substr(0, dots), "--orders");
    q.max_order = parse_count(orders->substr(dots + 2), "--orders");
  } else {
    q.min_order = q.max_order = parse_count(*orders, "--orders");
  }
  if (auto req = cmd.option("require")) q.required_flags = parse_flag_expression(*req);
  if (auto conds = cmd.option("condition")) {
    std::stringstream ss(*conds);
    for (std::string c; std::getline(ss, c);) {
      auto cond = parse_inner_condition(c);
      if (!cond) return usage_error("bad --condition \"" + c + "\" (order:<kind>:<k> or pvanish:<kind>)");
      q.inner_conditions.push_back(*cond);
    }
  }
  if (auto a = cmd.option("arrangement")) {
    q.arrangement = parse_arrangement(*a);
    if (!q.arrangement) return usage_error("--arrangement must be RLT, LRT or TRL");
  }
  q.cap = enumeration_cap(r);
  q.workers = workers_of(cmd);
  const auto witnesses = find_witnesses(q);

  if (cmd.has_flag("json")) {
    json j{{"orders", {q.min_order, q.max_order}},
           {"require", format_flag_expression(q.required_flags)},
           {"witnesses", json::array()}};
    for (const auto& w : witnesses) {
      json item{{"table", w.table.rows()},
                {"identity", w.table.identity()},
                {"classification", w.classification.to_json()}};
      if (w.instance) {
        const auto& in = *w.instance;
        item["instance"] = {{"arrangement", to_string(in.arrangement)},
                            {"labels", {in.labels.x, in.labels.y, in.labels.u, in.labels.v, in.labels.z}},
                            {"f", in.f},
                            {"g", in.g}};
      }
      j["witnesses"].push_back(item);
    }
    r.out = j.dump(2) + '\n';
    return r;
  }
  std::string out;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (i) out += '\n';
    out += format_witness(witnesses[i]);
  }
  if (witnesses.empty()) {
    out += "# no witnesses found at orders " + std::to_string(q.min_order) + ".." +
           std::to_string(q.max_order) + '\n';
  } else {
    out += "# witnesses: " + std::to_string(witnesses.size()) + '\n';
  }
  r.out = out;
  return r;
}

}  // namespace

std::optional<Command> parse_command(const std::vector<std::string>& args, Result& error) {
  CLI::App app{"Finite loop toolkit: classification, theorem checks, enumeration, witness search",
               "loopforge"};
  app.require_subcommand(1);
  struct Bound {
    CLI::App* sub;
    const VerbDef* def;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> options;
    std::map<std::string, std::vector<std::string>> repeated;
    std::map<std::string, bool> flags;
  };
  std::vector<std::unique_ptr<Bound>> bound;
  for (const auto& def : verb_defs()) {
    auto b = std::make_unique<Bound>();
    b->def = &def;
    b->sub = app.add_subcommand(def.verb, def.help);
    if (def.positional > 0) {
      b->sub->add_option("inputs", b->inputs, "input table file(s)")
          ->expected(static_cast<int>(def.positional))
          ->required();
    }
    for (const auto& o : def.options) b->sub->add_option("--" + o, b->options[o]);
    for (const auto& o : def.repeatable) b->sub->add_option("--" + o, b->repeated[o]);
    for (const auto& f : def.flags) b->sub->add_flag("--" + f, b->flags[f]);
    bound.push_back(std::move(b));
  }

  if (!args.empty() && !args[0].starts_with("-") &&
      std::none_of(verb_defs().begin(), verb_defs().end(),
                   [&](const VerbDef& s) { return s.verb == args[0]; })) {
    error = usage_error("unknown command \"" + args[0] + "\"");
    return std::nullopt;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    error = {kOk, app.help(), {}};
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    error = usage_error(e.what());
    error.err += app.help();
    return std::nullopt;
  }

  for (auto& b : bound) {
    if (!b->sub->parsed()) continue;
    Command cmd;
    cmd.verb = b->def->verb;
    cmd.inputs = b->inputs;
    for (const auto& o : b->def->options) {
      if (b->sub->count("--" + o) > 0) cmd.options[o] = b->options[o];
    }
    for (const auto& o : b->def->repeatable) {
      const auto& values = b->repeated[o];
      if (values.empty()) continue;
      std::string joined;
      for (const auto& v : values) joined += (joined.empty() ? "" : "\n") + v;
      cmd.options[o] = joined;
    }
    for (const auto& f : b->def->flags) {
      if (b->flags[f]) cmd.flags.push_back(f);
    }
    return cmd;
  }
  error = usage_error("no command given");
  return std::nullopt;
}

Result run(const Command& cmd) {
  try {
    Result r;
    if (cmd.verb == "classify") {
      r = run_classify(cmd);
    } else if (cmd.verb == "inner") {
      r = run_inner(cmd);
    } else if (cmd.verb == "check") {
      r = run_check(cmd);
    } else if (cmd.verb == "isotopism") {
      r = run_isotopism(cmd);
    } else if (cmd.verb == "enumerate") {
      r = run_enumerate(cmd);
    } else if (cmd.verb == "witness") {
      r = run_witness(cmd);
    } else {
      return usage_error("unknown command " + cmd.verb);
    }
    return r;
  } catch (const PreconditionViolated& e) {
    return {kPreconditionViolated, {}, std::string("precondition violated: ") + e.what() + '\n'};
  } catch (const Error& e) {
    return {kInputError, {}, std::string("error: ") + e.what() + '\n'};
  }
}

Result run(const std::vector<std::string>& args) {
  Result error;
  const auto cmd = parse_command(args, error);
  if (!cmd) return error;
  return run(*cmd);
}

}  // namespace loopforge::cli
