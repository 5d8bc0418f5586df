#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace loopforge {

enum class Verdict { pass, fail, skipped };

const char* to_string(Verdict v);

struct Clause {
  std::string label;
  Verdict verdict = Verdict::skipped;
  // First counterexample on failure, the reason on skip, empty on pass.
  std::string detail;
};

/// Per-clause outcome of one theorem instance.
///
/// A violated premise is recorded in `violated_premise` and leaves
/// `clauses` empty: a conditional statement whose hypotheses fail is
/// neither passed nor failed.
struct TheoremReport {
  std::string theorem_id;
  std::optional<std::string> violated_premise;
  std::vector<Clause> clauses;

  bool preconditions_satisfied() const { return !violated_premise.has_value(); }
  bool any_failed() const;
  bool all_passed() const;  // satisfied, no FAIL (SKIPPED allowed)

  void add(std::string label, bool ok, std::string counterexample = {});
  void skip(std::string label, std::string reason);
  void violate(std::string premise);

  // One line per clause: "<id> <label> PASS|FAIL|SKIPPED [detail]". A
  // violated premise is a single comment line.
  std::string to_text() const;
  nlohmann::json to_json() const;
};

}  // namespace loopforge
