#include "loopforge/report.hpp"

#include <algorithm>

namespace loopforge {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    case Verdict::skipped:
      return "SKIPPED";
  }
  return "?";
}

bool TheoremReport::any_failed() const {
  return std::any_of(clauses.begin(), clauses.end(),
                     [](const Clause& c) { return c.verdict == Verdict::fail; });
}

bool TheoremReport::all_passed() const {
  return preconditions_satisfied() && !any_failed();
}

void TheoremReport::add(std::string label, bool ok, std::string counterexample) {
  clauses.push_back({std::move(label), ok ? Verdict::pass : Verdict::fail,
                     ok ? std::string{} : std::move(counterexample)});
}

void TheoremReport::skip(std::string label, std::string reason) {
  clauses.push_back({std::move(label), Verdict::skipped, std::move(reason)});
}

void TheoremReport::violate(std::string premise) {
  violated_premise = std::move(premise);
  clauses.clear();
}

std::string TheoremReport::to_text() const {
  std::string out;
  if (violated_premise) {
    out += "# " + theorem_id + " precondition violated: " + *violated_premise + '\n';
    return out;
  }
  for (const auto& c : clauses) {
    out += theorem_id + ' ' + c.label + ' ' + to_string(c.verdict);
    if (!c.detail.empty()) out += ' ' + c.detail;
    out += '\n';
  }
  return out;
}

nlohmann::json TheoremReport::to_json() const {
  nlohmann::json j;
  j["theorem_id"] = theorem_id;
  j["precondition_status"] = violated_premise ? "violated" : "satisfied";
  if (violated_premise) j["violated_premise"] = *violated_premise;
  j["clauses"] = nlohmann::json::array();
  for (const auto& c : clauses) {
    j["clauses"].push_back(
        {{"label", c.label}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
  }
  return j;
}

}  // namespace loopforge
