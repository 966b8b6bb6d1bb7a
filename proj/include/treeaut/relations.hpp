#ifndef TREEAUT_RELATIONS_HPP
#define TREEAUT_RELATIONS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "treeaut/engine.hpp"

namespace treeaut {

// Outcome of one checked relation. A failing relation carries a witness
// string naming the exact inputs and, when applicable, the tree vertex
// where the two sides first disagree.
struct RelationResult {
  std::string id;
  bool passed = false;
  std::string witness;
};

// Result of running one verification suite.
struct SuiteReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<RelationResult> relations;  // sorted by id
  std::uint64_t seed = 0;
  std::int64_t duration_ms = 0;

  bool passed() const;

  // Line-oriented rendering: one "RELATION <id> PASS|FAIL [witness=...]"
  // line per relation plus a final "SUITE <name> PASS|FAIL" line.
  std::string to_text() const;
};

// Names of the available suites, sorted.
std::vector<std::string> suite_names();

// Runs a verification suite. Common params (all given as strings):
//   n      tree degree (each suite has its own default)
//   depth  comparison depth for identities (default 6 or 8 per suite)
//   seed   RNG seed for sampled checks (default 0)
//   beta   witness element as an expression, where the suite takes one
// Suite-specific params are documented in the README. Unknown suite names
// and malformed parameter values raise std::invalid_argument.
SuiteReport verify(Engine& engine, const std::string& suite,
                   const std::map<std::string, std::string>& params = {});

}  // namespace treeaut

#endif  // TREEAUT_RELATIONS_HPP
