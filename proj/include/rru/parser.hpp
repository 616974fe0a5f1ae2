#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rru/rule.hpp"
#include "rru/term.hpp"

namespace rru {

// Parses a rule file (see docs/grammar.md). Throws ParseError.
Program parse_program(std::string_view text, Session& session);

// A single clause in rule-file syntax, terminating '.' optional. Named
// variables are reported through `variables` when given.
GuardedRule parse_rule(std::string_view text, Session& session,
                       std::vector<std::pair<std::string, Term>>* variables = nullptr);

struct ParsedTerm {
  Term term;
  // Named variables in order of first appearance.
  std::vector<std::pair<std::string, Term>> variables;
};

// A single term, terminating '.' optional.
ParsedTerm parse_term(std::string_view text, Session& session);

}  // namespace rru
