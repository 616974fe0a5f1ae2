#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>

#include "rru/term.hpp"

namespace rru {

// Printed variable names are cosmetic: A..Z, then A1..Z1, A2.., handed out
// in order of first appearance. Share one instance across several terms to
// keep names consistent between them.
class VarNaming {
 public:
  const std::string& name_for(const Term& var);

 private:
  std::unordered_map<const detail::Node*, std::string> names_;
};

// Writes t in the rule-file syntax with standard operator precedences.
// `max_precedence` is the loosest operator allowed without parentheses.
void write_term(std::ostream& os, const Term& t, VarNaming& names, int max_precedence = 1200);

std::string format_term(const Term& t);
std::string format_term(const Term& t, VarNaming& names, int max_precedence = 1200);

}  // namespace rru
