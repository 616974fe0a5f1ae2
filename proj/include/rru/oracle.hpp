#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "rru/errors.hpp"
#include "rru/integer.hpp"
#include "rru/rule.hpp"

namespace rru {

// Plain committed-choice execution of the program as written: no
// unfolding, clauses tried in order, first clause whose head unifies and
// whose guard holds is committed.
struct OracleConfig {
  std::vector<GuardedRule> clauses;
  // Maximum number of user-goal calls.
  std::size_t step_limit = 1'000'000'000;

  static OracleConfig for_program(const Program& program, std::size_t step_limit = 1'000'000'000);
};

struct OracleStats {
  std::size_t calls = 0;
  std::size_t builtin_calls = 0;
};

// Returns false if some user goal has no applicable clause or a builtin
// fails. Throws StepLimitExceeded. Runs in constant native stack depth.
bool solve_naive(const Term& goal, const OracleConfig& config, Session& session, OracleStats* stats = nullptr);

class UnsupportedPredicate : public EngineError {
 public:
  using EngineError::EngineError;
};

// Reference values computed without the engine: "sum" n -> n(n+1)/2,
// "fib" n -> Fib(n) by fast doubling, "gcd" (m, n) -> Euclid with
// remainders.
Integer closed_form(std::string_view predicate, std::span<const Integer> inputs);

}  // namespace rru
