#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rru/errors.hpp"
#include "rru/meta_interp.hpp"
#include "rru/rule.hpp"
#include "rru/scheme.hpp"
#include "rru/unfolder.hpp"

namespace rru {

enum class Mode { Unfold, Naive };

Mode parse_mode(std::string_view text);
std::string_view mode_name(Mode mode);

// Naive runs refused by the configured input caps.
class CapExceeded : public EngineError {
 public:
  using EngineError::EngineError;
};

// Input notation: decimal integers, 2^k, 2^k+j, 2^k-j, list:N (the list
// [1..N]), perm:N[:seed] (a seeded permutation of 1..N), or any term in
// rule-file syntax such as [3,1,2].
Term parse_input(std::string_view text, Session& session);

struct RunResult {
  bool success = false;
  // The entry goal, resolved after the run.
  Term goal;
  // Output argument (the last argument of the entry goal), resolved.
  Term answer;
  std::size_t applications = 0;
  std::size_t rounds = 0;
  std::size_t deck_size = 0;
  std::vector<std::size_t> deck_sizes;
  std::size_t unfold_steps = 0;
  std::chrono::nanoseconds unfold_time{0};
  std::chrono::nanoseconds interp_time{0};
  std::chrono::nanoseconds total_time{0};
};

struct RunOptions {
  Mode mode = Mode::Unfold;
  // Skip the naive input caps.
  bool cap_override = false;
  std::size_t naive_step_limit = 4'000'000'000;
  // Round-robin entry limit; unlimited when empty.
  std::optional<std::size_t> max_entries;
};

class Engine {
 public:
  explicit Engine(Program program, SchemeRegistry registry = SchemeRegistry::with_builtin_schemes());
  // One of the shipped programs: sum, fib, gcd, rev, sort.
  static Engine shipped(std::string_view name);
  static Engine from_file(const std::string& path);

  const Program& program() const { return program_; }
  const SchemeRegistry& registry() const { return registry_; }
  Session& session() { return session_; }

  // entry(inputs..., Out) with a fresh output variable.
  Term make_goal(const std::vector<Term>& inputs);

  // Runs the goal. Single-deck programs use unfold + mip, programs with
  // several recursive rules go through umr. A goal no rule applies to is
  // NoProgress on either path. Throws NoProgress, CapExceeded,
  // StepLimitExceeded, CommittedBodyFailure and the builtin errors.
  RunResult run(const Term& goal, const RunOptions& options = {});

  // Unfolds each deck against the goal without interpreting.
  std::vector<UnfoldResult> unfold(const Term& goal);

  // Throws CapExceeded if a naive run of `goal` is above the cap for the
  // shipped program of that name. Programs of other names are not capped.
  void check_naive_cap(const Term& goal) const;

 private:
  const Scheme& scheme_for(std::size_t deck) const;

  Program program_;
  SchemeRegistry registry_;
  Session session_;
};

}  // namespace rru
