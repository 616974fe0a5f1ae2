#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rru/rule.hpp"

namespace rru {

struct MipStats {
  std::size_t recursive_applications = 0;
  std::size_t base_applications = 0;
  std::size_t guard_probes = 0;
  std::size_t builtin_calls = 0;
  // Deepest nesting of rule applications.
  std::size_t max_depth = 0;

  std::size_t applications() const { return recursive_applications + base_applications; }
  MipStats& operator+=(const MipStats& o);
};

// One rule application: the rule's position in the deck handed to the
// top-level call, and the index of the enclosing application (-1 at the
// root).
struct MipTraceEntry {
  std::size_t deck_index;
  std::ptrdiff_t parent;
};
using MipTrace = std::vector<MipTraceEntry>;

// Interprets `goal` with the deck, applying the first rule whose guard
// holds (most unfolded first) and solving its recursive goals with the
// rules after it. Conjuncts each get the full deck. Builtins are executed
// directly. Returns false if some user goal finds no applicable rule or a
// committed body fails.
bool mip(const Term& goal, std::span<const GuardedRule> deck, Session& session, MipStats* stats = nullptr,
         MipTrace* trace = nullptr);

struct MipOutcome {
  // What is left: `true`, or user goals no rule of the deck applied to.
  Term continuation;
  MipStats stats;
};

// Like mip, but a goal left over when the deck runs out is returned as part
// of the continuation instead of failing. Throws CommittedBodyFailure when a
// builtin fails after a guard has committed (or a builtin goal fails).
MipOutcome mip_cont(const Term& goal, std::span<const GuardedRule> deck, Session& session,
                    MipTrace* trace = nullptr);

}  // namespace rru
