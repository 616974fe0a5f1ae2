#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "rru/meta_interp.hpp"
#include "rru/rule.hpp"
#include "rru/scheme.hpp"
#include "rru/unfolder.hpp"

namespace rru {

// Entries cycled by umr: one per recursive rule of the program, each a
// deck that grows across rounds, plus one marker holding the goal as it
// was when the marker was last passed.
class RoundRobinState {
 public:
  struct Entry {
    // Empty for the marker.
    std::optional<std::size_t> deck_id;
    RuleDeck deck;
    const Scheme* scheme = nullptr;
    Term marker_goal;
  };

  // Decks in program order, then the marker holding `goal`. Throws
  // EngineError if a deck names a scheme the registry does not know.
  static RoundRobinState initial(const Program& program, const SchemeRegistry& registry, const Term& goal);

  const std::deque<Entry>& entries() const { return entries_; }
  // Current deck for each original recursive rule, in program order.
  std::vector<const RuleDeck*> decks() const;

  // Deck entries processed that applied at least one rule.
  std::size_t rounds = 0;
  // Every entry processed, markers included.
  std::size_t entries_processed = 0;
  MipStats mip_stats;
  UnfoldStats unfold_stats;
  std::chrono::nanoseconds unfold_time{0};
  std::chrono::nanoseconds interp_time{0};
  // umr throws StepLimitExceeded after processing this many entries.
  std::optional<std::size_t> max_entries;

 private:
  friend void umr(const Term& goal, RoundRobinState& state, Session& session);
  std::deque<Entry> entries_;
};

// Processes the goal deck by deck: extend the deck against the current
// goal, interpret with it, rotate it to the back, continue with the
// continuation. Returns once the goal is `true`. Throws NoProgress when a
// goal reaches the marker unifiable with the goal the marker holds.
void umr(const Term& goal, RoundRobinState& state, Session& session);

inline std::size_t rounds_used(const RoundRobinState& state) { return state.rounds; }

}  // namespace rru
