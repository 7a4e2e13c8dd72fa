#pragma once

#include <cstdint>
#include <optional>

#include "posvote/profile.hpp"
#include "posvote/rules.hpp"
#include "posvote/scoring.hpp"

namespace posvote {

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

// How possible_winner() decides an instance, chosen from the shape of the
// scoring vector actually in use (a 2-approval vote over 3 candidates is a
// veto vote, for example).
enum class PwStrategy { PluralityFlow, VetoFlow, ExactSearch };
PwStrategy choose_pw_strategy(const ScoringVector& s);

struct PwResult {
    bool yes = false;
    std::optional<std::vector<TotalOrder>> witness;  // completion where c wins, iff yes
    std::uint64_t nodes_explored = 0;                // ExactSearch only
    PwStrategy strategy = PwStrategy::ExactSearch;
};

// Decides whether c wins in at least one completion of p.  Plurality- and
// veto-shaped vectors run in polynomial time via max-flow; everything else
// runs an exact branch-and-bound over per-vote completions, which raises
// BudgetExceeded (an "unknown", not a "no") past `node_budget`.
PwResult possible_winner(const Profile& p, const ScoringVector& s, int c, Semantics sem,
                         std::uint64_t node_budget = kDefaultSearchBudget);

// The individual strategies, exposed for targeted testing.
PwResult pw_plurality(const Profile& p, int c, Semantics sem);
PwResult pw_veto(const Profile& p, int c, Semantics sem);
PwResult pw_search(const Profile& p, const ScoringVector& s, int c, Semantics sem,
                   std::uint64_t node_budget = kDefaultSearchBudget);

} // namespace posvote
