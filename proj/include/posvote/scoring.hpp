#pragma once

#include <vector>

#include "posvote/profile.hpp"
#include "posvote/rules.hpp"

namespace posvote {

enum class Semantics { Cowinner, Unique };

// Score of candidate `cand` in a single complete vote.
Score vote_score(const TotalOrder& v, const ScoringVector& s, int cand);

// Total scores of a complete profile (throws if any vote is partial).
std::vector<Score> score_totals(const std::vector<TotalOrder>& votes, const ScoringVector& s,
                                int m);

// Indices of the maximum-score candidates.
std::vector<int> winners(const std::vector<Score>& totals);
bool wins(const std::vector<Score>& totals, int c, Semantics sem);

// Tight per-vote score bounds for one candidate over all completions of a
// single partial vote.  Any position in [num_above, m-1-num_below] is
// reachable, so the bounds are attained (though not jointly across
// candidates).
Score max_vote_score(const PartialOrder& v, const ScoringVector& s, int cand);
Score min_vote_score(const PartialOrder& v, const ScoringVector& s, int cand);

// Exact maximum of score(r) - score(c) over all completions of one vote.
// Closed forms cover total, partitioned and partial-chain votes; any other
// poset is solved by an exact dynamic program over order ideals, which is
// limited to votes with at most `kGeneralPosetLimit` candidates.
inline constexpr int kGeneralPosetLimit = 18;
Score pairwise_vote_max_advantage(const PartialOrder& v, const ScoringVector& s, int c, int r);

// c is a necessary winner iff no rival can out-score it in any completion:
// for every r != c the summed per-vote maximum advantage of r over c is
// <= 0 (cowinner) resp. < 0 (unique).
bool necessary_winner(const Profile& p, const ScoringVector& s, int c, Semantics sem);

// Largest total advantage any rival can reach over c (for reporting).
struct NwReport {
    bool necessary = false;
    int worst_rival = -1;  // -1 when there are no rivals
    Score worst_advantage = 0;
};
NwReport necessary_winner_report(const Profile& p, const ScoringVector& s, int c, Semantics sem);

} // namespace posvote
