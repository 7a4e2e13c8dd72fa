#pragma once

#include <vector>

#include "posvote/order.hpp"
#include "posvote/profile.hpp"
#include "posvote/reductions.hpp"
#include "posvote/rules.hpp"
#include "posvote/threedm.hpp"

namespace posvote {

// Which candidates a partial vote nails down.  A candidate is "fixed" in a
// vote when it occupies the same position in every extension; the open
// positions of a vote are "available".  Fixedness is decided exactly for
// arbitrary partial orders: a candidate's reachable positions always form
// the interval [#above, m-1-#below], so it is fixed iff that interval is a
// point.  No extension enumeration is needed.
struct FixedProfileView {
    int num_candidates = 0;
    std::vector<std::vector<int>> pinned;     // [vote][cand] = slot, or -1 if free
    std::vector<std::vector<int>> available;  // per vote: sorted open slots
    std::vector<Score> fixed_score;  // per cand: score mass from votes fixing it
    std::vector<char> fully_fixed;   // fixed in every vote
    std::vector<int> free_votes;     // per cand: number of votes not fixing it
};

FixedProfileView analyze_fixed(const Profile& p, const ScoringVector& s);

// Exact tightness test: the score mass of all available positions equals the
// rivals' summed headroom mu(c') - fixed_score(c').  The distinguished
// candidate must be fixed in every vote of `partial`; `adjustment` (total
// votes) only widens the check's context and is validated for shape.
bool check_tightness(const Profile& partial, const std::vector<TotalOrder>& adjustment,
                     const ScoringVector& s, int c, const std::vector<Score>& mu);

// A realized cap assignment: `votes` are the constructed total votes Q,
// `lambda` is c's invariant total over any extension of the input plus Q, and
// realized[c'] = lambda - s(Q, c') is the partial score that would tie c.
struct MaxPartialAssignment {
    std::vector<TotalOrder> votes;
    Score lambda = 0;
    std::vector<Score> mu;        // requested caps (entries for c and sink echo results)
    std::vector<Score> realized;  // lambda - s(Q, c') for every candidate
};

// Builds total votes Q so that every candidate c' outside {c, sink} can reach
// a tie with c exactly when its score over the partial votes hits mu[c'].
// Preconditions (each reported specifically on failure):
//   1. c is fixed in every vote of `partial`;
//   2. every mu[c'] is a sum of at most |partial| score values;
//   3. sink != c; the sink's realized cap is raised to at least `sink_floor`
//      (pass the sink's maximum partial score or any bound above it so the
//      sink can never beat c).
MaxPartialAssignment build_maxpartial_profile(const Profile& partial, const ScoringVector& s,
                                              int c, int sink, const std::vector<Score>& mu,
                                              const Score& sink_floor);

// Confirms by finite search that n1*a1 + n2*a2 is attained by no other
// split (n3, n4) with n3 + n4 = n1 + n2.  Throws unless a1 != a2 and the
// counts are non-negative.
bool check_linear_combination_uniqueness(const Score& a1, const Score& a2, long long n1,
                                         long long n2);

// Hardness constructions over truncated ballots.  Both need a vector with at
// least three distinct values at the chosen size m (taken from the rule's
// growth_poly when declared, otherwise the smallest size that fits):
//  - reduce_ttb pins a per-triple prefix and leaves the last value boundary
//    free (votes are top-truncated); needs m - l(m'-1) - l(m') >= 3q.
//  - reduce_btb pins a per-triple suffix and leaves the first two blocks
//    free (votes are bottom-truncated); needs m - l(1) - l(2) >= 3q.
ReductionOutput reduce_ttb(const ThreeDMInstance& inst, const ScoringRule& rule);
ReductionOutput reduce_btb(const ThreeDMInstance& inst, const ScoringRule& rule);

} // namespace posvote
