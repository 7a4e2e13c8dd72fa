#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "posvote/gadget.hpp"
#include "posvote/profile.hpp"
#include "posvote/rules.hpp"
#include "posvote/scoring.hpp"
#include "posvote/threedm.hpp"

namespace posvote {

// ---------------------------------------------------------------------------
// Hardness constructions: each one maps a 3DM instance to a possible-winner
// instance (partial votes encoding the triples, plus a score-adjusting vote
// set) such that the distinguished candidate can co-win iff the 3DM instance
// has a perfect matching.  Every triple vote has exactly two designed
// completions ("selected" = the triple joins the matching); the selection is
// readable off a completion through one candidate's realised score value.
// ---------------------------------------------------------------------------

// How to read a triple vote's selection state from a completion: the watched
// candidate scores below `threshold` in this vote iff the triple is selected.
struct VoteSignal {
    int candidate = -1;
    Score threshold = 0;
    bool selected_if_below = true;  // false: selected iff value >= threshold
};

struct ReductionOutput {
    Profile profile;          // triple votes first, then the adjustment votes
    std::string variant;      // which construction produced this
    std::string rule_spec;    // rule family in effect
    ScoringVector vector = ScoringVector({1, 0});  // the vector at the chosen size
    Semantics semantics = Semantics::Cowinner;

    ThreeDMInstance source;
    std::vector<int> triple_votes;           // profile vote index per triple
    std::vector<TotalOrder> completion_out;  // canonical completion per triple
    std::vector<TotalOrder> completion_in;   // selected completion per triple
    std::vector<VoteSignal> signals;         // per triple

    int candidate_c = -1;  // the distinguished candidate
    int candidate_w = -1;  // the slack-absorbing candidate
    Score lambda = 0;      // c's exact total in every completion

    // Exact expected totals under any perfect-matching completion (the same
    // for every matching); used to audit witnesses.
    std::vector<Score> yes_totals;

    std::uint64_t adjustment_votes = 0;  // size of the appended vote set
};

// Two-valued rules ((1,...,1,0,...,0) shapes).  The rule's vector must have
// between 2 and m-2 leading ones at some size m >= 3q+3; the smallest such
// size is used.
ReductionOutput reduce_two_valued(const ThreeDMInstance& inst, const ScoringRule& rule);

// The 2-approval specialisation of reduce_two_valued.
ReductionOutput reduce_two_approval(const ThreeDMInstance& inst);

// Rules with a fixed number p >= 3 of distinct values: uses the smallest
// size where some run of equal values has length exactly 3q.  Three layouts
// cover a run at the top, in the middle and at the bottom of the vector.
ReductionOutput reduce_fixed_p(const ThreeDMInstance& inst, const ScoringRule& rule);

// Rules with an unbounded number of values: reuses the fixed-p layout when a
// 3q-run appears at a small size, and otherwise switches to a construction
// over the smallest size with exactly 3q+4 distinct values, where a chain of
// five adjacent block boundaries replaces the run.
ReductionOutput reduce_unbounded(const ThreeDMInstance& inst, const ScoringRule& rule);

// Completion of the whole profile realising a given perfect matching.
std::vector<TotalOrder> matching_to_completion(const ReductionOutput& red, const Matching& m);

// Reads the selected triples out of a winning completion and checks they
// form a perfect matching; throws Error("witness does not certify...") when
// the completion does not encode one.
Matching completion_to_matching(const ReductionOutput& red,
                                const std::vector<TotalOrder>& completion);

} // namespace posvote
