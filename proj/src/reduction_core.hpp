#pragma once

#include <string>
#include <utility>
#include <vector>

#include "posvote/reductions.hpp"

namespace posvote::detail {

// One triple vote of a hardness construction: the partial vote itself plus
// its two designed completions and the selection signal.
struct TriplePlan {
    std::vector<int> nonsel;  // canonical completion, candidate per position
    std::vector<int> sel;     // selected completion
    PartialOrder partial = PartialOrder::empty(1);
    VoteSignal signal;
};

// Everything a construction has to decide; assemble_reduction turns it into
// a verified ReductionOutput.  The adjustment rows are derived uniformly:
// candidate v's row realises
//   score_Q(v) = lambda_Q + [hist(c) - hist(v)] . s + slack(v)
// where hist(v) counts v's positions over the canonical completions, so that
// v's total in the all-canonical completion is lambda + slack(v) and the
// designed position swaps trade exactly the slack away.
struct ConstructionInput {
    int m = 0;
    ScoringVector vec = ScoringVector({1, 0});
    std::string variant;
    std::string rule_spec;
    ThreeDMInstance inst;
    std::vector<std::string> names;
    int c = -1;
    int w = -1;
    std::vector<TriplePlan> plans;
    // Per candidate: (delta index, coefficient) slack terms.
    std::vector<std::vector<std::pair<int, long long>>> slack;
    // Per candidate: number of its triple votes that a perfect matching
    // completes with the selected pattern (0, 1 or q).
    std::vector<long long> sel_count;
};

ReductionOutput assemble_reduction(ConstructionInput in);

// Shared id layout for the element candidates of a 3DM instance.
inline int x_cand(int i) { return i; }
inline int y_cand(int q, int i) { return q + i; }
inline int z_cand(int q, int i) { return 2 * q + i; }

// Names "x0..", "y0..", "z0.." for the elements, then the given specials,
// then dummies "h0.." up to m.
std::vector<std::string> reduction_names(int q, int m, const std::vector<std::string>& specials);

// Appends pairs forming a chain over group (no-op when |group| < 2).
void add_chain_pairs(std::vector<std::pair<int, int>>& pairs, const std::vector<int>& group);

// Block boundaries: prefix[j] = total length of the first j blocks.
std::vector<int> layout_prefix(const std::vector<std::pair<Score, int>>& layout);

} // namespace posvote::detail
