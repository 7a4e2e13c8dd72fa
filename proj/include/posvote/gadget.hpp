#pragma once

#include <cstdint>
#include <vector>

#include "posvote/order.hpp"
#include "posvote/rules.hpp"

namespace posvote {

// ---------------------------------------------------------------------------
// Score-adjusting gadget.
//
// A rotation block for candidate d at position j0 is a set of M-1 complete
// votes over M candidates: d sits at position j0 in every vote, and the
// remaining candidates rotate through the other positions so that each of
// them occupies every non-d position exactly once.  Hence every candidate
// except d scores exactly  S_tot - s[j0]  (S_tot = sum of all vector
// entries), while d scores (M-1) * s[j0].
//
// Swapping d with its lower neighbour in exactly one vote nudges one chosen
// partner candidate up by delta(j0) = s[j0] - s[j0+1]; swapping with the
// upper neighbour in a block one slot lower nudges the partner down by the
// same amount.  Stacking such blocks realises, for every candidate except a
// designated sink, any integer combination of the deltas on top of a common
// base value lambda.  The sink absorbs the slack and always ends strictly
// below lambda.
// ---------------------------------------------------------------------------

// The plain rotation block: d fixed at j0, everyone else rotated.
std::vector<TotalOrder> rotation_block(int M, int d, int j0);

// rotation_block(M, d, j0) with d swapped one slot down in the single vote
// that has `partner` directly below it: partner gains delta(j0), d loses it.
std::vector<TotalOrder> boost_block(int M, int d, int j0, int partner);

// rotation_block(M, d, j0+1) with d swapped one slot up in the single vote
// that has `partner` directly above it: partner loses delta(j0), d gains it.
std::vector<TotalOrder> drop_block(int M, int d, int j0, int partner);

// Per-candidate adjustment rows: eta[x][j] is the integer coefficient of
// delta(j) in candidate x's offset from lambda.  The sink's row must be zero.
struct GadgetSpec {
    int num_candidates = 0;
    int sink = 0;
    std::vector<std::vector<long long>> eta;  // M rows, M-1 columns
};

struct GadgetResult {
    std::vector<TotalOrder> votes;
    Score lambda = 0;             // realised base score
    std::vector<Score> scores;    // exact score of every candidate in `votes`
    std::uint64_t units = 0;      // sum of |eta[x][j]|
};

// Sanity cap on a single adjustment row (4*(M-1)^4 + 64); the hardness
// constructions stay far below it, so exceeding it indicates a caller bug
// rather than a big input.
long long gadget_row_budget(int M);

// Builds the vote set Q realising  score(x) = lambda + sum_j eta[x][j] * delta(j)
// exactly for every x except the sink, with  score(sink) <= lambda - 1.
// Vote count: (m + m^2) * units + (1 + extra_padding) * m  with m = M - 1;
// each extra padding block raises lambda by S_tot without touching the sink.
// The realised scores are re-derived by scoring the votes and checked against
// the targets before returning.
GadgetResult build_gadget(const GadgetSpec& spec, const ScoringVector& s,
                          long long extra_padding = 0);

// Rewrites an adjustment given partly on the delta basis and partly on the
// vector-entry basis into pure delta coefficients:
//   sum_j delta_coeffs[j]*delta(j) + sum_k value_coeffs[k]*s[k]
//   == sum_j (delta_coeffs[j] + sum_{k<=j} value_coeffs[k]) * delta(j).
std::vector<long long> eta_from_mixed(const std::vector<long long>& delta_coeffs,
                                      const std::vector<long long>& value_coeffs);

} // namespace posvote
