#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "posvote/profile.hpp"
#include "posvote/rules.hpp"
#include "posvote/scoring.hpp"

namespace posvote {

inline constexpr std::uint64_t kDefaultOracleCap = 10'000'000;

// The brute-force scans have an OpenMP-parallel driver and a plain serial
// one.  Both enumerate completions in the same canonical order and return
// identical results; the serial path is kept as the reference implementation
// for tests and benchmarks.
enum class OracleMode { Serial, Parallel };

// Number of linear extensions of a vote, saturating at cap + 1.
std::uint64_t count_extensions_capped(const PartialOrder& v, std::uint64_t cap);

// All linear extensions in canonical order (ascending candidate id at every
// choice point).  Throws BudgetExceeded past the cap.
std::vector<TotalOrder> enumerate_extensions(const PartialOrder& v,
                                             std::uint64_t cap = kDefaultOracleCap);

struct OracleResult {
    bool yes = false;
    // possible_winner: a completion where c wins (present iff yes).
    // necessary_winner: a counterexample completion (present iff !yes).
    std::optional<std::vector<TotalOrder>> witness;
    std::uint64_t completion_space = 0;  // product of per-vote extension counts
};

// Ground-truth possible/necessary winner by exhaustive enumeration of the
// completion space.  Throws BudgetExceeded when the space exceeds `cap`.
// The witness is the completion with the smallest canonical index, so the
// answer is byte-stable across modes and thread counts.
OracleResult possible_winner_bruteforce(const Profile& p, const ScoringVector& s, int c,
                                        Semantics sem, std::uint64_t cap = kDefaultOracleCap,
                                        OracleMode mode = OracleMode::Parallel);
OracleResult necessary_winner_bruteforce(const Profile& p, const ScoringVector& s, int c,
                                         Semantics sem, std::uint64_t cap = kDefaultOracleCap,
                                         OracleMode mode = OracleMode::Parallel);

} // namespace posvote
