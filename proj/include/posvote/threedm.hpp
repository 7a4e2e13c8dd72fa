#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace posvote {

// Three-dimensional matching over three disjoint ground sets of size q,
// with elements named 0..q-1 in each coordinate.
struct ThreeDMInstance {
    int q = 0;
    std::vector<std::array<int, 3>> triples;

    int size() const { return (int)triples.size(); }
    void check() const;  // coordinates in range, triples distinct, q >= 1

    // Number of triples containing element e in the given coordinate.
    int occurrences(int coord, int e) const;
};

// A perfect matching: q triple indices covering every element of every
// coordinate exactly once.
using Matching = std::vector<int>;

bool is_perfect_matching(const ThreeDMInstance& inst, const Matching& m);

// Exhaustive solver (first matching in lexicographic triple-index order).
std::optional<Matching> solve_3dm_bruteforce(const ThreeDMInstance& inst);

enum class ForceAnswer { Any, Yes, No };

// Seeded random instance with t distinct triples.  ForceAnswer::Yes plants a
// perfect matching; ForceAnswer::No rejection-samples until unsolvable (which
// requires q >= 2).  Identical seeds give identical instances.
ThreeDMInstance gen_3dm(int q, int t, std::uint64_t seed, ForceAnswer force = ForceAnswer::Any);

} // namespace posvote
