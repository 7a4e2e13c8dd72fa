#pragma once

// Seeded generators for random votes and profiles, shared by the unit tests,
// the acceptance suite and the benchmark driver.  Every vote class the
// library distinguishes (total, partial chain, partitioned, doubly-truncated,
// general poset) is produced, so suites advertising "mixed order classes"
// really exercise all of them.

#include <string>
#include <vector>

#include "posvote/order.hpp"
#include "posvote/profile.hpp"
#include "posvote/rng.hpp"

namespace testsupport {

inline std::vector<std::string> letter_names(int m) {
    std::vector<std::string> names;
    names.reserve((size_t)m);
    for (int i = 0; i < m; ++i) {
        if (i < 26)
            names.push_back(std::string(1, (char)('a' + i)));
        else
            names.push_back("c" + std::to_string(i));
    }
    return names;
}

// A random total order as a PartialOrder.
inline posvote::PartialOrder random_total_vote(posvote::Rng& rng, int m) {
    return posvote::PartialOrder::chain(m, rng.permutation(m));
}

// A chain over a random subset (possibly empty or everything).
inline posvote::PartialOrder random_chain_vote(posvote::Rng& rng, int m) {
    std::vector<int> perm = rng.permutation(m);
    int k = rng.range(0, m);
    perm.resize((size_t)k);
    return posvote::PartialOrder::chain(m, perm);
}

// Ordered blocks covering all candidates, with random cut points.
inline posvote::PartialOrder random_partitioned_vote(posvote::Rng& rng, int m) {
    std::vector<int> perm = rng.permutation(m);
    std::vector<std::vector<int>> blocks;
    size_t i = 0;
    while (i < perm.size()) {
        size_t len = 1 + rng.below((std::uint64_t)(perm.size() - i));
        blocks.emplace_back(perm.begin() + (long)i, perm.begin() + (long)(i + len));
        i += len;
    }
    return posvote::PartialOrder::blocks(m, blocks);
}

// A doubly-truncated vote: t fixed singletons on top, b on the bottom, the
// middle unconstrained.
inline posvote::PartialOrder random_truncated_vote(posvote::Rng& rng, int m) {
    std::vector<int> perm = rng.permutation(m);
    int t = rng.range(0, m);
    int b = rng.range(0, m - t);
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < t; ++i) blocks.push_back({perm[(size_t)i]});
    if (m - t - b > 0)
        blocks.emplace_back(perm.begin() + t, perm.end() - b);
    for (int i = m - b; i < m; ++i) blocks.push_back({perm[(size_t)i]});
    return posvote::PartialOrder::blocks(m, blocks);
}

// A general poset: random pairs consistent with a hidden permutation (so the
// pair set is always acyclic), transitively closed by the constructor.
inline posvote::PartialOrder random_poset_vote(posvote::Rng& rng, int m) {
    std::vector<int> perm = rng.permutation(m);
    std::vector<int> pos((size_t)m);
    for (int p = 0; p < m; ++p) pos[(size_t)perm[(size_t)p]] = p;
    int want = rng.range(0, m + m / 2);
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < want; ++k) {
        int a = rng.range(0, m - 1);
        int b = rng.range(0, m - 1);
        if (a == b) continue;
        if (pos[(size_t)a] < pos[(size_t)b])
            pairs.emplace_back(a, b);
        else
            pairs.emplace_back(b, a);
    }
    return posvote::PartialOrder::from_pairs(m, pairs);
}

inline posvote::PartialOrder random_vote(posvote::Rng& rng, int m) {
    switch (rng.below(6)) {
        case 0: return random_total_vote(rng, m);
        case 1: return random_chain_vote(rng, m);
        case 2: return random_partitioned_vote(rng, m);
        case 3: return random_truncated_vote(rng, m);
        case 4: return random_poset_vote(rng, m);
        default: return posvote::PartialOrder::empty(m);
    }
}

inline posvote::Profile random_profile(posvote::Rng& rng, int m, int n) {
    posvote::Profile p;
    p.candidates = posvote::CandidateSet::from_names(letter_names(m));
    for (int i = 0; i < n; ++i) p.votes.push_back(random_vote(rng, m));
    p.distinguished = (int)rng.below((std::uint64_t)m);
    return p;
}

// Partial-chain-only profile (the shape the pruned search is specified on).
inline posvote::Profile random_chain_profile(posvote::Rng& rng, int m, int n) {
    posvote::Profile p;
    p.candidates = posvote::CandidateSet::from_names(letter_names(m));
    for (int i = 0; i < n; ++i)
        p.votes.push_back(rng.coin() ? random_total_vote(rng, m) : random_chain_vote(rng, m));
    p.distinguished = (int)rng.below((std::uint64_t)m);
    return p;
}

} // namespace testsupport
