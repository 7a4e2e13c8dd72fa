#include "posvote/scoring.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace posvote {

void Profile::check() const {
    int m = candidates.size();
    if (m < 1) throw InvalidArgument("profile needs at least one candidate");
    for (const PartialOrder& v : votes)
        if (v.size() != m)
            throw InvalidArgument("vote is sized for a different candidate set");
    if (distinguished && (*distinguished < 0 || *distinguished >= m))
        throw InvalidArgument("distinguished candidate id out of range");
}

Score vote_score(const TotalOrder& v, const ScoringVector& s, int cand) {
    return s.at(v.position_of.at((size_t)cand));
}

std::vector<Score> score_totals(const std::vector<TotalOrder>& votes, const ScoringVector& s,
                                int m) {
    std::vector<Score> tot((size_t)m, 0);
    for (const TotalOrder& v : votes) {
        if (v.size() != m) throw InvalidArgument("vote is sized for a different candidate set");
        for (int c = 0; c < m; ++c) tot[(size_t)c] += s.at(v.position_of[(size_t)c]);
    }
    return tot;
}

std::vector<int> winners(const std::vector<Score>& totals) {
    std::vector<int> out;
    if (totals.empty()) return out;
    const Score* best = &totals[0];
    for (const Score& t : totals)
        if (t > *best) best = &t;
    for (int c = 0; c < (int)totals.size(); ++c)
        if (totals[(size_t)c] == *best) out.push_back(c);
    return out;
}

bool wins(const std::vector<Score>& totals, int c, Semantics sem) {
    for (int r = 0; r < (int)totals.size(); ++r) {
        if (r == c) continue;
        if (totals[(size_t)r] > totals[(size_t)c]) return false;
        if (sem == Semantics::Unique && totals[(size_t)r] == totals[(size_t)c]) return false;
    }
    return true;
}

Score max_vote_score(const PartialOrder& v, const ScoringVector& s, int cand) {
    return s.at(v.num_above(cand));
}

Score min_vote_score(const PartialOrder& v, const ScoringVector& s, int cand) {
    return s.at(v.size() - 1 - v.num_below(cand));
}

namespace {

// Exact maximum of s[pos(r)] - s[pos(c)] over the linear extensions of an
// arbitrary poset: dynamic program over order ideals (prefixes of linear
// extensions), maximising the contribution of r and c as they are placed.
template <typename W>
W general_poset_advantage(const PartialOrder& v, const std::vector<W>& sv, int c, int r) {
    int m = v.size();
    std::vector<std::uint32_t> pred((size_t)m, 0);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            if (v.above(y, x)) pred[(size_t)x] |= (1u << y);
    size_t total = (size_t)1 << m;
    std::vector<char> seen(total, 0);
    std::vector<W> best(total, W(0));
    seen[0] = 1;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (!seen[mask]) continue;
        int pos = std::popcount(mask);
        for (int x = 0; x < m; ++x) {
            if (mask & (1u << x)) continue;
            if ((pred[(size_t)x] & ~mask) != 0) continue;  // a predecessor not yet placed
            W val = best[mask];
            if (x == r) val += sv[(size_t)pos];
            if (x == c) val -= sv[(size_t)pos];
            std::uint32_t next = mask | (1u << x);
            if (!seen[next] || val > best[next]) {
                seen[next] = 1;
                best[next] = val;
            }
        }
    }
    return best[total - 1];
}

Score chain_advantage(const PartialOrder& v, const ScoringVector& s,
                      const std::vector<int>& chain, int c, int r) {
    int m = v.size();
    int k = (int)chain.size();
    int f = m - k;
    auto rank_of = [&](int x) {
        for (int i = 0; i < k; ++i)
            if (chain[(size_t)i] == x) return i;
        return -1;
    };
    int ri = rank_of(r), ci = rank_of(c);

    // Joint feasibility of pos(r)=a, pos(c)=b in some extension.  The chain
    // members must keep increasing positions; free candidates fill any slots.
    auto feasible = [&](int a, int b) -> bool {
        if (a == b) return false;
        if (ri >= 0 && ci >= 0) {
            if (ri < ci)
                return a >= ri && b - a >= ci - ri && (m - 1 - b) >= (k - 1 - ci);
            return b >= ci && a - b >= ri - ci && (m - 1 - a) >= (k - 1 - ri);
        }
        if (ri >= 0) {  // c is free
            if (b < a) return a >= ri + 1 && a <= ri + f;
            return a >= ri && a <= ri + f - 1;
        }
        if (ci >= 0) {  // r is free
            if (a < b) return b >= ci + 1 && b <= ci + f;
            return b >= ci && b <= ci + f - 1;
        }
        return true;  // both free: any pair of distinct positions
    };

    bool any = false;
    Score out = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (!feasible(a, b)) continue;
            Score val = s.at(a) - s.at(b);
            if (!any || val > out) out = val, any = true;
        }
    if (!any) throw InvalidArgument("no completion places the two candidates");  // unreachable
    return out;
}

} // namespace

Score pairwise_vote_max_advantage(const PartialOrder& v, const ScoringVector& s, int c, int r) {
    int m = v.size();
    if (s.size() != m) throw InvalidArgument("scoring vector size does not match the vote");
    if (c == r) throw InvalidArgument("advantage needs two distinct candidates");

    if (auto blocks = partition_blocks(v)) {
        // Candidate positions are confined to their block's slot range and
        // are independent across blocks.
        std::vector<int> block_of((size_t)m, -1), lo((size_t)blocks->size(), 0),
            hi((size_t)blocks->size(), 0);
        int at = 0;
        for (int b = 0; b < (int)blocks->size(); ++b) {
            lo[(size_t)b] = at;
            for (int x : (*blocks)[(size_t)b]) block_of[(size_t)x] = b;
            at += (int)(*blocks)[(size_t)b].size();
            hi[(size_t)b] = at - 1;
        }
        // r at the top slot of its block and c at the bottom slot of its
        // block are jointly reachable whether or not the blocks coincide.
        int br = block_of[(size_t)r], bc = block_of[(size_t)c];
        return s.at(lo[(size_t)br]) - s.at(hi[(size_t)bc]);
    }
    if (auto chain = chain_members(v)) return chain_advantage(v, s, *chain, c, r);

    if (m > kGeneralPosetLimit)
        throw InvalidArgument("vote poset too large for exact analysis (limit " +
                              std::to_string(kGeneralPosetLimit) + " candidates)");
    // Saturating headroom check so the int64 fast path cannot overflow.
    if (s.at(0) <= std::numeric_limits<std::int64_t>::max() / 4) {
        std::vector<std::int64_t> sv((size_t)m);
        for (int i = 0; i < m; ++i) sv[(size_t)i] = (std::int64_t)s.at(i);
        return general_poset_advantage<std::int64_t>(v, sv, c, r);
    }
    std::vector<Score> sv((size_t)m);
    for (int i = 0; i < m; ++i) sv[(size_t)i] = s.at(i);
    return general_poset_advantage<Score>(v, sv, c, r);
}

NwReport necessary_winner_report(const Profile& p, const ScoringVector& s, int c, Semantics sem) {
    p.check();
    int m = p.num_candidates();
    if (c < 0 || c >= m) throw InvalidArgument("candidate id out of range");
    NwReport rep;
    rep.necessary = true;
    if (m == 1) return rep;
    if (s.size() != m) throw InvalidArgument("scoring vector size does not match the profile");
    for (int r = 0; r < m; ++r) {
        if (r == c) continue;
        Score adv = 0;
        for (const PartialOrder& v : p.votes) adv += pairwise_vote_max_advantage(v, s, c, r);
        if (rep.worst_rival < 0 || adv > rep.worst_advantage) {
            rep.worst_rival = r;
            rep.worst_advantage = adv;
        }
    }
    if (sem == Semantics::Cowinner)
        rep.necessary = rep.worst_advantage <= 0;
    else
        rep.necessary = rep.worst_advantage < 0;
    return rep;
}

bool necessary_winner(const Profile& p, const ScoringVector& s, int c, Semantics sem) {
    return necessary_winner_report(p, s, c, sem).necessary;
}

} // namespace posvote
