#include "posvote/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace posvote {

namespace {

constexpr std::uint64_t kNotFound = std::numeric_limits<std::uint64_t>::max();

// Depth-first walk over linear extensions, always trying candidates in
// ascending id order.  `emit` gets each complete extension (top to bottom)
// and returns false to stop the walk.
bool extensions_dfs(const PartialOrder& po, std::vector<int>& prefix, std::vector<char>& placed,
                    const std::function<bool(const std::vector<int>&)>& emit) {
    int m = po.size();
    if ((int)prefix.size() == m) return emit(prefix);
    for (int x = 0; x < m; ++x) {
        if (placed[(size_t)x]) continue;
        bool minimal = true;
        for (int y = 0; y < m && minimal; ++y)
            if (!placed[(size_t)y] && po.above(y, x)) minimal = false;
        if (!minimal) continue;
        placed[(size_t)x] = 1;
        prefix.push_back(x);
        bool keep_going = extensions_dfs(po, prefix, placed, emit);
        placed[(size_t)x] = 0;
        prefix.pop_back();
        if (!keep_going) return false;
    }
    return true;
}

} // namespace

std::uint64_t count_extensions_capped(const PartialOrder& v, std::uint64_t cap) {
    std::uint64_t count = 0;
    std::vector<int> prefix;
    std::vector<char> placed((size_t)v.size(), 0);
    extensions_dfs(v, prefix, placed, [&](const std::vector<int>&) {
        ++count;
        return count <= cap;
    });
    return count;
}

std::vector<TotalOrder> enumerate_extensions(const PartialOrder& v, std::uint64_t cap) {
    std::vector<TotalOrder> out;
    std::vector<int> prefix;
    std::vector<char> placed((size_t)v.size(), 0);
    bool finished = extensions_dfs(v, prefix, placed, [&](const std::vector<int>& order) {
        if ((std::uint64_t)out.size() >= cap) return false;
        out.push_back(TotalOrder::from_positions(order));
        return true;
    });
    if (!finished)
        throw BudgetExceeded("vote has more than " + std::to_string(cap) + " linear extensions");
    return out;
}

namespace {

// Mixed-radix scan over the completion space.  Votes with a single extension
// are folded into a fixed base score; the remaining votes form odometer
// digits (last digit fastest).  Totals are maintained incrementally, so one
// step costs O(m) amortised.
template <typename W>
struct Scanner {
    int m = 0;
    int c = 0;
    Semantics sem = Semantics::Cowinner;
    bool target = true;  // look for the first completion where wins(c) == target

    std::vector<W> base;                        // totals contributed by rigid votes
    std::vector<std::vector<std::vector<W>>> add;  // [digit][extension][candidate]
    std::vector<std::uint64_t> radix;           // extensions per digit
    std::uint64_t total = 1;

    bool wins_now(const std::vector<W>& tot) const {
        for (int r = 0; r < m; ++r) {
            if (r == c) continue;
            if (tot[(size_t)r] > tot[(size_t)c]) return false;
            if (sem == Semantics::Unique && tot[(size_t)r] == tot[(size_t)c]) return false;
        }
        return true;
    }

    // First index in [start, end) whose completion matches the target, or
    // kNotFound.  `stop_hint` lets parallel chunks bail out once a smaller
    // global hit exists; it never affects which index is reported.
    std::uint64_t scan_range(std::uint64_t start, std::uint64_t end,
                             const std::atomic<std::uint64_t>* stop_hint) const {
        int nd = (int)radix.size();
        std::vector<std::uint64_t> digit((size_t)nd, 0);
        std::vector<W> tot = base;
        std::uint64_t rest = start;
        for (int d = nd - 1; d >= 0; --d) {
            digit[(size_t)d] = rest % radix[(size_t)d];
            rest /= radix[(size_t)d];
        }
        for (int d = 0; d < nd; ++d)
            for (int x = 0; x < m; ++x)
                tot[(size_t)x] += add[(size_t)d][digit[(size_t)d]][(size_t)x];

        for (std::uint64_t idx = start; idx < end; ++idx) {
            if (wins_now(tot) == target) return idx;
            if (idx + 1 == end) break;
            int d = nd - 1;
            while (true) {
                std::uint64_t old = digit[(size_t)d];
                std::uint64_t next = (old + 1 == radix[(size_t)d]) ? 0 : old + 1;
                for (int x = 0; x < m; ++x)
                    tot[(size_t)x] +=
                        add[(size_t)d][next][(size_t)x] - add[(size_t)d][old][(size_t)x];
                digit[(size_t)d] = next;
                if (next != 0) break;
                --d;  // carry; d stays >= 0 because idx + 1 < total
            }
            if (stop_hint && (idx & 0x1fff) == 0 &&
                stop_hint->load(std::memory_order_relaxed) < idx)
                return kNotFound;
        }
        return kNotFound;
    }

    std::uint64_t run(OracleMode mode) const {
#ifdef _OPENMP
        if (mode == OracleMode::Parallel && radix.size() > 0 && total > 4096) {
            std::atomic<std::uint64_t> best{kNotFound};
            std::uint64_t want_chunks = (std::uint64_t)omp_get_max_threads() * 8;
            std::uint64_t chunks = std::min<std::uint64_t>(total, std::max<std::uint64_t>(want_chunks, 1));
            std::uint64_t step = (total + chunks - 1) / chunks;
#pragma omp parallel for schedule(dynamic, 1)
            for (long long i = 0; i < (long long)chunks; ++i) {
                std::uint64_t s = (std::uint64_t)i * step;
                std::uint64_t e = std::min(total, s + step);
                if (s >= e) continue;
                if (best.load(std::memory_order_relaxed) < s) continue;
                std::uint64_t r = scan_range(s, e, &best);
                std::uint64_t cur = best.load();
                while (r < cur && !best.compare_exchange_weak(cur, r)) {
                }
            }
            return best.load();
        }
#else
        (void)mode;
#endif
        return scan_range(0, total, nullptr);
    }
};

struct PreparedScan {
    std::vector<std::vector<TotalOrder>> ext;  // per original vote
    std::vector<int> digit_votes;              // votes with >= 2 extensions
    std::uint64_t total = 1;
};

PreparedScan prepare_scan(const Profile& p, std::uint64_t cap) {
    PreparedScan out;
    out.ext.reserve(p.votes.size());
    for (const PartialOrder& v : p.votes) {
        std::uint64_t n = count_extensions_capped(v, cap);
        if (n > cap)
            throw BudgetExceeded("completion space exceeds the oracle cap of " +
                                 std::to_string(cap));
        out.ext.push_back(enumerate_extensions(v, cap));
        if (n >= 2) {
            if (out.total > cap / n)
                throw BudgetExceeded("completion space exceeds the oracle cap of " +
                                     std::to_string(cap));
            out.total *= n;
            out.digit_votes.push_back((int)out.ext.size() - 1);
        }
    }
    return out;
}

template <typename W>
OracleResult scan_for(const Profile& p, const ScoringVector& s, int c, Semantics sem, bool target,
                      std::uint64_t cap, OracleMode mode, bool yes_means_found) {
    PreparedScan prep = prepare_scan(p, cap);
    int m = p.num_candidates();

    Scanner<W> sc;
    sc.m = m;
    sc.c = c;
    sc.sem = sem;
    sc.target = target;
    sc.total = prep.total;
    sc.base.assign((size_t)m, W(0));
    for (int vi = 0; vi < (int)prep.ext.size(); ++vi) {
        if (prep.ext[(size_t)vi].size() != 1) continue;
        const TotalOrder& t = prep.ext[(size_t)vi][0];
        for (int x = 0; x < m; ++x) sc.base[(size_t)x] += (W)Score(s.at(t.position_of[(size_t)x]));
    }
    for (int vi : prep.digit_votes) {
        std::vector<std::vector<W>> per_ext;
        for (const TotalOrder& t : prep.ext[(size_t)vi]) {
            std::vector<W> sv((size_t)m);
            for (int x = 0; x < m; ++x) sv[(size_t)x] = (W)Score(s.at(t.position_of[(size_t)x]));
            per_ext.push_back(std::move(sv));
        }
        sc.add.push_back(std::move(per_ext));
        sc.radix.push_back((std::uint64_t)prep.ext[(size_t)vi].size());
    }

    std::uint64_t hit = sc.run(mode);
    OracleResult res;
    res.completion_space = prep.total;
    res.yes = yes_means_found ? (hit != kNotFound) : (hit == kNotFound);
    if (hit != kNotFound) {
        std::vector<std::uint64_t> digit(prep.digit_votes.size(), 0);
        std::uint64_t rest = hit;
        for (int d = (int)digit.size() - 1; d >= 0; --d) {
            digit[(size_t)d] = rest % sc.radix[(size_t)d];
            rest /= sc.radix[(size_t)d];
        }
        std::vector<TotalOrder> completion;
        for (int vi = 0; vi < (int)prep.ext.size(); ++vi) {
            auto it = std::find(prep.digit_votes.begin(), prep.digit_votes.end(), vi);
            std::uint64_t e =
                it == prep.digit_votes.end() ? 0 : digit[(size_t)(it - prep.digit_votes.begin())];
            completion.push_back(prep.ext[(size_t)vi][(size_t)e]);
        }
        res.witness = std::move(completion);
    }
    return res;
}

OracleResult oracle_dispatch(const Profile& p, const ScoringVector& s, int c, Semantics sem,
                             bool target, std::uint64_t cap, OracleMode mode,
                             bool yes_means_found) {
    p.check();
    int m = p.num_candidates();
    if (s.size() != m) throw InvalidArgument("scoring vector size does not match the profile");
    if (c < 0 || c >= m) throw InvalidArgument("candidate id out of range");
    // int64 fast path when total scores cannot overflow.
    Score bound = Score(s.at(0)) * (int)(p.votes.size() + 1) + 1;
    if (bound <= std::numeric_limits<std::int64_t>::max() / 4)
        return scan_for<std::int64_t>(p, s, c, sem, target, cap, mode, yes_means_found);
    return scan_for<Score>(p, s, c, sem, target, cap, mode, yes_means_found);
}

} // namespace

OracleResult possible_winner_bruteforce(const Profile& p, const ScoringVector& s, int c,
                                        Semantics sem, std::uint64_t cap, OracleMode mode) {
    // Find the first completion where c wins.
    return oracle_dispatch(p, s, c, sem, /*target=*/true, cap, mode, /*yes_means_found=*/true);
}

OracleResult necessary_winner_bruteforce(const Profile& p, const ScoringVector& s, int c,
                                         Semantics sem, std::uint64_t cap, OracleMode mode) {
    // Find the first completion where c does NOT win; none means necessary.
    return oracle_dispatch(p, s, c, sem, /*target=*/false, cap, mode, /*yes_means_found=*/false);
}

} // namespace posvote
