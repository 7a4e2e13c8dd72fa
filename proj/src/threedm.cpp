#include "posvote/threedm.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "posvote/errors.hpp"
#include "posvote/rng.hpp"

namespace posvote {

void ThreeDMInstance::check() const {
    if (q < 1) throw InvalidArgument("3dm instance needs q >= 1");
    std::set<std::array<int, 3>> seen;
    for (const auto& t : triples) {
        for (int c = 0; c < 3; ++c)
            if (t[(size_t)c] < 0 || t[(size_t)c] >= q)
                throw InvalidArgument("3dm triple element out of range");
        if (!seen.insert(t).second) throw InvalidArgument("3dm triples must be distinct");
    }
}

int ThreeDMInstance::occurrences(int coord, int e) const {
    int n = 0;
    for (const auto& t : triples)
        if (t[(size_t)coord] == e) ++n;
    return n;
}

bool is_perfect_matching(const ThreeDMInstance& inst, const Matching& m) {
    if ((int)m.size() != inst.q) return false;
    std::vector<char> used_x((size_t)inst.q, 0), used_y((size_t)inst.q, 0),
        used_z((size_t)inst.q, 0);
    for (int idx : m) {
        if (idx < 0 || idx >= inst.size()) return false;
        const auto& t = inst.triples[(size_t)idx];
        if (used_x[(size_t)t[0]] || used_y[(size_t)t[1]] || used_z[(size_t)t[2]]) return false;
        used_x[(size_t)t[0]] = used_y[(size_t)t[1]] = used_z[(size_t)t[2]] = 1;
    }
    return true;  // q distinct x's, y's and z's cover every element
}

std::optional<Matching> solve_3dm_bruteforce(const ThreeDMInstance& inst) {
    inst.check();
    std::vector<std::vector<int>> by_x((size_t)inst.q);
    for (int i = 0; i < inst.size(); ++i)
        by_x[(size_t)inst.triples[(size_t)i][0]].push_back(i);
    std::vector<char> used_y((size_t)inst.q, 0), used_z((size_t)inst.q, 0);
    Matching chosen;

    std::function<bool(int)> rec = [&](int x) -> bool {
        if (x == inst.q) return true;
        for (int idx : by_x[(size_t)x]) {
            const auto& t = inst.triples[(size_t)idx];
            if (used_y[(size_t)t[1]] || used_z[(size_t)t[2]]) continue;
            used_y[(size_t)t[1]] = used_z[(size_t)t[2]] = 1;
            chosen.push_back(idx);
            if (rec(x + 1)) return true;
            chosen.pop_back();
            used_y[(size_t)t[1]] = used_z[(size_t)t[2]] = 0;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return chosen;
}

ThreeDMInstance gen_3dm(int q, int t, std::uint64_t seed, ForceAnswer force) {
    if (q < 1) throw InvalidArgument("3dm generator needs q >= 1");
    long long q3 = (long long)q * q * q;
    if (t < 1 || (long long)t > q3)
        throw InvalidArgument("3dm generator needs 1 <= t <= q^3 distinct triples");
    if (force == ForceAnswer::Yes && t < q)
        throw InvalidArgument("a yes-instance needs at least q triples");
    if (force == ForceAnswer::No && q == 1)
        throw InvalidArgument("every nonempty instance with q=1 is solvable");

    Rng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::set<std::array<int, 3>> triples;
        if (force == ForceAnswer::Yes) {
            std::vector<int> py = rng.permutation(q), pz = rng.permutation(q);
            for (int i = 0; i < q; ++i) triples.insert({i, py[(size_t)i], pz[(size_t)i]});
        }
        while ((int)triples.size() < t)
            triples.insert({(int)rng.below((std::uint64_t)q), (int)rng.below((std::uint64_t)q),
                            (int)rng.below((std::uint64_t)q)});
        ThreeDMInstance inst;
        inst.q = q;
        inst.triples.assign(triples.begin(), triples.end());
        if (force == ForceAnswer::No && solve_3dm_bruteforce(inst)) continue;
        return inst;
    }
    throw Error("3dm generator could not hit the requested answer; relax q or t");
}

} // namespace posvote
