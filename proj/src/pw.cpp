#include "posvote/pw.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>

#include "flow.hpp"
#include "posvote/oracle.hpp"

namespace posvote {

PwStrategy choose_pw_strategy(const ScoringVector& s) {
    if (is_plurality_vector(s)) return PwStrategy::PluralityFlow;
    if (is_veto_vector(s)) return PwStrategy::VetoFlow;
    return PwStrategy::ExactSearch;
}

namespace {

// Greedy linear extension taking the smallest-id available candidate at each
// step, optionally pinning one candidate to the top or the bottom slot.
TotalOrder greedy_extension(const PartialOrder& v, std::optional<int> top,
                            std::optional<int> last) {
    int m = v.size();
    if (top && v.num_above(*top) != 0)
        throw InvalidArgument("candidate cannot be placed first in this vote");
    if (last && v.num_below(*last) != 0)
        throw InvalidArgument("candidate cannot be placed last in this vote");
    std::vector<int> order;
    std::vector<char> placed((size_t)m, 0);
    auto can_place = [&](int x) {
        for (int y = 0; y < m; ++y)
            if (!placed[(size_t)y] && v.above(y, x)) return false;
        return true;
    };
    if (top) {
        placed[(size_t)*top] = 1;
        order.push_back(*top);
    }
    int stop = last ? m - 1 : m;
    while ((int)order.size() < stop) {
        bool found = false;
        for (int x = 0; x < m && !found; ++x) {
            if (placed[(size_t)x] || (last && x == *last)) continue;
            if (!can_place(x)) continue;
            placed[(size_t)x] = 1;
            order.push_back(x);
            found = true;
        }
        if (!found) throw Error("internal: stuck while building a linear extension");
    }
    if (last) order.push_back(*last);
    return TotalOrder::from_positions(order);
}

void validate_witness(const Profile& p, const ScoringVector& s, int c, Semantics sem,
                      const std::vector<TotalOrder>& witness) {
    if (witness.size() != p.votes.size())
        throw Error("internal: witness has the wrong number of votes");
    for (size_t i = 0; i < witness.size(); ++i)
        if (!witness[i].extends(p.votes[i]))
            throw Error("internal: witness vote does not extend the input vote");
    std::vector<Score> tot = score_totals(witness, s, p.num_candidates());
    if (!wins(tot, c, sem))
        throw Error("internal: constructed witness does not make the candidate win");
}

PwResult trivial_single_candidate(const Profile& p) {
    PwResult res;
    res.yes = true;
    std::vector<TotalOrder> w;
    for (const PartialOrder& v : p.votes) w.push_back(greedy_extension(v, std::nullopt, std::nullopt));
    res.witness = std::move(w);
    return res;
}

} // namespace

PwResult pw_plurality(const Profile& p, int c, Semantics sem) {
    p.check();
    int m = p.num_candidates();
    if (c < 0 || c >= m) throw InvalidArgument("candidate id out of range");
    if (m == 1) return trivial_single_candidate(p);

    PwResult res;
    res.strategy = PwStrategy::PluralityFlow;

    // Put c on top wherever the vote allows it; that is never suboptimal.
    std::vector<int> open;  // votes whose point must go to a rival
    std::int64_t t_count = 0;
    for (int vi = 0; vi < p.num_votes(); ++vi) {
        if (p.votes[(size_t)vi].num_above(c) == 0)
            ++t_count;
        else
            open.push_back(vi);
    }
    std::int64_t cap = sem == Semantics::Unique ? t_count - 1 : t_count;
    if (cap < 0) return res;  // c scores 0; no rival may score less

    // Every open vote awards one point to a minimal rival; rivals are capped.
    int nv = (int)open.size();
    flow::MaxFlow mf(2 + nv + m);
    int source = 0, sink = 1 + nv + m;
    std::vector<std::vector<std::pair<int, int>>> vote_edges((size_t)nv);  // (rival, edge id)
    for (int i = 0; i < nv; ++i) {
        mf.add_edge(source, 1 + i, 1);
        const PartialOrder& v = p.votes[(size_t)open[(size_t)i]];
        for (int r = 0; r < m; ++r) {
            if (r == c || v.num_above(r) != 0) continue;
            vote_edges[(size_t)i].emplace_back(r, mf.add_edge(1 + i, 1 + nv + r, 1));
        }
    }
    for (int r = 0; r < m; ++r)
        if (r != c) mf.add_edge(1 + nv + r, sink, cap);
    if (mf.run(source, sink) != nv) return res;

    res.yes = true;
    std::vector<TotalOrder> witness;
    std::vector<int> tops((size_t)p.num_votes(), c);
    for (int i = 0; i < nv; ++i) {
        int chosen = -1;
        for (auto [r, eid] : vote_edges[(size_t)i])
            if (mf.flow_on(eid) == 1) chosen = r;
        if (chosen < 0) throw Error("internal: flow left a vote unassigned");
        tops[(size_t)open[(size_t)i]] = chosen;
    }
    for (int vi = 0; vi < p.num_votes(); ++vi)
        witness.push_back(greedy_extension(p.votes[(size_t)vi], tops[(size_t)vi], std::nullopt));
    validate_witness(p, make_plurality().vector(m), c, sem, witness);
    res.witness = std::move(witness);
    return res;
}

PwResult pw_veto(const Profile& p, int c, Semantics sem) {
    p.check();
    int m = p.num_candidates();
    if (c < 0 || c >= m) throw InvalidArgument("candidate id out of range");
    if (m == 1) return trivial_single_candidate(p);

    PwResult res;
    res.strategy = PwStrategy::VetoFlow;

    // c is vetoed only where forced: votes in which no rival can be last.
    std::vector<int> open;  // votes whose veto goes to a rival
    std::int64_t forced = 0;
    for (int vi = 0; vi < p.num_votes(); ++vi) {
        const PartialOrder& v = p.votes[(size_t)vi];
        bool rival_can_be_last = false;
        for (int r = 0; r < m && !rival_can_be_last; ++r)
            if (r != c && v.num_below(r) == 0) rival_can_be_last = true;
        if (rival_can_be_last)
            open.push_back(vi);
        else
            ++forced;
    }
    // Each rival needs at least `need` vetoes to not beat c.
    std::int64_t need = forced + (sem == Semantics::Unique ? 1 : 0);

    int nv = (int)open.size();
    flow::MaxFlow mf(2 + m + nv);
    int source = 0, sink = 1 + m + nv;
    std::vector<std::vector<std::pair<int, int>>> rival_edges((size_t)m);  // (vote slot, edge id)
    for (int r = 0; r < m; ++r)
        if (r != c) mf.add_edge(source, 1 + r, need);
    for (int i = 0; i < nv; ++i) {
        const PartialOrder& v = p.votes[(size_t)open[(size_t)i]];
        for (int r = 0; r < m; ++r)
            if (r != c && v.num_below(r) == 0)
                rival_edges[(size_t)r].emplace_back(i, mf.add_edge(1 + r, 1 + m + i, 1));
        mf.add_edge(1 + m + i, sink, 1);
    }
    if (mf.run(source, sink) != need * (m - 1)) return res;

    res.yes = true;
    std::vector<int> lasts((size_t)p.num_votes(), c);
    std::vector<char> assigned((size_t)nv, 0);
    for (int r = 0; r < m; ++r)
        for (auto [slot, eid] : rival_edges[(size_t)r])
            if (mf.flow_on(eid) == 1) {
                lasts[(size_t)open[(size_t)slot]] = r;
                assigned[(size_t)slot] = 1;
            }
    for (int i = 0; i < nv; ++i) {
        if (assigned[(size_t)i]) continue;
        const PartialOrder& v = p.votes[(size_t)open[(size_t)i]];
        for (int r = 0; r < m; ++r)
            if (r != c && v.num_below(r) == 0) {
                lasts[(size_t)open[(size_t)i]] = r;  // spare veto: any rival will do
                break;
            }
    }
    std::vector<TotalOrder> witness;
    for (int vi = 0; vi < p.num_votes(); ++vi)
        witness.push_back(greedy_extension(p.votes[(size_t)vi], std::nullopt, lasts[(size_t)vi]));
    validate_witness(p, make_veto().vector(m), c, sem, witness);
    res.witness = std::move(witness);
    return res;
}

namespace {

template <typename W>
PwResult search_impl(const Profile& p, const ScoringVector& s, int c, Semantics sem,
                     std::uint64_t budget) {
    int m = p.num_candidates();
    int n = p.num_votes();

    // Materialised per-vote choice sets, in canonical order.  Under cowinner
    // semantics an extension whose slot just above c holds a candidate not
    // required to beat c can be improved by swapping that pair, so such
    // extensions are skipped; the exchange argument keeps at least one
    // winning completion inside the filtered set.
    std::vector<std::vector<TotalOrder>> ext((size_t)n);
    for (int vi = 0; vi < n; ++vi) {
        std::vector<TotalOrder> all = enumerate_extensions(p.votes[(size_t)vi], budget);
        if (sem == Semantics::Cowinner) {
            std::vector<TotalOrder> kept;
            for (TotalOrder& t : all) {
                int pos = t.position_of[(size_t)c];
                if (pos == 0 || p.votes[(size_t)vi].above(t.by_position[(size_t)pos - 1], c))
                    kept.push_back(std::move(t));
            }
            all = std::move(kept);
        }
        if (all.empty()) throw Error("internal: vote has no admissible extension");
        ext[(size_t)vi] = std::move(all);
    }

    // Votes with a single admissible extension are rigid: their scores are
    // folded into a base row up front, and the search branches only over
    // genuine choice points.  A complete profile is thus decided with zero
    // search nodes.
    std::vector<int> branch;
    std::vector<W> base((size_t)m, W(0));
    for (int vi = 0; vi < n; ++vi) {
        if (ext[(size_t)vi].size() == 1) {
            const TotalOrder& t = ext[(size_t)vi][0];
            for (int x = 0; x < m; ++x)
                base[(size_t)x] += (W)Score(s.at(t.position_of[(size_t)x]));
        } else {
            branch.push_back(vi);
        }
    }
    const int nb = (int)branch.size();

    // Per-extension score rows and per-choice-point min/max bounds for
    // pruning, indexed by position in `branch`.
    std::vector<std::vector<std::vector<W>>> row((size_t)nb);
    std::vector<std::vector<W>> sufmax((size_t)nb + 1, std::vector<W>((size_t)m, W(0)));
    std::vector<std::vector<W>> sufmin = sufmax;
    for (int bi = 0; bi < nb; ++bi) {
        const std::vector<TotalOrder>& exts = ext[(size_t)branch[(size_t)bi]];
        row[(size_t)bi].reserve(exts.size());
        for (const TotalOrder& t : exts) {
            std::vector<W> sv((size_t)m);
            for (int x = 0; x < m; ++x) sv[(size_t)x] = (W)Score(s.at(t.position_of[(size_t)x]));
            row[(size_t)bi].push_back(std::move(sv));
        }
    }
    for (int bi = nb - 1; bi >= 0; --bi) {
        for (int x = 0; x < m; ++x) {
            W mx = row[(size_t)bi][0][(size_t)x], mn = mx;
            for (const std::vector<W>& sv : row[(size_t)bi]) {
                mx = std::max(mx, sv[(size_t)x]);
                mn = std::min(mn, sv[(size_t)x]);
            }
            sufmax[(size_t)bi][(size_t)x] = sufmax[(size_t)bi + 1][(size_t)x] + mx;
            sufmin[(size_t)bi][(size_t)x] = sufmin[(size_t)bi + 1][(size_t)x] + mn;
        }
    }

    PwResult res;
    res.strategy = PwStrategy::ExactSearch;
    std::vector<W> cur = base;
    std::vector<int> choice((size_t)nb, 0);
    std::uint64_t nodes = 0;

    std::function<bool(int)> rec = [&](int d) -> bool {
        if (d == nb) {
            for (int r = 0; r < m; ++r) {
                if (r == c) continue;
                if (cur[(size_t)r] > cur[(size_t)c]) return false;
                if (sem == Semantics::Unique && cur[(size_t)r] == cur[(size_t)c]) return false;
            }
            return true;
        }
        for (int e = 0; e < (int)row[(size_t)d].size(); ++e) {
            if (++nodes > budget)
                throw BudgetExceeded("search budget of " + std::to_string(budget) +
                                     " nodes exhausted");
            const std::vector<W>& sv = row[(size_t)d][(size_t)e];
            for (int x = 0; x < m; ++x) cur[(size_t)x] += sv[(size_t)x];
            bool hopeless = false;
            W best_c = cur[(size_t)c] + sufmax[(size_t)d + 1][(size_t)c];
            for (int r = 0; r < m && !hopeless; ++r) {
                if (r == c) continue;
                W floor_r = cur[(size_t)r] + sufmin[(size_t)d + 1][(size_t)r];
                if (floor_r > best_c || (sem == Semantics::Unique && floor_r == best_c))
                    hopeless = true;
            }
            if (!hopeless) {
                choice[(size_t)d] = e;
                if (rec(d + 1)) return true;
            }
            for (int x = 0; x < m; ++x) cur[(size_t)x] -= sv[(size_t)x];
        }
        return false;
    };

    res.yes = rec(0);
    res.nodes_explored = nodes;
    if (res.yes) {
        std::vector<int> pick((size_t)n, 0);  // rigid votes keep index 0
        for (int bi = 0; bi < nb; ++bi)
            pick[(size_t)branch[(size_t)bi]] = choice[(size_t)bi];
        std::vector<TotalOrder> witness;
        for (int vi = 0; vi < n; ++vi)
            witness.push_back(ext[(size_t)vi][(size_t)pick[(size_t)vi]]);
        validate_witness(p, s, c, sem, witness);
        res.witness = std::move(witness);
    }
    return res;
}

} // namespace

PwResult pw_search(const Profile& p, const ScoringVector& s, int c, Semantics sem,
                   std::uint64_t node_budget) {
    p.check();
    int m = p.num_candidates();
    if (c < 0 || c >= m) throw InvalidArgument("candidate id out of range");
    if (m == 1) return trivial_single_candidate(p);
    if (s.size() != m) throw InvalidArgument("scoring vector size does not match the profile");
    Score bound = Score(s.at(0)) * (int)(p.votes.size() + 1) + 1;
    if (bound <= std::numeric_limits<std::int64_t>::max() / 4)
        return search_impl<std::int64_t>(p, s, c, sem, node_budget);
    return search_impl<Score>(p, s, c, sem, node_budget);
}

PwResult possible_winner(const Profile& p, const ScoringVector& s, int c, Semantics sem,
                         std::uint64_t node_budget) {
    p.check();
    if (p.num_candidates() == 1) return trivial_single_candidate(p);
    switch (choose_pw_strategy(s)) {
    case PwStrategy::PluralityFlow:
        return pw_plurality(p, c, sem);
    case PwStrategy::VetoFlow:
        return pw_veto(p, c, sem);
    case PwStrategy::ExactSearch:
    default:
        return pw_search(p, s, c, sem, node_budget);
    }
}

} // namespace posvote
