#include "posvote/truncated.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "posvote/gadget.hpp"
#include "posvote/scoring.hpp"
#include "reduction_core.hpp"

namespace posvote {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw Error("construction invariant violated: " + msg);
}

} // namespace

FixedProfileView analyze_fixed(const Profile& p, const ScoringVector& s) {
    p.check();
    const int m = p.num_candidates();
    if (s.size() != m)
        throw InvalidArgument("scoring vector size does not match the profile");
    FixedProfileView view;
    view.num_candidates = m;
    view.pinned.reserve(p.votes.size());
    view.available.reserve(p.votes.size());
    view.fixed_score.assign((size_t)m, Score(0));
    view.fully_fixed.assign((size_t)m, 1);
    view.free_votes.assign((size_t)m, 0);
    for (const PartialOrder& v : p.votes) {
        std::vector<int> pin((size_t)m, -1);
        std::vector<char> taken((size_t)m, 0);
        for (int cand = 0; cand < m; ++cand) {
            const int above = v.num_above(cand);
            const int below = v.num_below(cand);
            // A candidate's reachable positions form the interval
            // [above, m-1-below]; it is fixed exactly when that is a point.
            if (above + below == m - 1) {
                pin[(size_t)cand] = above;
                require(!taken[(size_t)above], "two candidates pinned to one slot");
                taken[(size_t)above] = 1;
                view.fixed_score[(size_t)cand] += s.at(above);
            } else {
                view.fully_fixed[(size_t)cand] = 0;
                view.free_votes[(size_t)cand]++;
            }
        }
        std::vector<int> open;
        open.reserve((size_t)m);
        for (int slot = 0; slot < m; ++slot)
            if (!taken[(size_t)slot]) open.push_back(slot);
        view.pinned.push_back(std::move(pin));
        view.available.push_back(std::move(open));
    }
    return view;
}

bool check_tightness(const Profile& partial, const std::vector<TotalOrder>& adjustment,
                     const ScoringVector& s, int c, const std::vector<Score>& mu) {
    const int m = partial.num_candidates();
    if (c < 0 || c >= m) throw InvalidArgument("candidate id out of range");
    if ((int)mu.size() != m) throw InvalidArgument("one mu entry per candidate is required");
    for (const TotalOrder& qv : adjustment)
        if (qv.size() != m)
            throw InvalidArgument("adjustment votes must cover the candidate set");
    FixedProfileView view = analyze_fixed(partial, s);
    if (!view.fully_fixed[(size_t)c])
        throw InvalidArgument("tightness is defined only when the distinguished candidate "
                              "is fixed in every vote");
    Score open_mass = 0;
    for (const std::vector<int>& open : view.available)
        for (int slot : open) open_mass += s.at(slot);
    Score headroom = 0;
    for (int v = 0; v < m; ++v) {
        if (v == c) continue;
        headroom += mu[(size_t)v] - view.fixed_score[(size_t)v];
    }
    return open_mass == headroom;
}

namespace {

// Greedy-first search for target = sum of at most `coins` vector values,
// counted per block (values are strictly decreasing across blocks).
bool decompose_value(const std::vector<std::pair<Score, int>>& layout, size_t idx,
                     const Score& target, long long coins, std::vector<long long>& counts) {
    if (target == 0) return true;
    if (target < 0 || idx >= layout.size()) return false;
    const Score& val = layout[idx].first;
    if (val == 0) return false;  // only zero-valued blocks remain
    if (Score(coins) * val < target) return false;
    const Score cap = target / val;
    long long most = cap > coins ? coins : cap.convert_to<long long>();
    for (long long take = most; take >= 0; --take) {
        counts[idx] = take;
        if (decompose_value(layout, idx + 1, target - Score(take) * val, coins - take, counts))
            return true;
    }
    counts[idx] = 0;
    return false;
}

} // namespace

MaxPartialAssignment build_maxpartial_profile(const Profile& partial, const ScoringVector& s,
                                              int c, int sink, const std::vector<Score>& mu,
                                              const Score& sink_floor) {
    partial.check();
    const int m = partial.num_candidates();
    if (s.size() != m)
        throw InvalidArgument("scoring vector size does not match the profile");
    if (c < 0 || c >= m || sink < 0 || sink >= m)
        throw InvalidArgument("candidate id out of range");
    if (c == sink) throw InvalidArgument("the sink must differ from the distinguished candidate");
    if ((int)mu.size() != m) throw InvalidArgument("one mu entry per candidate is required");

    FixedProfileView view = analyze_fixed(partial, s);
    if (!view.fully_fixed[(size_t)c])
        throw InvalidArgument("cap realization requires the distinguished candidate to be "
                              "fixed in every partial vote (property 1)");

    const std::vector<std::pair<Score, int>> layout = s.block_layout();
    std::vector<int> first_slot(layout.size(), 0);
    for (size_t b = 1; b < layout.size(); ++b)
        first_slot[b] = first_slot[b - 1] + layout[b - 1].second;
    std::vector<int> block_of((size_t)m, 0);
    for (size_t b = 0; b < layout.size(); ++b)
        for (int off = 0; off < layout[b].second; ++off)
            block_of[(size_t)(first_slot[b] + off)] = (int)b;

    // c's cap is its fixed score, represented by its pinned slots.
    const long long coins = partial.num_votes();
    std::vector<long long> counts_c(layout.size(), 0);
    for (const std::vector<int>& pin : view.pinned)
        counts_c[(size_t)block_of[(size_t)pin[(size_t)c]]]++;

    GadgetSpec spec;
    spec.num_candidates = m;
    spec.sink = sink;
    spec.eta.assign((size_t)m, std::vector<long long>((size_t)(m - 1), 0));
    for (int v = 0; v < m; ++v) {
        if (v == sink) continue;
        std::vector<long long> counts_v(layout.size(), 0);
        if (v == c) {
            counts_v = counts_c;
        } else if (!decompose_value(layout, 0, mu[(size_t)v], coins, counts_v)) {
            throw InvalidArgument("mu for candidate " + partial.candidates.name(v) +
                                  " is not a sum of at most " + std::to_string(coins) +
                                  " score values (property 2)");
        }
        std::vector<long long> value_coeffs((size_t)m, 0);
        for (size_t b = 0; b < layout.size(); ++b)
            value_coeffs[(size_t)first_slot[b]] = counts_c[b] - counts_v[b];
        spec.eta[(size_t)v] =
            eta_from_mixed(std::vector<long long>((size_t)(m - 1), 0), value_coeffs);
    }

    Score s_tot = 0;
    for (int k = 0; k < m; ++k) s_tot += s.at(k);

    // The sink's realized cap must cover both the caller's floor and the
    // sink's true maximum partial score, so it can never beat c.
    Score sink_max = 0;
    for (const PartialOrder& v : partial.votes) sink_max += max_vote_score(v, s, sink);
    const Score floor = std::max(sink_floor, sink_max);

    GadgetResult g = build_gadget(spec, s);
    const Score fixed_c = view.fixed_score[(size_t)c];
    Score gap = fixed_c + g.lambda - g.scores[(size_t)sink];
    if (gap < floor) {
        // Each padding round lifts every non-sink score and lambda by the
        // full vector mass while leaving the sink untouched.
        const Score rounds = (floor - gap + s_tot - 1) / s_tot;
        g = build_gadget(spec, s, rounds.convert_to<long long>());
    }

    MaxPartialAssignment out;
    out.lambda = fixed_c + g.lambda;
    out.votes = std::move(g.votes);
    out.mu = mu;
    out.realized.assign((size_t)m, Score(0));
    for (int v = 0; v < m; ++v) out.realized[(size_t)v] = out.lambda - g.scores[(size_t)v];
    for (int v = 0; v < m; ++v)
        if (v != c && v != sink)
            require(out.realized[(size_t)v] == mu[(size_t)v], "realized cap off target");
    require(out.realized[(size_t)c] == fixed_c, "c's cap must equal its fixed score");
    require(out.realized[(size_t)sink] >= floor, "sink cap below its floor");
    out.mu[(size_t)c] = out.realized[(size_t)c];
    out.mu[(size_t)sink] = out.realized[(size_t)sink];
    return out;
}

bool check_linear_combination_uniqueness(const Score& a1, const Score& a2, long long n1,
                                         long long n2) {
    if (a1 == a2) throw InvalidArgument("the two values must differ");
    if (n1 < 0 || n2 < 0) throw InvalidArgument("counts must be non-negative");
    const long long n = n1 + n2;
    const Score target = Score(n1) * a1 + Score(n2) * a2;
    for (long long k = 0; k <= n; ++k) {
        if (k == n1) continue;
        if (Score(k) * a1 + Score(n - k) * a2 == target) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Truncated-ballot constructions.

namespace {

using detail::ConstructionInput;
using detail::TriplePlan;

std::optional<ScoringVector> try_vector(const ScoringRule& rule, int m) {
    try {
        return rule.vector(m);
    } catch (const Error&) {
        return std::nullopt;
    }
}

struct TruncShape {
    int m = 0;
    ScoringVector vec = ScoringVector({1, 0});
    std::vector<std::pair<Score, int>> layout;
};

// top: the free zone is the last slot of block m'-2 plus blocks m'-1 and m';
// bottom: blocks 1 and 2 plus the first slot of block 3.
bool trunc_condition(const std::vector<std::pair<Score, int>>& layout, int m, int q, bool top) {
    const int mp = (int)layout.size();
    if (mp < 3) return false;
    const int la = top ? layout[(size_t)(mp - 2)].second : layout[0].second;
    const int lb = top ? layout[(size_t)(mp - 1)].second : layout[1].second;
    return m - la - lb >= 3 * q;
}

TruncShape find_trunc_shape(const ThreeDMInstance& inst, const ScoringRule& rule, bool top) {
    const int q = inst.q;
    const std::string zone = top ? "last two blocks" : "first two blocks";
    if (rule.growth_poly) {
        const int m = rule.growth_poly(q);
        auto vec = try_vector(rule, m);
        if (!vec)
            throw InvalidArgument("rule " + rule.name + " declares growth size m=" +
                                  std::to_string(m) + " but is undefined there");
        auto layout = vec->block_layout();
        if (!trunc_condition(layout, m, q, top))
            throw InvalidArgument("rule " + rule.name + " at its declared growth size m=" +
                                  std::to_string(m) + " lacks >= 3 distinct values with " +
                                  std::to_string(3 * q) + " slots outside the " + zone);
        return TruncShape{m, *vec, layout};
    }
    const int lo = std::max(rule.min_m, 3 * q + 2);
    const int hi = lo + 3 * q + 512;
    for (int m = lo; m <= hi; ++m) {
        auto vec = try_vector(rule, m);
        if (!vec) continue;
        auto layout = vec->block_layout();
        if (trunc_condition(layout, m, q, top)) return TruncShape{m, *vec, layout};
    }
    throw InvalidArgument("rule " + rule.name + " never shows >= 3 distinct values with " +
                          std::to_string(3 * q) + " slots outside the " + zone +
                          " at any size in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                          "]; the truncated construction does not apply");
}

ReductionOutput reduce_truncated(const ThreeDMInstance& inst, const ScoringRule& rule, bool top) {
    inst.check();
    const int q = inst.q;
    const int t = inst.size();
    const TruncShape shape = find_trunc_shape(inst, rule, top);
    const int m = shape.m;
    const int mp = (int)shape.layout.size();
    const std::vector<int> pre = detail::layout_prefix(shape.layout);
    require(pre[(size_t)mp] == m, "block layout must cover the vector");
    const int C = 3 * q, W = 3 * q + 1, first_dummy = 3 * q + 2;

    int la = 0, lb = 0, bd1 = 0, bd2 = 0;
    if (top) {
        la = shape.layout[(size_t)(mp - 2)].second;
        lb = shape.layout[(size_t)(mp - 1)].second;
        bd1 = pre[(size_t)(mp - 2)] - 1;
        bd2 = pre[(size_t)(mp - 1)] - 1;
    } else {
        la = shape.layout[0].second;
        lb = shape.layout[1].second;
        bd1 = pre[1] - 1;
        bd2 = pre[2] - 1;
    }
    const int pinned_count = m - la - lb - 1;
    require(pinned_count >= 3 * q - 1, "pinned segment too short for the elements");
    const int hpin_count = pinned_count - (3 * q - 1);

    ConstructionInput in;
    in.m = m;
    in.vec = shape.vec;
    in.variant = top ? "top-truncated" : "bottom-truncated";
    in.rule_spec = rule.name;
    in.inst = inst;
    in.names = detail::reduction_names(q, m, {"c", "w"});
    in.c = C;
    in.w = W;
    in.slack.assign((size_t)m, {});
    in.sel_count.assign((size_t)m, 0);
    for (int i = 0; i < q; ++i) {
        in.slack[(size_t)detail::x_cand(i)] = {{bd1, +1}, {bd2, +1}};
        in.slack[(size_t)detail::y_cand(q, i)] = {{bd1, -1}};
        in.slack[(size_t)detail::z_cand(q, i)] = {{bd2, -1}};
        if (inst.occurrences(0, i) > 0) in.sel_count[(size_t)detail::x_cand(i)] = 1;
        if (inst.occurrences(1, i) > 0) in.sel_count[(size_t)detail::y_cand(q, i)] = 1;
        if (inst.occurrences(2, i) > 0) in.sel_count[(size_t)detail::z_cand(q, i)] = 1;
    }

    std::vector<int> hpin, ha, hb;
    int next = first_dummy;
    for (int j = 0; j < hpin_count; ++j) hpin.push_back(next++);
    for (int j = 0; j < la - 1; ++j) ha.push_back(next++);
    for (int j = 0; j < lb - 1; ++j) hb.push_back(next++);
    require(next == m, "dummy budget must be spent exactly");

    const Score threshold = shape.vec.at(bd1 + 1);

    in.plans.reserve((size_t)t);
    for (int l = 0; l < t; ++l) {
        const auto& tr = inst.triples[(size_t)l];
        const int XA = detail::x_cand(tr[0]);
        const int YB = detail::y_cand(q, tr[1]);
        const int ZE = detail::z_cand(q, tr[2]);

        std::vector<int> cprime;
        cprime.reserve((size_t)pinned_count);
        cprime.push_back(C);
        cprime.push_back(W);
        cprime.insert(cprime.end(), hpin.begin(), hpin.end());
        for (int e = 0; e < 3 * q; ++e)
            if (e != XA && e != YB && e != ZE) cprime.push_back(e);
        require((int)cprime.size() == pinned_count, "pinned segment size mismatch");

        std::vector<int> free_nonsel, free_sel;
        if (top) {
            free_nonsel.push_back(XA);
            free_nonsel.push_back(YB);
            free_nonsel.insert(free_nonsel.end(), ha.begin(), ha.end());
            free_nonsel.push_back(ZE);
            free_nonsel.insert(free_nonsel.end(), hb.begin(), hb.end());
            free_sel.push_back(YB);
            free_sel.push_back(ZE);
            free_sel.insert(free_sel.end(), ha.begin(), ha.end());
            free_sel.push_back(XA);
            free_sel.insert(free_sel.end(), hb.begin(), hb.end());
        } else {
            free_nonsel.insert(free_nonsel.end(), ha.begin(), ha.end());
            free_nonsel.push_back(XA);
            free_nonsel.push_back(YB);
            free_nonsel.insert(free_nonsel.end(), hb.begin(), hb.end());
            free_nonsel.push_back(ZE);
            free_sel.insert(free_sel.end(), ha.begin(), ha.end());
            free_sel.push_back(YB);
            free_sel.push_back(ZE);
            free_sel.insert(free_sel.end(), hb.begin(), hb.end());
            free_sel.push_back(XA);
        }

        TriplePlan plan;
        std::vector<std::vector<int>> order_blocks;
        std::vector<int> free_set = free_nonsel;
        std::sort(free_set.begin(), free_set.end());
        if (top) {
            plan.nonsel = cprime;
            plan.nonsel.insert(plan.nonsel.end(), free_nonsel.begin(), free_nonsel.end());
            plan.sel = cprime;
            plan.sel.insert(plan.sel.end(), free_sel.begin(), free_sel.end());
            for (int cand : cprime) order_blocks.push_back({cand});
            order_blocks.push_back(free_set);
        } else {
            plan.nonsel = free_nonsel;
            plan.nonsel.insert(plan.nonsel.end(), cprime.begin(), cprime.end());
            plan.sel = free_sel;
            plan.sel.insert(plan.sel.end(), cprime.begin(), cprime.end());
            order_blocks.push_back(free_set);
            for (int cand : cprime) order_blocks.push_back({cand});
        }
        plan.partial = PartialOrder::blocks(m, order_blocks);
        plan.signal = VoteSignal{XA, threshold, /*selected_if_below=*/true};
        in.plans.push_back(std::move(plan));
    }

    ReductionOutput out = detail::assemble_reduction(std::move(in));

    // ---- paper-facing cross-checks on the finished construction ----
    Profile sub;
    sub.candidates = out.profile.candidates;
    sub.distinguished = C;
    sub.rule_spec = out.rule_spec;
    for (int i = 0; i < t; ++i)
        sub.votes.push_back(out.profile.votes[(size_t)out.triple_votes[(size_t)i]]);

    FixedProfileView view = analyze_fixed(sub, shape.vec);
    require(view.fully_fixed[(size_t)C] && view.fully_fixed[(size_t)W],
            "c and w must be fixed in every truncated vote");
    for (int e = 0; e < 3 * q; ++e) {
        const int coord = e / q;
        const int member = e % q;
        require(view.free_votes[(size_t)e] == inst.occurrences(coord, member),
                "an element must be free exactly in its triples' votes");
    }

    // The cap table, written the way the construction reasons about it: a
    // participating element sinks to the low value once and keeps its high
    // value elsewhere; free padding keeps its home value everywhere.
    const Score v_high = shape.vec.at(bd1);
    const Score v_mid = shape.vec.at(bd1 + 1);
    const Score v_low = shape.vec.at(bd2 + 1);
    std::vector<Score> table((size_t)m, Score(0));
    bool any_missing_element = false;
    for (int v = 0; v < m; ++v) {
        const Score& fixed = view.fixed_score[(size_t)v];
        const Score f = view.free_votes[(size_t)v];
        if (v >= 3 * q && (v == C || v == W || view.fully_fixed[(size_t)v])) {
            table[(size_t)v] = fixed;
        } else if (v < q) {
            table[(size_t)v] = v_low + (f - 1) * v_high + fixed;
            if (f == 0) any_missing_element = true;
        } else if (v < 2 * q) {
            table[(size_t)v] = v_high + (f - 1) * v_mid + fixed;
            if (f == 0) any_missing_element = true;
        } else if (v < 3 * q) {
            table[(size_t)v] = v_mid + (f - 1) * v_low + fixed;
            if (f == 0) any_missing_element = true;
        } else {
            // Free dummy: capped at its home value in every vote.
            const bool in_ha = std::find(ha.begin(), ha.end(), v) != ha.end();
            table[(size_t)v] = Score(t) * (in_ha ? (top ? v_mid : v_high) : (top ? v_low : v_mid));
        }
    }

    // The caps realized by the assembled adjustment votes must match the
    // table exactly.
    std::vector<TotalOrder> adjustment;
    for (size_t vi = (size_t)t; vi < out.profile.votes.size(); ++vi)
        adjustment.push_back(out.profile.votes[vi].as_total());
    const std::vector<Score> adj_scores = score_totals(adjustment, shape.vec, m);
    for (int v = 0; v < m; ++v) {
        if (v == C || v == W) continue;
        require(out.lambda - adj_scores[(size_t)v] == table[(size_t)v],
                "assembled caps must match the cap table");
    }

    // An independent realization of the same table must agree (skipped when
    // an element occurs in no triple: its table cap need not be a plain sum
    // of score values, and such instances are unconditionally negative).
    if (!any_missing_element) {
        const Score w_floor = Score(t) * shape.vec.at(0);
        MaxPartialAssignment mpa = build_maxpartial_profile(sub, shape.vec, C, W, table, w_floor);
        for (int v = 0; v < m; ++v)
            if (v != C && v != W)
                require(mpa.realized[(size_t)v] == table[(size_t)v],
                        "independent cap realization disagrees");
        require(mpa.realized[(size_t)W] >= w_floor, "sink cap below the conventional floor");
    }

    require(check_tightness(sub, adjustment, shape.vec, C, table),
            "the construction must be tight");
    return out;
}

} // namespace

ReductionOutput reduce_ttb(const ThreeDMInstance& inst, const ScoringRule& rule) {
    return reduce_truncated(inst, rule, /*top=*/true);
}

ReductionOutput reduce_btb(const ThreeDMInstance& inst, const ScoringRule& rule) {
    return reduce_truncated(inst, rule, /*top=*/false);
}

} // namespace posvote
