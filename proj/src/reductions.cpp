#include "posvote/reductions.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "reduction_core.hpp"

namespace posvote {

namespace detail {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw Error("construction invariant violated: " + msg);
}

bool signal_selected(const VoteSignal& sig, const ScoringVector& vec, const TotalOrder& vote) {
    const Score& val = vec.at(vote.position_of.at((size_t)sig.candidate));
    return sig.selected_if_below ? (val < sig.threshold) : (val >= sig.threshold);
}

} // namespace

std::vector<std::string> reduction_names(int q, int m, const std::vector<std::string>& specials) {
    std::vector<std::string> names;
    names.reserve((size_t)m);
    for (int i = 0; i < q; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 0; i < q; ++i) names.push_back("y" + std::to_string(i));
    for (int i = 0; i < q; ++i) names.push_back("z" + std::to_string(i));
    for (const std::string& s : specials) names.push_back(s);
    require((int)names.size() <= m, "candidate count too small for the id layout");
    int h = 0;
    while ((int)names.size() < m) names.push_back("h" + std::to_string(h++));
    return names;
}

void add_chain_pairs(std::vector<std::pair<int, int>>& pairs, const std::vector<int>& group) {
    for (size_t i = 0; i + 1 < group.size(); ++i)
        pairs.emplace_back(group[i], group[i + 1]);
}

std::vector<int> layout_prefix(const std::vector<std::pair<Score, int>>& layout) {
    std::vector<int> pre(layout.size() + 1, 0);
    for (size_t j = 0; j < layout.size(); ++j) pre[j + 1] = pre[j] + layout[j].second;
    return pre;
}

ReductionOutput assemble_reduction(ConstructionInput in) {
    const int m = in.m;
    const int t = in.inst.size();
    require(m >= 3, "need at least three candidates");
    require(in.vec.size() == m, "scoring vector size must match candidate count");
    require((int)in.names.size() == m, "one name per candidate");
    require((int)in.plans.size() == t, "one plan per triple");
    require(in.c >= 0 && in.c < m && in.w >= 0 && in.w < m && in.c != in.w,
            "c/w ids out of range");
    require((int)in.slack.size() == m && (int)in.sel_count.size() == m,
            "slack/sel_count must cover every candidate");
    require(in.slack[(size_t)in.c].empty() && in.slack[(size_t)in.w].empty(),
            "c and w must carry no slack");

    // Position histogram of the all-canonical (nothing selected) completion.
    std::vector<std::vector<long long>> hist((size_t)m, std::vector<long long>((size_t)m, 0));
    for (const TriplePlan& p : in.plans) {
        require((int)p.nonsel.size() == m && (int)p.sel.size() == m,
                "completions must place every candidate");
        for (int k = 0; k < m; ++k) hist[(size_t)p.nonsel[(size_t)k]][(size_t)k]++;
    }
    auto hist_score = [&](int v) {
        Score sum = 0;
        for (int k = 0; k < m; ++k)
            if (hist[(size_t)v][(size_t)k] != 0)
                sum += Score(hist[(size_t)v][(size_t)k]) * in.vec.at(k);
        return sum;
    };
    // The sink must not outscore c even before adjustment votes are added.
    require(hist_score(in.w) <= hist_score(in.c), "sink outscores c in the canonical completion");

    // Adjustment rows: every candidate v != w is pinned to
    //   score(v) = lambda + slack(v)   in the all-canonical completion,
    // by offsetting the canonical-score difference to c and adding the slack.
    GadgetSpec spec;
    spec.num_candidates = m;
    spec.sink = in.w;
    spec.eta.assign((size_t)m, std::vector<long long>((size_t)(m - 1), 0));
    for (int v = 0; v < m; ++v) {
        if (v == in.w) continue;
        std::vector<long long> delta_coeffs((size_t)(m - 1), 0);
        std::vector<long long> value_coeffs((size_t)m, 0);
        for (const auto& [idx, coeff] : in.slack[(size_t)v]) {
            require(idx >= 0 && idx < m - 1, "slack index out of range");
            delta_coeffs[(size_t)idx] += coeff;
        }
        for (int k = 0; k < m; ++k)
            value_coeffs[(size_t)k] = hist[(size_t)in.c][(size_t)k] - hist[(size_t)v][(size_t)k];
        spec.eta[(size_t)v] = eta_from_mixed(delta_coeffs, value_coeffs);
    }
    for (long long e : spec.eta[(size_t)in.c]) require(e == 0, "c's adjustment row must vanish");

    GadgetResult gadget = build_gadget(spec, in.vec);
    const Score lambda = gadget.lambda + hist_score(in.c);

    auto slack_value = [&](int v) {
        Score sum = 0;
        for (const auto& [idx, coeff] : in.slack[(size_t)v]) sum += Score(coeff) * in.vec.delta(idx);
        return sum;
    };
    for (int v = 0; v < m; ++v) {
        Score total = gadget.scores[(size_t)v] + hist_score(v);
        if (v == in.w)
            require(total <= lambda - 1, "sink must stay strictly below lambda");
        else
            require(total == lambda + slack_value(v), "canonical total off target");
    }

    ReductionOutput out;
    out.variant = std::move(in.variant);
    out.rule_spec = std::move(in.rule_spec);
    out.vector = in.vec;
    out.semantics = Semantics::Cowinner;
    out.source = std::move(in.inst);
    out.candidate_c = in.c;
    out.candidate_w = in.w;
    out.lambda = lambda;
    out.adjustment_votes = gadget.votes.size();

    out.profile.candidates = CandidateSet::from_names(std::move(in.names));
    out.profile.distinguished = in.c;
    out.profile.rule_spec = out.rule_spec;
    out.triple_votes.reserve((size_t)t);
    out.completion_out.reserve((size_t)t);
    out.completion_in.reserve((size_t)t);
    out.signals.reserve((size_t)t);
    for (TriplePlan& p : in.plans) {
        TotalOrder canonical = TotalOrder::from_positions(p.nonsel);
        TotalOrder selected = TotalOrder::from_positions(p.sel);
        require(canonical.extends(p.partial) && selected.extends(p.partial),
                "designed completions must extend the partial vote");
        require(p.signal.candidate >= 0 && p.signal.candidate < m, "signal candidate out of range");
        require(!signal_selected(p.signal, in.vec, canonical),
                "canonical completion must read as not selected");
        require(signal_selected(p.signal, in.vec, selected),
                "selected completion must read as selected");
        out.triple_votes.push_back(out.profile.num_votes());
        out.profile.votes.push_back(std::move(p.partial));
        out.completion_out.push_back(std::move(canonical));
        out.completion_in.push_back(std::move(selected));
        out.signals.push_back(p.signal);
    }
    for (const TotalOrder& g : gadget.votes) out.profile.votes.push_back(g.as_partial());
    out.profile.check();

    // Totals in the designed yes-completion: each candidate takes its swap
    // value in exactly sel_count of its actor votes, canonical value elsewhere.
    out.yes_totals.assign((size_t)m, Score(0));
    for (int v = 0; v < m; ++v) {
        std::optional<Score> swap_diff;
        long long actor_votes = 0;
        for (int i = 0; i < t; ++i) {
            const TotalOrder& a = out.completion_out[(size_t)i];
            const TotalOrder& b = out.completion_in[(size_t)i];
            Score d = in.vec.at(b.position_of[(size_t)v]) - in.vec.at(a.position_of[(size_t)v]);
            if (d == 0) continue;
            if (swap_diff)
                require(*swap_diff == d, "selection must move a candidate by one fixed amount");
            else
                swap_diff = d;
            ++actor_votes;
        }
        Score yes = gadget.scores[(size_t)v] + hist_score(v);
        if (swap_diff) {
            require(in.sel_count[(size_t)v] <= actor_votes,
                    "sel_count exceeds the candidate's actor votes");
            yes += Score(in.sel_count[(size_t)v]) * *swap_diff;
        } else {
            require(in.sel_count[(size_t)v] == 0, "sel_count set for a passive candidate");
        }
        out.yes_totals[(size_t)v] = yes;
        // Every consuming actor lands exactly on lambda; candidates that keep
        // positive slack and never act (elements missing from all triples)
        // stay above lambda, which certifies the matching-free case.
        if (in.sel_count[(size_t)v] > 0)
            require(yes == lambda, "selected actors must land exactly on lambda");
    }
    require(out.yes_totals[(size_t)in.c] == lambda, "c's yes-total must equal lambda");
    return out;
}

} // namespace detail

namespace {

using detail::add_chain_pairs;
using detail::layout_prefix;
using detail::ConstructionInput;
using detail::TriplePlan;

void require(bool cond, const std::string& msg) {
    if (!cond) throw Error("construction invariant violated: " + msg);
}

std::optional<ScoringVector> try_vector(const ScoringRule& rule, int m) {
    try {
        return rule.vector(m);
    } catch (const Error&) {
        return std::nullopt;
    }
}

void append(std::vector<int>& order, const std::vector<int>& group) {
    order.insert(order.end(), group.begin(), group.end());
}

// The variable votes are partial chains: a linear order over everyone except
// the dropped candidates, which stay fully unconstrained.
PartialOrder chain_without(int m, const std::vector<int>& order, std::initializer_list<int> dropped) {
    std::vector<int> chain;
    chain.reserve(order.size());
    for (int v : order) {
        bool skip = false;
        for (int d : dropped) skip = skip || (v == d);
        if (!skip) chain.push_back(v);
    }
    std::vector<std::pair<int, int>> pairs;
    add_chain_pairs(pairs, chain);
    return PartialOrder::from_pairs(m, pairs);
}

} // namespace

// ---------------------------------------------------------------------------
// Two-valued rules (k ones then zeros, 2 <= k <= m-2).

namespace {

struct TwoValuedShape {
    int m = 0;
    ScoringVector vec = ScoringVector({1, 0});
    int k = 0;  // number of top-value slots
};

TwoValuedShape find_two_valued_shape(const ThreeDMInstance& inst, const ScoringRule& rule) {
    const int q = inst.q;
    const int lo = std::max(rule.min_m, 3 * q + 3);
    const int hi = lo + 3 * (3 * q + 4) + 256;
    for (int m = lo; m <= hi; ++m) {
        auto vec = try_vector(rule, m);
        if (!vec) continue;
        auto layout = vec->block_layout();
        if (layout.size() != 2) continue;
        int k = layout[0].second;
        if (k >= 2 && k <= m - 2) return TwoValuedShape{m, *vec, k};
    }
    throw InvalidArgument("rule " + rule.name +
                          " has no two-valued vector with 2..m-2 top slots at any size in [" +
                          std::to_string(lo) + ", " + std::to_string(hi) +
                          "]; the two-valued construction does not apply");
}

} // namespace

ReductionOutput reduce_two_valued(const ThreeDMInstance& inst, const ScoringRule& rule) {
    inst.check();
    const int q = inst.q;
    const int t = inst.size();
    TwoValuedShape shape = find_two_valued_shape(inst, rule);
    const int m = shape.m;
    const int k = shape.k;
    const int C = 3 * q, W = 3 * q + 1, D1 = 3 * q + 2;

    ConstructionInput in;
    in.m = m;
    in.vec = shape.vec;
    in.variant = "two-valued";
    in.rule_spec = rule.name;
    in.inst = inst;
    in.names = detail::reduction_names(q, m, {"c", "w", "d1"});
    in.c = C;
    in.w = W;
    in.slack.assign((size_t)m, {});
    in.sel_count.assign((size_t)m, 0);

    const int bd = k - 1;  // the single value boundary
    for (int i = 0; i < q; ++i) {
        in.slack[(size_t)detail::x_cand(i)] = {{bd, +1}};
        in.slack[(size_t)detail::y_cand(q, i)] = {{bd, +1}};
        in.slack[(size_t)detail::z_cand(q, i)] = {{bd, -1}};
        if (inst.occurrences(0, i) > 0) in.sel_count[(size_t)detail::x_cand(i)] = 1;
        if (inst.occurrences(1, i) > 0) in.sel_count[(size_t)detail::y_cand(q, i)] = 1;
        if (inst.occurrences(2, i) > 0) in.sel_count[(size_t)detail::z_cand(q, i)] = 1;
    }
    in.slack[(size_t)D1] = {{bd, -(long long)q}};
    in.sel_count[(size_t)D1] = t >= q ? q : 0;

    in.plans.reserve((size_t)t);
    for (int l = 0; l < t; ++l) {
        const auto& tr = inst.triples[(size_t)l];
        const int XA = detail::x_cand(tr[0]);
        const int YB = detail::y_cand(q, tr[1]);
        const int ZE = detail::z_cand(q, tr[2]);

        // Spill pool: dummies, then uninvolved elements, then c, then w.
        // c sits before w so that whenever c is pushed into the zero region,
        // w already is — the sink never beats c's canonical placement.
        std::vector<int> pool;
        pool.reserve((size_t)(m - 4));
        for (int d = 3 * q + 3; d < m; ++d) pool.push_back(d);
        for (int e = 0; e < 3 * q; ++e)
            if (e != XA && e != YB && e != ZE) pool.push_back(e);
        pool.push_back(C);
        pool.push_back(W);
        require((int)pool.size() == m - 4, "spill pool must hold everyone but the actors");
        require(k - 2 <= (int)pool.size(), "not enough filler for the top region");
        std::vector<int> top(pool.begin(), pool.begin() + (k - 2));
        std::vector<int> bottom(pool.begin() + (k - 2), pool.end());

        TriplePlan plan;
        append(plan.nonsel, top);
        plan.nonsel.push_back(XA);
        plan.nonsel.push_back(YB);
        plan.nonsel.push_back(ZE);
        plan.nonsel.push_back(D1);
        append(plan.nonsel, bottom);
        append(plan.sel, top);
        plan.sel.push_back(D1);
        plan.sel.push_back(ZE);
        plan.sel.push_back(XA);
        plan.sel.push_back(YB);
        append(plan.sel, bottom);

        // Vote = chain over everyone but z and d1, which stay unconstrained.
        plan.partial = chain_without(m, plan.nonsel, {ZE, D1});
        plan.signal = VoteSignal{D1, Score(1), /*selected_if_below=*/false};
        in.plans.push_back(std::move(plan));
    }
    return detail::assemble_reduction(std::move(in));
}

ReductionOutput reduce_two_approval(const ThreeDMInstance& inst) {
    ReductionOutput out = reduce_two_valued(inst, make_t_approval(2));
    out.variant = "two-approval";
    return out;
}

// ---------------------------------------------------------------------------
// Rules with >= 3 values and a run of exactly 3q equal entries.

namespace {

struct RunShape {
    int m = 0;
    ScoringVector vec = ScoringVector({1, 0});
    std::vector<std::pair<Score, int>> layout;
    int u = 0;  // 1-based block index whose run length is exactly 3q
};

std::optional<RunShape> find_run_shape(const ThreeDMInstance& inst, const ScoringRule& rule,
                                       int lo, int hi) {
    const int q = inst.q;
    for (int m = std::max(lo, 3); m <= hi; ++m) {
        auto vec = try_vector(rule, m);
        if (!vec) continue;
        auto layout = vec->block_layout();
        if ((int)layout.size() < 3) continue;
        for (int u = 1; u <= (int)layout.size(); ++u)
            if (layout[(size_t)(u - 1)].second == 3 * q)
                return RunShape{m, *vec, layout, u};
    }
    return std::nullopt;
}

// Core construction for a vector with >= 3 blocks whose block u is a run of
// exactly 3q equal values.  x sits at the last slot of the block above the
// run in the canonical completion and falls to the first slot of the block
// below it when the triple is selected; y and z each rise one boundary.
ReductionOutput reduce_with_run(const ThreeDMInstance& inst, const std::string& rule_spec,
                                const RunShape& shape, std::string variant) {
    const int q = inst.q;
    const int t = inst.size();
    const int m = shape.m;
    const int p = (int)shape.layout.size();
    const int u = shape.u;
    const std::vector<int> pre = layout_prefix(shape.layout);
    require(pre[(size_t)p] == m, "block layout must cover the vector");
    const int C = 3 * q, W = 3 * q + 1;
    const int first_dummy = 3 * q + 2;
    const int num_dummies = m - first_dummy;
    require(num_dummies >= 0, "vector too short for the run construction");

    ConstructionInput in;
    in.m = m;
    in.vec = shape.vec;
    in.variant = std::move(variant);
    in.rule_spec = rule_spec;
    in.inst = inst;
    in.names = detail::reduction_names(q, m, {"c", "w"});
    in.c = C;
    in.w = W;
    in.slack.assign((size_t)m, {});
    in.sel_count.assign((size_t)m, 0);

    int bd1 = 0, bd2 = 0;
    if (u == 1) {
        bd1 = pre[1] - 1;
        bd2 = pre[2] - 1;
    } else if (u == p) {
        bd1 = pre[(size_t)(p - 2)] - 1;
        bd2 = pre[(size_t)(p - 1)] - 1;
    } else {
        bd1 = pre[(size_t)(u - 1)] - 1;
        bd2 = pre[(size_t)u] - 1;
    }
    for (int i = 0; i < q; ++i) {
        in.slack[(size_t)detail::x_cand(i)] = {{bd1, +1}, {bd2, +1}};
        in.slack[(size_t)detail::y_cand(q, i)] = {{bd1, -1}};
        in.slack[(size_t)detail::z_cand(q, i)] = {{bd2, -1}};
        if (inst.occurrences(0, i) > 0) in.sel_count[(size_t)detail::x_cand(i)] = 1;
        if (inst.occurrences(1, i) > 0) in.sel_count[(size_t)detail::y_cand(q, i)] = 1;
        if (inst.occurrences(2, i) > 0) in.sel_count[(size_t)detail::z_cand(q, i)] = 1;
    }
    const Score threshold = shape.vec.at(bd1 + 1);

    in.plans.reserve((size_t)t);
    for (int l = 0; l < t; ++l) {
        const auto& tr = inst.triples[(size_t)l];
        const int XA = detail::x_cand(tr[0]);
        const int YB = detail::y_cand(q, tr[1]);
        const int ZE = detail::z_cand(q, tr[2]);

        // The run block is filled by the uninvolved elements plus c and w
        // (3q - 1 of them; the remaining run slot belongs to an actor).
        std::vector<int> run_fill;
        run_fill.reserve((size_t)(3 * q - 1));
        for (int e = 0; e < 3 * q; ++e)
            if (e != XA && e != YB && e != ZE) run_fill.push_back(e);
        run_fill.push_back(C);
        run_fill.push_back(W);

        TriplePlan plan;
        int next = first_dummy;
        auto take_dummies = [&](int count) {
            require(count >= 0 && next + count <= m, "dummy budget exceeded");
            std::vector<int> g;
            g.reserve((size_t)count);
            for (int j = 0; j < count; ++j) g.push_back(next++);
            return g;
        };

        if (u == 1) {
            // Run on top: the filler opens it, x closes it canonically; y and
            // z sit at the first slots of blocks 2 and 3.  When the triple is
            // selected x falls to block 3's first slot and y, z each rise one
            // boundary.
            std::vector<int> mid = take_dummies(shape.layout[1].second - 1);
            std::vector<int> low = take_dummies(m - pre[2] - 1);
            require(next == m, "dummy budget must be spent exactly");

            append(plan.nonsel, run_fill);
            plan.nonsel.push_back(XA);
            plan.nonsel.push_back(YB);
            append(plan.nonsel, mid);
            plan.nonsel.push_back(ZE);
            append(plan.nonsel, low);

            append(plan.sel, run_fill);
            plan.sel.push_back(YB);
            append(plan.sel, mid);
            plan.sel.push_back(ZE);
            plan.sel.push_back(XA);
            append(plan.sel, low);
        } else if (u == p) {
            // Run at the bottom: the free zone spans the last slot of block
            // p-2, block p-1, and the run's first slot.
            std::vector<int> high = take_dummies(pre[(size_t)(p - 2)] - 1);
            std::vector<int> mid = take_dummies(shape.layout[(size_t)(p - 2)].second - 1);
            require(next == m, "dummy budget must be spent exactly");

            append(plan.nonsel, high);
            plan.nonsel.push_back(XA);
            plan.nonsel.push_back(YB);
            append(plan.nonsel, mid);
            plan.nonsel.push_back(ZE);
            append(plan.nonsel, run_fill);

            append(plan.sel, high);
            plan.sel.push_back(YB);
            append(plan.sel, mid);
            plan.sel.push_back(ZE);
            plan.sel.push_back(XA);
            append(plan.sel, run_fill);
        } else {
            // Run in the middle: x at the last slot of block u-1, y at the
            // run's first slot, z at block u+1's first slot.
            std::vector<int> high = take_dummies(pre[(size_t)(u - 1)] - 1);
            std::vector<int> low = take_dummies(m - pre[(size_t)u] - 1);
            require(next == m, "dummy budget must be spent exactly");

            append(plan.nonsel, high);
            plan.nonsel.push_back(XA);
            plan.nonsel.push_back(YB);
            append(plan.nonsel, run_fill);
            plan.nonsel.push_back(ZE);
            append(plan.nonsel, low);

            append(plan.sel, high);
            plan.sel.push_back(YB);
            append(plan.sel, run_fill);
            plan.sel.push_back(ZE);
            plan.sel.push_back(XA);
            append(plan.sel, low);
        }
        // Vote = chain over everyone but x, which stays unconstrained.
        plan.partial = chain_without(m, plan.nonsel, {XA});
        plan.signal = VoteSignal{XA, threshold, /*selected_if_below=*/true};
        in.plans.push_back(std::move(plan));
    }
    return detail::assemble_reduction(std::move(in));
}

} // namespace

ReductionOutput reduce_fixed_p(const ThreeDMInstance& inst, const ScoringRule& rule) {
    inst.check();
    const int q = inst.q;
    // A p-valued family reaches a run of 3q within about 3q insertions per
    // block; the horizon covers families with up to ~72 distinct values.
    const int lo = rule.min_m;
    const int hi = lo + 3 * q * 72 + 512;
    auto shape = find_run_shape(inst, rule, lo, hi);
    if (!shape)
        throw InvalidArgument("rule " + rule.name + " never shows >= 3 distinct values and a run of exactly " +
                              std::to_string(3 * q) + " equal entries at any size in [" +
                              std::to_string(lo) + ", " + std::to_string(hi) +
                              "]; the fixed-arity construction does not apply");
    return reduce_with_run(inst, rule.name, *shape, "fixed-p");
}

// ---------------------------------------------------------------------------
// Unbounded rules: either some size exhibits a 3q-run (delegate to the run
// construction) or the number of distinct values itself reaches 3q + 4, in
// which case one candidate walks down four value boundaries.

namespace {

ReductionOutput reduce_boundary_walk(const ThreeDMInstance& inst, const ScoringRule& rule,
                                     int m, const ScoringVector& vec,
                                     const std::vector<std::pair<Score, int>>& layout) {
    const int q = inst.q;
    const int t = inst.size();
    const int mp = (int)layout.size();  // number of blocks
    require(mp >= 3 * q + 4, "boundary walk needs at least 3q+4 distinct values");
    const std::vector<int> pre = layout_prefix(layout);
    require(pre[(size_t)mp] == m, "block layout must cover the vector");
    const int C = 3 * q, W = 3 * q + 1, G = 3 * q + 2, D = 3 * q + 3;
    const int first_dummy = 3 * q + 4;

    ConstructionInput in;
    in.m = m;
    in.vec = vec;
    in.variant = "boundary-walk";
    in.rule_spec = rule.name;
    in.inst = inst;
    in.names = detail::reduction_names(q, m, {"c", "w", "g", "d"});
    in.c = C;
    in.w = W;
    in.slack.assign((size_t)m, {});
    in.sel_count.assign((size_t)m, 0);

    const int bdA = pre[(size_t)(mp - 4)] - 1;
    const int bdB = pre[(size_t)(mp - 3)] - 1;
    const int bdC = pre[(size_t)(mp - 2)] - 1;
    const int bdD = pre[(size_t)(mp - 1)] - 1;
    in.slack[(size_t)G] = {{bdA, (long long)q}, {bdB, (long long)q}, {bdC, (long long)q}, {bdD, (long long)q}};
    in.slack[(size_t)D] = {{bdA, -(long long)q}};
    for (int i = 0; i < q; ++i) {
        in.slack[(size_t)detail::x_cand(i)] = {{bdB, -1}};
        in.slack[(size_t)detail::y_cand(q, i)] = {{bdC, -1}};
        in.slack[(size_t)detail::z_cand(q, i)] = {{bdD, -1}};
        if (inst.occurrences(0, i) > 0) in.sel_count[(size_t)detail::x_cand(i)] = 1;
        if (inst.occurrences(1, i) > 0) in.sel_count[(size_t)detail::y_cand(q, i)] = 1;
        if (inst.occurrences(2, i) > 0) in.sel_count[(size_t)detail::z_cand(q, i)] = 1;
    }
    in.sel_count[(size_t)G] = t >= q ? q : 0;
    in.sel_count[(size_t)D] = t >= q ? q : 0;
    const Score threshold = vec.at(pre[(size_t)(mp - 5)]);

    in.plans.reserve((size_t)t);
    for (int l = 0; l < t; ++l) {
        const auto& tr = inst.triples[(size_t)l];
        const int XA = detail::x_cand(tr[0]);
        const int YB = detail::y_cand(q, tr[1]);
        const int ZE = detail::z_cand(q, tr[2]);

        // One filler heads each of the first mp-5 blocks: c, then w, then the
        // uninvolved elements; any remaining block heads and the rest of each
        // block are dummy-padded.
        std::vector<int> fillers;
        fillers.reserve((size_t)(3 * q - 1));
        fillers.push_back(C);
        fillers.push_back(W);
        for (int e = 0; e < 3 * q; ++e)
            if (e != XA && e != YB && e != ZE) fillers.push_back(e);
        require((int)fillers.size() <= mp - 5, "more fillers than upper blocks");

        int next = first_dummy;
        auto take_dummies = [&](int count) {
            require(count >= 0 && next + count <= m, "dummy budget exceeded");
            std::vector<int> g;
            g.reserve((size_t)count);
            for (int j = 0; j < count; ++j) g.push_back(next++);
            return g;
        };
        std::vector<int> fixed_top;  // blocks 1..mp-5: filler then padding
        for (int j = 0; j < mp - 5; ++j) {
            if (j < (int)fillers.size())
                fixed_top.push_back(fillers[(size_t)j]);
            else
                append(fixed_top, take_dummies(1));
            append(fixed_top, take_dummies(layout[(size_t)j].second - 1));
        }
        std::vector<int> pad1 = take_dummies(layout[(size_t)(mp - 5)].second - 1);
        std::vector<int> pad2 = take_dummies(layout[(size_t)(mp - 4)].second - 1);
        std::vector<int> pad3 = take_dummies(layout[(size_t)(mp - 3)].second - 1);
        std::vector<int> pad4 = take_dummies(layout[(size_t)(mp - 2)].second - 1);
        std::vector<int> pad5 = take_dummies(layout[(size_t)(mp - 1)].second - 1);
        require(next == m, "dummy budget must be spent exactly");

        // Canonical completion: g heads the fifth-from-last block, then each
        // pad fills out a block with d, x, y, z at the following block heads.
        // Selected completion: g drops to the last block's head; the chain
        // (everything except g) keeps its order, so d, x, y, z each close the
        // block above their canonical one.
        TriplePlan plan;
        plan.nonsel = fixed_top;
        plan.nonsel.push_back(G);
        append(plan.nonsel, pad1);
        plan.nonsel.push_back(D);
        append(plan.nonsel, pad2);
        plan.nonsel.push_back(XA);
        append(plan.nonsel, pad3);
        plan.nonsel.push_back(YB);
        append(plan.nonsel, pad4);
        plan.nonsel.push_back(ZE);
        append(plan.nonsel, pad5);

        plan.sel = fixed_top;
        append(plan.sel, pad1);
        plan.sel.push_back(D);
        append(plan.sel, pad2);
        plan.sel.push_back(XA);
        append(plan.sel, pad3);
        plan.sel.push_back(YB);
        append(plan.sel, pad4);
        plan.sel.push_back(ZE);
        plan.sel.push_back(G);
        append(plan.sel, pad5);

        // Vote = chain over everyone but g, which stays unconstrained.
        plan.partial = chain_without(m, plan.nonsel, {G});
        plan.signal = VoteSignal{G, threshold, /*selected_if_below=*/true};
        in.plans.push_back(std::move(plan));
    }
    return detail::assemble_reduction(std::move(in));
}

} // namespace

ReductionOutput reduce_unbounded(const ThreeDMInstance& inst, const ScoringRule& rule) {
    inst.check();
    const int q = inst.q;
    // Probe the vector of length (3q+4)(3q): by pigeonhole it has either a
    // run of at least 3q equal entries or at least 3q+4 distinct values.
    const int m0 = std::max((3 * q + 4) * 3 * q, std::max(rule.min_m, 3));
    auto vec = try_vector(rule, m0);
    if (vec) {
        auto layout = vec->block_layout();
        bool long_run = false;
        if ((int)layout.size() >= 3) {
            for (int u = 1; u <= (int)layout.size(); ++u) {
                const int len = layout[(size_t)(u - 1)].second;
                if (len == 3 * q)
                    return reduce_with_run(inst, rule.name, RunShape{m0, *vec, layout, u},
                                           "unbounded-run");
                if (len >= 3 * q) long_run = true;
            }
        }
        if (long_run) {
            // A longer run exists here, so some nearby length has one of
            // exactly 3q entries; delegate to the run construction's scan.
            auto shape = find_run_shape(inst, rule, rule.min_m, m0 + 3 * q + 512);
            if (shape) return reduce_with_run(inst, rule.name, *shape, "unbounded-run");
        }
        if ((int)layout.size() >= 3 * q + 4)
            return reduce_boundary_walk(inst, rule, m0, *vec, layout);
    }
    throw InvalidArgument("rule " + rule.name + " shows neither a run of exactly " +
                          std::to_string(3 * q) + " equal entries nor " + std::to_string(3 * q + 4) +
                          " distinct values around size " + std::to_string(m0) +
                          "; is it really unbounded?");
}

// ---------------------------------------------------------------------------
// Certificates.

std::vector<TotalOrder> matching_to_completion(const ReductionOutput& red, const Matching& match) {
    if (!is_perfect_matching(red.source, match))
        throw InvalidArgument("certificate is not a perfect matching of the source instance");
    const size_t nv = red.profile.votes.size();
    std::vector<const TotalOrder*> chosen(nv, nullptr);
    std::vector<char> selected((size_t)red.source.size(), 0);
    for (int idx : match) selected[(size_t)idx] = 1;
    for (int i = 0; i < red.source.size(); ++i) {
        const size_t vi = (size_t)red.triple_votes[(size_t)i];
        chosen[vi] = selected[(size_t)i] ? &red.completion_in[(size_t)i]
                                         : &red.completion_out[(size_t)i];
    }
    std::vector<TotalOrder> completion;
    completion.reserve(nv);
    for (size_t vi = 0; vi < nv; ++vi) {
        if (chosen[vi])
            completion.push_back(*chosen[vi]);
        else
            completion.push_back(red.profile.votes[vi].as_total());
    }
    return completion;
}

Matching completion_to_matching(const ReductionOutput& red,
                                const std::vector<TotalOrder>& completion) {
    if (completion.size() != red.profile.votes.size())
        throw InvalidArgument("completion has the wrong number of votes");
    Matching match;
    for (int i = 0; i < red.source.size(); ++i) {
        const size_t vi = (size_t)red.triple_votes[(size_t)i];
        const TotalOrder& vote = completion[vi];
        if (vote.size() != red.profile.num_candidates())
            throw InvalidArgument("completion vote has the wrong size");
        if (!vote.extends(red.profile.votes[vi]))
            throw Error("witness does not certify: a completion breaks its partial vote");
        const VoteSignal& sig = red.signals[(size_t)i];
        const Score& val = red.vector.at(vote.position_of[(size_t)sig.candidate]);
        const bool sel = sig.selected_if_below ? (val < sig.threshold) : (val >= sig.threshold);
        if (sel) match.push_back(i);
    }
    if ((int)match.size() != red.source.q || !is_perfect_matching(red.source, match))
        throw Error("witness does not certify: selected triples are not a perfect matching");
    return match;
}

} // namespace posvote
