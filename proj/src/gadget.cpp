#include "posvote/gadget.hpp"

#include <algorithm>
#include <cstdlib>

#include "posvote/scoring.hpp"

namespace posvote {

namespace {

std::vector<int> others_of(int M, int d) {
    std::vector<int> o;
    o.reserve((size_t)M - 1);
    for (int x = 0; x < M; ++x)
        if (x != d) o.push_back(x);
    return o;
}

int partner_vote(int M, int d, int j0, int partner) {
    std::vector<int> o = others_of(M, d);
    int idx = (int)(std::find(o.begin(), o.end(), partner) - o.begin());
    if (idx == M - 1) throw InvalidArgument("gadget partner must differ from the block candidate");
    int m = M - 1;
    return ((idx - j0) % m + m) % m;
}

void check_block_args(int M, int d, int j0, int max_j0) {
    if (M < 2) throw InvalidArgument("rotation blocks need at least two candidates");
    if (d < 0 || d >= M) throw InvalidArgument("block candidate id out of range");
    if (j0 < 0 || j0 > max_j0) throw InvalidArgument("block position out of range");
}

} // namespace

std::vector<TotalOrder> rotation_block(int M, int d, int j0) {
    check_block_args(M, d, j0, M - 1);
    std::vector<int> o = others_of(M, d);
    int m = M - 1;
    std::vector<TotalOrder> votes;
    votes.reserve((size_t)m);
    for (int v = 0; v < m; ++v) {
        std::vector<int> by_pos((size_t)M, -1);
        by_pos[(size_t)j0] = d;
        for (int p = 0; p < M; ++p) {
            if (p == j0) continue;
            int k = p < j0 ? p : p - 1;  // index among the non-d positions
            by_pos[(size_t)p] = o[(size_t)((v + k) % m)];
        }
        votes.push_back(TotalOrder::from_positions(by_pos));
    }
    return votes;
}

std::vector<TotalOrder> boost_block(int M, int d, int j0, int partner) {
    check_block_args(M, d, j0, M - 2);
    std::vector<TotalOrder> votes = rotation_block(M, d, j0);
    int v = partner_vote(M, d, j0, partner);
    std::vector<int> by_pos = votes[(size_t)v].by_position;
    if (by_pos[(size_t)j0 + 1] != partner)
        throw Error("internal: boost block picked the wrong vote to swap");
    std::swap(by_pos[(size_t)j0], by_pos[(size_t)j0 + 1]);
    votes[(size_t)v] = TotalOrder::from_positions(by_pos);
    return votes;
}

std::vector<TotalOrder> drop_block(int M, int d, int j0, int partner) {
    check_block_args(M, d, j0, M - 2);
    std::vector<TotalOrder> votes = rotation_block(M, d, j0 + 1);
    int v = partner_vote(M, d, j0, partner);
    std::vector<int> by_pos = votes[(size_t)v].by_position;
    if (by_pos[(size_t)j0] != partner)
        throw Error("internal: drop block picked the wrong vote to swap");
    std::swap(by_pos[(size_t)j0], by_pos[(size_t)j0 + 1]);
    votes[(size_t)v] = TotalOrder::from_positions(by_pos);
    return votes;
}

long long gadget_row_budget(int M) {
    long long m = M - 1;
    return 4 * m * m * m * m + 64;
}

std::vector<long long> eta_from_mixed(const std::vector<long long>& delta_coeffs,
                                      const std::vector<long long>& value_coeffs) {
    std::vector<long long> eta(delta_coeffs);
    long long run = 0;
    for (size_t j = 0; j < eta.size(); ++j) {
        if (j < value_coeffs.size()) run += value_coeffs[j];
        eta[j] += run;
    }
    return eta;
}

GadgetResult build_gadget(const GadgetSpec& spec, const ScoringVector& s, long long extra_padding) {
    int M = spec.num_candidates;
    if (M < 2) throw InvalidArgument("gadget needs at least two candidates");
    if (s.size() != M) throw InvalidArgument("scoring vector size does not match the gadget");
    if (spec.sink < 0 || spec.sink >= M) throw InvalidArgument("gadget sink id out of range");
    if ((int)spec.eta.size() != M) throw InvalidArgument("gadget needs one adjustment row per candidate");
    if (extra_padding < 0) throw InvalidArgument("extra padding must be non-negative");

    GadgetResult out;
    for (int x = 0; x < M; ++x) {
        const std::vector<long long>& row = spec.eta[(size_t)x];
        if ((int)row.size() != M - 1)
            throw InvalidArgument("adjustment rows need one coefficient per delta");
        long long weight = 0;
        for (long long h : row) weight += std::llabs(h);
        if (weight > gadget_row_budget(M))
            throw InvalidArgument("adjustment row exceeds the gadget budget");
        if (x == spec.sink && weight != 0)
            throw InvalidArgument("the sink's adjustment row must be zero");
        out.units += (std::uint64_t)weight;
    }

    Score s_tot = 0;
    for (int k = 0; k < M; ++k) s_tot += s.at(k);

    auto emit = [&out](std::vector<TotalOrder> block) {
        for (TotalOrder& t : block) out.votes.push_back(std::move(t));
    };
    auto emit_padding = [&](long long count) {
        for (long long i = 0; i < count; ++i) {
            emit(rotation_block(M, spec.sink, M - 1));
            out.lambda += s_tot;  // s[M-1] is 0, so non-sink candidates gain S_tot
        }
    };

    for (int x = 0; x < M; ++x) {
        if (x == spec.sink) continue;
        for (int j = 0; j + 1 < M; ++j) {
            long long h = spec.eta[(size_t)x][(size_t)j];
            for (long long u = 0; u < std::llabs(h); ++u) {
                if (h > 0) {
                    emit(boost_block(M, spec.sink, j, x));
                    out.lambda += s_tot - s.at(j);
                } else {
                    emit(drop_block(M, spec.sink, j, x));
                    out.lambda += s_tot - s.at(j + 1);
                }
                // One padding block per unit and per non-sink candidate keeps
                // the sink's running total below lambda.
                emit_padding(M - 1);
            }
        }
    }
    emit_padding(1 + extra_padding);

    // Re-derive every score from the emitted votes and check the contract.
    out.scores = score_totals(out.votes, s, M);
    for (int x = 0; x < M; ++x) {
        if (x == spec.sink) continue;
        Score want = out.lambda;
        for (int j = 0; j + 1 < M; ++j) want += Score(spec.eta[(size_t)x][(size_t)j]) * s.delta(j);
        if (out.scores[(size_t)x] != want)
            throw Error("internal: gadget realised a wrong score for candidate " +
                        std::to_string(x));
    }
    if (out.scores[(size_t)spec.sink] > out.lambda - 1)
        throw Error("internal: gadget sink ended at or above the base score");
    return out;
}

} // namespace posvote
