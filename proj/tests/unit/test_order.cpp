// Unit tests for partial/total orders, their constructors, and the
// order-class recogniser, cross-checked against definitional brute force.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "posvote/errors.hpp"
#include "posvote/order.hpp"
#include "posvote/rng.hpp"

#include "../support/random_profiles.hpp"

using namespace posvote;

namespace {

std::vector<std::pair<int, int>> all_pairs_of(const PartialOrder& v) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < v.size(); ++a)
        for (int b = 0; b < v.size(); ++b)
            if (v.above(a, b)) out.emplace_back(a, b);
    return out;
}

bool total_bf(const PartialOrder& v) {
    for (int a = 0; a < v.size(); ++a)
        for (int b = a + 1; b < v.size(); ++b)
            if (!v.above(a, b) && !v.above(b, a)) return false;
    return true;
}

// A partial chain totally orders the candidates it mentions and says nothing
// about the rest.
bool chain_bf(const PartialOrder& v) {
    std::vector<int> touched;
    for (int a = 0; a < v.size(); ++a)
        if (v.num_above(a) + v.num_below(a) > 0) touched.push_back(a);
    for (size_t i = 0; i < touched.size(); ++i)
        for (size_t j = i + 1; j < touched.size(); ++j)
            if (!v.above(touched[i], touched[j]) && !v.above(touched[j], touched[i]))
                return false;
    return true;
}

void ordered_partitions(int m, std::vector<int>& left,
                        std::vector<std::vector<int>>& acc,
                        std::vector<std::vector<std::vector<int>>>& out) {
    if (left.empty()) {
        out.push_back(acc);
        return;
    }
    // First block: any nonempty subset of the remaining candidates that
    // contains the smallest one (canonical, avoids duplicates only within a
    // block, not across block orderings -- block order matters here).
    int n = (int)left.size();
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> block, rest;
        for (int i = 0; i < n; ++i)
            ((mask >> i) & 1 ? block : rest).push_back(left[i]);
        acc.push_back(block);
        ordered_partitions(m, rest, acc, out);
        acc.pop_back();
    }
}

std::vector<std::vector<std::vector<int>>> all_ordered_partitions(int m) {
    std::vector<int> ids;
    for (int i = 0; i < m; ++i) ids.push_back(i);
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> acc;
    ordered_partitions(m, ids, acc, out);
    return out;
}

struct BruteClass {
    bool partitioned = false;
    std::optional<std::pair<int, int>> truncation;
};

BruteClass partitioned_bf(const PartialOrder& v) {
    BruteClass r;
    for (const auto& part : all_ordered_partitions(v.size())) {
        if (!(PartialOrder::blocks(v.size(), part) == v)) continue;
        r.partitioned = true;
        int multi = 0;
        for (const auto& b : part)
            if (b.size() > 1) ++multi;
        if (multi == 0) {
            r.truncation = {v.size(), 0};  // total order
        } else if (multi == 1 && !r.truncation) {
            int t = 0;
            while (part[(size_t)t].size() == 1) ++t;
            int b = (int)part.size() - t - 1;
            r.truncation = {t, b};
        }
    }
    return r;
}

void check_against_bruteforce(const PartialOrder& v) {
    OrderClass oc = classify_order(v);
    CHECK(oc.is_total == total_bf(v));
    CHECK(oc.is_partial_chain == chain_bf(v));
    BruteClass bf = partitioned_bf(v);
    CHECK(oc.is_partitioned == bf.partitioned);
    CHECK(oc.truncation == bf.truncation);
}

}  // namespace

TEST_CASE("pair closure is computed and idempotent") {
    PartialOrder v = PartialOrder::from_pairs(4, {{0, 1}, {1, 2}});
    CHECK(v.above(0, 2));  // transitive consequence
    CHECK(v.pair_count() == 3);
    CHECK(PartialOrder::from_pairs(4, all_pairs_of(v)) == v);

    CHECK_THROWS_AS(PartialOrder::from_pairs(3, {{0, 1}, {1, 0}}), Error);
    CHECK_THROWS_AS(PartialOrder::from_pairs(3, {{0, 2}, {2, 1}, {1, 0}}), Error);
    CHECK_THROWS_AS(PartialOrder::from_pairs(3, {{1, 1}}), Error);
    CHECK_THROWS_AS(PartialOrder::from_pairs(2, {{0, 3}}), Error);
}

TEST_CASE("chain and block constructors") {
    PartialOrder c = PartialOrder::chain(5, {3, 1, 4});
    CHECK(c.above(3, 1));
    CHECK(c.above(3, 4));
    CHECK(c.above(1, 4));
    CHECK_FALSE(c.above(3, 0));
    CHECK(c.pair_count() == 3);
    CHECK_FALSE(c.is_total());
    CHECK(PartialOrder::chain(3, {2, 0, 1}).is_total());
    CHECK_THROWS_AS(PartialOrder::chain(3, {0, 0}), Error);

    PartialOrder b = PartialOrder::blocks(3, {{0}, {1, 2}});
    CHECK(b.above(0, 1));
    CHECK(b.above(0, 2));
    CHECK_FALSE(b.above(1, 2));
    CHECK_FALSE(b.above(2, 1));
    // Blocks must cover every candidate exactly once.
    CHECK_THROWS_AS(PartialOrder::blocks(3, {{0}, {2}}), Error);
    CHECK_THROWS_AS(PartialOrder::blocks(3, {{0, 1}, {1, 2}}), Error);
}

TEST_CASE("empty order has no constraints") {
    PartialOrder e = PartialOrder::empty(4);
    CHECK(e.pair_count() == 0);
    CHECK(e.size() == 4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK_FALSE(e.above(a, b));
}

TEST_CASE("classifier: fully specified vote") {
    PartialOrder v = PartialOrder::chain(3, {0, 1, 2});
    OrderClass oc = classify_order(v);
    CHECK(oc.is_total);
    CHECK(oc.is_partial_chain);
    CHECK(oc.is_partitioned);
    REQUIRE(oc.truncation.has_value());
    CHECK(*oc.truncation == std::pair<int, int>(3, 0));
}

TEST_CASE("classifier: chain over a strict subset") {
    // a > d > c over {a,b,c,d,e}: a chain, not total, not partitioned.
    PartialOrder v = PartialOrder::chain(5, {0, 3, 2});
    OrderClass oc = classify_order(v);
    CHECK_FALSE(oc.is_total);
    CHECK(oc.is_partial_chain);
    CHECK_FALSE(oc.is_partitioned);
    CHECK_FALSE(oc.truncation.has_value());
}

TEST_CASE("classifier: doubly-truncated vote with a free middle") {
    // Three fixed leaders, a free block of three, one fixed loser.
    PartialOrder v = PartialOrder::blocks(7, {{2}, {4}, {0}, {1, 3, 6}, {5}});
    OrderClass oc = classify_order(v);
    CHECK_FALSE(oc.is_total);
    CHECK_FALSE(oc.is_partial_chain);
    CHECK(oc.is_partitioned);
    REQUIRE(oc.truncation.has_value());
    CHECK(*oc.truncation == std::pair<int, int>(3, 1));
}

TEST_CASE("classifier: unconstrained vote") {
    OrderClass oc = classify_order(PartialOrder::empty(4));
    CHECK_FALSE(oc.is_total);
    CHECK(oc.is_partial_chain);   // vacuous chain over no candidates
    CHECK(oc.is_partitioned);     // single free block
    REQUIRE(oc.truncation.has_value());
    CHECK(*oc.truncation == std::pair<int, int>(0, 0));
}

TEST_CASE("classifier matches definitional brute force on every m=3 poset") {
    // All subsets of ordered pairs, kept when they close into a poset.
    std::vector<std::pair<int, int>> universe;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a != b) universe.emplace_back(a, b);
    std::set<std::vector<std::pair<int, int>>> seen;
    int posets = 0;
    for (int mask = 0; mask < (1 << 6); ++mask) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < 6; ++i)
            if ((mask >> i) & 1) pairs.push_back(universe[(size_t)i]);
        PartialOrder v = PartialOrder::empty(3);
        try {
            v = PartialOrder::from_pairs(3, pairs);
        } catch (const Error&) {
            continue;  // cyclic selection
        }
        if (!seen.insert(all_pairs_of(v)).second) continue;
        ++posets;
        check_against_bruteforce(v);
    }
    CHECK(posets == 19);  // labelled posets on three elements
}

TEST_CASE("classifier matches definitional brute force on random m=4,5 posets") {
    Rng rng(2026081901ULL);
    for (int m = 4; m <= 5; ++m)
        for (int rep = 0; rep < 120; ++rep)
            check_against_bruteforce(testsupport::random_vote(rng, m));
}

TEST_CASE("chain decomposition round-trips") {
    PartialOrder v = PartialOrder::chain(6, {4, 0, 5});
    auto members = chain_members(v);
    REQUIRE(members.has_value());
    CHECK(*members == std::vector<int>{4, 0, 5});
    CHECK(PartialOrder::chain(6, *members) == v);
    CHECK_FALSE(chain_members(PartialOrder::blocks(3, {{0, 1}, {2}})).has_value());

    Rng rng(77ULL);
    for (int rep = 0; rep < 60; ++rep) {
        PartialOrder c = testsupport::random_chain_vote(rng, 2 + (int)rng.below(5));
        auto got = chain_members(c);
        REQUIRE(got.has_value());
        CHECK(PartialOrder::chain(c.size(), *got) == c);
    }
}

TEST_CASE("partition decomposition round-trips with ascending members") {
    PartialOrder v = PartialOrder::blocks(5, {{3, 1}, {0}, {4, 2}});
    auto blocks = partition_blocks(v);
    REQUIRE(blocks.has_value());
    CHECK(*blocks == std::vector<std::vector<int>>{{1, 3}, {0}, {2, 4}});
    CHECK(PartialOrder::blocks(5, *blocks) == v);
    CHECK_FALSE(partition_blocks(PartialOrder::chain(4, {0, 1})).has_value());

    Rng rng(78ULL);
    for (int rep = 0; rep < 60; ++rep) {
        PartialOrder p = testsupport::random_partitioned_vote(rng, 2 + (int)rng.below(5));
        auto got = partition_blocks(p);
        REQUIRE(got.has_value());
        CHECK(PartialOrder::blocks(p.size(), *got) == p);
    }
}

TEST_CASE("total orders: positions, extension, conversion") {
    TotalOrder t = TotalOrder::from_positions({2, 0, 1});  // order 2 > 0 > 1
    CHECK(t.size() == 3);
    CHECK(t.position_of[2] == 0);
    CHECK(t.position_of[0] == 1);
    CHECK(t.position_of[1] == 2);
    CHECK(t.by_position == std::vector<int>{2, 0, 1});
    CHECK_THROWS_AS(TotalOrder::from_positions({0, 0, 1}), Error);
    CHECK_THROWS_AS(TotalOrder::from_positions({0, 1, 3}), Error);

    CHECK(t.extends(PartialOrder::chain(3, {2, 1})));
    CHECK_FALSE(t.extends(PartialOrder::chain(3, {1, 2})));
    CHECK(t.extends(PartialOrder::empty(3)));

    PartialOrder asp = t.as_partial();
    CHECK(asp.is_total());
    CHECK(asp.as_total() == t);
    CHECK_THROWS_AS(PartialOrder::chain(3, {0, 1}).as_total(), Error);
}

TEST_CASE("every total extension agrees with the partial order it extends") {
    Rng rng(99ULL);
    for (int rep = 0; rep < 80; ++rep) {
        int m = 2 + (int)rng.below(4);
        PartialOrder v = testsupport::random_vote(rng, m);
        TotalOrder t = TotalOrder::from_positions(rng.permutation(m));
        if (!t.extends(v)) continue;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (v.above(a, b))
                    CHECK(t.position_of[(size_t)a] < t.position_of[(size_t)b]);
    }
}
