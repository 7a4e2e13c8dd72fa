// Unit tests for the linear-extension machinery and the exhaustive
// possible/necessary-winner oracles (serial and parallel drivers).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "posvote/errors.hpp"
#include "posvote/oracle.hpp"
#include "posvote/rng.hpp"
#include "posvote/scoring.hpp"

#include "../support/random_profiles.hpp"

using namespace posvote;

namespace {

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= (std::uint64_t)i;
    return f;
}

Profile make_profile(int m, std::vector<PartialOrder> votes) {
    Profile p;
    p.candidates = CandidateSet::from_names(testsupport::letter_names(m));
    p.votes = std::move(votes);
    return p;
}

}  // namespace

TEST_CASE("extension counts: extremes") {
    for (int m = 1; m <= 7; ++m) {
        CHECK(count_extensions_capped(PartialOrder::empty(m), 1u << 30) == factorial(m));
        CHECK(count_extensions_capped(
                  PartialOrder::chain(m, [&] {
                      std::vector<int> all;
                      for (int i = 0; i < m; ++i) all.push_back(i);
                      return all;
                  }()),
                  1u << 30) == 1);
    }
}

TEST_CASE("extension counts: chain plus free candidates") {
    // A chain over m-k candidates with k unconstrained ones has exactly
    // m!/(m-k)! completions: insert the free candidates one by one.
    for (int m = 2; m <= 7; ++m) {
        for (int k = 0; k <= 3 && k <= m; ++k) {
            std::vector<int> members;
            for (int i = k; i < m; ++i) members.push_back(i);
            PartialOrder v = PartialOrder::chain(m, members);
            std::uint64_t expect = factorial(m) / factorial(m - k);
            CHECK(count_extensions_capped(v, 1u << 30) == expect);
        }
    }
}

TEST_CASE("extension counts saturate at cap + 1") {
    CHECK(count_extensions_capped(PartialOrder::empty(7), 100) == 101);
    CHECK(count_extensions_capped(PartialOrder::empty(7), 5040) == 5040);
    CHECK(count_extensions_capped(PartialOrder::empty(7), 5039) == 5040);
}

TEST_CASE("enumeration: canonical order, distinct, complete") {
    Rng rng(61ULL);
    for (int rep = 0; rep < 60; ++rep) {
        int m = 1 + (int)rng.below(5);
        PartialOrder v = testsupport::random_vote(rng, m);
        std::vector<TotalOrder> exts = enumerate_extensions(v, 1u << 20);
        CHECK((std::uint64_t)exts.size() == count_extensions_capped(v, 1u << 20));
        std::set<std::vector<int>> seen;
        for (const TotalOrder& t : exts) {
            CHECK(t.extends(v));
            seen.insert(t.by_position);
        }
        CHECK(seen.size() == exts.size());
        // Canonical: ascending lexicographic by the candidate-at-position
        // sequence (smaller id first at every choice point).
        for (size_t i = 0; i + 1 < exts.size(); ++i)
            CHECK(exts[i].by_position < exts[i + 1].by_position);
    }
}

TEST_CASE("enumeration throws past the cap") {
    CHECK_THROWS_AS(enumerate_extensions(PartialOrder::empty(6), 100), BudgetExceeded);
    CHECK_NOTHROW(enumerate_extensions(PartialOrder::empty(6), 720));
}

TEST_CASE("possible-winner oracle: basics") {
    ScoringVector plurality(std::vector<Score>{1, 0, 0});
    Profile p = make_profile(3, {PartialOrder::empty(3)});
    for (int c = 0; c < 3; ++c) {
        OracleResult r = possible_winner_bruteforce(p, plurality, c, Semantics::Unique);
        CHECK(r.yes);
        REQUIRE(r.witness.has_value());
        REQUIRE(r.witness->size() == 1);
        CHECK((*r.witness)[0].by_position[0] == c);
        CHECK(r.completion_space == 6);
    }

    // Fixed loser: with a pinned below b in the only vote, a cannot win
    // uniquely but still co-wins nothing -- plurality gives b the point.
    Profile q = make_profile(2, {PartialOrder::chain(2, {1, 0})});
    ScoringVector plu2(std::vector<Score>{1, 0});
    CHECK_FALSE(possible_winner_bruteforce(q, plu2, 0, Semantics::Cowinner).yes);
    CHECK(possible_winner_bruteforce(q, plu2, 1, Semantics::Unique).yes);
}

TEST_CASE("possible-winner oracle: witness wins and has smallest index") {
    Rng rng(62ULL);
    ScoringVector borda(std::vector<Score>{2, 1, 0});
    for (int rep = 0; rep < 40; ++rep) {
        Profile p = testsupport::random_profile(rng, 3, 2);
        int c = (int)rng.below(3);
        OracleResult r = possible_winner_bruteforce(p, borda, c, Semantics::Cowinner);
        // Reference: walk the full cross product in canonical order.
        std::vector<TotalOrder> e0 = enumerate_extensions(p.votes[0], 1u << 20);
        std::vector<TotalOrder> e1 = enumerate_extensions(p.votes[1], 1u << 20);
        CHECK(r.completion_space == (std::uint64_t)e0.size() * e1.size());
        bool found = false;
        std::vector<TotalOrder> first;
        for (const TotalOrder& a : e0) {
            for (const TotalOrder& b : e1) {
                std::vector<Score> tot = score_totals({a, b}, borda, 3);
                if (wins(tot, c, Semantics::Cowinner)) {
                    found = true;
                    first = {a, b};
                    break;
                }
            }
            if (found) break;
        }
        CHECK(r.yes == found);
        CHECK(r.witness.has_value() == found);
        if (found) {
            REQUIRE(r.witness->size() == 2);
            CHECK((*r.witness)[0] == first[0]);
            CHECK((*r.witness)[1] == first[1]);
        }
    }
}

TEST_CASE("necessary-winner oracle: counterexample present exactly on no") {
    Rng rng(63ULL);
    ScoringVector s(std::vector<Score>{2, 1, 1, 0});
    for (int rep = 0; rep < 30; ++rep) {
        Profile p = testsupport::random_profile(rng, 4, 2);
        int c = (int)rng.below(4);
        OracleResult r = necessary_winner_bruteforce(p, s, c, Semantics::Cowinner);
        CHECK(r.witness.has_value() == !r.yes);
        if (!r.yes) {
            // The counterexample must extend the profile and defeat c.
            std::vector<Score> tot = score_totals(*r.witness, s, 4);
            CHECK_FALSE(wins(tot, c, Semantics::Cowinner));
            for (size_t i = 0; i < r.witness->size(); ++i)
                CHECK((*r.witness)[i].extends(p.votes[i]));
        }
    }
}

TEST_CASE("serial and parallel drivers agree exactly") {
    Rng rng(64ULL);
    ScoringVector borda(std::vector<Score>{3, 2, 1, 0});
    for (int rep = 0; rep < 40; ++rep) {
        Profile p = testsupport::random_profile(rng, 4, 2);
        int c = (int)rng.below(4);
        for (Semantics sem : {Semantics::Cowinner, Semantics::Unique}) {
            OracleResult ser = possible_winner_bruteforce(p, borda, c, sem,
                                                          kDefaultOracleCap,
                                                          OracleMode::Serial);
            OracleResult par = possible_winner_bruteforce(p, borda, c, sem,
                                                          kDefaultOracleCap,
                                                          OracleMode::Parallel);
            CHECK(ser.yes == par.yes);
            CHECK(ser.completion_space == par.completion_space);
            CHECK(ser.witness.has_value() == par.witness.has_value());
            if (ser.witness)
                for (size_t i = 0; i < ser.witness->size(); ++i)
                    CHECK((*ser.witness)[i] == (*par.witness)[i]);

            OracleResult nws = necessary_winner_bruteforce(p, borda, c, sem,
                                                           kDefaultOracleCap,
                                                           OracleMode::Serial);
            OracleResult nwp = necessary_winner_bruteforce(p, borda, c, sem,
                                                           kDefaultOracleCap,
                                                           OracleMode::Parallel);
            CHECK(nws.yes == nwp.yes);
            CHECK(nws.witness.has_value() == nwp.witness.has_value());
        }
    }
}

TEST_CASE("oracle refuses oversized completion spaces") {
    Profile p = make_profile(6, {PartialOrder::empty(6), PartialOrder::empty(6),
                                 PartialOrder::empty(6)});
    ScoringVector s(std::vector<Score>{1, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(
        possible_winner_bruteforce(p, s, 0, Semantics::Cowinner, 1000),
        BudgetExceeded);
}

TEST_CASE("relaxing a vote never shrinks the possible-winner set") {
    Rng rng(65ULL);
    ScoringVector borda(std::vector<Score>{2, 1, 0});
    for (int rep = 0; rep < 40; ++rep) {
        Profile p = testsupport::random_profile(rng, 3, 2);
        // Drop all constraints from one vote.
        Profile relaxed = p;
        size_t which = (size_t)rng.below(2);
        relaxed.votes[which] = PartialOrder::empty(3);
        for (int c = 0; c < 3; ++c) {
            bool before =
                possible_winner_bruteforce(p, borda, c, Semantics::Cowinner).yes;
            bool after =
                possible_winner_bruteforce(relaxed, borda, c, Semantics::Cowinner).yes;
            if (before) CHECK(after);
        }
    }
}
