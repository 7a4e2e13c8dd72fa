// Unit tests for the text formats: profiles, matching instances, reduction
// sidecars, and completion documents.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "posvote/errors.hpp"
#include "posvote/io.hpp"
#include "posvote/reductions.hpp"
#include "posvote/rng.hpp"
#include "posvote/rules.hpp"
#include "posvote/truncated.hpp"

#include "../support/random_profiles.hpp"

using namespace posvote;

namespace {

ThreeDMInstance one_triple() {
    ThreeDMInstance i;
    i.q = 1;
    i.triples = {{0, 0, 0}};
    return i;
}

}  // namespace

TEST_CASE("profile document: all vote classes round-trip") {
    std::string doc =
        "# a comment\n"
        "candidates: a,b,c,d\n"
        "rule: borda\n"
        "distinguished: c\n"
        "vote: a > b > c > d\n"
        "vote: a > c          # subset chain\n"
        "vote:\n"
        "vote: {a,b} > c > {d}\n"
        "vote-pairs: a>b; c>d\n";
    Profile p = parse_profile(doc);
    CHECK(p.num_candidates() == 4);
    CHECK(p.num_votes() == 5);
    REQUIRE(p.rule_spec.has_value());
    CHECK(*p.rule_spec == "borda");
    REQUIRE(p.distinguished.has_value());
    CHECK(*p.distinguished == 2);
    CHECK(p.votes[0].is_total());
    CHECK(p.votes[1].above(0, 2));
    CHECK_FALSE(p.votes[1].above(0, 1));
    CHECK(p.votes[2].pair_count() == 0);
    CHECK(p.votes[3].above(0, 2));
    CHECK(p.votes[3].above(1, 2));
    CHECK_FALSE(p.votes[3].above(0, 1));
    CHECK(p.votes[4].above(0, 1));
    CHECK(p.votes[4].above(2, 3));
    CHECK_FALSE(p.votes[4].above(0, 3));

    Profile p2 = parse_profile(render_profile(p));
    CHECK(p2.candidates.names() == p.candidates.names());
    CHECK(p2.distinguished == p.distinguished);
    CHECK(p2.rule_spec == p.rule_spec);
    REQUIRE(p2.votes.size() == p.votes.size());
    for (size_t i = 0; i < p.votes.size(); ++i) CHECK(p2.votes[i] == p.votes[i]);
}

TEST_CASE("profile document: general poset survives the pair renderer") {
    Profile p = parse_profile("candidates: a,b,c,d\nvote-pairs: a>c; b>c; b>d\n");
    Profile p2 = parse_profile(render_profile(p));
    CHECK(p2.votes[0] == p.votes[0]);
}

TEST_CASE("profile document: random profiles of every class round-trip") {
    Rng rng(818283ULL);
    for (int rep = 0; rep < 100; ++rep) {
        int m = 1 + (int)rng.below(6);
        int n = (int)rng.below(5);
        Profile p = testsupport::random_profile(rng, m, n);
        Profile back = parse_profile(render_profile(p));
        CHECK(back.candidates.names() == p.candidates.names());
        CHECK(back.distinguished == p.distinguished);
        REQUIRE(back.votes.size() == p.votes.size());
        for (size_t i = 0; i < p.votes.size(); ++i) CHECK(back.votes[i] == p.votes[i]);
    }
}

TEST_CASE("profile document: parse errors carry positions") {
    auto fails = [](const std::string& text) {
        CHECK_THROWS_AS((void)parse_profile(text), ParseError);
    };
    fails("candidates: a,b\nvote: a > q\n");        // unknown candidate
    fails("candidates: a,b\nvote-pairs: a>b; b>a\n");  // cycle
    fails("vote: a > b\n");                          // vote before candidates
    fails("candidates: a,b\nvote: a >\n");           // dangling separator
    fails("candidates: a,b,c\nvote: {a} > b\n");     // incomplete partition
    fails("candidates: a,b\nwibble: 3\n");           // unknown directive
    fails("candidates: a,,b\n");                     // empty name
    fails("candidates: a,b\ncandidates: c\n");       // duplicate block
    fails("candidates: a,b\nvote: {a > b\n");        // unterminated brace

    try {
        (void)parse_profile("candidates: a,b\nvote: a > q\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("matching document round-trips and deduplicates") {
    ThreeDMInstance inst;
    inst.q = 2;
    inst.triples = {{0, 0, 0}, {1, 1, 1}, {0, 1, 1}};
    ThreeDMInstance back = parse_3dm(render_3dm(inst));
    CHECK(back.q == 2);
    CHECK(back.triples == inst.triples);

    ThreeDMInstance dup =
        parse_3dm("q: 2\ntriple: x1 y1 z1\ntriple: x1 y1 z1\ntriple: x2 y2 z2\n");
    CHECK(dup.size() == 2);
    CHECK_NOTHROW(dup.check());

    CHECK_THROWS_AS((void)parse_3dm("q: 2\ntriple: x1 y3 z1\n"), ParseError);
    CHECK_THROWS_AS((void)parse_3dm("q: 0\n"), ParseError);
    CHECK_THROWS_AS((void)parse_3dm("q: 2\ntriple: x1 z1 y1\n"), ParseError);
}

TEST_CASE("reduction sidecars round-trip for every variant family") {
    std::vector<ReductionOutput> reds;
    reds.push_back(reduce_two_approval(one_triple()));
    reds.push_back(reduce_fixed_p(one_triple(), make_rfl(1, 1)));
    reds.push_back(reduce_ttb(one_triple(), make_borda()));
    reds.push_back(reduce_btb(one_triple(), make_lexicographic()));
    for (const ReductionOutput& red : reds) {
        INFO("variant: ", red.variant);
        ReductionOutput back =
            parse_reduction_meta(render_profile(red.profile), render_reduction_meta(red));
        CHECK(back.variant == red.variant);
        CHECK(back.rule_spec == red.rule_spec);
        CHECK(back.vector.values() == red.vector.values());
        CHECK(back.semantics == red.semantics);
        CHECK(back.candidate_c == red.candidate_c);
        CHECK(back.candidate_w == red.candidate_w);
        CHECK(back.lambda == red.lambda);
        CHECK(back.adjustment_votes == red.adjustment_votes);
        CHECK(back.source.q == red.source.q);
        CHECK(back.source.triples == red.source.triples);
        CHECK(back.triple_votes == red.triple_votes);
        CHECK(back.yes_totals == red.yes_totals);
        REQUIRE(back.profile.num_votes() == red.profile.num_votes());
        for (int i = 0; i < red.profile.num_votes(); ++i)
            CHECK(back.profile.votes[(size_t)i] == red.profile.votes[(size_t)i]);
        REQUIRE(back.signals.size() == red.signals.size());
        for (size_t i = 0; i < red.signals.size(); ++i) {
            CHECK(back.signals[i].candidate == red.signals[i].candidate);
            CHECK(back.signals[i].threshold == red.signals[i].threshold);
            CHECK(back.signals[i].selected_if_below == red.signals[i].selected_if_below);
        }
        REQUIRE(back.completion_out.size() == red.completion_out.size());
        for (size_t i = 0; i < red.completion_out.size(); ++i) {
            CHECK(back.completion_out[i] == red.completion_out[i]);
            CHECK(back.completion_in[i] == red.completion_in[i]);
        }
    }
}

TEST_CASE("sidecar parser rejects inconsistent documents") {
    ReductionOutput red = reduce_two_approval(one_triple());
    std::string ptxt = render_profile(red.profile);
    std::string mtxt = render_reduction_meta(red);

    // Wrong vote count: drop the last vote line from the profile.
    std::string shorter = ptxt.substr(0, ptxt.rfind("vote"));
    CHECK_THROWS_AS((void)parse_reduction_meta(shorter, mtxt), ParseError);

    // Unknown key in the sidecar.
    CHECK_THROWS_AS((void)parse_reduction_meta(ptxt, mtxt + "mystery: 1\n"), ParseError);

    // Duplicated scalar key.
    CHECK_THROWS_AS((void)parse_reduction_meta(ptxt, mtxt + "lambda: 3\n"), ParseError);
}

TEST_CASE("completion documents round-trip") {
    ReductionOutput red = reduce_two_approval(one_triple());
    std::vector<TotalOrder> comp = matching_to_completion(red, Matching{0});
    std::string doc = render_completion(red.profile.candidates, comp);
    auto [cset, back] = parse_completion(doc);
    CHECK(cset.names() == red.profile.candidates.names());
    REQUIRE(back.size() == comp.size());
    for (size_t i = 0; i < comp.size(); ++i) CHECK(back[i] == comp[i]);

    // A partial vote is not a completion.
    CHECK_THROWS_AS((void)parse_completion("candidates: a,b,c\nvote: a > b\n"),
                    ParseError);
}
