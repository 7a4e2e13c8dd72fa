// Benchmark driver: compares the OpenMP-parallel brute-force oracle against
// its serial reference, and measures the polynomial kernels and the pruned
// search on seeded random inputs.  All instances are deterministic, so runs
// are comparable across machines and build flags.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "posvote/oracle.hpp"
#include "posvote/pw.hpp"
#include "posvote/rng.hpp"
#include "posvote/rules.hpp"
#include "posvote/scoring.hpp"

#include "../tests/support/random_profiles.hpp"

using namespace posvote;
using testsupport::random_chain_profile;
using testsupport::random_profile;

namespace {

template <typename F>
double time_s(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double seconds, const std::string& detail) {
    std::printf("%-44s %9.3f s   %s\n", name, seconds, detail.c_str());
}

// A profile whose completion space lands in [lo, hi], for oracle scans.
Profile profile_with_space(Rng& rng, int m, int n, std::uint64_t lo, std::uint64_t hi) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Profile p = random_profile(rng, m, n);
        std::uint64_t space = 1;
        for (const PartialOrder& v : p.votes) {
            space *= count_extensions_capped(v, hi + 1);
            if (space > hi) break;
        }
        if (space >= lo && space <= hi) return p;
    }
    throw Error("no profile with the requested completion space after 10000 attempts");
}

void bench_oracle_modes(int scale) {
    // The distinguished candidate is pinned on top of both free votes, so the
    // necessary-winner scan has no counterexample to stop at early and must
    // visit the whole 6!^2 completion space in both modes.
    const int m = 7;
    const int c = m - 1;
    std::vector<int> rest;
    for (int v = 0; v < m - 1; ++v) rest.push_back(v);
    Profile p;
    p.candidates = CandidateSet::from_names(testsupport::letter_names(m));
    p.votes.push_back(PartialOrder::blocks(m, {{c}, rest}));
    p.votes.push_back(PartialOrder::blocks(m, {{c}, rest}));
    p.distinguished = c;
    ScoringVector s = make_borda().vector(m);

    OracleResult serial, parallel;
    const int reps = 5 * (scale > 0 ? scale : 1);
    double t_serial = time_s([&] {
        for (int i = 0; i < reps; ++i)
            serial = necessary_winner_bruteforce(p, s, c, Semantics::Cowinner, 10'000'000ULL,
                                                 OracleMode::Serial);
    });
    double t_parallel = time_s([&] {
        for (int i = 0; i < reps; ++i)
            parallel = necessary_winner_bruteforce(p, s, c, Semantics::Cowinner,
                                                   10'000'000ULL, OracleMode::Parallel);
    });
    if (!serial.yes || serial.yes != parallel.yes)
        throw Error("serial and parallel oracle disagree");
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "space=%llu  serial=%.3fs  parallel=%.3fs  speedup=%.2fx",
                  (unsigned long long)serial.completion_space, t_serial, t_parallel,
                  t_parallel > 0 ? t_serial / t_parallel : 0.0);
    report("oracle scan: serial vs parallel", t_serial + t_parallel, detail);
}

void bench_nw_kernel(int scale) {
    Rng rng(11);
    const int reps = 4000 * scale;
    ScoringVector s = make_borda().vector(6);
    std::vector<Profile> inputs;
    inputs.reserve((size_t)reps);
    for (int i = 0; i < reps; ++i) inputs.push_back(random_profile(rng, 6, 8));
    int yes = 0;
    double t = time_s([&] {
        for (const Profile& p : inputs)
            yes += necessary_winner(p, s, *p.distinguished, Semantics::Cowinner) ? 1 : 0;
    });
    char detail[128];
    std::snprintf(detail, sizeof detail, "%d decisions  %.0f/s  (%d yes)", reps,
                  t > 0 ? reps / t : 0.0, yes);
    report("necessary-winner kernel (m=6, n=8)", t, detail);
}

void bench_flow_solvers(int scale) {
    Rng rng(23);
    const int reps = 2000 * scale;
    std::vector<Profile> inputs;
    inputs.reserve((size_t)reps);
    for (int i = 0; i < reps; ++i) inputs.push_back(random_profile(rng, 6, 7));
    int yes = 0;
    double t = time_s([&] {
        for (const Profile& p : inputs)
            yes += pw_plurality(p, *p.distinguished, Semantics::Cowinner).yes ? 1 : 0;
    });
    char detail[128];
    std::snprintf(detail, sizeof detail, "%d decisions  %.0f/s  (%d yes)", reps,
                  t > 0 ? reps / t : 0.0, yes);
    report("possible-winner plurality flow (m=6, n=7)", t, detail);

    yes = 0;
    t = time_s([&] {
        for (const Profile& p : inputs)
            yes += pw_veto(p, *p.distinguished, Semantics::Cowinner).yes ? 1 : 0;
    });
    std::snprintf(detail, sizeof detail, "%d decisions  %.0f/s  (%d yes)", reps,
                  t > 0 ? reps / t : 0.0, yes);
    report("possible-winner veto flow (m=6, n=7)", t, detail);
}

void bench_search_vs_oracle(int scale) {
    Rng rng(37);
    const int reps = 60 * scale;
    ScoringVector s = make_borda().vector(6);
    std::vector<Profile> inputs;
    inputs.reserve((size_t)reps);
    while ((int)inputs.size() < reps) {
        Profile p = random_chain_profile(rng, 6, 5);
        std::uint64_t space = 1;
        for (const PartialOrder& v : p.votes) {
            space *= count_extensions_capped(v, 300'000ULL);
            if (space > 200'000ULL) break;
        }
        if (space <= 200'000ULL) inputs.push_back(std::move(p));
    }
    std::vector<char> from_search((size_t)reps), from_oracle((size_t)reps);
    double t_search = time_s([&] {
        for (int i = 0; i < reps; ++i)
            from_search[(size_t)i] =
                pw_search(inputs[(size_t)i], s, *inputs[(size_t)i].distinguished,
                          Semantics::Cowinner)
                    .yes;
    });
    double t_oracle = time_s([&] {
        for (int i = 0; i < reps; ++i)
            from_oracle[(size_t)i] =
                possible_winner_bruteforce(inputs[(size_t)i], s,
                                           *inputs[(size_t)i].distinguished,
                                           Semantics::Cowinner, 100'000'000ULL)
                    .yes;
    });
    if (from_search != from_oracle) throw Error("pruned search and oracle disagree");
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "%d instances  search=%.3fs  oracle=%.3fs  ratio=%.2fx", reps, t_search,
                  t_oracle, t_search > 0 ? t_oracle / t_search : 0.0);
    report("pruned search vs oracle (Borda, chains)", t_search + t_oracle, detail);
}

void bench_extension_counts(int scale) {
    Rng rng(53);
    const int reps = 5000 * scale;
    std::vector<PartialOrder> votes;
    votes.reserve((size_t)reps);
    for (int i = 0; i < reps; ++i) votes.push_back(testsupport::random_vote(rng, 7));
    std::uint64_t acc = 0;
    double t = time_s([&] {
        for (const PartialOrder& v : votes) acc += count_extensions_capped(v, 10'000'000ULL);
    });
    char detail[128];
    std::snprintf(detail, sizeof detail, "%d posets (m=7)  %.0f/s  checksum=%llu", reps,
                  t > 0 ? reps / t : 0.0, (unsigned long long)(acc % 1000000007ULL));
    report("linear-extension counting", t, detail);
}

} // namespace

int main(int argc, char** argv) {
    int scale = 1;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) scale = 0;
        if (std::strcmp(argv[i], "--scale") == 0 && i + 1 < argc)
            scale = std::atoi(argv[i + 1]);
    }
    if (scale <= 0) scale = 1;
    std::printf("seeded benchmark run (scale %d)\n\n", scale);
    try {
        bench_oracle_modes(scale);
        bench_nw_kernel(scale);
        bench_flow_solvers(scale);
        bench_search_vs_oracle(scale);
        bench_extension_counts(scale);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "benchmark failed: %s\n", e.what());
        return 1;
    }
    std::printf("\nall benchmarks completed\n");
    return 0;
}
