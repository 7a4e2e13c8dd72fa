#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "posvote/errors.hpp"
#include "posvote/io.hpp"
#include "posvote/oracle.hpp"
#include "posvote/pw.hpp"
#include "posvote/reductions.hpp"
#include "posvote/rules.hpp"
#include "posvote/scoring.hpp"
#include "posvote/threedm.hpp"
#include "posvote/truncated.hpp"

namespace {

using namespace posvote;

// Exit codes are part of the CLI contract: decision subcommands answer like
// grep, and running out of budget is an "unknown" distinct from "no".
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << text;
    out.flush();
    if (!out) throw ParseError("failed while writing file: " + path);
}

Semantics to_semantics(const std::string& s) {
    return s == "unique" ? Semantics::Unique : Semantics::Cowinner;
}

const char* semantics_name(Semantics s) {
    return s == Semantics::Unique ? "unique" : "cowinner";
}

// --- solve-pw / solve-nw -----------------------------------------------------

struct SolveArgs {
    std::string profile_path;
    std::string rule_spec;
    std::string candidate;
    std::string semantics = "cowinner";
    std::string witness_path;
    std::uint64_t budget = kDefaultSearchBudget;
    bool oracle = false;
};

struct SolveSetup {
    Profile profile;
    ScoringVector vec = ScoringVector({1, 0});
    int c = -1;
    Semantics sem = Semantics::Cowinner;
};

SolveSetup prepare_solve(const SolveArgs& a) {
    SolveSetup s;
    s.profile = parse_profile(slurp(a.profile_path));
    std::string spec = !a.rule_spec.empty() ? a.rule_spec : s.profile.rule_spec.value_or("");
    if (spec.empty())
        throw InvalidArgument(
            "no rule given: pass --rule or add a 'rule:' line to the profile");
    s.vec = parse_rule(spec).vector(s.profile.num_candidates());
    if (!a.candidate.empty())
        s.c = s.profile.candidates.require(a.candidate);
    else if (s.profile.distinguished)
        s.c = *s.profile.distinguished;
    else
        throw InvalidArgument(
            "no candidate given: pass --candidate or add a 'distinguished:' line");
    s.sem = to_semantics(a.semantics);
    return s;
}

int run_solve_pw(const SolveArgs& a) {
    SolveSetup s = prepare_solve(a);
    const std::string& cname = s.profile.candidates.name(s.c);
    bool yes = false;
    std::optional<std::vector<TotalOrder>> witness;
    if (a.oracle) {
        OracleResult r = possible_winner_bruteforce(s.profile, s.vec, s.c, s.sem, a.budget);
        yes = r.yes;
        witness = std::move(r.witness);
        std::cout << "completion space: " << r.completion_space << "\n";
    } else {
        PwResult r = possible_winner(s.profile, s.vec, s.c, s.sem, a.budget);
        yes = r.yes;
        witness = std::move(r.witness);
        switch (r.strategy) {
            case PwStrategy::PluralityFlow: std::cout << "strategy: plurality-flow\n"; break;
            case PwStrategy::VetoFlow: std::cout << "strategy: veto-flow\n"; break;
            case PwStrategy::ExactSearch:
                std::cout << "strategy: exact-search (nodes: " << r.nodes_explored << ")\n";
                break;
        }
    }
    std::cout << "possible winner (" << cname << ", " << semantics_name(s.sem)
              << "): " << (yes ? "yes" : "no") << "\n";
    if (yes && !a.witness_path.empty() && witness) {
        spill(a.witness_path, render_completion(s.profile.candidates, *witness));
        std::cout << "witness written to " << a.witness_path << "\n";
    }
    return yes ? kExitYes : kExitNo;
}

int run_solve_nw(const SolveArgs& a) {
    SolveSetup s = prepare_solve(a);
    const std::string& cname = s.profile.candidates.name(s.c);
    bool yes = false;
    if (a.oracle) {
        OracleResult r = necessary_winner_bruteforce(s.profile, s.vec, s.c, s.sem, a.budget);
        yes = r.yes;
        std::cout << "completion space: " << r.completion_space << "\n";
        if (!yes && r.witness && !a.witness_path.empty()) {
            spill(a.witness_path, render_completion(s.profile.candidates, *r.witness));
            std::cout << "counterexample written to " << a.witness_path << "\n";
        }
    } else {
        NwReport rep = necessary_winner_report(s.profile, s.vec, s.c, s.sem);
        yes = rep.necessary;
        if (rep.worst_rival >= 0)
            std::cout << "worst rival: " << s.profile.candidates.name(rep.worst_rival)
                      << " (max advantage " << rep.worst_advantage << ")\n";
    }
    std::cout << "necessary winner (" << cname << ", " << semantics_name(s.sem)
              << "): " << (yes ? "yes" : "no") << "\n";
    return yes ? kExitYes : kExitNo;
}

// --- reduce -------------------------------------------------------------------

int run_reduce(const std::string& in_path, const std::string& variant,
               const std::string& rule_spec, const std::string& profile_out,
               const std::string& meta_out) {
    ThreeDMInstance inst = parse_3dm(slurp(in_path));
    ReductionOutput red;
    if (variant == "2approval") {
        red = reduce_two_approval(inst);
    } else {
        if (rule_spec.empty())
            throw InvalidArgument("--rule is required for variant '" + variant + "'");
        ScoringRule rule = parse_rule(rule_spec);
        if (variant == "2valued")
            red = reduce_two_valued(inst, rule);
        else if (variant == "pvalued")
            red = reduce_fixed_p(inst, rule);
        else if (variant == "unbounded")
            red = reduce_unbounded(inst, rule);
        else if (variant == "ttb")
            red = reduce_ttb(inst, rule);
        else
            red = reduce_btb(inst, rule);
    }
    spill(profile_out, render_profile(red.profile));
    spill(meta_out, render_reduction_meta(red));
    std::cout << "construction: " << red.variant << "\n"
              << "rule: " << red.rule_spec << "\n"
              << "candidates: " << red.profile.num_candidates() << "\n"
              << "votes: " << red.profile.num_votes() << " (" << red.source.size()
              << " triple votes + " << red.adjustment_votes << " adjustment votes)\n"
              << "lambda: " << red.lambda << "\n"
              << "profile written to " << profile_out << "\n"
              << "metadata written to " << meta_out << "\n";
    return kExitYes;
}

// --- verify ---------------------------------------------------------------------

int run_verify(const std::string& profile_path, const std::string& meta_path,
               const std::string& witness_path) {
    ReductionOutput red = parse_reduction_meta(slurp(profile_path), slurp(meta_path));
    auto [cset, completion] = parse_completion(slurp(witness_path));
    if (cset.names() != red.profile.candidates.names())
        throw InvalidArgument("witness candidate set does not match the reduction profile");

    auto failed = [](const std::string& msg) {
        std::cout << "FAIL: " << msg << "\n";
        return kExitNo;
    };

    const int m = red.profile.num_candidates();
    const int n = red.profile.num_votes();
    if ((int)completion.size() != n)
        return failed("witness has " + std::to_string(completion.size()) + " votes, expected " +
                      std::to_string(n));
    for (int i = 0; i < n; ++i)
        if (!completion[(size_t)i].extends(red.profile.votes[(size_t)i]))
            return failed("witness vote " + std::to_string(i + 1) +
                          " does not extend the instance's vote");
    std::cout << "extension check: ok (" << n << " votes)\n";

    std::vector<Score> totals = score_totals(completion, red.vector, m);
    if (totals[(size_t)red.candidate_c] != red.lambda)
        return failed("distinguished candidate scores " +
                      totals[(size_t)red.candidate_c].str() + ", expected lambda = " +
                      red.lambda.str());
    if (!wins(totals, red.candidate_c, red.semantics))
        return failed("distinguished candidate does not win the witness completion");
    bool matches_targets = totals == red.yes_totals;
    std::cout << "score audit: ok (lambda = " << red.lambda
              << "; totals match designed targets: " << (matches_targets ? "yes" : "no")
              << ")\n";

    Matching match;
    try {
        match = completion_to_matching(red, completion);
    } catch (const Error& e) {
        return failed(e.what());
    }
    if (!is_perfect_matching(red.source, match))
        return failed("extracted certificate is not a perfect matching");
    std::cout << "certificate: triples";
    for (int idx : match) std::cout << " " << idx;
    std::cout << "\n";

    if (red.variant == "top-truncated" || red.variant == "bottom-truncated") {
        Profile partial;
        partial.candidates = red.profile.candidates;
        partial.distinguished = red.candidate_c;
        std::vector<char> is_triple((size_t)n, 0);
        for (int vi : red.triple_votes) is_triple[(size_t)vi] = 1;
        std::vector<TotalOrder> adjustment;
        for (int i = 0; i < n; ++i) {
            if (is_triple[(size_t)i]) {
                partial.votes.push_back(red.profile.votes[(size_t)i]);
            } else {
                if (!red.profile.votes[(size_t)i].is_total())
                    return failed("adjustment vote " + std::to_string(i + 1) + " is not total");
                adjustment.push_back(red.profile.votes[(size_t)i].as_total());
            }
        }
        std::vector<Score> adj_totals = score_totals(adjustment, red.vector, m);
        std::vector<Score> mu((size_t)m);
        for (int v = 0; v < m; ++v) mu[(size_t)v] = red.lambda - adj_totals[(size_t)v];
        // The slack-absorbing candidate is capped at its fixed mass, not at a
        // tie with the distinguished one.
        FixedProfileView view = analyze_fixed(partial, red.vector);
        mu[(size_t)red.candidate_w] = view.fixed_score[(size_t)red.candidate_w];
        if (!check_tightness(partial, adjustment, red.vector, red.candidate_c, mu))
            return failed("tightness check failed");
        std::cout << "tightness: ok\n";
    }

    std::cout << "verify: PASS\n";
    return kExitYes;
}

// --- classify-rule -----------------------------------------------------------------

int run_classify(const std::string& spec, int horizon) {
    ScoringRule rule = parse_rule(spec);
    std::cout << "rule: " << rule.name << "\n";
    std::cout << "declared class: ";
    if (std::holds_alternative<TwoValued>(rule.declared_class))
        std::cout << "two-valued\n";
    else if (const PValued* pv = std::get_if<PValued>(&rule.declared_class))
        std::cout << "p-valued (p = " << pv->p << ")\n";
    else
        std::cout << "unbounded\n";
    PwComplexity pc = pw_complexity(rule);
    std::cout << "possible-winner dispatch: "
              << (pc == PwComplexity::Polynomial
                      ? "polynomial (flow-based solver)"
                      : "np-hard (exact search; hardness construction available)")
              << "\n";
    RuleCheck chk = check_rule(rule, horizon);
    std::cout << "checked up to " << horizon << " candidates:\n"
              << "  vectors valid:     " << (chk.vectors_valid ? "yes" : "no") << "\n"
              << "  pure:              " << (chk.pure ? "yes" : "no") << "\n"
              << "  class consistent:  " << (chk.class_consistent ? "yes" : "no") << "\n"
              << "  layout consistent: " << (chk.layout_consistent ? "yes" : "no") << "\n";
    bool all = chk.vectors_valid && chk.pure && chk.class_consistent && chk.layout_consistent;
    if (!all && !chk.detail.empty()) std::cout << "  detail: " << chk.detail << "\n";
    std::cout << "result: " << (all ? "consistent" : "inconsistent") << "\n";
    return all ? kExitYes : kExitNo;
}

// --- gen-3dm --------------------------------------------------------------------

int run_gen3dm(int q, int t, std::uint64_t seed, const std::string& force,
               const std::string& out_path) {
    ForceAnswer f = ForceAnswer::Any;
    if (force == "yes") f = ForceAnswer::Yes;
    else if (force == "no") f = ForceAnswer::No;
    ThreeDMInstance inst = gen_3dm(q, t, seed, f);
    std::string doc = render_3dm(inst);
    if (out_path.empty()) {
        std::cout << doc;
    } else {
        spill(out_path, doc);
        std::cout << "instance written to " << out_path << "\n";
    }
    return kExitYes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"positional-scoring elections over incomplete preferences: "
                 "winner solvers, hardness constructions, generators"};
    app.require_subcommand(1);
    std::function<int()> action;

    SolveArgs pw_args;
    CLI::App* pw = app.add_subcommand("solve-pw", "decide possible winner for a profile");
    pw->add_option("profile", pw_args.profile_path, "profile file")->required();
    pw->add_option("-r,--rule", pw_args.rule_spec, "scoring rule (overrides the profile's)");
    pw->add_option("-c,--candidate", pw_args.candidate,
                   "candidate to test (overrides the profile's)");
    pw->add_option("-s,--semantics", pw_args.semantics, "winner semantics")
        ->check(CLI::IsMember({"cowinner", "unique"}))
        ->capture_default_str();
    pw->add_option("-b,--budget", pw_args.budget, "search/enumeration budget")
        ->capture_default_str();
    pw->add_flag("--oracle", pw_args.oracle, "force the brute-force oracle");
    pw->add_option("-w,--witness", pw_args.witness_path, "write a witness completion here");
    pw->callback([&] { action = [&] { return run_solve_pw(pw_args); }; });

    SolveArgs nw_args;
    CLI::App* nw = app.add_subcommand("solve-nw", "decide necessary winner for a profile");
    nw->add_option("profile", nw_args.profile_path, "profile file")->required();
    nw->add_option("-r,--rule", nw_args.rule_spec, "scoring rule (overrides the profile's)");
    nw->add_option("-c,--candidate", nw_args.candidate,
                   "candidate to test (overrides the profile's)");
    nw->add_option("-s,--semantics", nw_args.semantics, "winner semantics")
        ->check(CLI::IsMember({"cowinner", "unique"}))
        ->capture_default_str();
    nw->add_option("-b,--budget", nw_args.budget, "oracle enumeration budget")
        ->capture_default_str();
    nw->add_flag("--oracle", nw_args.oracle, "force the brute-force oracle");
    nw->add_option("-w,--witness", nw_args.witness_path,
                   "write a counterexample completion here (oracle mode, on 'no')");
    nw->callback([&] { action = [&] { return run_solve_nw(nw_args); }; });

    std::string red_in, red_variant, red_rule, red_profile_out, red_meta_out;
    CLI::App* red = app.add_subcommand(
        "reduce", "build a possible-winner instance from a 3DM instance");
    red->add_option("instance", red_in, "3DM instance file")->required();
    red->add_option("-v,--variant", red_variant, "construction family")
        ->required()
        ->check(CLI::IsMember({"2approval", "2valued", "pvalued", "unbounded", "ttb", "btb"}));
    red->add_option("-r,--rule", red_rule, "scoring rule (required except for 2approval)");
    red->add_option("--profile-out", red_profile_out, "output path for the profile")
        ->required();
    red->add_option("--meta-out", red_meta_out, "output path for the metadata sidecar")
        ->required();
    red->callback([&] {
        action = [&] {
            return run_reduce(red_in, red_variant, red_rule, red_profile_out, red_meta_out);
        };
    });

    std::string ver_profile, ver_meta, ver_witness;
    CLI::App* ver = app.add_subcommand(
        "verify", "audit a witness completion against a reduction's metadata");
    ver->add_option("profile", ver_profile, "reduction profile file")->required();
    ver->add_option("meta", ver_meta, "metadata sidecar file")->required();
    ver->add_option("witness", ver_witness, "witness completion file")->required();
    ver->callback([&] {
        action = [&] { return run_verify(ver_profile, ver_meta, ver_witness); };
    });

    std::string cls_spec;
    int cls_horizon = 50;
    CLI::App* cls = app.add_subcommand(
        "classify-rule", "print a rule's declared vs checked classification");
    cls->add_option("rule", cls_spec, "scoring rule spec")->required();
    cls->add_option("--horizon", cls_horizon, "largest candidate count to check")
        ->check(CLI::Range(2, 10000))
        ->capture_default_str();
    cls->callback([&] { action = [&] { return run_classify(cls_spec, cls_horizon); }; });

    int gen_q = 0, gen_t = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_force = "any", gen_out;
    CLI::App* gen = app.add_subcommand("gen-3dm", "generate a seeded random 3DM instance");
    gen->add_option("-q,--q", gen_q, "ground-set size per coordinate")
        ->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("-t,--t", gen_t, "number of distinct triples")
        ->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
    gen->add_option("--force", gen_force, "force the instance's answer")
        ->check(CLI::IsMember({"any", "yes", "no"}))
        ->capture_default_str();
    gen->add_option("-o,--out", gen_out, "output path (default: stdout)");
    gen->callback([&] {
        action = [&] { return run_gen3dm(gen_q, gen_t, gen_seed, gen_force, gen_out); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        return action();
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
