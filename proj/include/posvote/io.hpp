#pragma once

#include <string>
#include <utility>
#include <vector>

#include "posvote/profile.hpp"
#include "posvote/reductions.hpp"
#include "posvote/threedm.hpp"

namespace posvote {

// ---------------------------------------------------------------------------
// Profile documents.
//
// Line-oriented UTF-8 text; '#' starts a comment, blank lines are ignored.
//
//   candidates: a,b,c          exactly once, before any vote
//   rule: borda                optional rule spec (kept verbatim)
//   distinguished: c           optional distinguished candidate
//   vote: a > b > c            chain over a subset; omitted names are
//                              unconstrained ("vote:" alone = empty vote)
//   vote: {a,b} > c > {d,e}    partitioned preference; blocks must cover all
//                              candidates; singleton braces are optional
//   vote-pairs: a>b; c>d       arbitrary partial order given as preferred
//                              pairs, transitively closed on parse
//
// render_profile and parse_profile are mutually inverse on every in-memory
// Profile and on every document of the grammar above (up to comments and
// whitespace).
// ---------------------------------------------------------------------------
std::string render_profile(const Profile& p);
Profile parse_profile(const std::string& text);

// ---------------------------------------------------------------------------
// 3DM documents.
//
//   q: 2
//   triple: x1 y2 z1           1-based element indices per coordinate
//
// Duplicate triple lines are collapsed (first occurrence kept): a matching
// never needs the same triple twice.
// ---------------------------------------------------------------------------
std::string render_3dm(const ThreeDMInstance& inst);
ThreeDMInstance parse_3dm(const std::string& text);

// ---------------------------------------------------------------------------
// Reduction metadata sidecars.
//
// A reduction is stored as two documents: the election profile (profile
// grammar above) and a key-value sidecar holding everything a verifier needs
// without re-running the construction — the variant, rule, scoring vector,
// lambda, per-candidate targets, the source 3DM instance, and the per-triple
// vote indices, selection signals and designed completions.
// ---------------------------------------------------------------------------
std::string render_reduction_meta(const ReductionOutput& out);
ReductionOutput parse_reduction_meta(const std::string& profile_text,
                                     const std::string& meta_text);

// ---------------------------------------------------------------------------
// Completion documents (witness files): an ordinary profile document whose
// votes are all total orders over the same candidate set.
// ---------------------------------------------------------------------------
std::string render_completion(const CandidateSet& candidates,
                              const std::vector<TotalOrder>& votes);
std::pair<CandidateSet, std::vector<TotalOrder>> parse_completion(const std::string& text);

} // namespace posvote
