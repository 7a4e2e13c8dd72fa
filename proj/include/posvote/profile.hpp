#pragma once

#include <optional>
#include <string>
#include <vector>

#include "posvote/candidates.hpp"
#include "posvote/order.hpp"

namespace posvote {

// An election instance: a candidate set, one (possibly partial) vote per
// voter, and optionally a distinguished candidate the query is about.
struct Profile {
    CandidateSet candidates;
    std::vector<PartialOrder> votes;
    std::optional<int> distinguished;  // candidate id
    std::optional<std::string> rule_spec;

    int num_candidates() const { return candidates.size(); }
    int num_votes() const { return (int)votes.size(); }

    void check() const;  // every vote sized to the candidate set
};

} // namespace posvote
