#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "posvote/errors.hpp"

namespace posvote {

// An ordered set of uniquely named candidates.  The index in `names` is the
// candidate id used everywhere else in the library.
class CandidateSet {
public:
    CandidateSet() = default;

    static CandidateSet from_names(std::vector<std::string> names) {
        CandidateSet cs;
        cs.names_ = std::move(names);
        for (int i = 0; i < (int)cs.names_.size(); ++i) {
            const std::string& n = cs.names_[i];
            if (n.empty())
                throw InvalidArgument("candidate names must be nonempty");
            if (!cs.index_.emplace(n, i).second)
                throw InvalidArgument("duplicate candidate name: " + n);
        }
        return cs;
    }

    int size() const { return (int)names_.size(); }
    const std::string& name(int id) const { return names_.at((size_t)id); }
    const std::vector<std::string>& names() const { return names_; }

    bool contains(const std::string& n) const { return index_.count(n) != 0; }

    int require(const std::string& n) const {
        auto it = index_.find(n);
        if (it == index_.end())
            throw InvalidArgument("unknown candidate: " + n);
        return it->second;
    }

    // Candidate ids sorted by name; used for canonical/deterministic
    // tie-breaking in witnesses and generated votes.
    std::vector<int> ids_by_name() const {
        std::vector<int> ids(names_.size());
        for (int i = 0; i < (int)ids.size(); ++i) ids[(size_t)i] = i;
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            return names_[(size_t)a] < names_[(size_t)b];
        });
        return ids;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

} // namespace posvote
