#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "posvote/bigint.hpp"
#include "posvote/errors.hpp"

namespace posvote {

// A positional scoring vector s_1 >= s_2 >= ... >= s_m in normalised form:
// non-increasing, s_1 > s_m, s_m = 0, gcd of nonzero entries 1.
class ScoringVector {
public:
    explicit ScoringVector(std::vector<Score> values);

    int size() const { return (int)s_.size(); }
    const Score& at(int pos) const { return s_.at((size_t)pos); }  // 0-based
    const std::vector<Score>& values() const { return s_; }

    // delta(j) = s[j] - s[j+1] for 0 <= j < size()-1.
    Score delta(int j) const { return s_.at((size_t)j) - s_.at((size_t)j + 1); }

    int distinct_count() const;

    // Run-length block layout: pairs (value, length) from the top.
    std::vector<std::pair<Score, int>> block_layout() const;

    bool operator==(const ScoringVector& o) const { return s_ == o.s_; }

private:
    std::vector<Score> s_;
};

// Normalise an arbitrary non-increasing, non-constant vector: subtract the
// last entry and divide by the gcd.  winners() is invariant under this map.
ScoringVector normalise(const std::vector<Score>& raw);

// Declared value-count class of a rule family.
struct TwoValued {};
struct PValued { int p; };
struct Unbounded {};
using RuleClass = std::variant<TwoValued, PValued, Unbounded>;

// A pure positional scoring rule: one normalised vector per candidate count.
// Purity (each vector obtained from the previous by inserting one value) is
// checkable up to a finite horizon, not assumed.
struct ScoringRule {
    std::string name;
    int min_m = 2;  // smallest candidate count the family is defined for
    std::function<ScoringVector(int)> vector_fn;
    RuleClass declared_class = Unbounded{};
    // Optional closed-form block layout (value, length) per m; when present
    // it must expand to exactly vector_fn(m).
    std::function<std::vector<std::pair<Score, int>>(int)> block_layout_fn;
    // For doubly-truncated hardness constructions: smallest valid candidate
    // count for a 3DM instance of size u (the growth polynomial g).
    std::function<int(int)> growth_poly;

    ScoringVector vector(int m) const {
        if (m < min_m)
            throw InvalidArgument("rule " + name + " is undefined for m=" + std::to_string(m));
        return vector_fn(m);
    }
};

// Whether the possible-winner problem for this rule is decided by a
// polynomial algorithm or dispatched to exact search (with the hardness
// annotation from the classification of pure rules).
enum class PwComplexity { Polynomial, NpHard };
PwComplexity pw_complexity(const ScoringRule& rule);

bool is_plurality_vector(const ScoringVector& s);
bool is_veto_vector(const ScoringVector& s);

// Built-in rule catalog.
ScoringRule make_plurality();
ScoringRule make_veto();
ScoringRule make_t_approval(int t);
ScoringRule make_borda();
ScoringRule make_rfl(int f, int l);       // f top positions worth 2, l bottom worth 0, 1 between
ScoringRule make_alternating();           // (1^ceil(m/2), 0^floor(m/2))
ScoringRule make_lexicographic();         // normalised (2^m-1, ..., 1, 0)
std::vector<ScoringRule> builtin_rules();

// Parse a rule spec like "plurality", "approval(2)", "r(1,1)", "borda".
ScoringRule parse_rule(const std::string& spec);

// Consistency report for a rule family checked up to a horizon.
struct RuleCheck {
    bool vectors_valid = true;     // normalised, non-increasing at every m
    bool pure = true;              // insertion property between consecutive m
    bool class_consistent = true;  // declared class matches observed counts
    bool layout_consistent = true; // block_layout_fn expands to vector_fn
    std::string detail;            // first violation, if any
};
RuleCheck check_rule(const ScoringRule& rule, int horizon = 50);

} // namespace posvote
