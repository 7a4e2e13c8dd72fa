#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "posvote/errors.hpp"

namespace posvote {

struct TotalOrder;

// A strict partial order over candidates 0..m-1, stored as its transitive
// closure.  above(a,b) means a is preferred to b (a gets the better, i.e.
// smaller, position in any extension).  Construction closes transitively and
// rejects cycles and self-loops.
class PartialOrder {
public:
    static PartialOrder empty(int m);

    // Closure of an arbitrary pair list {a preferred to b}.
    static PartialOrder from_pairs(int m, const std::vector<std::pair<int, int>>& pairs);

    // Linear order on a subset: members[0] preferred to members[1], ...
    // Candidates not listed are unconstrained.
    static PartialOrder chain(int m, const std::vector<int>& members);

    // Partitioned order: every member of blocks[i] preferred to every member
    // of blocks[j] for i < j; members within a block unconstrained.  The
    // blocks must cover all m candidates exactly once.
    static PartialOrder blocks(int m, const std::vector<std::vector<int>>& blocks);

    int size() const { return m_; }
    bool above(int a, int b) const { return rel_[(size_t)(a * m_ + b)] != 0; }
    int num_above(int c) const;  // |{x : x preferred to c}|
    int num_below(int c) const;  // |{x : c preferred to x}|
    int pair_count() const;

    bool is_total() const;
    TotalOrder as_total() const;  // requires is_total()

    bool operator==(const PartialOrder& o) const { return m_ == o.m_ && rel_ == o.rel_; }

private:
    PartialOrder(int m) : m_(m), rel_((size_t)(m * m), 0) {}
    void close_and_check();
    int m_ = 0;
    std::vector<char> rel_;
};

// A total order (one position per candidate), positions 0-based from the top.
struct TotalOrder {
    std::vector<int> by_position;  // by_position[p] = candidate at position p
    std::vector<int> position_of;  // inverse permutation

    static TotalOrder from_positions(std::vector<int> by_position);

    int size() const { return (int)by_position.size(); }
    bool extends(const PartialOrder& po) const;
    PartialOrder as_partial() const;

    bool operator==(const TotalOrder& o) const { return by_position == o.by_position; }
};

// Structural classification of a vote, used to pick solver strategies.
struct OrderClass {
    bool is_total = false;
    bool is_partial_chain = false;  // linear order on a nonempty subset
    bool is_partitioned = false;    // ordered blocks, complete between, empty within
    // For doubly-truncated orders: number of fixed singletons at the top (t)
    // and bottom (b).  A total order reports (m, 0); a fully unconstrained
    // vote reports (0, 0).
    std::optional<std::pair<int, int>> truncation;
};

OrderClass classify_order(const PartialOrder& po);

// Chain decomposition helper: if the order is a partial chain, returns its
// members from top to bottom; otherwise nullopt.
std::optional<std::vector<int>> chain_members(const PartialOrder& po);

// Partitioned decomposition helper: if the order is partitioned, returns the
// blocks from top to bottom (members ascending within each block).
std::optional<std::vector<std::vector<int>>> partition_blocks(const PartialOrder& po);

} // namespace posvote
