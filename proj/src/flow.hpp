#pragma once

#include <cstdint>
#include <vector>

namespace posvote::flow {

// Dinic max-flow on a small directed graph with integer capacities.  Used by
// the polynomial possible-winner algorithms; graphs have O(votes+candidates)
// nodes, so no scaling tricks are needed.
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_((size_t)n) {}

    int node_count() const { return (int)head_.size(); }

    // Returns an edge id usable with flow_on().
    int add_edge(int u, int v, std::int64_t cap);

    std::int64_t run(int s, int t);

    std::int64_t flow_on(int edge_id) const;

private:
    struct Edge {
        int to;
        int rev;  // index of the reverse edge in adj_[to]
        std::int64_t cap;
    };
    bool bfs(int s, int t);
    std::int64_t dfs(int u, int t, std::int64_t pushed);

    std::vector<std::vector<Edge>> head_;
    std::vector<std::pair<int, int>> edge_ref_;  // edge id -> (node, slot)
    std::vector<std::int64_t> orig_cap_;
    std::vector<int> level_, it_;
};

} // namespace posvote::flow
