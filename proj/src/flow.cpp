#include "flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace posvote::flow {

int MaxFlow::add_edge(int u, int v, std::int64_t cap) {
    head_[(size_t)u].push_back(Edge{v, (int)head_[(size_t)v].size(), cap});
    head_[(size_t)v].push_back(Edge{u, (int)head_[(size_t)u].size() - 1, 0});
    edge_ref_.emplace_back(u, (int)head_[(size_t)u].size() - 1);
    orig_cap_.push_back(cap);
    return (int)edge_ref_.size() - 1;
}

bool MaxFlow::bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[(size_t)s] = 0;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const Edge& e : head_[(size_t)u]) {
            if (e.cap > 0 && level_[(size_t)e.to] < 0) {
                level_[(size_t)e.to] = level_[(size_t)u] + 1;
                q.push(e.to);
            }
        }
    }
    return level_[(size_t)t] >= 0;
}

std::int64_t MaxFlow::dfs(int u, int t, std::int64_t pushed) {
    if (u == t) return pushed;
    for (int& i = it_[(size_t)u]; i < (int)head_[(size_t)u].size(); ++i) {
        Edge& e = head_[(size_t)u][(size_t)i];
        if (e.cap <= 0 || level_[(size_t)e.to] != level_[(size_t)u] + 1) continue;
        std::int64_t got = dfs(e.to, t, std::min(pushed, e.cap));
        if (got > 0) {
            e.cap -= got;
            head_[(size_t)e.to][(size_t)e.rev].cap += got;
            return got;
        }
    }
    return 0;
}

std::int64_t MaxFlow::run(int s, int t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
        it_.assign(head_.size(), 0);
        while (std::int64_t got = dfs(s, t, std::numeric_limits<std::int64_t>::max()))
            total += got;
    }
    return total;
}

std::int64_t MaxFlow::flow_on(int edge_id) const {
    auto [u, slot] = edge_ref_.at((size_t)edge_id);
    return orig_cap_.at((size_t)edge_id) - head_[(size_t)u][(size_t)slot].cap;
}

} // namespace posvote::flow
