#include "posvote/order.hpp"

#include <algorithm>
#include <numeric>

namespace posvote {

PartialOrder PartialOrder::empty(int m) {
    if (m <= 0) throw InvalidArgument("order needs at least one candidate");
    return PartialOrder(m);
}

PartialOrder PartialOrder::from_pairs(int m, const std::vector<std::pair<int, int>>& pairs) {
    PartialOrder po(m);
    if (m <= 0) throw InvalidArgument("order needs at least one candidate");
    for (auto [a, b] : pairs) {
        if (a < 0 || a >= m || b < 0 || b >= m)
            throw InvalidArgument("pair references candidate out of range");
        if (a == b) throw InvalidArgument("order pair is reflexive");
        po.rel_[(size_t)(a * m + b)] = 1;
    }
    po.close_and_check();
    return po;
}

PartialOrder PartialOrder::chain(int m, const std::vector<int>& members) {
    PartialOrder po(m);
    if (m <= 0) throw InvalidArgument("order needs at least one candidate");
    std::vector<char> seen((size_t)m, 0);
    for (int c : members) {
        if (c < 0 || c >= m) throw InvalidArgument("chain member out of range");
        if (seen[(size_t)c]) throw InvalidArgument("chain member repeated");
        seen[(size_t)c] = 1;
    }
    for (size_t i = 0; i < members.size(); ++i)
        for (size_t j = i + 1; j < members.size(); ++j)
            po.rel_[(size_t)(members[i] * m + members[j])] = 1;
    return po;
}

PartialOrder PartialOrder::blocks(int m, const std::vector<std::vector<int>>& blocks) {
    PartialOrder po(m);
    std::vector<char> seen((size_t)m, 0);
    int covered = 0;
    for (const auto& blk : blocks) {
        if (blk.empty()) throw InvalidArgument("partitioned order has an empty block");
        for (int c : blk) {
            if (c < 0 || c >= m) throw InvalidArgument("block member out of range");
            if (seen[(size_t)c]) throw InvalidArgument("block member repeated");
            seen[(size_t)c] = 1;
            ++covered;
        }
    }
    if (covered != m)
        throw InvalidArgument("partitioned order must cover every candidate");
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = i + 1; j < blocks.size(); ++j)
            for (int a : blocks[i])
                for (int b : blocks[j])
                    po.rel_[(size_t)(a * m + b)] = 1;
    return po;
}

void PartialOrder::close_and_check() {
    const int m = m_;
    // Warshall closure.
    for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a) {
            if (!rel_[(size_t)(a * m + k)]) continue;
            const char* rk = &rel_[(size_t)(k * m)];
            char* ra = &rel_[(size_t)(a * m)];
            for (int b = 0; b < m; ++b)
                if (rk[b]) ra[b] = 1;
        }
    for (int a = 0; a < m; ++a)
        if (rel_[(size_t)(a * m + a)])
            throw InvalidArgument("order contains a cycle");
}

int PartialOrder::num_above(int c) const {
    int n = 0;
    for (int x = 0; x < m_; ++x) n += rel_[(size_t)(x * m_ + c)];
    return n;
}

int PartialOrder::num_below(int c) const {
    int n = 0;
    const char* r = &rel_[(size_t)(c * m_)];
    for (int x = 0; x < m_; ++x) n += r[x];
    return n;
}

int PartialOrder::pair_count() const {
    int n = 0;
    for (char v : rel_) n += v;
    return n;
}

bool PartialOrder::is_total() const { return pair_count() == m_ * (m_ - 1) / 2; }

TotalOrder PartialOrder::as_total() const {
    if (!is_total()) throw InvalidArgument("order is not total");
    std::vector<int> by_pos((size_t)m_);
    for (int c = 0; c < m_; ++c) by_pos[(size_t)num_above(c)] = c;
    return TotalOrder::from_positions(std::move(by_pos));
}

TotalOrder TotalOrder::from_positions(std::vector<int> by_position) {
    TotalOrder t;
    const int m = (int)by_position.size();
    t.position_of.assign((size_t)m, -1);
    for (int p = 0; p < m; ++p) {
        int c = by_position[(size_t)p];
        if (c < 0 || c >= m || t.position_of[(size_t)c] != -1)
            throw InvalidArgument("total order is not a permutation");
        t.position_of[(size_t)c] = p;
    }
    t.by_position = std::move(by_position);
    return t;
}

bool TotalOrder::extends(const PartialOrder& po) const {
    if (po.size() != size()) return false;
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b)
            if (po.above(a, b) && position_of[(size_t)a] > position_of[(size_t)b])
                return false;
    return true;
}

PartialOrder TotalOrder::as_partial() const {
    return PartialOrder::chain(size(), by_position);
}

std::optional<std::vector<int>> chain_members(const PartialOrder& po) {
    const int m = po.size();
    std::vector<int> touched;
    for (int c = 0; c < m; ++c)
        if (po.num_above(c) + po.num_below(c) > 0) touched.push_back(c);
    // Empty relation: a chain on any single candidate (trivially linear).
    if (touched.empty()) return std::vector<int>{};
    const int k = (int)touched.size();
    if (po.pair_count() != k * (k - 1) / 2) return std::nullopt;
    for (int a : touched)
        for (int b : touched)
            if (a != b && !po.above(a, b) && !po.above(b, a)) return std::nullopt;
    std::sort(touched.begin(), touched.end(),
              [&](int a, int b) { return po.above(a, b); });
    return touched;
}

std::optional<std::vector<std::vector<int>>> partition_blocks(const PartialOrder& po) {
    const int m = po.size();
    // In a partitioned order, candidates of one block dominate exactly the
    // same candidates, so the number dominated identifies the block.
    std::vector<int> below((size_t)m);
    for (int c = 0; c < m; ++c) below[(size_t)c] = po.num_below(c);
    std::vector<int> ids((size_t)m);
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        if (below[(size_t)a] != below[(size_t)b]) return below[(size_t)a] > below[(size_t)b];
        return a < b;
    });
    std::vector<std::vector<int>> blocks;
    for (int c : ids) {
        if (blocks.empty() || below[(size_t)blocks.back().front()] != below[(size_t)c])
            blocks.push_back({c});
        else
            blocks.back().push_back(c);
    }
    // Validate: complete between blocks, empty within.
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = 0; j < blocks.size(); ++j)
            for (int a : blocks[i])
                for (int b : blocks[j]) {
                    if (a == b) continue;
                    bool expect = i < j;
                    if (po.above(a, b) != expect) return std::nullopt;
                }
    return blocks;
}

OrderClass classify_order(const PartialOrder& po) {
    OrderClass oc;
    oc.is_total = po.is_total();
    oc.is_partial_chain = chain_members(po).has_value();
    auto blocks = partition_blocks(po);
    oc.is_partitioned = blocks.has_value();
    if (blocks) {
        int nonsingleton = 0;
        for (const auto& b : *blocks)
            if (b.size() > 1) ++nonsingleton;
        if (nonsingleton <= 1) {
            int top = 0, bottom = 0;
            size_t i = 0;
            while (i < blocks->size() && (*blocks)[i].size() == 1) { ++top; ++i; }
            if (i < blocks->size()) ++i;  // the single free block
            while (i < blocks->size()) { ++bottom; ++i; }
            oc.truncation = std::make_pair(top, bottom);
        }
    }
    return oc;
}

} // namespace posvote
