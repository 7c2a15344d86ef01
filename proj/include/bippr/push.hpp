#ifndef BIPPR_PUSH_HPP
#define BIPPR_PUSH_HPP

#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "graph.hpp"
#include "sparse_vec.hpp"

namespace bippr {

struct PushResult {
    SparseVec p;  // estimates
    SparseVec r;  // residuals
    std::size_t pushes = 0;
    double work_units = 0.0;  // sum over pushes of (1 + neighbors touched)
    double degree_sum = 0.0;  // sum of d_v over pushed nodes (forward)
    double achieved_rmax = 0.0;
};

namespace detail {

inline void check_alpha(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

} // namespace detail

// Single reverse push at v: p[v] += alpha r[v]; in-neighbors u get
// (1 - alpha) w_{u,v} r[v]. r[v] is cleared before distributing so a
// self-loop keeps its share.
inline double reverse_push_at(const Graph& g, PushResult& st, NodeId v, double alpha)
{
    const double rv = st.r.get(v);
    st.r.erase(v);
    st.p.add(v, alpha * rv);
    for (const auto& e : g.in(v)) st.r.add(e.node, (1.0 - alpha) * e.w * rv);
    ++st.pushes;
    st.work_units += 1.0 + static_cast<double>(g.in_degree(v));
    return rv;
}

// Forward push at u: p[u] += alpha r[u]; out-neighbors v get (1 - alpha) w_{u,v} r[u].
inline double forward_push_at(const Graph& g, PushResult& st, NodeId u, double alpha)
{
    const double ru = st.r.get(u);
    st.r.erase(u);
    st.p.add(u, alpha * ru);
    for (const auto& e : g.out(u)) st.r.add(e.node, (1.0 - alpha) * e.w * ru);
    ++st.pushes;
    st.work_units += 1.0 + static_cast<double>(g.out_degree(u));
    st.degree_sum += g.degree(u);
    return ru;
}

// ReversePush(t, r_max, alpha) with a FIFO of nodes whose residual exceeds r_max.
// Invariant: pi_s[t] = p[s] + sum_v pi_s[v] r[v] for every s.
inline PushResult reverse_push(const Graph& g, NodeId t, double r_max, double alpha)
{
    detail::check_alpha(alpha);
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    PushResult st;
    st.r.set(t, 1.0);
    std::deque<NodeId> queue;
    std::vector<char> queued(g.n(), 0);
    if (1.0 > r_max) {
        queue.push_back(t);
        queued[t] = 1;
    }
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        queued[v] = 0;
        if (!(st.r.get(v) > r_max)) continue;
        reverse_push_at(g, st, v, alpha);
        for (const auto& e : g.in(v)) {
            if (!queued[e.node] && st.r.get(e.node) > r_max) {
                queued[e.node] = 1;
                queue.push_back(e.node);
            }
        }
        if (!queued[v] && st.r.get(v) > r_max) {
            queued[v] = 1;
            queue.push_back(v);
        }
    }
    st.achieved_rmax = st.r.max_value();
    return st;
}

// ForwardPush(G, alpha, s, r_max): push while r[u] / d_u > r_max. Nodes with
// degree above max_push_degree are never pushed (their residual stays).
inline PushResult forward_push(const Graph& g, NodeId s, double r_max, double alpha,
                               double max_push_degree = std::numeric_limits<double>::infinity())
{
    detail::check_alpha(alpha);
    if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    PushResult st;
    st.r.set(s, 1.0);
    auto eligible = [&](NodeId u) {
        const double d = g.degree(u);
        return d > 0.0 && d <= max_push_degree && st.r.get(u) / d > r_max;
    };
    std::deque<NodeId> queue;
    std::vector<char> queued(g.n(), 0);
    if (eligible(s)) {
        queue.push_back(s);
        queued[s] = 1;
    }
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        queued[u] = 0;
        if (!eligible(u)) continue;
        forward_push_at(g, st, u, alpha);
        for (const auto& e : g.out(u)) {
            if (!queued[e.node] && eligible(e.node)) {
                queued[e.node] = 1;
                queue.push_back(e.node);
            }
        }
        if (!queued[u] && eligible(u)) {
            queued[u] = 1;
            queue.push_back(u);
        }
    }
    double worst = 0.0;
    for (const auto& [u, x] : st.r) {
        const double d = g.degree(u);
        if (d > 0.0 && d <= max_push_degree) worst = std::max(worst, x / d);
    }
    st.achieved_rmax = worst;
    return st;
}

// ReversePushBalanced: always push the largest residual; stop once the
// elapsed reverse work reaches the predicted forward cost
// walk_time_constant * c * maxPriority / delta. Work is counted in
// deterministic units (1 + in-degree per push). A larger walk_time_constant
// means walks are dearer, so more pushing is done before stopping.
inline PushResult reverse_push_balanced(const Graph& g, NodeId t, double alpha, double delta, double c,
                                        double walk_time_constant)
{
    detail::check_alpha(alpha);
    if (!(delta > 0.0) || !(c > 0.0) || walk_time_constant < 0.0)
        throw std::invalid_argument("reverse_push_balanced: delta, c must be positive");
    PushResult st;
    st.r.set(t, 1.0);
    using Item = std::pair<double, NodeId>;
    auto cmp = [](const Item& a, const Item& b) {
        return a.first < b.first || (a.first == b.first && a.second > b.second);
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    heap.push({1.0, t});
    auto drop_stale = [&] {
        while (!heap.empty() && heap.top().first != st.r.get(heap.top().second)) heap.pop();
    };
    drop_stale();
    while (!heap.empty() && st.work_units < walk_time_constant * c * heap.top().first / delta) {
        NodeId v = heap.top().second;
        heap.pop();
        reverse_push_at(g, st, v, alpha);
        for (const auto& e : g.in(v)) {
            const double x = st.r.get(e.node);
            if (x > 0.0) heap.push({x, e.node});
        }
        drop_stale();
    }
    st.achieved_rmax = heap.empty() ? 0.0 : heap.top().first;
    return st;
}

} // namespace bippr

#endif
