#ifndef BIPPR_PATH_SAMPLER_HPP
#define BIPPR_PATH_SAMPLER_HPP

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "random.hpp"
#include "sparse_vec.hpp"

namespace bippr {

// A child of a provenance sampler: another snapshot, or the constant
// sampler of a target.
struct ProvenanceChild {
    bool constant = false;
    std::uint32_t index = 0;  // snapshot index, or target node when constant

    static ProvenanceChild snapshot(std::uint32_t i) { return {false, i}; }
    static ProvenanceChild target(NodeId t) { return {true, t}; }
    bool operator==(const ProvenanceChild&) const = default;
};

// Immutable weighted collection of children, owned by one node.
struct ProvenanceSampler {
    NodeId owner = 0;
    std::vector<ProvenanceChild> children;
    std::vector<double> weights;
    std::vector<double> cumulative;

    ProvenanceChild sample(Rng& rng) const
    {
        const double x = rng.uniform() * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
        if (it == cumulative.end()) --it;
        return children[it - cumulative.begin()];
    }
};

struct PathSamplerState {
    std::set<NodeId> targets;
    double alpha = 0.2;
    double eps_r = 1.0;
    SparseVec p, r;
    // live accumulators, append-only between pushes
    std::vector<std::vector<std::pair<ProvenanceChild, double>>> R;
    // estimate provenance: (snapshot index, weight) per node
    std::vector<std::vector<std::pair<std::uint32_t, double>>> P;
    std::vector<ProvenanceSampler> snapshots;
    // frozen R[u] at the end of the build, -1 when r[u] == 0
    std::vector<std::int64_t> final_R;
    std::vector<std::vector<double>> P_cumulative;
    std::size_t pushes = 0;

    std::uint32_t freeze(NodeId owner, const std::vector<std::pair<ProvenanceChild, double>>& acc)
    {
        ProvenanceSampler s;
        s.owner = owner;
        double c = 0.0;
        for (const auto& [child, w] : acc) {
            s.children.push_back(child);
            s.weights.push_back(w);
            c += w;
            s.cumulative.push_back(c);
        }
        snapshots.push_back(std::move(s));
        return static_cast<std::uint32_t>(snapshots.size() - 1);
    }
};

// PrecomputePathSamplers(T, eps_r) on a weighted graph: residual sent to
// in-neighbor u is (1 - alpha) w_{u,v} r[v], tagged with v's snapshot.
inline PathSamplerState precompute_path_samplers(const Graph& g, const std::set<NodeId>& targets, double eps_r,
                                                 double alpha)
{
    if (!(eps_r > 0.0)) throw std::invalid_argument("eps_r must be positive");
    if (targets.empty()) throw std::invalid_argument("empty target set");
    PathSamplerState st;
    st.targets = targets;
    st.alpha = alpha;
    st.eps_r = eps_r;
    st.R.resize(g.n());
    st.P.resize(g.n());
    std::deque<NodeId> queue;
    std::vector<char> queued(g.n(), 0);
    for (NodeId t : targets) {
        st.r.set(t, 1.0);
        st.R[t].push_back({ProvenanceChild::target(t), 1.0});
        if (1.0 > eps_r) {
            queue.push_back(t);
            queued[t] = 1;
        }
    }
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        queued[v] = 0;
        const double rv = st.r.get(v);
        if (!(rv > eps_r)) continue;
        const std::uint32_t snap = st.freeze(v, st.R[v]);
        st.R[v].clear();
        st.r.erase(v);
        st.p.add(v, alpha * rv);
        st.P[v].push_back({snap, alpha * rv});
        for (const auto& e : g.in(v)) {
            const double delta = (1.0 - alpha) * e.w * rv;
            st.r.add(e.node, delta);
            st.R[e.node].push_back({ProvenanceChild::snapshot(snap), delta});
            if (!queued[e.node] && st.r.get(e.node) > eps_r) {
                queued[e.node] = 1;
                queue.push_back(e.node);
            }
        }
        ++st.pushes;
    }
    st.final_R.assign(g.n(), -1);
    for (NodeId u = 0; u < g.n(); ++u)
        if (!st.R[u].empty()) st.final_R[u] = st.freeze(u, st.R[u]);
    st.P_cumulative.resize(g.n());
    for (NodeId v = 0; v < g.n(); ++v) {
        double c = 0.0;
        for (const auto& [snap, w] : st.P[v]) st.P_cumulative[v].push_back(c += w);
    }
    return st;
}

struct PathSample {
    std::vector<NodeId> path;
    std::size_t attempts = 0;
    bool direct = false;  // accepted through the p^T[s] branch
};

// SamplePathToTarget: exact draw of a geometric walk from s conditioned on
// ending in T.
inline PathSample sample_path_to_target(const Graph& g, NodeId s, const PathSamplerState& st, Rng& rng,
                                        std::size_t max_attempts = 1'000'000)
{
    PathSample out;
    const double ps = st.p.get(s);
    const double denom = ps + st.eps_r;
    const ProvenanceSampler* cur = nullptr;
    while (!cur) {
        if (++out.attempts > max_attempts)
            throw std::runtime_error("path sampler: acceptance cap exceeded; target set probably unreachable");
        const double x = rng.uniform();
        if (x < ps / denom) {
            const auto& cum = st.P_cumulative[s];
            const double y = rng.uniform() * cum.back();
            auto it = std::upper_bound(cum.begin(), cum.end(), y);
            if (it == cum.end()) --it;
            cur = &st.snapshots[st.P[s][it - cum.begin()].first];
            out.path = {s};
            out.direct = true;
        } else {
            auto walk = g.walk_path(s, st.alpha, rng);
            const NodeId u = walk.back();
            if (x - ps / denom < st.r.get(u) / denom) {
                cur = &st.snapshots[static_cast<std::size_t>(st.final_R[u])];
                out.path = std::move(walk);
            }
        }
    }
    for (;;) {
        const ProvenanceChild next = cur->sample(rng);
        if (next.constant) break;
        cur = &st.snapshots[next.index];
        out.path.push_back(cur->owner);
    }
    return out;
}

inline NodeId sample_target_exact(const Graph& g, NodeId s, const PathSamplerState& st, Rng& rng)
{
    return sample_path_to_target(g, s, st, rng).path.back();
}

// Running-sum invariants r[u] = sum R[u] and p[u] = sum P[u], compared exactly.
inline bool path_sampler_invariants_hold(const PathSamplerState& st)
{
    for (std::size_t u = 0; u < st.R.size(); ++u) {
        double r = 0.0, p = 0.0;
        for (const auto& [c, w] : st.R[u]) r += w;
        for (const auto& [c, w] : st.P[u]) p += w;
        if (r != st.r.get(static_cast<NodeId>(u)) || p != st.p.get(static_cast<NodeId>(u))) return false;
    }
    return true;
}

} // namespace bippr

#endif
