#ifndef BIPPR_SHARD_HPP
#define BIPPR_SHARD_HPP

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "estimator.hpp"
#include "exact_sum.hpp"
#include "graph.hpp"
#include "push.hpp"
#include "search.hpp"

namespace bippr {

using ShardFn = std::function<std::size_t(Coord)>;

inline ShardFn modulo_shards(std::size_t k)
{
    if (k == 0) throw std::invalid_argument("need at least one shard");
    return [k](Coord c) { return static_cast<std::size_t>(c % k); };
}

// Coordinates h(v) == id of every stored forward and reverse vector.
struct Shard {
    std::size_t id = 0;
    std::unordered_map<NodeId, std::vector<std::pair<Coord, double>>> forward;  // by source
    std::unordered_map<NodeId, std::unordered_map<Coord, double>> reverse;     // by target

    // partial E_i = sum over local coordinates of x^s(v) y^t(v), kept exact
    ExactSum partial(NodeId s, NodeId t) const
    {
        ExactSum acc;
        auto fx = forward.find(s);
        auto ry = reverse.find(t);
        if (fx == forward.end() || ry == reverse.end()) return acc;
        for (const auto& [c, x] : fx->second) {
            auto it = ry->second.find(c);
            if (it != ry->second.end()) acc.add(x * it->second);
        }
        return acc;
    }

    std::size_t nnz() const
    {
        std::size_t k = 0;
        for (const auto& [s, v] : forward) k += v.size();
        for (const auto& [t, v] : reverse) k += v.size();
        return k;
    }
};

struct ShardedStore {
    std::size_t n = 0;
    std::vector<Shard> shards;
    std::set<NodeId> sources, targets;
};

inline ShardedStore shard_vectors(const std::map<NodeId, ForwardVector>& xs, const std::vector<ReverseVector>& ys,
                                  std::size_t n, std::size_t k, const ShardFn& h)
{
    if (k == 0) throw std::invalid_argument("need at least one shard");
    ShardedStore store;
    store.n = n;
    store.shards.resize(k);
    for (std::size_t i = 0; i < k; ++i) store.shards[i].id = i;
    auto where = [&](Coord c) {
        const std::size_t i = h(c);
        if (i >= k) throw std::out_of_range("sharding function out of range");
        return i;
    };
    for (const auto& [s, x] : xs) {
        store.sources.insert(s);
        for (const auto& [c, v] : x.coords(n)) store.shards[where(c)].forward[s].push_back({c, v});
    }
    for (const auto& y : ys) {
        store.targets.insert(y.target);
        for (const auto& [c, v] : y.coords(n)) store.shards[where(c)].reverse[y.target][c] = v;
    }
    return store;
}

inline ShardedStore shard_vectors(const std::map<NodeId, ForwardVector>& xs, const std::vector<ReverseVector>& ys,
                                  std::size_t n, std::size_t k)
{
    return shard_vectors(xs, ys, n, k, modulo_shards(k));
}

// Unsharded reference: exact sum of the rounded products, rounded once.
inline double exact_dot(const ForwardVector& x, const ReverseVector& y, std::size_t n)
{
    ExactSum acc;
    for (const auto& [c, xv] : x.coords(n)) {
        const double yv = y.at(c, n);
        if (yv != 0.0) acc.add(xv * yv);
    }
    return acc.value();
}

struct BrokerQuery {
    NodeId s = 0, t = 0;
};

struct ShardResponse {
    std::size_t shard = 0;
    std::vector<double> partials;
};

// Each shard answers independently; the broker merges in shard-id order.
inline double broker_estimate(const BrokerQuery& q, const ShardedStore& store)
{
    if (!store.sources.count(q.s)) throw std::invalid_argument("unknown source");
    if (!store.targets.count(q.t)) throw std::invalid_argument("unknown target");
    std::vector<ShardResponse> responses;
    for (const auto& sh : store.shards) responses.push_back({sh.id, sh.partial(q.s, q.t).partials()});
    ExactSum total;
    for (const auto& resp : responses) total.merge(ExactSum::from_partials(resp.partials));
    return total.value();
}

// ---- walk sharing ---------------------------------------------------------

struct SharingParams {
    double alpha = 0.2;
    double delta = 0.0;  // 0: 4/n
    double c1 = 7.0;
    double c2 = 0.5;
    double c3 = 10.0;
    std::optional<double> r_max_r, r_max_f;
    std::optional<std::size_t> n_w;
    double d_max = 1000.0;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct SharingSetup {
    double delta, r_max_r, r_max_f;
    std::size_t n_w, full_walks;
};

// r_r = (c2^2 delta / (c1 c3))^(1/3), r_f = (c3^2 delta / (c1 c2))^(1/3),
// n_w = c1 r_f r_r / delta
inline SharingSetup sharing_setup(const Graph& g, const SharingParams& p)
{
    SharingSetup s;
    s.delta = p.delta > 0.0 ? p.delta : 4.0 / static_cast<double>(g.n());
    s.r_max_r = p.r_max_r ? *p.r_max_r : std::cbrt(p.c2 * p.c2 * s.delta / (p.c1 * p.c3));
    s.r_max_f = p.r_max_f ? *p.r_max_f : std::cbrt(p.c3 * p.c3 * s.delta / (p.c1 * p.c2));
    s.n_w = p.n_w ? *p.n_w : num_walks(p.c1 * s.r_max_f, s.r_max_r, s.delta);
    s.full_walks = num_walks(p.c1, s.r_max_r, s.delta);
    return s;
}

// Stored walk endpoints x~^v per node: n_w walks, or the full c1 r_r / delta
// for nodes of degree above d_max (those are never pushed through).
struct SharedWalkStore {
    SharingSetup setup;
    double d_max = 0.0;
    std::vector<SparseVec> endpoints;  // empirical distribution per node
    std::vector<char> full;            // node uses full walks
    std::size_t stored_walks = 0;
};

inline SharedWalkStore build_shared_walk_vectors(const Graph& g, const SharingParams& p)
{
    require_no_dangling(g);
    SharedWalkStore store;
    store.setup = sharing_setup(g, p);
    store.d_max = p.d_max;
    store.endpoints.resize(g.n());
    store.full.assign(g.n(), 0);
    std::vector<std::size_t> walks(g.n());
    for (NodeId v = 0; v < g.n(); ++v) {
        store.full[v] = g.degree(v) > p.d_max;
        walks[v] = store.full[v] ? store.setup.full_walks : store.setup.n_w;
        store.stored_walks += walks[v];
    }
    parallel_for(g.n(), p.threads, [&](std::size_t v) {
        const std::uint64_t seed = p.seed ^ (0x9e3779b97f4a7c15ULL * (v + 1));
        auto ends = walk_endpoints(g, static_cast<NodeId>(v), p.alpha, walks[v], seed);
        std::map<NodeId, std::size_t> counts;
        for (NodeId e : ends) ++counts[e];
        for (const auto& [e, k] : counts)
            store.endpoints[v].set(e, static_cast<double>(k) / static_cast<double>(walks[v]));
    });
    return store;
}

// pi^_s(t) = p_s(t) + sum_v r_s(v) <x~^v, y^t>, with x~^v = (e_v, endpoints of v)
inline double shared_walk_estimate(const Graph& g, const SharedWalkStore& store, NodeId s,
                                   const ReverseVector& y, double alpha)
{
    auto fwd = forward_push(g, s, store.setup.r_max_f, alpha, store.d_max);
    double acc = fwd.p.get(y.target);
    for (const auto& [v, rv] : fwd.r.sorted()) {
        double inner = y.p.get(v);
        for (const auto& [e, x] : store.endpoints[v].sorted()) inner += x * y.r.get(e);
        acc += rv * inner;
    }
    return acc;
}

struct SharingStorageReport {
    std::size_t n = 0;
    double delta = 0.0, c1 = 0.0;
    double r_max_r = 0.0, r_max_f = 0.0;
    double reverse_nnz = 0.0;       // total residual non-zeros over all targets
    double forward_nnz = 0.0;       // total forward residual non-zeros over all sources
    double walks = 0.0;             // stored walk count
    double fitted_c2 = 0.0, fitted_c3 = 0.0;
    double model_no_sharing = 0.0;  // n c1 r_r / delta + n c2 / r_r
    double model_shared = 0.0;      // n c3 / r_f + n c1 r_r r_f / delta + n c2 / r_r
    double measured_shared = 0.0;   // forward_nnz + walks + reverse_nnz
};

inline double storage_no_sharing(double n, double c1, double c2, double delta, double r_r)
{
    return n * c1 * r_r / delta + n * c2 / r_r;
}

inline double storage_shared(double n, double c1, double c2, double c3, double delta, double r_r, double r_f)
{
    return n * c3 / r_f + n * c1 * r_r * r_f / delta + n * c2 / r_r;
}

// minimum of storage_no_sharing over r_r: 2n sqrt(c1 c2 / delta)
inline double storage_no_sharing_optimal(double n, double c1, double c2, double delta)
{
    return 2.0 * n * std::sqrt(c1 * c2 / delta);
}

// minimum of storage_shared over (r_r, r_f): 3n (c1 c2 c3 / delta)^(1/3)
inline double storage_shared_optimal(double n, double c1, double c2, double c3, double delta)
{
    return 3.0 * n * std::cbrt(c1 * c2 * c3 / delta);
}

// Measures residual sizes for every node, fits c2 and c3 as mean size times
// threshold, and puts the models next to the measured totals.
inline SharingStorageReport storage_report(const Graph& g, const SharedWalkStore& store, double alpha,
                                           double c1)
{
    SharingStorageReport rep;
    rep.n = g.n();
    rep.delta = store.setup.delta;
    rep.c1 = c1;
    rep.r_max_r = store.setup.r_max_r;
    rep.r_max_f = store.setup.r_max_f;
    for (NodeId v = 0; v < g.n(); ++v) {
        rep.reverse_nnz += static_cast<double>(reverse_push(g, v, rep.r_max_r, alpha).r.nnz());
        rep.forward_nnz += static_cast<double>(forward_push(g, v, rep.r_max_f, alpha, store.d_max).r.nnz());
    }
    rep.walks = static_cast<double>(store.stored_walks);
    const double n = static_cast<double>(g.n());
    rep.fitted_c2 = rep.reverse_nnz / n * rep.r_max_r;
    rep.fitted_c3 = rep.forward_nnz / n * rep.r_max_f;
    rep.model_no_sharing = storage_no_sharing(n, c1, rep.fitted_c2, rep.delta, rep.r_max_r);
    rep.model_shared = storage_shared(n, c1, rep.fitted_c2, rep.fitted_c3, rep.delta, rep.r_max_r, rep.r_max_f);
    rep.measured_shared = rep.forward_nnz + rep.walks + rep.reverse_nnz;
    return rep;
}

// r_max^r = w max(delta, pi[t]) / c1
inline double variable_delta_r_max(double w, double delta, double pi_t, double c1)
{
    if (w < 1.0) throw std::invalid_argument("need at least one stored walk");
    return w * std::max(delta, pi_t) / c1;
}

} // namespace bippr

#endif
