#ifndef BIPPR_UNDIRECTED_HPP
#define BIPPR_UNDIRECTED_HPP

#include <cmath>
#include <stdexcept>

#include "estimator.hpp"
#include "oracle.hpp"
#include "push.hpp"

namespace bippr {

struct UndirectedEstimate {
    double value = 0.0;
    std::size_t walks = 0;
    std::size_t forward_pushes = 0;
    double r_max = 0.0;
    double degree_sum = 0.0;
};

namespace detail {

inline void require_undirected(const Graph& g)
{
    if (!g.undirected()) throw std::invalid_argument("graph must be loaded as undirected");
}

} // namespace detail

// pi_s[t] d_s == pi_t[s] d_t, checked against the oracle
inline bool check_symmetry(const Graph& g, NodeId s, NodeId t, double alpha, double tol = 1e-9)
{
    detail::require_undirected(g);
    auto ps = exact_ppr(g, s, alpha, 1e-14);
    auto pt = exact_ppr(g, t, alpha, 1e-14);
    return std::abs(ps[t] * g.degree(s) - pt[s] * g.degree(t)) <= tol;
}

// delta = d_t / (2m), with 2m the total weighted degree
inline double natural_delta(const Graph& g, NodeId t) { return g.degree(t) / g.total_degree(); }

// r_max = eps / sqrt(ln(1 / p_fail)) * sqrt(delta / d_t)
inline double undirected_r_max(double epsilon, double p_fail, double delta, double d_t)
{
    return epsilon / std::sqrt(std::log(1.0 / p_fail)) * std::sqrt(delta / d_t);
}

// Walk constant: `c` by default (same convention as the directed estimator),
// or 3 ln(2 / p_fail) / eps^2 in strict mode.
inline std::size_t undirected_num_walks(const PprParams& p, double d_t, double r_max, double delta)
{
    return num_walks(walk_constant(p) * d_t, r_max, delta);
}

// UndirectedBiPPR(s, t, delta): forward push from s, walks from t, and
// X_i = r_s[V_i] d_t / d_{V_i}.
inline UndirectedEstimate estimate_ppr_undirected(const Graph& g, NodeId s, NodeId t, const PprParams& p)
{
    detail::require_undirected(g);
    const double ds = g.degree(s), dt = g.degree(t);
    if (!(ds > 0.0) || !(dt > 0.0)) throw std::invalid_argument("source and target must not be isolated");
    const double delta = p.delta > 0.0 ? p.delta : natural_delta(g, t);
    const double r_max = p.r_max ? *p.r_max : undirected_r_max(p.epsilon, p.p_fail, delta, dt);
    auto fwd = forward_push(g, s, r_max, p.alpha);
    const std::size_t w = undirected_num_walks(p, dt, r_max, delta);

    std::vector<NodeId> ends(w);
    parallel_for(w, p.threads, [&](std::size_t i) {
        Rng rng = stream_rng(p.seed, i);
        ends[i] = g.walk_endpoint(t, p.alpha, rng);
    });
    double acc = 0.0;
    for (NodeId v : ends) {
        const double r = fwd.r.get(v);
        if (r != 0.0) acc += r * dt / g.degree(v);
    }
    UndirectedEstimate out;
    out.value = fwd.p.get(t) + (w ? acc / static_cast<double>(w) : 0.0);
    out.walks = w;
    out.forward_pushes = fwd.pushes;
    out.r_max = r_max;
    out.degree_sum = fwd.degree_sum;
    return out;
}

// sum of degrees of pushed nodes <= 1 / (alpha r_max)
inline bool forward_work_bound_check(const Graph& g, NodeId s, double r_max, double alpha)
{
    detail::require_undirected(g);
    auto fwd = forward_push(g, s, r_max, alpha);
    return fwd.degree_sum <= 1.0 / (alpha * r_max) * (1.0 + 1e-12);
}

} // namespace bippr

#endif
