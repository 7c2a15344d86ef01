#ifndef BIPPR_ORACLE_HPP
#define BIPPR_ORACLE_HPP

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "sparse_vec.hpp"

namespace bippr {

using DenseDist = std::vector<double>;

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// y = x W
inline DenseDist step(const Graph& g, const DenseDist& x)
{
    DenseDist y(g.n(), 0.0);
    for (NodeId u = 0; u < g.n(); ++u) {
        if (x[u] == 0.0) continue;
        for (const auto& e : g.out(u)) y[e.node] += x[u] * e.w;
    }
    return y;
}

inline std::size_t power_iteration_cap(double alpha, double tol)
{
    return static_cast<std::size_t>(std::ceil(std::log(tol * alpha / 2.0) / std::log(1.0 - alpha))) + 64;
}

// p <- alpha s + (1 - alpha) p W from p = s, until the 1-norm change drops
// below tol * alpha; then ||p - pi_s||_inf <= ||p - pi_s||_1 <= tol.
inline DenseDist exact_ppr(const Graph& g, const DenseDist& source, double alpha, double tol = 1e-12)
{
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (source.size() != g.n()) throw std::invalid_argument("source size mismatch");
    DenseDist p = source;
    const std::size_t cap = power_iteration_cap(alpha, tol);
    for (std::size_t it = 0; it < cap; ++it) {
        DenseDist q = step(g, p);
        double change = 0.0;
        for (std::size_t v = 0; v < g.n(); ++v) {
            q[v] = alpha * source[v] + (1.0 - alpha) * q[v];
            change += std::abs(q[v] - p[v]);
        }
        p.swap(q);
        if (change < tol * alpha) return p;
    }
    throw ConvergenceError("power iteration did not converge; is the graph row-stochastic?");
}

inline DenseDist unit_dist(const Graph& g, NodeId s)
{
    DenseDist d(g.n(), 0.0);
    d.at(s) = 1.0;
    return d;
}

inline DenseDist exact_ppr(const Graph& g, NodeId s, double alpha, double tol = 1e-12)
{
    return exact_ppr(g, unit_dist(g, s), alpha, tol);
}

inline DenseDist exact_global_pagerank(const Graph& g, double alpha, double tol = 1e-12)
{
    return exact_ppr(g, DenseDist(g.n(), 1.0 / static_cast<double>(g.n())), alpha, tol);
}

// s W^ell
inline DenseDist exact_mstp(const Graph& g, DenseDist source, std::size_t ell)
{
    if (ell > 10000) throw std::invalid_argument("exact_mstp: ell too large");
    for (std::size_t i = 0; i < ell; ++i) source = step(g, source);
    return source;
}

// [s W^0, ..., s W^ell_max]
inline std::vector<DenseDist> exact_mstp_all(const Graph& g, DenseDist source, std::size_t ell_max)
{
    std::vector<DenseDist> out{source};
    for (std::size_t i = 0; i < ell_max; ++i) out.push_back(step(g, out.back()));
    return out;
}

// Probability that the walk from s first visits t at step ell >= 1
// (index 0 of the result is unused and kept at 0).
inline std::vector<double> exact_first_passage(const Graph& g, const DenseDist& source, NodeId t,
                                               std::size_t ell_max)
{
    std::vector<double> h(ell_max + 1, 0.0);
    DenseDist q = source;
    for (std::size_t ell = 1; ell <= ell_max; ++ell) {
        q = step(g, q);
        h[ell] = q[t];
        q[t] = 0.0;
    }
    return h;
}

inline std::vector<double> poisson_weights(double mean, std::size_t ell_max)
{
    std::vector<double> w(ell_max + 1);
    double x = std::exp(-mean);
    for (std::size_t i = 0; i <= ell_max; ++i) {
        w[i] = x;
        x *= mean / static_cast<double>(i + 1);
    }
    return w;
}

inline double exact_heat_kernel(const Graph& g, const DenseDist& source, NodeId t, double mean,
                                std::size_t ell_max)
{
    auto w = poisson_weights(mean, ell_max);
    DenseDist q = source;
    double f = 0.0;
    for (std::size_t i = 0; i <= ell_max; ++i) {
        f += w[i] * q[t];
        if (i < ell_max) q = step(g, q);
    }
    return f;
}

struct ConditionalPaths {
    std::map<std::vector<NodeId>, double> probs; // P[path | endpoint in T]
    double normalizer = 0.0;                     // pi_s(T)
    double tail_mass = 0.0;                      // conditional mass of longer paths
};

// Exhaustive enumeration of geometric-length walks from s that end in T.
inline ConditionalPaths exact_conditional_path_dist(const Graph& g, NodeId s, const std::set<NodeId>& targets,
                                                    double alpha, std::size_t max_len,
                                                    std::size_t path_cap = 2'000'000)
{
    ConditionalPaths out;
    auto pi = exact_ppr(g, s, alpha, 1e-14);
    for (NodeId t : targets) out.normalizer += pi.at(t);
    if (!(out.normalizer > 0.0)) throw std::domain_error("target set unreachable from source");

    std::size_t visited = 0;
    std::vector<NodeId> path{s};
    double found = 0.0;
    // prob = alpha (1-alpha)^L prod w along the path
    auto dfs = [&](auto&& self, double walk_prob) -> void {
        if (++visited > path_cap) throw std::length_error("path enumeration cap exceeded");
        const NodeId v = path.back();
        if (targets.count(v)) {
            const double p = alpha * walk_prob;
            out.probs[path] += p / out.normalizer;
            found += p;
        }
        if (path.size() - 1 == max_len) return;
        for (const auto& e : g.out(v)) {
            path.push_back(e.node);
            self(self, walk_prob * (1.0 - alpha) * e.w);
            path.pop_back();
        }
    };
    dfs(dfs, 1.0);
    if (out.probs.empty()) throw std::domain_error("no path to targets within max_len");
    out.tail_mass = std::max(0.0, 1.0 - found / out.normalizer);
    return out;
}

} // namespace bippr

#endif
