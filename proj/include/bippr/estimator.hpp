#ifndef BIPPR_ESTIMATOR_HPP
#define BIPPR_ESTIMATOR_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "alias_table.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "push.hpp"
#include "random.hpp"

namespace bippr {

struct PprParams {
    double alpha = 0.2;
    double delta = 0.0;  // 0: pick 4/n
    double epsilon = 0.5;
    double p_fail = 0.1;
    double c = 7.0;
    bool strict = false;  // use the accuracy theorem's c instead of `c`
    std::optional<double> r_max;
    double walk_time_constant = 1.0;  // balanced variant, work units per walk
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct PprEstimate {
    double value = 0.0;
    std::size_t walks = 0;
    std::size_t pushes = 0;
    double r_max = 0.0;
    double work_units = 0.0;
    std::vector<std::string> warnings;
};

// Source of walks: a single node or a distribution.
using Source = std::variant<NodeId, SparseVec>;

inline void require_no_dangling(const Graph& g)
{
    if (g.has_dangling()) throw std::invalid_argument("graph has dangling nodes; apply the sink convention first");
}

inline double effective_delta(const Graph& g, const PprParams& p)
{
    return p.delta > 0.0 ? p.delta : 4.0 / static_cast<double>(g.n());
}

// (3 / eps^2) ln(2 / p_fail), the walk constant of the accuracy theorem
inline double theorem_c(double epsilon, double p_fail)
{
    return 3.0 / (epsilon * epsilon) * std::log(2.0 / p_fail);
}

inline double walk_constant(const PprParams& p)
{
    return p.strict ? theorem_c(p.epsilon, p.p_fail) : p.c;
}

// r_max = eps sqrt(dbar delta / ln(2 / p_fail)), balancing forward and reverse work.
inline double default_r_max(const Graph& g, const PprParams& p)
{
    return p.epsilon * std::sqrt(g.average_degree() * effective_delta(g, p) / std::log(2.0 / p.p_fail));
}

// w = ceil(c r_max / delta), at least one walk whenever r_max > 0
inline std::size_t num_walks(double c, double r_max, double delta)
{
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (r_max <= 0.0) return 0;
    // tolerate representation error, e.g. 7 * 0.11 / 0.01 = 77.000000000000014
    const double x = c * r_max / delta;
    const double w = std::ceil(x * (1.0 - 1e-12));
    return std::max<std::size_t>(1, static_cast<std::size_t>(w));
}

inline double theorem_min_r_max(const PprParams& p, double delta)
{
    return 2.0 * std::exp(1.0) * delta / (p.alpha * p.epsilon);
}

// delta = pi[t], floored at 1/n
inline double choose_delta_from_target(const DenseDist& global_pr, NodeId t)
{
    return std::max(global_pr.at(t), 1.0 / static_cast<double>(global_pr.size()));
}

inline double choose_delta_from_target(const Graph& g, NodeId t, double alpha)
{
    return choose_delta_from_target(exact_global_pagerank(g, alpha), t);
}

namespace detail {

struct WalkStarts {
    std::optional<NodeId> node;
    std::optional<AliasTable<NodeId>> table;

    explicit WalkStarts(const Source& s)
    {
        if (auto v = std::get_if<NodeId>(&s)) {
            node = *v;
        } else {
            const auto& d = std::get<SparseVec>(s);
            table.emplace(d.sorted());
        }
    }
    NodeId draw(Rng& rng) const { return node ? *node : table->sample(rng); }
};

} // namespace detail

// Endpoints of w walks; walk i uses stream_rng(seed, i).
inline std::vector<NodeId> walk_endpoints(const Graph& g, const Source& s, double alpha, std::size_t w,
                                          std::uint64_t seed, unsigned threads = 1)
{
    detail::WalkStarts starts(s);
    std::vector<NodeId> ends(w);
    parallel_for(w, threads, [&](std::size_t i) {
        Rng rng = stream_rng(seed, i);
        ends[i] = g.walk_endpoint(starts.draw(rng), alpha, rng);
    });
    return ends;
}

// sum_v sigma[v] p[v] in ascending node order
inline double source_dot(const Source& s, const SparseVec& p)
{
    if (auto v = std::get_if<NodeId>(&s)) return p.get(*v);
    double acc = 0.0;
    for (const auto& [v, x] : std::get<SparseVec>(s).sorted()) acc += x * p.get(v);
    return acc;
}

inline double residual_mean(const SparseVec& r, const std::vector<NodeId>& ends)
{
    if (ends.empty()) return 0.0;
    double acc = 0.0;
    for (NodeId v : ends) acc += r.get(v);
    return acc / static_cast<double>(ends.size());
}

// Bidirectional estimate from a finished reverse phase.
inline PprEstimate combine(const Graph& g, const Source& s, const PushResult& rev, double r_max, std::size_t w,
                           const PprParams& p)
{
    PprEstimate out;
    auto ends = walk_endpoints(g, s, p.alpha, w, p.seed, p.threads);
    out.value = source_dot(s, rev.p) + residual_mean(rev.r, ends);
    out.walks = w;
    out.pushes = rev.pushes;
    out.r_max = r_max;
    out.work_units = rev.work_units;
    return out;
}

// BidirectionalPPR(s, t, delta): reverse push to r_max, then c r_max / delta walks.
inline PprEstimate estimate_ppr(const Graph& g, const Source& s, NodeId t, const PprParams& p)
{
    require_no_dangling(g);
    const double delta = effective_delta(g, p);
    const double r_max = p.r_max ? *p.r_max : default_r_max(g, p);
    auto rev = reverse_push(g, t, r_max, p.alpha);
    const std::size_t w = num_walks(walk_constant(p), r_max, delta);
    auto out = combine(g, s, rev, r_max, w, p);
    if (p.strict && !(r_max > theorem_min_r_max(p, delta)))
        out.warnings.push_back("r_max <= 2e delta / (alpha eps): accuracy guarantee does not apply");
    return out;
}

inline PprEstimate estimate_ppr_balanced(const Graph& g, const Source& s, NodeId t, const PprParams& p)
{
    require_no_dangling(g);
    const double delta = effective_delta(g, p);
    const double c = walk_constant(p);
    auto rev = reverse_push_balanced(g, t, p.alpha, delta, c, p.walk_time_constant);
    const std::size_t w = num_walks(c, rev.achieved_rmax, delta);
    return combine(g, s, rev, rev.achieved_rmax, w, p);
}

// w = 3 ln(2 / p_fail) / (eps^2 delta)
inline std::size_t monte_carlo_walks(const PprParams& p, double delta)
{
    return static_cast<std::size_t>(std::ceil(3.0 * std::log(2.0 / p.p_fail) / (p.epsilon * p.epsilon * delta)));
}

// Fraction of w walks from s that end at each node.
inline SparseVec monte_carlo_ppr_all(const Graph& g, const Source& s, std::size_t w, const PprParams& p)
{
    if (w == 0) throw std::invalid_argument("monte carlo needs at least one walk");
    require_no_dangling(g);
    auto ends = walk_endpoints(g, s, p.alpha, w, p.seed, p.threads);
    std::vector<std::size_t> counts(g.n(), 0);
    for (NodeId v : ends) ++counts[v];
    SparseVec out;
    for (NodeId v = 0; v < g.n(); ++v)
        if (counts[v]) out.set(v, static_cast<double>(counts[v]) / static_cast<double>(w));
    return out;
}

inline PprEstimate monte_carlo_ppr(const Graph& g, const Source& s, NodeId t, std::size_t w, const PprParams& p)
{
    if (w == 0) throw std::invalid_argument("monte carlo needs at least one walk");
    require_no_dangling(g);
    auto ends = walk_endpoints(g, s, p.alpha, w, p.seed, p.threads);
    std::size_t hits = 0;
    for (NodeId v : ends) hits += (v == t);
    PprEstimate out;
    out.value = static_cast<double>(hits) / static_cast<double>(w);
    out.walks = w;
    return out;
}

} // namespace bippr

#endif
