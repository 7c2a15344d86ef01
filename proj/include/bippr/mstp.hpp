#ifndef BIPPR_MSTP_HPP
#define BIPPR_MSTP_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "estimator.hpp"
#include "graph.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "sparse_vec.hpp"

namespace bippr {

// p[k], r[k] for k = 0..ell_max; k is the remaining distance to t.
struct LayeredReverseState {
    std::vector<SparseVec> p, r;
    std::size_t pushes = 0;

    LayeredReverseState() = default;
    LayeredReverseState(NodeId t, std::size_t ell_max) : p(ell_max + 1), r(ell_max + 1) { r[0].set(t, 1.0); }

    std::size_t ell_max() const { return r.size() - 1; }
};

// REVERSE-PUSH-MSTP(v, i). At the top level the residual only becomes
// estimate, since there is no level ell_max + 1.
inline void reverse_push_mstp(LayeredReverseState& st, const Graph& g, NodeId v, std::size_t i)
{
    const double rv = st.r.at(i).get(v);
    if (rv == 0.0) return;
    st.r[i].erase(v);
    st.p[i].add(v, rv);
    if (i < st.ell_max())
        for (const auto& e : g.in(v)) st.r[i + 1].add(e.node, rv * e.w);
    ++st.pushes;
}

// Hitting-time variant: residual reaching t at level >= 1 is settled into
// p[i][t] and not pushed further back.
inline void absorb_target(LayeredReverseState& st, NodeId t, std::size_t i)
{
    const double x = st.r.at(i).get(t);
    if (x == 0.0) return;
    st.r[i].erase(t);
    st.p[i].add(t, x);
}

// Pushes every (v, i) with r[i][v] > eps_r. Level i only feeds level i + 1,
// so one ascending pass per level suffices.
inline LayeredReverseState layered_reverse_push(const Graph& g, NodeId t, std::size_t ell_max, double eps_r,
                                                bool absorb_at_target = false)
{
    if (!(eps_r > 0.0)) throw std::invalid_argument("eps_r must be positive");
    LayeredReverseState st(t, ell_max);
    for (std::size_t i = 0; i <= ell_max; ++i) {
        if (absorb_at_target && i >= 1) absorb_target(st, t, i);
        for (const auto& [v, x] : st.r[i].sorted())
            if (x > eps_r) reverse_push_mstp(st, g, v, i);
    }
    return st;
}

// <s, p^ell> + sum_k <s W^k, r^(ell-k)>; with absorbing set, walks that touch
// t at steps 1..k-1 are excluded from the k-th term.
inline std::vector<double> layered_invariant_value(const Graph& g, const LayeredReverseState& st,
                                                   const DenseDist& source, bool absorbing = false,
                                                   NodeId t = 0)
{
    const std::size_t L = st.ell_max();
    std::vector<DenseDist> q{source};
    for (std::size_t k = 1; k <= L; ++k) {
        DenseDist prev = q.back();
        if (absorbing && k >= 2) prev[t] = 0.0;
        q.push_back(step(g, prev));
    }
    std::vector<double> out(L + 1, 0.0);
    for (std::size_t ell = 0; ell <= L; ++ell) {
        double acc = 0.0;
        for (const auto& [v, x] : st.p[ell]) acc += source[v] * x;
        for (std::size_t k = 0; k <= ell; ++k)
            for (const auto& [v, x] : st.r[ell - k]) acc += q[k][v] * x;
        out[ell] = acc;
    }
    return out;
}

struct MstpParams {
    std::size_t ell_max = 10;
    double delta = 0.0;  // 0: pick 1/n
    double epsilon = 0.5;
    double p_fail = 0.1;
    double c = 7.0;
    bool strict = false;
    std::optional<double> eps_r;
    bool ell_multiplier = false;  // score l * r instead of (l + 1) * r
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct MstpEstimate {
    std::vector<double> values;  // index l = 0..ell_max; values[0] = s[t]
    std::size_t paths = 0;
    std::size_t pushes = 0;
    double eps_r = 0.0;
    double c = 0.0;
    std::vector<std::string> warnings;
};

// max{6e / eps^2, 1 / ln 2} ln(2 ell_max / p_fail)
inline double mstp_theorem_c(double epsilon, double p_fail, std::size_t ell_max)
{
    return std::max(6.0 * std::exp(1.0) / (epsilon * epsilon), 1.0 / std::log(2.0)) *
           std::log(2.0 * static_cast<double>(ell_max) / p_fail);
}

namespace detail {

struct MstpSetup {
    double delta, c, eps_r;
    std::size_t n_f;
};

inline MstpSetup mstp_setup(const Graph& g, const MstpParams& p)
{
    if (p.ell_max == 0) throw std::invalid_argument("ell_max must be at least 1");
    MstpSetup s;
    s.delta = p.delta > 0.0 ? p.delta : 1.0 / static_cast<double>(g.n());
    s.c = p.strict ? mstp_theorem_c(p.epsilon, p.p_fail, p.ell_max) : p.c;
    s.eps_r = p.eps_r ? *p.eps_r : std::sqrt(s.delta / s.c);
    s.n_f = num_walks(s.c * static_cast<double>(p.ell_max), s.eps_r, s.delta);
    return s;
}

// Shared forward phase. `first_hit_cut` drops terms whose path touched t at
// steps 1..k-1 (truncated hitting times).
inline MstpEstimate mstp_forward(const Graph& g, const Source& s, NodeId t, const LayeredReverseState& st,
                                 const MstpSetup& setup, const MstpParams& p, bool first_hit_cut)
{
    const std::size_t L = p.ell_max;
    const std::size_t n_f = setup.n_f;
    detail::WalkStarts starts(s);
    std::vector<double> scores(n_f * (L + 1), 0.0);
    parallel_for(n_f, p.threads, [&](std::size_t i) {
        Rng rng = stream_rng(p.seed, i);
        auto path = g.walk_path(starts.draw(rng), 0.0, rng, L);
        std::size_t first_hit = L + 1;
        for (std::size_t j = 1; j <= L; ++j)
            if (path[j] == t) {
                first_hit = j;
                break;
            }
        for (std::size_t ell = 1; ell <= L; ++ell) {
            const std::size_t k = rng.below(ell + 1);
            if (first_hit_cut && k > first_hit) continue;
            const double mult = p.ell_multiplier ? static_cast<double>(ell) : static_cast<double>(ell + 1);
            scores[i * (L + 1) + ell] = mult * st.r[ell - k].get(path[k]);
        }
    });
    MstpEstimate out;
    out.values.assign(L + 1, 0.0);
    out.values[0] = source_dot(s, SparseVec::unit(t));
    for (std::size_t ell = 1; ell <= L; ++ell) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n_f; ++i) acc += scores[i * (L + 1) + ell];
        out.values[ell] = source_dot(s, st.p[ell]) + (n_f ? acc / static_cast<double>(n_f) : 0.0);
    }
    out.paths = n_f;
    out.pushes = st.pushes;
    out.eps_r = setup.eps_r;
    out.c = setup.c;
    if (p.strict && !(setup.eps_r > setup.delta)) out.warnings.push_back("eps_r <= delta: accuracy guarantee does not apply");
    return out;
}

} // namespace detail

// Bidirectional-MSTP(W, s, t, ell_max, delta): estimates of pi^l_s[t] for
// every l = 1..ell_max from one layered reverse phase and one path set.
inline MstpEstimate estimate_mstp(const Graph& g, const Source& s, NodeId t, const MstpParams& p)
{
    require_no_dangling(g);
    auto setup = detail::mstp_setup(g, p);
    auto st = layered_reverse_push(g, t, p.ell_max, setup.eps_r);
    return detail::mstp_forward(g, s, t, st, setup, p, false);
}

// Probability that the walk first reaches t at step l >= 1 (values[0] = 0).
inline MstpEstimate estimate_truncated_hitting(const Graph& g, const Source& s, NodeId t, const MstpParams& p)
{
    require_no_dangling(g);
    auto setup = detail::mstp_setup(g, p);
    auto st = layered_reverse_push(g, t, p.ell_max, setup.eps_r, true);
    auto out = detail::mstp_forward(g, s, t, st, setup, p, true);
    out.values[0] = 0.0;
    return out;
}

struct HeatKernelParams {
    double t_param = 5.0;
    std::size_t ell_max = 0;  // 0: round(t + 10 sqrt(t))
};

inline std::size_t heat_kernel_ell_max(double t_param)
{
    return static_cast<std::size_t>(std::llround(t_param + 10.0 * std::sqrt(t_param)));
}

// sum_{i > ell_max} Poisson(t_param) mass
inline double heat_kernel_tail(double t_param, std::size_t ell_max)
{
    // summed directly; 1 - head would lose everything below 1e-16
    double x = poisson_weights(t_param, ell_max).back(), tail = 0.0;
    for (std::size_t i = ell_max + 1; i < ell_max + 400; ++i) {
        x *= t_param / static_cast<double>(i);
        tail += x;
    }
    return tail;
}

struct HeatKernelEstimate {
    double value = 0.0;
    std::size_t ell_max = 0;
    double truncation_bound = 0.0;
    MstpEstimate layers;
};

inline HeatKernelEstimate estimate_heat_kernel(const Graph& g, const Source& s, NodeId t, const HeatKernelParams& hk,
                                               MstpParams p)
{
    HeatKernelEstimate out;
    out.ell_max = hk.ell_max ? hk.ell_max : heat_kernel_ell_max(hk.t_param);
    p.ell_max = out.ell_max;
    out.layers = estimate_mstp(g, s, t, p);
    auto w = poisson_weights(hk.t_param, out.ell_max);
    for (std::size_t ell = 0; ell <= out.ell_max; ++ell) out.value += w[ell] * out.layers.values[ell];
    out.truncation_bound = heat_kernel_tail(hk.t_param, out.ell_max);
    return out;
}

} // namespace bippr

#endif
