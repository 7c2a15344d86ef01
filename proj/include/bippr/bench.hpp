#ifndef BIPPR_BENCH_HPP
#define BIPPR_BENCH_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alias_table.hpp"
#include "estimator.hpp"
#include "oracle.hpp"
#include "record.hpp"

namespace bippr {

enum class TargetMode { uniform, pagerank };

struct BenchSpec {
    TargetMode mode = TargetMode::uniform;
    std::size_t pairs = 100;
    double alpha = 0.2;
    double delta = 0.0;  // 0: 4/n
    double c = 7.0;
    double epsilon = 0.5;
    double p_fail = 0.1;
    std::optional<double> r_max;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::size_t oracle_limit = 20000;  // skip accuracy above this many nodes
};

struct PairSample {
    NodeId s, t;
};

inline std::vector<PairSample> sample_pairs(std::size_t n, std::size_t count, TargetMode mode,
                                            const DenseDist* global_pr, Rng& rng)
{
    std::optional<AliasTable<NodeId>> by_pr;
    if (mode == TargetMode::pagerank) {
        std::vector<std::pair<NodeId, double>> w;
        for (NodeId v = 0; v < n; ++v) w.push_back({v, global_pr->at(v)});
        by_pr.emplace(w);
    }
    std::vector<PairSample> out;
    for (std::size_t i = 0; i < count; ++i) {
        NodeId s = static_cast<NodeId>(rng.below(n));
        NodeId t = by_pr ? by_pr->sample(rng) : static_cast<NodeId>(rng.below(n));
        out.push_back({s, t});
    }
    return out;
}

struct BenchRow {
    std::string algorithm;
    double mean_ms = 0.0;
    double median_ms = 0.0;
    std::optional<double> mean_relative_error;  // over pairs with pi >= delta
    std::size_t evaluated = 0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    std::vector<std::string> warnings;
};

// Bidirectional vs Monte Carlo at matched error: Monte Carlo gets c / delta
// walks, the bidirectional estimator c r_max / delta.
inline BenchResult run_benchmark(const Graph& g, const BenchSpec& spec)
{
    BenchResult res;
    if (spec.pairs == 0) return res;
    const double delta = spec.delta > 0.0 ? spec.delta : 4.0 / static_cast<double>(g.n());
    const bool oracle_ok = g.n() <= spec.oracle_limit;
    if (!oracle_ok) res.warnings.push_back("graph too large for the oracle; accuracy omitted");

    DenseDist global;
    if (spec.mode == TargetMode::pagerank) global = exact_global_pagerank(g, spec.alpha, 1e-10);
    Rng rng(spec.seed);
    auto pairs = sample_pairs(g.n(), spec.pairs, spec.mode, global.empty() ? nullptr : &global, rng);

    PprParams p;
    p.alpha = spec.alpha;
    p.delta = delta;
    p.c = spec.c;
    p.epsilon = spec.epsilon;
    p.p_fail = spec.p_fail;
    p.r_max = spec.r_max;
    p.threads = spec.threads;
    const std::size_t mc_walks = static_cast<std::size_t>(std::ceil(spec.c / delta));

    struct Acc {
        std::vector<double> times;
        double rel = 0.0;
        std::size_t k = 0;
    };
    std::map<std::string, Acc> acc;
    std::map<NodeId, DenseDist> cache;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [s, t] = pairs[i];
        p.seed = spec.seed * 1000003ULL + i;
        Stopwatch a;
        auto bi = estimate_ppr(g, s, t, p);
        acc["bidirectional"].times.push_back(a.ms());
        Stopwatch b;
        auto mc = monte_carlo_ppr(g, s, t, mc_walks, p);
        acc["monte-carlo"].times.push_back(b.ms());
        if (!oracle_ok) continue;
        auto it = cache.find(s);
        if (it == cache.end()) it = cache.emplace(s, exact_ppr(g, s, spec.alpha, 1e-12)).first;
        const double truth = it->second[t];
        if (truth < delta) continue;
        acc["bidirectional"].rel += std::abs(bi.value - truth) / truth;
        ++acc["bidirectional"].k;
        acc["monte-carlo"].rel += std::abs(mc.value - truth) / truth;
        ++acc["monte-carlo"].k;
    }
    for (const char* name : {"bidirectional", "monte-carlo"}) {
        auto& a = acc[name];
        BenchRow row;
        row.algorithm = name;
        double sum = 0.0;
        for (double x : a.times) sum += x;
        row.mean_ms = sum / static_cast<double>(a.times.size());
        auto sorted = a.times;
        std::sort(sorted.begin(), sorted.end());
        row.median_ms = sorted[sorted.size() / 2];
        if (oracle_ok && a.k) row.mean_relative_error = a.rel / static_cast<double>(a.k);
        row.evaluated = a.k;
        res.rows.push_back(row);
    }
    return res;
}

} // namespace bippr

#endif
