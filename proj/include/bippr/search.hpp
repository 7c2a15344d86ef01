#ifndef BIPPR_SEARCH_HPP
#define BIPPR_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "alias_table.hpp"
#include "estimator.hpp"
#include "graph.hpp"
#include "push.hpp"

namespace bippr {

// Coordinates of the 2n-dimensional vectors: v for the first half
// (indicator / estimate part), n + v for the second (walk / residual part).
using Coord = std::uint64_t;

// x_s = (e_s, pi~_s)
struct ForwardVector {
    SparseVec indicator;
    SparseVec empirical;
    std::size_t walks = 0;

    // non-zeros by ascending coordinate
    std::vector<std::pair<Coord, double>> coords(std::size_t n) const
    {
        std::vector<std::pair<Coord, double>> out;
        for (const auto& [v, x] : indicator.sorted()) out.push_back({v, x});
        for (const auto& [v, x] : empirical.sorted()) out.push_back({n + v, x});
        return out;
    }
};

// y^t = (p^t, r^t)
struct ReverseVector {
    NodeId target = 0;
    SparseVec p, r;

    double at(Coord c, std::size_t n) const
    {
        return c < n ? p.get(static_cast<NodeId>(c)) : r.get(static_cast<NodeId>(c - n));
    }
    std::size_t nnz() const { return p.nnz() + r.nnz(); }

    std::vector<std::pair<Coord, double>> coords(std::size_t n) const
    {
        std::vector<std::pair<Coord, double>> out;
        for (const auto& [v, x] : p.sorted()) out.push_back({v, x});
        for (const auto& [v, x] : r.sorted()) out.push_back({n + v, x});
        return out;
    }
};

inline ForwardVector build_forward_vector(const Graph& g, const Source& s, std::size_t w, double alpha,
                                          std::uint64_t seed, unsigned threads = 1)
{
    if (w == 0) throw std::invalid_argument("forward vector needs at least one walk");
    ForwardVector x;
    if (auto v = std::get_if<NodeId>(&s))
        x.indicator.set(*v, 1.0);
    else
        x.indicator = std::get<SparseVec>(s);
    auto ends = walk_endpoints(g, s, alpha, w, seed, threads);
    std::vector<std::size_t> counts(g.n(), 0);
    for (NodeId v : ends) ++counts[v];
    for (NodeId v = 0; v < g.n(); ++v)
        if (counts[v]) x.empirical.set(v, static_cast<double>(counts[v]) / static_cast<double>(w));
    x.walks = w;
    return x;
}

inline ReverseVector build_reverse_vector(const Graph& g, NodeId t, double r_max, double alpha)
{
    auto rev = reverse_push(g, t, r_max, alpha);
    return {t, std::move(rev.p), std::move(rev.r)};
}

inline std::vector<ReverseVector> build_reverse_vectors(const Graph& g, const std::vector<NodeId>& targets,
                                                        double r_max, double alpha, unsigned threads = 1)
{
    std::vector<ReverseVector> out(targets.size());
    parallel_for(targets.size(), threads,
                 [&](std::size_t i) { out[i] = build_reverse_vector(g, targets[i], r_max, alpha); });
    return out;
}

// <x, y> summed over x's support in ascending coordinate order
inline double dot(const std::vector<std::pair<Coord, double>>& x, const ReverseVector& y, std::size_t n)
{
    double acc = 0.0;
    for (const auto& [c, xv] : x) {
        const double yv = y.at(c, n);
        if (yv != 0.0) acc += xv * yv;
    }
    return acc;
}

using Ranking = std::vector<std::pair<NodeId, double>>;

// descending score, ties by ascending node id
inline Ranking rank(Ranking scores)
{
    std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        return a.second > b.second || (a.second == b.second && a.first < b.first);
    });
    return scores;
}

inline Ranking score_targets_direct(const ForwardVector& x, const std::vector<ReverseVector>& ys, std::size_t n)
{
    auto xc = x.coords(n);
    Ranking out;
    for (const auto& y : ys) out.push_back({y.target, dot(xc, y, n)});
    return rank(std::move(out));
}

// z[v][t] = y^t[v]
struct GroupedIndex {
    std::size_t n = 0;
    std::vector<NodeId> targets;
    std::unordered_map<Coord, std::vector<std::pair<NodeId, double>>> z;

    static GroupedIndex build(const std::vector<ReverseVector>& ys, std::size_t n)
    {
        GroupedIndex idx;
        idx.n = n;
        for (const auto& y : ys) {
            idx.targets.push_back(y.target);
            for (const auto& [c, v] : y.coords(n)) idx.z[c].push_back({y.target, v});
        }
        return idx;
    }

    std::size_t nnz() const
    {
        std::size_t k = 0;
        for (const auto& [c, list] : z) k += list.size();
        return k;
    }
};

inline Ranking score_targets_grouped(const ForwardVector& x, const GroupedIndex& idx)
{
    std::unordered_map<NodeId, double> score;
    for (NodeId t : idx.targets) score[t] = 0.0;
    for (const auto& [c, xv] : x.coords(idx.n)) {
        auto it = idx.z.find(c);
        if (it == idx.z.end()) continue;
        for (const auto& [t, yv] : it->second) score[t] += xv * yv;
    }
    Ranking out;
    for (NodeId t : idx.targets) out.push_back({t, score[t]});
    return rank(std::move(out));
}

// Aggregate y^T and one alias sampler per coordinate over the targets.
struct TargetSamplerIndex {
    std::size_t n = 0;
    std::unordered_map<Coord, double> aggregate;
    std::unordered_map<Coord, AliasTable<NodeId>> samplers;
    std::unordered_map<Coord, std::vector<std::pair<NodeId, double>>> weights;

    static TargetSamplerIndex build(const std::vector<ReverseVector>& ys, std::size_t n)
    {
        TargetSamplerIndex idx;
        idx.n = n;
        for (const auto& y : ys)
            for (const auto& [c, v] : y.coords(n)) {
                idx.aggregate[c] += v;
                idx.weights[c].push_back({y.target, v});
            }
        for (const auto& [c, w] : idx.weights) idx.samplers.emplace(c, AliasTable<NodeId>(w));
        return idx;
    }
};

struct StageOne {
    std::vector<Coord> coords;
    std::vector<double> weights;  // x_s[v] y^T[v]
    AliasTable<std::size_t> table;
};

inline StageOne stage_one(const ForwardVector& x, const TargetSamplerIndex& idx)
{
    StageOne s;
    std::vector<std::pair<std::size_t, double>> w;
    for (const auto& [c, xv] : x.coords(idx.n)) {
        auto it = idx.aggregate.find(c);
        if (it == idx.aggregate.end()) continue;
        s.coords.push_back(c);
        s.weights.push_back(xv * it->second);
        w.push_back({s.coords.size() - 1, xv * it->second});
    }
    double total = 0.0;
    for (const auto& [i, x2] : w) total += x2;
    if (!(total > 0.0)) throw std::domain_error("no target reachable from this source at this accuracy");
    s.table.build(w);
    return s;
}

// p[t] = sum_v p'_s[v] p''_v[t], the exact law of one two-stage sample
inline std::map<NodeId, double> hierarchical_probabilities(const ForwardVector& x, const TargetSamplerIndex& idx)
{
    auto s = stage_one(x, idx);
    double total = 0.0;
    for (double w : s.weights) total += w;
    std::map<NodeId, double> out;
    for (std::size_t i = 0; i < s.coords.size(); ++i) {
        const Coord c = s.coords[i];
        const double agg = idx.aggregate.at(c);
        for (const auto& [t, y] : idx.weights.at(c)) out[t] += (s.weights[i] / total) * (y / agg);
    }
    return out;
}

// SampleAndRankTargets: n_samples two-stage draws, ranked by count.
inline Ranking sample_targets(const ForwardVector& x, const TargetSamplerIndex& idx, std::size_t n_samples,
                              Rng& rng)
{
    auto s = stage_one(x, idx);
    std::map<NodeId, std::size_t> counts;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const Coord c = s.coords[s.table.sample(rng)];
        ++counts[idx.samplers.at(c).sample(rng)];
    }
    Ranking out;
    for (const auto& [t, k] : counts) out.push_back({t, static_cast<double>(k)});
    return rank(std::move(out));
}

// r_max(T) = w pi[T] / (c2 |T|^(1 - beta)), c2 = k^beta c / (1 - beta)
inline double adaptive_c2(std::size_t k, double beta, double c) { return std::pow(k, beta) * c / (1.0 - beta); }

inline double adaptive_r_max(double pi_T, std::size_t T_size, double w, std::size_t k, double beta = 0.77,
                             double c = 20.0)
{
    if (T_size == 0) throw std::invalid_argument("empty target set");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0,1)");
    return w * pi_T / (adaptive_c2(k, beta, c) * std::pow(static_cast<double>(T_size), 1.0 - beta));
}

inline double adaptive_r_max(const std::vector<NodeId>& T, const DenseDist& global_pr, double w, std::size_t k,
                             double beta = 0.77, double c = 20.0)
{
    double pi_T = 0.0;
    for (NodeId t : T) pi_T += global_pr.at(t);
    return adaptive_r_max(pi_T, T.size(), w, k, beta, c);
}

// keyword -> sorted target list
class KeywordIndex {
public:
    void add(const std::string& keyword, NodeId v)
    {
        auto& list = map_[keyword];
        auto it = std::lower_bound(list.begin(), list.end(), v);
        if (it == list.end() || *it != v) list.insert(it, v);
    }
    const std::vector<NodeId>& targets(const std::string& keyword) const
    {
        auto it = map_.find(keyword);
        if (it == map_.end()) throw std::invalid_argument("unknown keyword '" + keyword + "'");
        return it->second;
    }
    bool contains(const std::string& keyword) const { return map_.count(keyword) != 0; }
    const std::map<std::string, std::vector<NodeId>>& all() const { return map_; }

    // most keywords attached to any one node
    std::size_t gamma() const
    {
        std::unordered_map<NodeId, std::size_t> k;
        std::size_t best = 0;
        for (const auto& [kw, list] : map_)
            for (NodeId v : list) best = std::max(best, ++k[v]);
        return best;
    }

private:
    std::map<std::string, std::vector<NodeId>> map_;
};

// "keyword<TAB>node" per line
inline KeywordIndex parse_keywords(std::istream& in, const Graph& g)
{
    KeywordIndex idx;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError(lineno, "expected keyword<TAB>node");
        std::string node = line.substr(tab + 1);
        while (!node.empty() && (node.back() == '\r' || node.back() == ' ')) node.pop_back();
        auto v = g.find(node);
        if (!v) throw ParseError(lineno, "unknown node '" + node + "'");
        idx.add(line.substr(0, tab), *v);
    }
    return idx;
}

inline KeywordIndex load_keywords(const std::string& path, const Graph& g)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_keywords(in, g);
}

// Precomputed reverse vectors of one keyword's target set.
struct KeywordVectors {
    std::string keyword;
    double r_max = 0.0;
    std::vector<ReverseVector> vectors;

    std::size_t storage() const
    {
        std::size_t k = 0;
        for (const auto& y : vectors) k += y.nnz();
        return k;
    }
};

struct StorageReport {
    std::map<std::string, std::size_t> per_keyword;
    std::map<std::string, double> bound;  // gamma m / (alpha r_max) + n
    std::size_t total = 0;
    std::size_t gamma = 0;
    bool within_bound = true;
};

inline StorageReport storage_accounting(const Graph& g, const std::vector<KeywordVectors>& built, double alpha,
                                        std::size_t gamma)
{
    StorageReport rep;
    rep.gamma = gamma;
    for (const auto& kv : built) {
        const std::size_t s = kv.storage();
        const double b = static_cast<double>(gamma) * static_cast<double>(g.m()) / (alpha * kv.r_max) +
                         static_cast<double>(g.n());
        rep.per_keyword[kv.keyword] = s;
        rep.bound[kv.keyword] = b;
        rep.total += s;
        if (static_cast<double>(s) > b) rep.within_bound = false;
    }
    return rep;
}

// ---- versioned binary sidecar ---------------------------------------------

inline constexpr char search_magic[8] = {'B', 'P', 'P', 'R', 'S', 'R', 'C', 'H'};
inline constexpr std::uint32_t search_index_version = 1;

inline void write_search_index(std::ostream& out, double alpha, const std::vector<KeywordVectors>& built)
{
    out.write(search_magic, 8);
    detail::put_le<std::uint32_t>(out, search_index_version);
    detail::put_le<double>(out, alpha);
    detail::put_le<std::uint64_t>(out, built.size());
    auto put_vec = [&](const SparseVec& x) {
        auto e = x.sorted();
        detail::put_le<std::uint64_t>(out, e.size());
        for (const auto& [v, val] : e) {
            detail::put_le<std::uint32_t>(out, v);
            detail::put_le<double>(out, val);
        }
    };
    for (const auto& kv : built) {
        detail::put_string(out, kv.keyword);
        detail::put_le<double>(out, kv.r_max);
        detail::put_le<std::uint64_t>(out, kv.vectors.size());
        for (const auto& y : kv.vectors) {
            detail::put_le<std::uint32_t>(out, y.target);
            put_vec(y.p);
            put_vec(y.r);
        }
    }
}

inline std::vector<KeywordVectors> read_search_index(std::istream& in, double* alpha_out = nullptr)
{
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, search_magic, 8) != 0)
        throw std::runtime_error("not a search index");
    auto version = detail::get_le<std::uint32_t>(in);
    if (version != search_index_version)
        throw std::runtime_error("unsupported search index version " + std::to_string(version));
    const double alpha = detail::get_le<double>(in);
    if (alpha_out) *alpha_out = alpha;
    auto get_vec = [&] {
        SparseVec x;
        auto k = detail::get_le<std::uint64_t>(in);
        for (std::uint64_t i = 0; i < k; ++i) {
            auto v = detail::get_le<std::uint32_t>(in);
            x.set(v, detail::get_le<double>(in));
        }
        return x;
    };
    std::vector<KeywordVectors> out(detail::get_le<std::uint64_t>(in));
    for (auto& kv : out) {
        kv.keyword = detail::get_string(in);
        kv.r_max = detail::get_le<double>(in);
        kv.vectors.resize(detail::get_le<std::uint64_t>(in));
        for (auto& y : kv.vectors) {
            y.target = detail::get_le<std::uint32_t>(in);
            y.p = get_vec();
            y.r = get_vec();
        }
    }
    return out;
}

} // namespace bippr

#endif
