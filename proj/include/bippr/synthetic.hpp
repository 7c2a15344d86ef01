#ifndef BIPPR_SYNTHETIC_HPP
#define BIPPR_SYNTHETIC_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "graph.hpp"
#include "random.hpp"

namespace bippr {

inline Graph directed_graph(std::size_t n, std::vector<RawEdge> edges)
{
    return Graph::from_edges(n, std::move(edges), false);
}

// cycle | star | grid | power-law, all directed and free of dangling nodes
inline Graph generate_synthetic(const std::string& kind, std::size_t n, std::uint64_t seed = 1)
{
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    std::vector<RawEdge> edges;
    auto id = [](std::size_t i) { return static_cast<NodeId>(i); };
    if (kind == "cycle") {
        for (std::size_t i = 0; i < n; ++i) edges.push_back({id(i), id((i + 1) % n), 1.0});
    } else if (kind == "star") {
        if (n == 1) edges.push_back({0, 0, 1.0});
        for (std::size_t i = 1; i < n; ++i) {
            edges.push_back({0, id(i), 1.0});
            edges.push_back({id(i), 0, 1.0});
        }
    } else if (kind == "grid") {
        const std::size_t rows = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(n))));
        const std::size_t cols = (n + rows - 1) / rows;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t r = i / cols, c = i % cols;
            if (c + 1 < cols && i + 1 < n) {
                edges.push_back({id(i), id(i + 1), 1.0});
                edges.push_back({id(i + 1), id(i), 1.0});
            }
            if (r + 1 < rows && i + cols < n) {
                edges.push_back({id(i), id(i + cols), 1.0});
                edges.push_back({id(i + cols), id(i), 1.0});
            }
        }
        if (n == 1) edges.push_back({0, 0, 1.0});
    } else if (kind == "power-law") {
        // out-degrees from a Pareto(1.5) tail, targets by preferential
        // attachment on in-degree + 1 (urn of node ids)
        Rng rng(seed);
        std::vector<NodeId> urn;
        for (std::size_t i = 0; i < n; ++i) urn.push_back(id(i));
        if (n == 1) edges.push_back({0, 0, 1.0});
        for (std::size_t u = 0; u < n && n > 1; ++u) {
            const double x = 1.0 - rng.uniform();
            std::size_t d = static_cast<std::size_t>(2.0 * std::pow(x, -1.0 / 1.5));
            d = std::clamp<std::size_t>(d, 1, std::max<std::size_t>(1, std::min(n - 1, n / 4 + 1)));
            std::unordered_set<NodeId> chosen;
            while (chosen.size() < d) {
                NodeId v = urn[rng.below(urn.size())];
                if (v != u) chosen.insert(v);
            }
            std::vector<NodeId> sorted(chosen.begin(), chosen.end());
            std::sort(sorted.begin(), sorted.end());
            for (NodeId v : sorted) {
                edges.push_back({id(u), v, 1.0});
                urn.push_back(v);
            }
        }
    } else {
        throw std::invalid_argument("unknown graph kind '" + kind + "'");
    }
    return directed_graph(n, std::move(edges));
}

// Erdos-Renyi style test graph with m_per_node out-edges per node, optional
// random weights; undirected when asked.
inline Graph random_graph(std::size_t n, std::size_t m_per_node, bool undirected, bool weighted, Rng& rng)
{
    std::vector<RawEdge> edges;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t j = 0; j < m_per_node; ++j) {
            NodeId v = static_cast<NodeId>(rng.below(n));
            double w = weighted ? 0.1 + rng.uniform() * 2.0 : 1.0;
            edges.push_back({static_cast<NodeId>(u), v, w});
        }
    return Graph::from_edges(n, std::move(edges), undirected);
}

} // namespace bippr

#endif
