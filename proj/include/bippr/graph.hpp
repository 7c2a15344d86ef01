#ifndef BIPPR_GRAPH_HPP
#define BIPPR_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "random.hpp"
#include "sparse_vec.hpp"

namespace bippr {

struct Edge {
    NodeId node;
    double w;
};

struct RawEdge {
    NodeId u, v;
    double w;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Dual CSR adjacency with row-stochastic weights. Immutable once built.
class Graph {
public:
    Graph() = default;

    // Builds from raw weighted edges. Duplicates are summed. With undirected
    // set, every (u,v,w) with u != v is also added as (v,u,w) first.
    static Graph from_edges(std::size_t n, std::vector<RawEdge> edges, bool undirected,
                            std::vector<std::string> labels = {})
    {
        if (undirected) {
            const std::size_t k = edges.size();
            for (std::size_t i = 0; i < k; ++i)
                if (edges[i].u != edges[i].v) edges.push_back({edges[i].v, edges[i].u, edges[i].w});
        }
        return build(n, std::move(edges), undirected, std::move(labels));
    }

    std::size_t n() const { return n_; }
    std::size_t m() const { return out_.size(); }
    bool undirected() const { return undirected_; }

    std::span<const Edge> out(NodeId v) const
    {
        return {out_.data() + out_off_[v], out_.data() + out_off_[v + 1]};
    }
    std::span<const Edge> in(NodeId v) const
    {
        return {in_.data() + in_off_[v], in_.data() + in_off_[v + 1]};
    }
    std::size_t out_degree(NodeId v) const { return out_off_[v + 1] - out_off_[v]; }
    std::size_t in_degree(NodeId v) const { return in_off_[v + 1] - in_off_[v]; }

    // d_v: weighted degree on undirected graphs, out-degree count otherwise
    double degree(NodeId v) const
    {
        return undirected_ ? raw_row_sum_[v] : static_cast<double>(out_degree(v));
    }
    double total_degree() const
    {
        double s = 0.0;
        for (NodeId v = 0; v < n_; ++v) s += degree(v);
        return s;
    }
    double average_degree() const { return n_ ? static_cast<double>(m()) / n_ : 0.0; }

    bool has_dangling() const
    {
        for (NodeId v = 0; v < n_; ++v)
            if (out_degree(v) == 0) return true;
        return false;
    }

    double weight(NodeId u, NodeId v) const
    {
        for (const auto& e : out(u))
            if (e.node == v) return e.w;
        return 0.0;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(NodeId v) const { return labels_[v]; }
    std::optional<NodeId> find(const std::string& label) const
    {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    NodeId id(const std::string& label) const
    {
        auto v = find(label);
        if (!v) throw std::invalid_argument("unknown node '" + label + "'");
        return *v;
    }

    // merged raw edges (pre-normalization weights), directed form
    const std::vector<RawEdge>& raw_edges() const { return raw_; }

    NodeId sample_out(NodeId v, Rng& rng) const
    {
        const std::size_t lo = out_off_[v], k = out_off_[v + 1] - lo;
        if (k == 1) return out_[lo].node;
        if (uniform_row_[v]) return out_[lo + rng.below(k)].node;
        const double x = rng.uniform() * cum_[lo + k - 1];
        auto first = cum_.begin() + lo, last = cum_.begin() + lo + k;
        auto it = std::upper_bound(first, last, x);
        if (it == last) --it;
        return out_[lo + (it - first)].node;
    }

    // walk endpoint after a Geometric(alpha) number of steps
    NodeId walk_endpoint(NodeId start, double alpha, Rng& rng) const
    {
        std::uint64_t len = sample_geometric_length(alpha, rng);
        NodeId v = start;
        for (std::uint64_t i = 0; i < len; ++i) v = sample_out(v, rng);
        return v;
    }

    // geometric path, or exactly fixed_len steps when given
    std::vector<NodeId> walk_path(NodeId start, double alpha, Rng& rng,
                                  std::optional<std::size_t> fixed_len = std::nullopt) const
    {
        std::uint64_t len = fixed_len ? *fixed_len : sample_geometric_length(alpha, rng);
        std::vector<NodeId> path{start};
        NodeId v = start;
        for (std::uint64_t i = 0; i < len; ++i) {
            v = sample_out(v, rng);
            path.push_back(v);
        }
        return path;
    }

private:
    static Graph build(std::size_t n, std::vector<RawEdge> edges, bool undirected,
                       std::vector<std::string> labels)
    {
        for (const auto& e : edges) {
            if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
            if (!(e.w > 0.0)) throw std::invalid_argument("edge weight must be positive");
        }
        std::sort(edges.begin(), edges.end(), [](const RawEdge& a, const RawEdge& b) {
            return std::tie(a.u, a.v) < std::tie(b.u, b.v);
        });
        std::vector<RawEdge> merged;
        for (const auto& e : edges) {
            if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
                merged.back().w += e.w;
            else
                merged.push_back(e);
        }

        Graph g;
        g.n_ = n;
        g.undirected_ = undirected;
        if (labels.empty()) {
            labels.reserve(n);
            for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        }
        if (labels.size() != n) throw std::invalid_argument("label count does not match node count");
        g.labels_ = std::move(labels);
        for (std::size_t i = 0; i < n; ++i) g.index_.emplace(g.labels_[i], static_cast<NodeId>(i));

        g.raw_row_sum_.assign(n, 0.0);
        for (const auto& e : merged) g.raw_row_sum_[e.u] += e.w;

        g.out_off_.assign(n + 1, 0);
        g.in_off_.assign(n + 1, 0);
        for (const auto& e : merged) {
            ++g.out_off_[e.u + 1];
            ++g.in_off_[e.v + 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            g.out_off_[i + 1] += g.out_off_[i];
            g.in_off_[i + 1] += g.in_off_[i];
        }
        g.out_.resize(merged.size());
        g.in_.resize(merged.size());
        g.cum_.resize(merged.size());
        std::vector<std::size_t> opos(g.out_off_.begin(), g.out_off_.end() - 1);
        std::vector<std::size_t> ipos(g.in_off_.begin(), g.in_off_.end() - 1);
        for (const auto& e : merged) {
            const double w = e.w / g.raw_row_sum_[e.u];
            g.out_[opos[e.u]++] = {e.v, w};
            g.in_[ipos[e.v]++] = {e.u, w};
        }
        g.uniform_row_.assign(n, 1);
        for (std::size_t u = 0; u < n; ++u) {
            double c = 0.0;
            for (std::size_t k = g.out_off_[u]; k < g.out_off_[u + 1]; ++k) {
                c += g.out_[k].w;
                g.cum_[k] = c;
                if (g.out_[k].w != g.out_[g.out_off_[u]].w) g.uniform_row_[u] = 0;
            }
        }
        g.raw_ = std::move(merged);
        return g;
    }

    std::size_t n_ = 0;
    bool undirected_ = false;
    std::vector<std::size_t> out_off_{0}, in_off_{0};
    std::vector<Edge> out_, in_;
    std::vector<double> cum_;
    std::vector<char> uniform_row_;
    std::vector<double> raw_row_sum_;
    std::vector<RawEdge> raw_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;

    friend Graph read_snapshot(std::istream&);
};

// Whitespace separated "u v [w]" lines; blank lines and '#' comments skipped.
inline Graph parse_edge_list(std::istream& in, bool undirected)
{
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> labels;
    std::vector<RawEdge> edges;
    auto intern = [&](const std::string& s) {
        auto [it, fresh] = ids.emplace(s, static_cast<NodeId>(labels.size()));
        if (fresh) labels.push_back(s);
        return it->second;
    };
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string a, b, c, extra;
        if (!(ss >> a) || a[0] == '#') continue;
        if (!(ss >> b)) throw ParseError(lineno, "expected 'u v [w]'");
        double w = 1.0;
        if (ss >> c && c[0] != '#') {
            std::size_t used = 0;
            try {
                w = std::stod(c, &used);
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad weight '" + c + "'");
            }
            if (used != c.size()) throw ParseError(lineno, "bad weight '" + c + "'");
            if (!(w > 0.0)) throw ParseError(lineno, "weight must be positive");
            if (ss >> extra && extra[0] != '#') throw ParseError(lineno, "trailing field '" + extra + "'");
        }
        NodeId u = intern(a);
        NodeId v = intern(b);
        edges.push_back({u, v, w});
    }
    if (edges.empty()) throw std::invalid_argument("edge list is empty");
    const std::size_t n = labels.size();
    return Graph::from_edges(n, std::move(edges), undirected, std::move(labels));
}

inline Graph load_edge_list(const std::string& path, bool undirected)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_edge_list(in, undirected);
}

inline void write_edge_list(std::ostream& out, const Graph& g)
{
    for (const auto& e : g.raw_edges()) {
        if (g.undirected() && e.u > e.v) continue;
        out << g.label(e.u) << ' ' << g.label(e.v);
        if (e.w != 1.0) out << ' ' << e.w;
        out << '\n';
    }
}

inline const std::string sink_label = "__sink__";

// Dangling nodes get one edge to an appended self-looped sink.
inline Graph apply_sink_convention(const Graph& g)
{
    if (!g.has_dangling()) return g;
    const NodeId sink = static_cast<NodeId>(g.n());
    std::vector<RawEdge> edges = g.raw_edges();
    for (NodeId v = 0; v < g.n(); ++v)
        if (g.out_degree(v) == 0) edges.push_back({v, sink, 1.0});
    edges.push_back({sink, sink, 1.0});
    auto labels = g.labels();
    labels.push_back(sink_label);
    return Graph::from_edges(g.n() + 1, std::move(edges), false, std::move(labels));
}

// Node u becomes consumer u' (id u) and producer u'' (id n + u); each edge
// u->v becomes the unit-weight undirected edge u' -- v''.
inline Graph salsa_transform(const Graph& g)
{
    if (g.undirected()) throw std::invalid_argument("salsa_transform expects a directed graph");
    const std::size_t n = g.n();
    std::vector<RawEdge> edges;
    for (const auto& e : g.raw_edges()) edges.push_back({e.u, static_cast<NodeId>(n + e.v), 1.0});
    std::vector<std::string> labels;
    for (NodeId v = 0; v < n; ++v) labels.push_back(g.label(v) + "'");
    for (NodeId v = 0; v < n; ++v) labels.push_back(g.label(v) + "''");
    return Graph::from_edges(2 * n, std::move(edges), true, std::move(labels));
}

// ---- binary snapshot -------------------------------------------------------

namespace detail {

template <typename T>
void put_le(std::ostream& out, T x)
{
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &x, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& in)
{
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) throw std::runtime_error("truncated binary file");
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    T x;
    std::memcpy(&x, buf, sizeof(T));
    return x;
}

inline void put_string(std::ostream& out, const std::string& s)
{
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline std::string get_string(std::istream& in)
{
    auto k = get_le<std::uint32_t>(in);
    std::string s(k, '\0');
    if (k && !in.read(s.data(), k)) throw std::runtime_error("truncated binary file");
    return s;
}

} // namespace detail

inline constexpr char graph_magic[8] = {'B', 'P', 'P', 'R', 'G', 'R', 'P', 'H'};
inline constexpr std::uint32_t graph_snapshot_version = 1;

inline void write_snapshot(std::ostream& out, const Graph& g)
{
    out.write(graph_magic, 8);
    detail::put_le<std::uint32_t>(out, graph_snapshot_version);
    detail::put_le<std::uint8_t>(out, g.undirected() ? 1 : 0);
    detail::put_le<std::uint64_t>(out, g.n());
    for (const auto& s : g.labels()) detail::put_string(out, s);
    detail::put_le<std::uint64_t>(out, g.raw_edges().size());
    for (const auto& e : g.raw_edges()) {
        detail::put_le<std::uint32_t>(out, e.u);
        detail::put_le<std::uint32_t>(out, e.v);
        detail::put_le<double>(out, e.w);
    }
}

inline Graph read_snapshot(std::istream& in)
{
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, graph_magic, 8) != 0)
        throw std::runtime_error("not a graph snapshot");
    auto version = detail::get_le<std::uint32_t>(in);
    if (version != graph_snapshot_version)
        throw std::runtime_error("unsupported snapshot version " + std::to_string(version));
    bool undirected = detail::get_le<std::uint8_t>(in) != 0;
    auto n = detail::get_le<std::uint64_t>(in);
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) labels.push_back(detail::get_string(in));
    auto m = detail::get_le<std::uint64_t>(in);
    std::vector<RawEdge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        RawEdge e;
        e.u = detail::get_le<std::uint32_t>(in);
        e.v = detail::get_le<std::uint32_t>(in);
        e.w = detail::get_le<double>(in);
        edges.push_back(e);
    }
    // stored edges are already symmetric
    return Graph::build(n, std::move(edges), undirected, std::move(labels));
}

// Edge list or snapshot, picked by magic bytes.
inline Graph load_graph(const std::string& path, bool undirected)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8] = {};
    in.read(magic, 8);
    if (in.gcount() == 8 && std::memcmp(magic, graph_magic, 8) == 0) {
        in.seekg(0);
        return read_snapshot(in);
    }
    in.clear();
    in.seekg(0);
    return parse_edge_list(in, undirected);
}

// Symmetric weighted adjacency check used by the undirected estimator.
inline bool is_symmetric(const Graph& g)
{
    for (const auto& e : g.raw_edges()) {
        bool found = false;
        for (const auto& f : g.out(e.v))
            if (f.node == e.u) found = true;
        if (!found) return false;
    }
    return true;
}

} // namespace bippr

#endif
