#ifndef BIPPR_SPARSE_VEC_HPP
#define BIPPR_SPARSE_VEC_HPP

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bippr {

using NodeId = std::uint32_t;

// Node-indexed sparse vector. Explicit zeros are never stored.
class SparseVec {
public:
    SparseVec() = default;

    static SparseVec unit(NodeId v)
    {
        SparseVec x;
        x.set(v, 1.0);
        return x;
    }

    double get(NodeId v) const
    {
        auto it = m_.find(v);
        return it == m_.end() ? 0.0 : it->second;
    }
    double operator[](NodeId v) const { return get(v); }

    void set(NodeId v, double x)
    {
        if (x == 0.0)
            m_.erase(v);
        else
            m_[v] = x;
    }

    // returns the new value
    double add(NodeId v, double x)
    {
        if (x == 0.0) return get(v);
        double& slot = m_[v];
        slot += x;
        if (slot == 0.0) {
            m_.erase(v);
            return 0.0;
        }
        return slot;
    }

    void erase(NodeId v) { m_.erase(v); }
    void clear() { m_.clear(); }
    std::size_t nnz() const { return m_.size(); }
    bool empty() const { return m_.empty(); }

    auto begin() const { return m_.begin(); }
    auto end() const { return m_.end(); }

    // entries by ascending node id; use wherever summation order matters
    std::vector<std::pair<NodeId, double>> sorted() const
    {
        std::vector<std::pair<NodeId, double>> out(m_.begin(), m_.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    double sum() const
    {
        double s = 0.0;
        for (const auto& [v, x] : sorted()) s += x;
        return s;
    }

    double max_value() const
    {
        double best = 0.0;
        for (const auto& [v, x] : m_) best = std::max(best, x);
        return best;
    }

    std::vector<double> dense(std::size_t n) const
    {
        std::vector<double> out(n, 0.0);
        for (const auto& [v, x] : m_) out[v] = x;
        return out;
    }

private:
    std::unordered_map<NodeId, double> m_;
};

} // namespace bippr

#endif
