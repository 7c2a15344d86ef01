#ifndef BIPPR_ALIAS_TABLE_HPP
#define BIPPR_ALIAS_TABLE_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "random.hpp"

namespace bippr {

// Vose alias method. Zero-weight items are dropped at build time so they can
// never be drawn.
template <typename T>
class AliasTable {
public:
    AliasTable() = default;

    explicit AliasTable(const std::vector<std::pair<T, double>>& weights) { build(weights); }

    void build(const std::vector<std::pair<T, double>>& weights)
    {
        items_.clear();
        prob_.clear();
        alias_.clear();
        total_ = 0.0;
        std::vector<double> w;
        for (const auto& [item, weight] : weights) {
            if (weight < 0.0) throw std::invalid_argument("alias table: negative weight");
            if (weight > 0.0) {
                items_.push_back(item);
                w.push_back(weight);
                total_ += weight;
            }
        }
        if (items_.empty()) throw std::invalid_argument("alias table: all weights are zero");

        const std::size_t k = items_.size();
        prob_.assign(k, 0.0);
        alias_.assign(k, 0);
        std::vector<double> scaled(k);
        std::vector<std::uint32_t> small, large;
        for (std::size_t i = 0; i < k; ++i) {
            scaled[i] = w[i] * static_cast<double>(k) / total_;
            (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
        }
        while (!small.empty() && !large.empty()) {
            std::uint32_t s = small.back(), l = large.back();
            small.pop_back();
            large.pop_back();
            prob_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            (scaled[l] < 1.0 ? small : large).push_back(l);
        }
        for (auto i : large) prob_[i] = 1.0;
        for (auto i : small) prob_[i] = 1.0; // numerical leftovers
        for (std::size_t i = 0; i < k; ++i)
            if (prob_[i] >= 1.0) alias_[i] = static_cast<std::uint32_t>(i);
    }

    std::size_t sample_index(Rng& rng) const
    {
        const std::size_t i = rng.below(items_.size());
        return rng.uniform() < prob_[i] ? i : alias_[i];
    }

    const T& sample(Rng& rng) const { return items_[sample_index(rng)]; }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    double total_weight() const { return total_; }
    const std::vector<T>& items() const { return items_; }

private:
    std::vector<T> items_;
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
    double total_ = 0.0;
};

} // namespace bippr

#endif
