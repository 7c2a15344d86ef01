#ifndef BIPPR_EXACT_SUM_HPP
#define BIPPR_EXACT_SUM_HPP

#include <cmath>
#include <vector>

namespace bippr {

// Shewchuk-style exact accumulator (the algorithm behind Python's math.fsum).
// The sum of any multiset of doubles is represented exactly as a list of
// non-overlapping partials, so merging accumulators in any order and then
// rounding once gives the same correctly rounded result.
class ExactSum {
public:
    void add(double x)
    {
        std::size_t i = 0;
        for (double y : partials_) {
            if (std::abs(x) < std::abs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials_[i++] = lo;
            x = hi;
        }
        partials_.resize(i);
        partials_.push_back(x);
    }

    void merge(const ExactSum& other)
    {
        for (double x : other.partials_) add(x);
    }

    const std::vector<double>& partials() const { return partials_; }

    static ExactSum from_partials(const std::vector<double>& parts)
    {
        ExactSum s;
        for (double x : parts) s.add(x);
        return s;
    }

    // correctly rounded value of the exact sum
    double value() const
    {
        if (partials_.empty()) return 0.0;
        std::size_t n = partials_.size();
        double hi = partials_[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials_[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) break;
        }
        // half-way case: look at the next partial to round correctly
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            const double yr = x - hi;
            if (y == yr) hi = x;
        }
        return hi;
    }

private:
    std::vector<double> partials_;
};

} // namespace bippr

#endif
