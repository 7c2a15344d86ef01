#ifndef BIPPR_RANDOM_HPP
#define BIPPR_RANDOM_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace bippr {

// xoshiro256** seeded through splitmix64. Small state, so one generator per
// walk index is cheap, which keeps parallel walk generation deterministic.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) { reseed(seed); }

    void reseed(std::uint64_t seed)
    {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        const std::uint64_t out = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return out;
    }

    // uniform in [0,1) with 53 random bits
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    std::uint64_t below(std::uint64_t bound)
    {
        std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
        return d(*this);
    }

    static std::uint64_t splitmix64(std::uint64_t& x)
    {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Independent stream for item `index` under a run seed.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t x = seed;
    std::uint64_t a = Rng::splitmix64(x);
    std::uint64_t y = index ^ 0x5851f42d4c957f2dULL;
    std::uint64_t b = Rng::splitmix64(y);
    return Rng(a ^ (b * 0x2545f4914f6cdd1dULL));
}

// Walk length L with P[L = l] = (1 - alpha)^l * alpha, l = 0, 1, ...
inline std::uint64_t sample_geometric_length(double alpha, Rng& rng)
{
    std::geometric_distribution<std::uint64_t> d(alpha);
    return d(rng);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
// handled exactly once; callers write into per-index slots.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn)
{
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned k = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned w = 0; w < k; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t lo = count * w / k, hi = count * (w + 1) / k;
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace bippr

#endif
