#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace bippr;

namespace {

// i -> i+1 .. i+4 (mod n): average degree exactly 4
Graph circulant4(std::size_t n)
{
    std::vector<RawEdge> e;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId k = 1; k <= 4; ++k) e.push_back({i, NodeId((i + k) % n), 1.0});
    return Graph::from_edges(n, e, false);
}

struct Moments {
    double mean = 0.0, se = 0.0;
};

template <typename F>
Moments ensemble(std::size_t runs, F&& draw)
{
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < runs; ++i) {
        const double x = draw(i);
        s += x;
        s2 += x * x;
    }
    Moments m;
    m.mean = s / runs;
    const double var = std::max(0.0, s2 / runs - m.mean * m.mean);
    m.se = std::sqrt(var / runs);
    return m;
}

} // namespace

TEST(Bippr, DefaultRmax)
{
    auto g = circulant4(40);
    ASSERT_DOUBLE_EQ(g.average_degree(), 4.0);
    PprParams p;
    p.delta = 1e-3;
    p.epsilon = 0.5;
    p.p_fail = 2.0 / std::exp(1.0);
    const double r = default_r_max(g, p);
    EXPECT_NEAR(r, 0.5 * std::sqrt(4e-3), 1e-12);
    EXPECT_NEAR(r, 0.0316, 1e-4);
    p.epsilon = 1.0;
    EXPECT_NEAR(default_r_max(g, p), 2 * r, 1e-12);
    p.epsilon = 0.5;
    p.delta = 4e-3;
    EXPECT_NEAR(default_r_max(g, p), 2 * r, 1e-12);
}

TEST(Bippr, NumWalks)
{
    EXPECT_EQ(num_walks(7, 0.11, 0.01), 77u);
    EXPECT_EQ(num_walks(14, 0.11, 0.01), 154u);
    EXPECT_EQ(num_walks(7, 1e-6, 0.5), 1u);
    EXPECT_EQ(num_walks(7, 0.0, 0.5), 0u);
    EXPECT_THROW(num_walks(7, 0.1, 0.0), std::invalid_argument);
}

TEST(Bippr, TheoremConstant)
{
    EXPECT_NEAR(theorem_c(0.5, 0.1), 12.0 * std::log(20.0), 1e-12);
    EXPECT_NEAR(theorem_c(0.5, 0.1), 35.95, 0.01);
}

TEST(Bippr, WorkedExampleArithmetic)
{
    // residual 0.1 at one node, 13 of 100 walks end there, p^t[s] = 0
    SparseVec r;
    r.set(5, 0.1);
    std::vector<NodeId> ends(100, 2);
    std::fill(ends.begin(), ends.begin() + 13, NodeId{5});
    EXPECT_DOUBLE_EQ(source_dot(NodeId{0}, SparseVec{}) + residual_mean(r, ends), 0.013);
}

TEST(Bippr, RmaxOneIsMonteCarlo)
{
    auto g = generate_synthetic("power-law", 60, 2);
    PprParams p;
    p.r_max = 1.0;
    p.seed = 17;
    for (NodeId t : {0u, 5u, 11u}) {
        auto est = estimate_ppr(g, NodeId{3}, t, p);
        EXPECT_EQ(est.pushes, 0u);
        auto mc = monte_carlo_ppr(g, NodeId{3}, t, est.walks, p);
        EXPECT_EQ(est.value, mc.value);
    }
}

TEST(Bippr, BalancedExactWhenQueueEmpties)
{
    auto g = apply_sink_convention(testsupport::parse("s a\na t\ns t\n"));
    auto P = testsupport::ppr_matrix(g, 0.2);
    PprParams p;
    p.walk_time_constant = 1e9;
    const NodeId s = g.id("s"), t = g.id("t");
    auto est = estimate_ppr_balanced(g, s, t, p);
    EXPECT_EQ(est.r_max, 0.0);
    EXPECT_EQ(est.walks, 0u);
    EXPECT_NEAR(est.value, P(s, t), 1e-10);
}

TEST(Bippr, BalancedMatchesFixedWhenStoppingAgrees)
{
    // no walk budget: the balanced run stops at r = e_t, i.e. r_max = 1
    auto g = generate_synthetic("power-law", 80, 4);
    PprParams bal;
    bal.walk_time_constant = 0.0;
    bal.seed = 5;
    PprParams fixed = bal;
    fixed.r_max = 1.0;
    for (NodeId t : {1u, 7u}) {
        auto a = estimate_ppr_balanced(g, NodeId{0}, t, bal);
        auto b = estimate_ppr(g, NodeId{0}, t, fixed);
        EXPECT_EQ(a.r_max, 1.0);
        EXPECT_EQ(a.walks, b.walks);
        EXPECT_EQ(a.value, b.value);
    }
}

TEST(Bippr, BalancedWalkCostTradeOff)
{
    auto g = generate_synthetic("power-law", 300, 8);
    auto pr = exact_global_pagerank(g, 0.2);
    const NodeId t = NodeId(std::max_element(pr.begin(), pr.end()) - pr.begin());
    PprParams cheap, dear;
    cheap.walk_time_constant = 0.2;
    dear.walk_time_constant = 20.0;
    auto a = estimate_ppr_balanced(g, NodeId{1}, t, cheap);
    auto b = estimate_ppr_balanced(g, NodeId{1}, t, dear);
    // costlier walks: push further, walk less
    EXPECT_GT(b.pushes, a.pushes);
    EXPECT_LT(b.walks, a.walks);
}

TEST(Bippr, Unbiased)
{
    Rng rng(31);
    auto g = testsupport::random_test_graph(20, false, true, rng);
    auto P = testsupport::ppr_matrix(g, 0.2);
    PprParams p;
    p.r_max = 0.05;
    for (auto [s, t] : {std::pair<NodeId, NodeId>{0, 3}, {4, 4}, {7, 15}}) {
        auto m = ensemble(10'000, [&](std::size_t i) {
            p.seed = 1000 + i;
            return estimate_ppr(g, s, t, p).value;
        });
        EXPECT_LE(std::abs(m.mean - P(s, t)), 3 * m.se + 1e-12) << s << "->" << t;
    }
}

TEST(Bippr, SourceDistribution)
{
    Rng rng(32);
    auto g = testsupport::random_test_graph(15, false, false, rng);
    auto P = testsupport::ppr_matrix(g, 0.2);
    SparseVec sigma;
    sigma.set(1, 0.5);
    sigma.set(2, 0.3);
    sigma.set(9, 0.2);
    const NodeId t = 6;
    const double truth = 0.5 * P(1, t) + 0.3 * P(2, t) + 0.2 * P(9, t);
    PprParams p;
    p.r_max = 0.1;
    auto m = ensemble(5000, [&](std::size_t i) {
        p.seed = i;
        return estimate_ppr(g, sigma, t, p).value;
    });
    EXPECT_LE(std::abs(m.mean - truth), 3 * m.se + 1e-12);
}

TEST(Bippr, StrictWarning)
{
    auto g = generate_synthetic("cycle", 10);
    PprParams p;
    p.strict = true;
    p.delta = 0.1;
    p.r_max = 0.5;  // 2e * 0.1 / (0.2 * 0.5) = 5.4
    EXPECT_FALSE(estimate_ppr(g, NodeId{0}, 1, p).warnings.empty());
    p.delta = 0.001;
    p.r_max = 0.2;
    EXPECT_TRUE(estimate_ppr(g, NodeId{0}, 1, p).warnings.empty());
}

TEST(Bippr, DanglingRejected)
{
    auto g = testsupport::parse("a b\n");
    EXPECT_THROW(estimate_ppr(g, NodeId{0}, 1, PprParams{}), std::invalid_argument);
}

TEST(MonteCarlo, Basics)
{
    PprParams p;
    EXPECT_EQ(monte_carlo_ppr(testsupport::self_loop(), NodeId{0}, 0, 100, p).value, 1.0);
    EXPECT_THROW(monte_carlo_ppr(testsupport::self_loop(), NodeId{0}, 0, 0, p), std::invalid_argument);
    auto est = monte_carlo_ppr(testsupport::two_cycle(), NodeId{0}, 0, 1'000'000, p);
    EXPECT_NEAR(est.value, 5.0 / 9.0, 0.002);
    auto all = monte_carlo_ppr_all(testsupport::two_cycle(), NodeId{0}, 1000, p);
    EXPECT_NEAR(all.sum(), 1.0, 1e-12);
}

TEST(ChooseDelta, Cases)
{
    auto two = testsupport::two_cycle();
    EXPECT_NEAR(choose_delta_from_target(two, 0, 0.2), 0.5, 1e-12);
    EXPECT_NEAR(choose_delta_from_target(two, 1, 0.2), 0.5, 1e-12);
    EXPECT_NEAR(choose_delta_from_target(testsupport::self_loop(), 0, 0.2), 1.0, 1e-12);
    auto star = generate_synthetic("star", 8);
    auto pr = exact_global_pagerank(star, 0.2);
    for (NodeId v = 0; v < star.n(); ++v) {
        if (pr[v] < 1.0 / 8) EXPECT_EQ(choose_delta_from_target(star, v, 0.2), 1.0 / 8);
        else EXPECT_EQ(choose_delta_from_target(star, v, 0.2), pr[v]);
    }
}
