#ifndef BIPPR_TEST_SUPPORT_HPP
#define BIPPR_TEST_SUPPORT_HPP

// Reference values computed independently of the library oracle: dense
// linear solves with Eigen.

#include <Eigen/Dense>

#include <bippr.hpp>

namespace testsupport {

using bippr::Graph;
using bippr::NodeId;

inline Eigen::MatrixXd transition_matrix(const Graph& g)
{
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (NodeId u = 0; u < g.n(); ++u)
        for (const auto& e : g.out(u)) W(u, e.node) += e.w;
    return W;
}

// Row s of Pi = alpha (I - (1 - alpha) W)^-1 is pi_s.
inline Eigen::MatrixXd ppr_matrix(const Graph& g, double alpha)
{
    const auto n = static_cast<Eigen::Index>(g.n());
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - (1.0 - alpha) * transition_matrix(g);
    return alpha * A.partialPivLu().inverse();
}

inline Graph two_cycle()
{
    return Graph::from_edges(2, {{0, 1, 1.0}, {1, 0, 1.0}}, false, {"a", "b"});
}

inline Graph self_loop()
{
    return Graph::from_edges(1, {{0, 0, 1.0}}, false);
}

inline Graph parse(const std::string& text, bool undirected = false)
{
    std::istringstream in(text);
    return bippr::parse_edge_list(in, undirected);
}

// random graph with every node having out-edges
inline Graph random_test_graph(std::size_t n, bool undirected, bool weighted, bippr::Rng& rng)
{
    std::size_t k = 1 + rng.below(4);
    return bippr::random_graph(n, k, undirected, weighted, rng);
}

} // namespace testsupport

#endif
