// Estimate a few PPR values on the bundled graph and compare with the oracle.
#include <cstdio>
#include <set>

#include <bippr.hpp>

using namespace bippr;

int main(int argc, char** argv)
{
    const std::string path = argc > 1 ? argv[1] : BIPPR_SAMPLE_DATA "/tiny.txt";
    Graph g = apply_sink_convention(load_graph(path, false));
    const NodeId s = g.id("home"), t = g.id("cart");

    PprParams p;
    p.delta = 0.01;
    p.seed = 7;
    auto est = estimate_ppr(g, s, t, p);
    auto exact = exact_ppr(g, s, p.alpha);
    std::printf("pi(home, cart)  estimate %.5f  exact %.5f  (%zu pushes, %zu walks)\n", est.value, exact[t],
                est.pushes, est.walks);

    MstpParams mp;
    mp.ell_max = 4;
    mp.delta = 0.01;
    auto steps = estimate_mstp(g, s, t, mp);
    for (std::size_t ell = 1; ell <= mp.ell_max; ++ell)
        std::printf("P[walk at cart after %zu steps]  %.4f  exact %.4f\n", ell, steps.values[ell],
                    exact_mstp(g, unit_dist(g, s), ell)[t]);

    // walks from home that end in {blog, post}
    auto st = precompute_path_samplers(g, {g.id("blog"), g.id("post")}, 0.05, p.alpha);
    Rng rng(3);
    for (int i = 0; i < 3; ++i) {
        auto path_sample = sample_path_to_target(g, s, st, rng);
        for (NodeId v : path_sample.path) std::printf("%s ", g.label(v).c_str());
        std::printf("\n");
    }
    return 0;
}
