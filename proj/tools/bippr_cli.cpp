// bippr: command-line front end. One header line ("# {config}") followed by
// one JSON record per line.
//
// exit codes: 0 ok, 1 usage, 2 data, 3 numerical / diagnostic

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <bippr.hpp>

using namespace bippr;
namespace fs = std::filesystem;

namespace {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string graph;
    bool undirected = false;
    double alpha = 0.2;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::string output;
};

class Out {
public:
    explicit Out(const std::string& path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw DataError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }
    void header(const Json& config) { os() << "# " << config.dump() << '\n'; }
    void record(const RunRecord& r) { os() << r.to_line() << '\n'; }

private:
    std::unique_ptr<std::ofstream> file_;
};

Graph load(const Common& c, bool sink)
{
    if (c.graph.empty()) throw DataError("--graph is required");
    Graph g = [&] {
        try {
            return load_graph(c.graph, c.undirected);
        } catch (const ParseError& e) {
            throw DataError(c.graph + ": " + e.what());
        } catch (const std::exception& e) {
            throw DataError(c.graph + ": " + e.what());
        }
    }();
    if (sink && !g.undirected()) g = apply_sink_convention(g);
    return g;
}

NodeId node(const Graph& g, const std::string& label)
{
    auto v = g.find(label);
    if (!v) throw DataError("unknown node '" + label + "'");
    return *v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

Json common_json(const Common& c)
{
    return Json{{"graph", c.graph}, {"undirected", c.undirected}, {"alpha", c.alpha}, {"seed", c.seed},
                {"threads", c.threads}, {"output", c.output}};
}

RunRecord make_record(const std::string& cmd, const Common& c, const Json& params)
{
    RunRecord r;
    r.command = cmd;
    r.graph = c.graph;
    r.params = params;
    r.seed = c.seed;
    return r;
}

void add_common(CLI::App* sub, Common& c, bool needs_graph = true)
{
    auto* opt = sub->add_option("--graph", c.graph, "edge list or snapshot");
    if (needs_graph) opt->required();
    sub->add_flag("--undirected", c.undirected, "treat edges as undirected");
    sub->add_option("--alpha", c.alpha, "teleport probability")->check(CLI::Range(1e-9, 1.0 - 1e-9));
    sub->add_option("--seed", c.seed);
    sub->add_option("--threads", c.threads)->check(CLI::PositiveNumber);
    sub->add_option("--output", c.output, "write here instead of stdout");
}

// ---- subcommands ----------------------------------------------------------

struct OracleArgs {
    std::string source, target;
    double tol = 1e-12;
    std::size_t topk = 10;
};

int run_oracle(const Common& c, const OracleArgs& a)
{
    Graph g = load(c, true);
    Out out(c.output);
    Json params{{"source", a.source}, {"target", a.target}, {"tol", a.tol}, {"topk", a.topk}};
    Json cfg = common_json(c);
    cfg["params"] = params;
    out.header(cfg);
    Stopwatch sw;
    auto pi = a.source.empty() ? exact_global_pagerank(g, c.alpha, a.tol) : exact_ppr(g, node(g, a.source), c.alpha, a.tol);
    auto rec = make_record("oracle", c, params);
    if (!a.target.empty()) {
        rec.estimates[a.target] = pi[node(g, a.target)];
    } else {
        Ranking r;
        for (NodeId v = 0; v < g.n(); ++v) r.push_back({v, pi[v]});
        r = rank(std::move(r));
        for (std::size_t i = 0; i < std::min(a.topk, r.size()); ++i) rec.estimates[g.label(r[i].first)] = r[i].second;
    }
    rec.wall_ms = sw.ms();
    out.record(rec);
    return 0;
}

struct EstimateArgs {
    std::string source, target;
    double delta = 0.0, eps = 0.5, pfail = 0.1, c = 7.0, walk_cost = 1.0;
    std::optional<double> rmax;
    bool balanced = false, strict = false, undirected_variant = false;
};

int run_estimate(const Common& c, const EstimateArgs& a)
{
    Graph g = load(c, !a.undirected_variant);
    if (a.undirected_variant && !g.undirected()) throw DataError("--undirected-variant needs --undirected");
    const NodeId s = node(g, a.source), t = node(g, a.target);
    PprParams p;
    p.alpha = c.alpha;
    p.delta = a.delta;
    p.epsilon = a.eps;
    p.p_fail = a.pfail;
    p.c = a.c;
    p.strict = a.strict;
    p.r_max = a.rmax;
    p.walk_time_constant = a.walk_cost;
    p.seed = c.seed;
    p.threads = c.threads;
    const double delta =
        a.undirected_variant ? (a.delta > 0 ? a.delta : natural_delta(g, t)) : effective_delta(g, p);
    const char* variant = a.undirected_variant ? "undirected" : a.balanced ? "balanced" : "bidirectional";
    Json params{{"source", a.source}, {"target", a.target}, {"variant", variant}, {"delta", delta},
                {"eps", a.eps},       {"pfail", a.pfail},   {"c", walk_constant(p)}, {"strict", a.strict}};
    if (a.balanced) params["walk_cost"] = a.walk_cost;
    Out out(c.output);
    Json cfg = common_json(c);
    cfg["params"] = params;
    out.header(cfg);

    Stopwatch sw;
    auto rec = make_record("estimate", c, params);
    if (a.undirected_variant) {
        auto e = estimate_ppr_undirected(g, s, t, p);
        rec.estimates["ppr"] = e.value;
        rec.counters = {{"walks", e.walks}, {"pushes", e.forward_pushes}, {"r_max", e.r_max}};
    } else {
        auto e = a.balanced ? estimate_ppr_balanced(g, s, t, p) : estimate_ppr(g, s, t, p);
        rec.estimates["ppr"] = e.value;
        rec.counters = {{"walks", e.walks}, {"pushes", e.pushes}, {"r_max", e.r_max}, {"work_units", e.work_units}};
        for (const auto& w : e.warnings) std::cerr << "warning: " << w << '\n';
    }
    rec.wall_ms = sw.ms();
    out.record(rec);
    return 0;
}

struct MstpArgs {
    std::string source, target;
    std::size_t ell_max = 10;
    double delta = 0.0, eps = 0.5, pfail = 0.1, c = 7.0, t_param = 5.0;
    std::optional<double> eps_r;
    bool strict = false, ell_multiplier = false, hitting = false;
};

MstpParams mstp_params(const Common& c, const MstpArgs& a)
{
    MstpParams p;
    p.ell_max = a.ell_max;
    p.delta = a.delta;
    p.epsilon = a.eps;
    p.p_fail = a.pfail;
    p.c = a.c;
    p.strict = a.strict;
    p.eps_r = a.eps_r;
    p.ell_multiplier = a.ell_multiplier;
    p.seed = c.seed;
    p.threads = c.threads;
    return p;
}

int run_mstp(const Common& c, const MstpArgs& a)
{
    Graph g = load(c, true);
    const NodeId s = node(g, a.source), t = node(g, a.target);
    auto p = mstp_params(c, a);
    Json params{{"source", a.source},
                {"target", a.target},
                {"ell_max", a.ell_max},
                {"delta", a.delta > 0 ? a.delta : 1.0 / double(g.n())},
                {"eps", a.eps},
                {"pfail", a.pfail},
                {"strict", a.strict},
                {"ell_multiplier", a.ell_multiplier},
                {"hitting", a.hitting}};
    Out out(c.output);
    Json cfg = common_json(c);
    cfg["params"] = params;
    out.header(cfg);
    Stopwatch sw;
    auto e = a.hitting ? estimate_truncated_hitting(g, s, t, p) : estimate_mstp(g, s, t, p);
    const double ms = sw.ms();
    for (const auto& w : e.warnings) std::cerr << "warning: " << w << '\n';
    for (std::size_t ell = 1; ell <= a.ell_max; ++ell) {
        auto rec = make_record(a.hitting ? "estimate-mstp/hitting" : "estimate-mstp", c, params);
        rec.params["ell"] = ell;
        rec.estimates["value"] = e.values[ell];
        rec.counters = {{"paths", e.paths}, {"pushes", e.pushes}, {"eps_r", e.eps_r}, {"c", e.c}};
        rec.wall_ms = ms;
        out.record(rec);
    }
    return 0;
}

int run_heat_kernel(const Common& c, const MstpArgs& a)
{
    Graph g = load(c, true);
    const NodeId s = node(g, a.source), t = node(g, a.target);
    auto p = mstp_params(c, a);
    HeatKernelParams hk;
    hk.t_param = a.t_param;
    hk.ell_max = a.ell_max;
    const std::size_t L = hk.ell_max ? hk.ell_max : heat_kernel_ell_max(hk.t_param);
    Json params{{"source", a.source}, {"target", a.target}, {"t", a.t_param}, {"ell_max", L},
                {"delta", a.delta > 0 ? a.delta : 1.0 / double(g.n())}, {"eps", a.eps}, {"pfail", a.pfail}};
    Out out(c.output);
    Json cfg = common_json(c);
    cfg["params"] = params;
    out.header(cfg);
    Stopwatch sw;
    auto e = estimate_heat_kernel(g, s, t, hk, p);
    auto rec = make_record("heat-kernel", c, params);
    rec.estimates["value"] = e.value;
    rec.counters = {{"paths", e.layers.paths}, {"pushes", e.layers.pushes}, {"truncation_bound", e.truncation_bound}};
    rec.wall_ms = sw.ms();
    out.record(rec);
    return 0;
}

struct SearchArgs {
    std::string keywords, index, keyword, source, method = "direct";
    std::optional<double> rmax;
    bool adaptive = false;
    double delta = 0.0, c = 20.0, beta = 0.77;
    std::size_t walks = 0, k = 3, topk = 3, nsamples = 10000;
};

int run_precompute_search(const Common& c, const SearchArgs& a)
{
    Graph g = load(c, true);
    if (!a.rmax && !a.adaptive) throw CLI::ValidationError("precompute-search", "need --rmax or --adaptive");
    KeywordIndex kw = [&] {
        try {
            return load_keywords(a.keywords, g);
        } catch (const std::exception& e) {
            throw DataError(a.keywords + ": " + e.what());
        }
    }();
    const double delta = a.delta > 0 ? a.delta : 1.0 / double(g.n());
    const std::size_t w = a.walks ? a.walks : static_cast<std::size_t>(std::ceil(a.c / delta));
    DenseDist global;
    if (a.adaptive) global = exact_global_pagerank(g, c.alpha, 1e-10);
    std::vector<KeywordVectors> built;
    for (const auto& [name, T] : kw.all()) {
        const double r_max = a.adaptive ? adaptive_r_max(T, global, double(w), a.k, a.beta, a.c) : *a.rmax;
        built.push_back({name, r_max, build_reverse_vectors(g, T, r_max, c.alpha, c.threads)});
    }
    if (c.output.empty()) throw CLI::ValidationError("precompute-search", "--output names the index file");
    {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) throw DataError("cannot write " + c.output);
        write_search_index(f, c.alpha, built);
    }
    Json params{{"keywords", a.keywords}, {"adaptive", a.adaptive}, {"walks", w}, {"k", a.k}, {"beta", a.beta},
                {"c", a.c}};
    if (a.rmax) params["rmax"] = *a.rmax;
    Json cfg = common_json(c);
    cfg["params"] = params;
    std::cout << "# " << cfg.dump() << '\n';
    auto rep = storage_accounting(g, built, c.alpha, kw.gamma());
    for (const auto& kv : built) {
        auto rec = make_record("precompute-search", c, params);
        rec.params["keyword"] = kv.keyword;
        rec.estimates["r_max"] = kv.r_max;
        rec.counters = {{"targets", kv.vectors.size()},
                        {"nnz", kv.storage()},
                        {"bound", rep.bound[kv.keyword]}};
        std::cout << rec.to_line() << '\n';
    }
    return rep.within_bound ? 0 : 3;
}

int run_search(const Common& c, const SearchArgs& a)
{
    Graph g = load(c, true);
    std::vector<KeywordVectors> built;
    double alpha = c.alpha;
    {
        std::ifstream f(a.index, std::ios::binary);
        if (!f) throw DataError("cannot open " + a.index);
        try {
            built = read_search_index(f, &alpha);
        } catch (const std::exception& e) {
            throw DataError(a.index + ": " + e.what());
        }
    }
    auto it = std::find_if(built.begin(), built.end(), [&](const auto& kv) { return kv.keyword == a.keyword; });
    if (it == built.end()) throw DataError("keyword '" + a.keyword + "' not in index");
    const NodeId s = node(g, a.source);
    const double delta = a.delta > 0 ? a.delta : 1.0 / double(g.n());
    const std::size_t w = a.walks ? a.walks : std::max<std::size_t>(1, num_walks(a.c, it->r_max, delta));
    Json params{{"index", a.index}, {"keyword", a.keyword}, {"source", a.source}, {"method", a.method},
                {"topk", a.topk},   {"walks", w},           {"r_max", it->r_max}, {"index_alpha", alpha}};
    if (a.method == "sampling") params["nsamples"] = a.nsamples;
    Out out(c.output);
    Json cfg = common_json(c);
    cfg["params"] = params;
    out.header(cfg);
    Stopwatch sw;
    auto x = build_forward_vector(g, s, w, alpha, c.seed, c.threads);
    Ranking r;
    if (a.method == "direct") {
        r = score_targets_direct(x, it->vectors, g.n());
    } else if (a.method == "grouped") {
        r = score_targets_grouped(x, GroupedIndex::build(it->vectors, g.n()));
    } else {
        Rng rng(c.seed ^ 0x5eed5eedULL);
        r = sample_targets(x, TargetSamplerIndex::build(it->vectors, g.n()), a.nsamples, rng);
    }
    const double ms = sw.ms();
    for (std::size_t i = 0; i < std::min(a.topk, r.size()); ++i) {
        auto rec = make_record("search", c, params);
        rec.estimates = {{"rank", i + 1}, {"node", g.label(r[i].first)}, {"score", r[i].second}};
        rec.wall_ms = ms;
        out.record(rec);
    }
    return 0;
}

struct PathArgs {
    std::string source, targets;
    double eps_r = 0.1;
    std::size_t count = 10;
};

int run_sample_path(const Common& c, const PathArgs& a)
{
    Graph g = load(c, true);
    const NodeId s = node(g, a.source);
    std::set<NodeId> T;
    if (fs::exists(a.targets)) {
        std::ifstream f(a.targets);
        std::string label;
        while (f >> label) T.insert(node(g, label));
    } else {
        for (const auto& label : split(a.targets, ',')) T.insert(node(g, label));
    }
    if (T.empty()) throw DataError("empty target set");
    Json params{{"source", a.source}, {"targets", a.targets}, {"eps_r", a.eps_r}, {"count", a.count}};
    Out out(c.output);
    Json cfg = common_json(c);
    cfg["params"] = params;
    out.header(cfg);
    auto st = precompute_path_samplers(g, T, a.eps_r, c.alpha);
    Rng rng(c.seed);
    for (std::size_t i = 0; i < a.count; ++i) {
        auto ps = sample_path_to_target(g, s, st, rng);
        for (std::size_t k = 0; k < ps.path.size(); ++k) out.os() << (k ? " " : "") << g.label(ps.path[k]);
        out.os() << '\n';
    }
    return 0;
}

struct ShardArgs {
    double delta = 0.0, d_max = 1000.0, c1 = 7.0;
    std::size_t shards = 4;
    std::string store, queries;
    std::vector<std::string> query;
};

// shard_<i>.jsonl: {"f": source, "c": [[coord, value], ...]} or {"r": target, ...}
void write_shards(const ShardedStore& store, const fs::path& dir)
{
    fs::create_directories(dir);
    for (const auto& sh : store.shards) {
        std::ofstream f(dir / ("shard_" + std::to_string(sh.id) + ".jsonl"));
        if (!f) throw DataError("cannot write " + dir.string());
        f << Json{{"n", store.n}, {"shard", sh.id}, {"k", store.shards.size()}}.dump() << '\n';
        std::map<NodeId, std::vector<std::pair<Coord, double>>> fw(sh.forward.begin(), sh.forward.end());
        for (const auto& [s, list] : fw) f << Json{{"f", s}, {"c", list}}.dump() << '\n';
        std::map<NodeId, std::map<Coord, double>> rv;
        for (const auto& [t, m] : sh.reverse) rv[t].insert(m.begin(), m.end());
        for (const auto& [t, m] : rv) {
            std::vector<std::pair<Coord, double>> list(m.begin(), m.end());
            f << Json{{"r", t}, {"c", list}}.dump() << '\n';
        }
    }
    // an empty source or target still needs to be known to the broker
    std::ofstream idx(dir / "members.json");
    idx << Json{{"sources", store.sources}, {"targets", store.targets}, {"k", store.shards.size()}}.dump() << '\n';
}

ShardedStore read_shards(const fs::path& dir)
{
    std::ifstream idx(dir / "members.json");
    if (!idx) throw DataError("no shard store in " + dir.string());
    ShardedStore store;
    Json m = Json::parse(idx);
    store.sources = m.at("sources").get<std::set<NodeId>>();
    store.targets = m.at("targets").get<std::set<NodeId>>();
    const std::size_t k = m.at("k").get<std::size_t>();
    store.shards.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::ifstream f(dir / ("shard_" + std::to_string(i) + ".jsonl"));
        if (!f) throw DataError("missing shard " + std::to_string(i));
        std::string line;
        std::getline(f, line);
        store.n = Json::parse(line).at("n").get<std::size_t>();
        store.shards[i].id = i;
        while (std::getline(f, line)) {
            Json j = Json::parse(line);
            auto list = j.at("c").get<std::vector<std::pair<Coord, double>>>();
            if (j.contains("f")) {
                store.shards[i].forward[j["f"].get<NodeId>()] = list;
            } else {
                auto& r = store.shards[i].reverse[j["r"].get<NodeId>()];
                for (auto [c, v] : list) r[c] = v;
            }
        }
    }
    return store;
}

int run_precompute(const Common& c, const ShardArgs& a)
{
    Graph g = load(c, true);
    if (c.output.empty()) throw CLI::ValidationError("precompute", "--output names the store directory");
    SharingParams sp;
    sp.alpha = c.alpha;
    sp.delta = a.delta;
    sp.c1 = a.c1;
    sp.d_max = a.d_max;
    sp.seed = c.seed;
    sp.threads = c.threads;
    auto setup = sharing_setup(g, sp);
    const std::size_t w = setup.full_walks;
    std::map<NodeId, ForwardVector> xs;
    for (NodeId s = 0; s < g.n(); ++s) xs[s] = build_forward_vector(g, s, w, c.alpha, c.seed * 1000003ULL + s, c.threads);
    std::vector<NodeId> all(g.n());
    for (NodeId v = 0; v < g.n(); ++v) all[v] = v;
    auto ys = build_reverse_vectors(g, all, setup.r_max_r, c.alpha, c.threads);
    auto store = shard_vectors(xs, ys, g.n(), a.shards);
    write_shards(store, c.output);

    Json params{{"delta", setup.delta}, {"dmax", a.d_max}, {"shards", a.shards}, {"c1", a.c1},
                {"r_max_r", setup.r_max_r}, {"r_max_f", setup.r_max_f}, {"walks", w}};
    Json cfg = common_json(c);
    cfg["params"] = params;
    std::cout << "# " << cfg.dump() << '\n';
    for (const auto& sh : store.shards) {
        auto rec = make_record("precompute", c, params);
        rec.params["shard"] = sh.id;
        rec.counters = {{"nnz", sh.nnz()}};
        std::cout << rec.to_line() << '\n';
    }
    auto shared = build_shared_walk_vectors(g, sp);
    auto rep = storage_report(g, shared, c.alpha, a.c1);
    auto rec = make_record("precompute/storage", c, params);
    rec.estimates = {{"fitted_c2", rep.fitted_c2},
                     {"fitted_c3", rep.fitted_c3},
                     {"model_no_sharing", rep.model_no_sharing},
                     {"model_shared", rep.model_shared},
                     {"measured_shared", rep.measured_shared}};
    rec.counters = {{"reverse_nnz", rep.reverse_nnz}, {"forward_nnz", rep.forward_nnz}, {"walks", rep.walks}};
    std::cout << rec.to_line() << '\n';
    return 0;
}

int run_serve_sim(const Common& c, const ShardArgs& a)
{
    Graph g = load(c, true);
    auto store = read_shards(a.store);
    if (store.n != g.n()) throw DataError("store was built for a different graph");
    std::vector<std::string> qs = a.query;
    if (!a.queries.empty()) {
        std::ifstream f(a.queries);
        if (!f) throw DataError("cannot open " + a.queries);
        std::string line;
        while (std::getline(f, line))
            if (!line.empty() && line[0] != '#') qs.push_back(line);
    }
    Json params{{"store", a.store}, {"queries", qs.size()}, {"shards", store.shards.size()}};
    Out out(c.output);
    Json cfg = common_json(c);
    cfg["params"] = params;
    out.header(cfg);
    for (const auto& q : qs) {
        auto parts = split(q, ',');
        if (parts.size() != 2) throw DataError("query '" + q + "' is not s,t");
        Stopwatch sw;
        const double v = broker_estimate({node(g, parts[0]), node(g, parts[1])}, store);
        auto rec = make_record("serve-sim", c, params);
        rec.params["query"] = q;
        rec.estimates["ppr"] = v;
        rec.wall_ms = sw.ms();
        out.record(rec);
    }
    return 0;
}

struct BenchArgs {
    std::string mode = "uniform";
    std::size_t pairs = 100;
    double delta = 0.0, c = 7.0;
    std::optional<double> rmax;
};

int run_bench(const Common& c, const BenchArgs& a)
{
    Graph g = load(c, true);
    BenchSpec spec;
    spec.mode = a.mode == "pagerank" ? TargetMode::pagerank : TargetMode::uniform;
    spec.pairs = a.pairs;
    spec.alpha = c.alpha;
    spec.delta = a.delta;
    spec.c = a.c;
    spec.r_max = a.rmax;
    spec.seed = c.seed;
    spec.threads = c.threads;
    Json params{{"mode", a.mode}, {"pairs", a.pairs}, {"delta", a.delta > 0 ? a.delta : 4.0 / double(g.n())},
                {"c", a.c}};
    if (a.rmax) params["rmax"] = *a.rmax;
    Out out(c.output);
    Json cfg = common_json(c);
    cfg["params"] = params;
    out.header(cfg);
    auto res = run_benchmark(g, spec);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& row : res.rows) {
        auto rec = make_record("bench", c, params);
        rec.params["algorithm"] = row.algorithm;
        rec.estimates["mean_relative_error"] =
            row.mean_relative_error ? Json(*row.mean_relative_error) : Json(nullptr);
        rec.counters = {{"evaluated", row.evaluated}, {"median_ms", row.median_ms}};
        rec.wall_ms = row.mean_ms;
        out.record(rec);
    }
    return 0;
}

struct GenArgs {
    std::string kind;
    std::size_t n = 0;
};

int run_gen(const Common& c, const GenArgs& a)
{
    Graph g = [&] {
        try {
            return generate_synthetic(a.kind, a.n, c.seed);
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("gen", e.what());
        }
    }();
    Out out(c.output);
    out.header(Json{{"command", "gen"}, {"kind", a.kind}, {"n", a.n}, {"seed", c.seed}, {"m", g.m()}});
    write_edge_list(out.os(), g);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bidirectional PPR and MSTP estimators"};
    app.require_subcommand(1);

    Common common;
    OracleArgs oa;
    EstimateArgs ea;
    MstpArgs ma;
    SearchArgs sa;
    PathArgs pa;
    ShardArgs sh;
    BenchArgs ba;
    GenArgs ga;
    std::function<int()> action;

    auto* oracle = app.add_subcommand("oracle", "exact PPR by power iteration");
    add_common(oracle, common);
    oracle->add_option("--source", oa.source, "omit for global PageRank");
    oracle->add_option("--target", oa.target);
    oracle->add_option("--tol", oa.tol);
    oracle->add_option("--topk", oa.topk);
    oracle->callback([&] { action = [&] { return run_oracle(common, oa); }; });

    auto* est = app.add_subcommand("estimate", "bidirectional PPR estimate");
    add_common(est, common);
    est->add_option("--source", ea.source)->required();
    est->add_option("--target", ea.target)->required();
    est->add_option("--delta", ea.delta, "0 picks 4/n (d_t/2m undirected)");
    est->add_option("--eps", ea.eps);
    est->add_option("--pfail", ea.pfail);
    est->add_option("--c", ea.c);
    est->add_option("--rmax", ea.rmax);
    est->add_option("--walk-cost", ea.walk_cost, "balanced: work units per walk");
    est->add_flag("--balanced", ea.balanced);
    est->add_flag("--strict", ea.strict, "use the theorem's walk constant");
    est->add_flag("--undirected-variant", ea.undirected_variant);
    est->callback([&] { action = [&] { return run_estimate(common, ea); }; });

    auto add_mstp = [&](CLI::App* sub) {
        add_common(sub, common);
        sub->add_option("--source", ma.source)->required();
        sub->add_option("--target", ma.target)->required();
        sub->add_option("--delta", ma.delta, "0 picks 1/n");
        sub->add_option("--eps", ma.eps);
        sub->add_option("--pfail", ma.pfail);
        sub->add_option("--c", ma.c);
        sub->add_option("--eps-r", ma.eps_r);
        sub->add_flag("--strict", ma.strict);
        sub->add_flag("--ell-multiplier", ma.ell_multiplier, "score l * r instead of (l + 1) * r");
    };
    auto* mstp = app.add_subcommand("estimate-mstp", "l-step transition probabilities");
    add_mstp(mstp);
    mstp->add_option("--ell-max", ma.ell_max)->check(CLI::PositiveNumber);
    mstp->add_flag("--hitting", ma.hitting, "first-hit probabilities instead");
    mstp->callback([&] { action = [&] { return run_mstp(common, ma); }; });

    auto* hk = app.add_subcommand("heat-kernel", "Poisson-weighted MSTP sum");
    add_mstp(hk);
    hk->add_option("--t", ma.t_param)->check(CLI::PositiveNumber);
    hk->add_option("--ell-max", ma.ell_max, "0: round(t + 10 sqrt(t))");
    hk->callback([&] {
        action = [&] { return run_heat_kernel(common, ma); };
    });
    hk->preparse_callback([&](std::size_t) { ma.ell_max = 0; });

    auto* pre = app.add_subcommand("precompute-search", "build reverse vectors per keyword");
    add_common(pre, common);
    pre->add_option("--keywords", sa.keywords, "keyword<TAB>node lines")->required();
    pre->add_option("--rmax", sa.rmax);
    pre->add_flag("--adaptive", sa.adaptive, "r_max(T) from the power-law model");
    pre->add_option("--walks", sa.walks, "walk budget w for --adaptive");
    pre->add_option("--delta", sa.delta);
    pre->add_option("--k", sa.k);
    pre->add_option("--beta", sa.beta);
    pre->add_option("--c", sa.c);
    pre->callback([&] { action = [&] { return run_precompute_search(common, sa); }; });

    auto* search = app.add_subcommand("search", "top-k targets for a keyword");
    add_common(search, common);
    search->add_option("--index", sa.index)->required();
    search->add_option("--keyword", sa.keyword)->required();
    search->add_option("--source", sa.source)->required();
    search->add_option("--topk", sa.topk);
    search->add_option("--method", sa.method)->check(CLI::IsMember({"direct", "grouped", "sampling"}));
    search->add_option("--nsamples", sa.nsamples);
    search->add_option("--walks", sa.walks);
    search->add_option("--delta", sa.delta);
    search->add_option("--c", sa.c);
    search->callback([&] { action = [&] { return run_search(common, sa); }; });

    auto* sp = app.add_subcommand("sample-path", "walks conditioned on ending in a target set");
    add_common(sp, common);
    sp->add_option("--source", pa.source)->required();
    sp->add_option("--targets", pa.targets, "file or comma list")->required();
    sp->add_option("--epsr", pa.eps_r)->check(CLI::PositiveNumber);
    sp->add_option("--count", pa.count);
    sp->callback([&] { action = [&] { return run_sample_path(common, pa); }; });

    auto* pc = app.add_subcommand("precompute", "sharded forward and reverse vectors");
    add_common(pc, common);
    pc->add_option("--delta", sh.delta);
    pc->add_option("--dmax", sh.d_max);
    pc->add_option("--shards", sh.shards)->check(CLI::PositiveNumber);
    pc->add_option("--c1", sh.c1);
    pc->callback([&] { action = [&] { return run_precompute(common, sh); }; });

    auto* serve = app.add_subcommand("serve-sim", "broker queries over a shard store");
    add_common(serve, common);
    serve->add_option("--store", sh.store)->required();
    serve->add_option("--query", sh.query, "s,t");
    serve->add_option("--queries", sh.queries, "file of s,t lines");
    serve->callback([&] { action = [&] { return run_serve_sim(common, sh); }; });

    auto* bench = app.add_subcommand("bench", "bidirectional vs Monte Carlo");
    add_common(bench, common);
    bench->add_option("--mode", ba.mode)->check(CLI::IsMember({"uniform", "pagerank"}));
    bench->add_option("--pairs", ba.pairs);
    bench->add_option("--delta", ba.delta);
    bench->add_option("--c", ba.c);
    bench->add_option("--rmax", ba.rmax);
    bench->callback([&] { action = [&] { return run_bench(common, ba); }; });

    auto* gen = app.add_subcommand("gen", "synthetic graph as an edge list");
    add_common(gen, common, false);
    gen->add_option("--kind", ga.kind, "cycle | star | grid | power-law")->required();
    gen->add_option("--n", ga.n)->required()->check(CLI::PositiveNumber);
    gen->callback([&] { action = [&] { return run_gen(common, ga); }; });

    try {
        app.parse(argc, argv);
        return action();
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
