// Command-line front end: graph generation, the three colorers, a scaling
// benchmark grid, and the distributed-stage simulator. Exit codes: 0 on
// success, 2 on bad input or parameters, 3 when a produced coloring fails
// validation, 1 when the stage cap ran out before the graph was colored.
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "vizing/local_sim.hpp"
#include "vizing/sequential.hpp"

using namespace vizing;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIncomplete = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitImproper = 3;

Graph load_graph(const std::string& path) {
    if (path == "-") return parse_edge_list(std::cin);
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    return parse_edge_list(in);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out << text;
}

json stats_json(const SeqStats& st) { return json::parse(seq_stats_to_json(st)); }

// ---------------------------------------------------------------- gen ----

struct GenArgs {
    Vertex n = 0;
    int delta = 0;
    uint64_t seed = 0;
    bool regular = false;
    bool as_json = false;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    Graph g = gen_random_max_degree(a.n, a.delta, a.seed, {a.regular});
    if (!a.out.empty()) {
        std::ofstream out(a.out);
        if (!out) throw Error("cannot open output file: " + a.out);
        write_edge_list(g, out);
    }
    if (a.as_json) {
        json j{{"schema", 1},
               {"command", "gen"},
               {"n", g.vertex_count()},
               {"m", g.edge_count()},
               {"delta", g.max_degree()},
               {"seed", a.seed}};
        if (!a.out.empty()) j["path"] = a.out;
        std::cout << j.dump() << "\n";
    } else if (a.out.empty()) {
        write_edge_list(g, std::cout);
    } else {
        std::cout << "wrote " << g.edge_count() << " edges (n="
                  << g.vertex_count() << ", max degree " << g.max_degree()
                  << ") to " << a.out << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------- color ----

struct ColorArgs {
    std::string input;
    std::string alg = "msva";
    int ell = 0;  // 0: pick the default for the graph
    uint64_t seed = 0;
    std::string out;
    std::string records_out;
    bool as_json = false;
    bool timings = false;
    bool audit = false;
};

int cmd_color(const ColorArgs& a) {
    Graph g = load_graph(a.input);

    PartialColoring phi(g);
    SeqStats st;
    std::vector<RunRecord> records;
    if (a.alg == "greedy") {
        phi = color_greedy(g);
        st.n = g.vertex_count();
        st.m = g.edge_count();
        st.delta = g.max_degree();
        st.total_iterations = g.edge_count();
        st.per_color_histogram.assign(phi.palette(), 0);
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            ++st.per_color_histogram[phi.color(e) - 1];
    } else if (a.alg == "vizing") {
        ColorResult r = color_vizing(g, a.seed, a.timings, a.audit);
        phi = r.phi;
        st = r.stats;
    } else {
        int ell = a.ell > 0 ? a.ell : default_ell(g.max_degree());
        ColorResult r = color_msva(g, ell, a.seed, a.timings, a.audit);
        phi = r.phi;
        st = r.stats;
        records = std::move(r.records);
    }

    if (!a.out.empty()) write_file(a.out, coloring_to_text(phi));
    if (!a.records_out.empty()) {
        std::ostringstream lines;
        for (const RunRecord& r : records) lines << record_to_json(r) << "\n";
        write_file(a.records_out, lines.str());
    }

    ValidationReport rep = validate(g, phi);
    bool ok = rep.ok() && rep.uncolored == 0;
    if (a.as_json) {
        json j{{"schema", 1},
               {"command", "color"},
               {"alg", a.alg},
               {"valid", ok},
               {"max_color", rep.max_color_used},
               {"stats", stats_json(st)}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << a.alg << ": n=" << g.vertex_count()
                  << " m=" << g.edge_count() << " delta=" << g.max_degree()
                  << " max_color=" << rep.max_color_used
                  << " iterations=" << st.total_iterations
                  << " restarts=" << st.restarts
                  << (ok ? " [proper]" : " [IMPROPER]") << "\n";
    }
    return ok ? kExitOk : kExitImproper;
}

// -------------------------------------------------------------- bench ----

struct BenchArgs {
    std::vector<std::string> algs{"greedy", "vizing", "msva"};
    std::vector<Vertex> n_grid;
    std::vector<int> delta_grid;
    int ell = 0;
    int seeds = 3;
    uint64_t seed = 0;
    int threads = 0;
    std::string out;
    bool as_json = false;
};

struct BenchCell {
    std::string alg;
    Vertex n = 0;
    int delta = 0;
    int ell = 0;
    int seed_index = 0;
    EdgeId m = 0;
    int64_t wall_ns = 0;
    int64_t total_iterations = 0;
    int64_t path_length_sum = 0;
    int64_t restarts = 0;
};

BenchCell run_cell(const std::string& alg, Vertex n, int delta, int ell,
                   int seed_index, uint64_t base_seed) {
    uint64_t gseed = derive_seed({base_seed, static_cast<uint64_t>(n),
                                  static_cast<uint64_t>(delta),
                                  static_cast<uint64_t>(seed_index), 0});
    uint64_t rseed = derive_seed({base_seed, static_cast<uint64_t>(n),
                                  static_cast<uint64_t>(delta),
                                  static_cast<uint64_t>(seed_index), 1});
    Graph g = gen_random_max_degree(n, delta, gseed);

    BenchCell cell;
    cell.alg = alg;
    cell.n = n;
    cell.delta = delta;
    cell.seed_index = seed_index;
    cell.m = g.edge_count();

    if (alg == "greedy") {
        auto t0 = std::chrono::steady_clock::now();
        PartialColoring phi = color_greedy(g);
        auto t1 = std::chrono::steady_clock::now();
        cell.wall_ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)
                .count();
        cell.total_iterations = g.edge_count();
        (void)phi;
        return cell;
    }

    ColorResult r = alg == "vizing"
                        ? color_vizing(g, rseed, true)
                        : color_msva(g, ell > 0 ? ell : default_ell(delta),
                                     rseed, true);
    cell.ell = r.stats.ell;
    cell.wall_ns = r.stats.wall_ns;
    cell.total_iterations = r.stats.total_iterations;
    cell.restarts = r.stats.restarts;
    for (int len : r.stats.path_lengths) cell.path_length_sum += len;
    return cell;
}

// Least-squares slope of ln(wall) against ln(n), one point per n (mean over
// seeds), plus residual sums for the fixed-exponent models wall ~ n and
// wall ~ n ln n used for the shape comparison.
struct SlopeFit {
    double slope = 0.0;
    int points = 0;
    double rss_linear = 0.0;
    double rss_nlogn = 0.0;
};

SlopeFit fit_slope(const std::vector<std::pair<Vertex, double>>& mean_wall) {
    SlopeFit fit;
    fit.points = static_cast<int>(mean_wall.size());
    if (fit.points < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [n, w] : mean_wall) {
        double x = std::log(static_cast<double>(n));
        double y = std::log(w);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double k = fit.points;
    fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);

    for (int model = 0; model < 2; ++model) {
        double off = 0;
        std::vector<double> resid;
        for (auto [n, w] : mean_wall) {
            double pred = std::log(static_cast<double>(n)) +
                          (model == 1 ? std::log(std::log(
                                            static_cast<double>(n)))
                                      : 0.0);
            resid.push_back(std::log(w) - pred);
            off += resid.back();
        }
        off /= k;
        double rss = 0;
        for (double r : resid) rss += (r - off) * (r - off);
        (model == 0 ? fit.rss_linear : fit.rss_nlogn) = rss;
    }
    return fit;
}

int cmd_bench(const BenchArgs& a) {
    if (a.algs.empty() || a.n_grid.empty() || a.delta_grid.empty() ||
        a.seeds < 1) {
        std::cerr << "bench: grids and seed count must be nonempty\n";
        return kExitBadInput;
    }
    for (const std::string& alg : a.algs)
        if (alg != "greedy" && alg != "vizing" && alg != "msva") {
            std::cerr << "bench: unknown algorithm " << alg << "\n";
            return kExitBadInput;
        }

    struct CellSpec {
        std::string alg;
        Vertex n;
        int delta;
        int seed_index;
    };
    std::vector<CellSpec> specs;
    for (const std::string& alg : a.algs)
        for (Vertex n : a.n_grid)
            for (int delta : a.delta_grid)
                for (int s = 0; s < a.seeds; ++s)
                    specs.push_back({alg, n, delta, s});

    std::vector<BenchCell> cells(specs.size());
    unsigned pool = a.threads > 0
                        ? static_cast<unsigned>(a.threads)
                        : std::max(1u, std::thread::hardware_concurrency());
    pool = std::min<unsigned>(pool, specs.size());
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < pool; ++w)
        workers.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < specs.size();
                 i = next.fetch_add(1)) {
                const CellSpec& s = specs[i];
                cells[i] =
                    run_cell(s.alg, s.n, s.delta, a.ell, s.seed_index, a.seed);
            }
        });
    for (std::thread& w : workers) w.join();

    std::ostringstream csv;
    csv << "alg,n,delta,ell,seed_index,m,wall_ns,total_iterations,"
           "path_length_sum,restarts\n";
    for (const BenchCell& c : cells)
        csv << c.alg << "," << c.n << "," << c.delta << "," << c.ell << ","
            << c.seed_index << "," << c.m << "," << c.wall_ns << ","
            << c.total_iterations << "," << c.path_length_sum << ","
            << c.restarts << "\n";
    if (!a.out.empty()) write_file(a.out, csv.str());

    // Per (alg, delta): mean wall per n, slope, and model comparison.
    json slopes = json::array();
    for (const std::string& alg : a.algs)
        for (int delta : a.delta_grid) {
            std::vector<std::pair<Vertex, double>> mean_wall;
            for (Vertex n : a.n_grid) {
                double sum = 0;
                int count = 0;
                for (const BenchCell& c : cells)
                    if (c.alg == alg && c.n == n && c.delta == delta) {
                        sum += static_cast<double>(c.wall_ns);
                        ++count;
                    }
                if (count > 0 && sum > 0) mean_wall.push_back({n, sum / count});
            }
            SlopeFit fit = fit_slope(mean_wall);
            if (fit.points < 2) continue;
            slopes.push_back({{"alg", alg},
                              {"delta", delta},
                              {"points", fit.points},
                              {"slope", fit.slope},
                              {"rss_linear", fit.rss_linear},
                              {"rss_nlogn", fit.rss_nlogn},
                              {"preferred", fit.rss_nlogn < fit.rss_linear
                                                ? "nlogn"
                                                : "linear"}});
        }

    if (a.as_json) {
        json j{{"schema", 1},
               {"command", "bench"},
               {"cells", cells.size()},
               {"slopes", slopes}};
        if (!a.out.empty()) j["csv"] = a.out;
        std::cout << j.dump() << "\n";
    } else {
        if (a.out.empty()) std::cout << csv.str();
        for (const json& s : slopes)
            std::cout << "slope " << s["alg"].get<std::string>() << " delta "
                      << s["delta"] << ": " << s["slope"] << " over "
                      << s["points"] << " sizes (prefer "
                      << s["preferred"].get<std::string>() << ")\n";
    }
    return kExitOk;
}

// ------------------------------------------------------------ distsim ----

struct DistArgs {
    std::string input;
    int ell = 0;
    int t = 0;
    int stage_cap = 200;
    uint64_t seed = 0;
    std::string trace_out;
    bool as_json = false;
};

int cmd_distsim(const DistArgs& a) {
    Graph g = load_graph(a.input);
    int ell = a.ell > 0 ? a.ell : default_ell(g.max_degree());
    int t = a.t;
    if (t <= 0) {
        t = 3;
        while ((int64_t{1} << t) < g.vertex_count()) ++t;  // ~log2 n budget
    }

    DistResult r = run_distributed(g, ell, t, a.stage_cap, a.seed);

    if (!a.trace_out.empty()) {
        std::ostringstream lines;
        lines << json{{"schema", 1},
                      {"kind", "stage_trace"},
                      {"n", g.vertex_count()},
                      {"m", g.edge_count()},
                      {"ell", ell},
                      {"t", t},
                      {"seed", a.seed}}
                     .dump()
              << "\n";
        for (const StageTraceRow& row : r.trace)
            lines << stage_trace_to_json(row) << "\n";
        write_file(a.trace_out, lines.str());
    }

    ValidationReport rep = validate(g, r.phi);
    bool complete = !r.stage_cap_exceeded && rep.ok() && rep.uncolored == 0;
    if (a.as_json) {
        json j{{"schema", 1},
               {"command", "distsim"},
               {"ell", ell},
               {"t", t},
               {"stages", r.trace.size()},
               {"total_rounds", r.total_rounds},
               {"complete", complete},
               {"residual_uncolored", r.residual_uncolored.size()}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "distsim: " << r.trace.size() << " stages, "
                  << r.total_rounds << " simulated rounds, "
                  << (complete ? "fully colored"
                               : std::to_string(r.residual_uncolored.size()) +
                                     " edges left")
                  << "\n";
    }
    if (!rep.ok()) return kExitImproper;
    return complete ? kExitOk : kExitIncomplete;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"(maxdeg+1) edge coloring toolkit"};
    app.require_subcommand(1);

    GenArgs ga;
    CLI::App* gen = app.add_subcommand("gen", "generate a random graph");
    gen->add_option("-n,--n", ga.n, "vertex count")->required();
    gen->add_option("--delta", ga.delta, "target maximum degree")->required();
    gen->add_option("--seed", ga.seed, "generator seed")->envname("VIZING_SEED");
    gen->add_flag("--regular", ga.regular, "demand an exactly regular graph");
    gen->add_flag("--json", ga.as_json, "machine-readable stdout");
    gen->add_option("-o,--out", ga.out, "output path (edge list)");

    ColorArgs ca;
    CLI::App* color = app.add_subcommand("color", "color a graph");
    color->add_option("input", ca.input, "edge-list path, - for stdin")
        ->required();
    color->add_option("--alg", ca.alg, "greedy | vizing | msva")
        ->check(CLI::IsMember({"greedy", "vizing", "msva"}))
        ->envname("VIZING_ALG");
    color->add_option("--ell", ca.ell, "truncation length (0 = auto)")
        ->envname("VIZING_ELL");
    color->add_option("--seed", ca.seed, "run seed")->envname("VIZING_SEED");
    color->add_option("-o,--out", ca.out, "write the coloring here");
    color->add_option("--records-out", ca.records_out,
                      "write per-run record JSON lines here (msva)");
    color->add_flag("--json", ca.as_json, "machine-readable stdout");
    color->add_flag("--timings", ca.timings, "measure wall time")
        ->envname("VIZING_TIMINGS");
    color->add_flag("--validate-debug", ca.audit,
                    "check per-iteration invariants (slow)")
        ->envname("VIZING_VALIDATE_DEBUG");

    BenchArgs ba;
    CLI::App* bench = app.add_subcommand("bench", "scaling benchmark grid");
    bench->add_option("--algs", ba.algs, "algorithms to run");
    bench->add_option("--n-grid", ba.n_grid, "vertex counts")->required();
    bench->add_option("--delta-grid", ba.delta_grid, "max degrees")
        ->required();
    bench->add_option("--ell", ba.ell, "truncation length (0 = auto)")
        ->envname("VIZING_ELL");
    bench->add_option("--seeds", ba.seeds, "seeds per cell");
    bench->add_option("--seed", ba.seed, "base seed")->envname("VIZING_SEED");
    bench->add_option("--threads", ba.threads, "worker threads (0 = auto)");
    bench->add_option("-o,--out", ba.out, "CSV output path");
    bench->add_flag("--json", ba.as_json, "machine-readable stdout");

    DistArgs da;
    CLI::App* dist =
        app.add_subcommand("distsim", "round-synchronous distributed run");
    dist->add_option("input", da.input, "edge-list path, - for stdin")
        ->required();
    dist->add_option("--ell", da.ell, "truncation length (0 = auto)")
        ->envname("VIZING_ELL");
    dist->add_option("--t", da.t, "per-stage iteration budget (0 = auto)")
        ->envname("VIZING_T");
    dist->add_option("--stage-cap", da.stage_cap, "maximum stages")
        ->envname("VIZING_STAGE_CAP");
    dist->add_option("--seed", da.seed, "run seed")->envname("VIZING_SEED");
    dist->add_option("-o,--trace-out", da.trace_out,
                     "write the stage trace JSON lines here");
    dist->add_flag("--json", da.as_json, "machine-readable stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (gen->parsed()) return cmd_gen(ga);
        if (color->parsed()) return cmd_color(ca);
        if (bench->parsed()) return cmd_bench(ba);
        return cmd_distsim(da);
    } catch (const PreconditionViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const InfeasibleParameters& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}
