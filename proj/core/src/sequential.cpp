#include "vizing/sequential.hpp"

#include <chrono>

#include <nlohmann/json.hpp>

namespace vizing {

namespace {

int64_t now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::vector<int64_t> color_histogram(const PartialColoring& phi) {
    std::vector<int64_t> hist(phi.palette(), 0);
    const Graph& g = phi.graph();
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (phi.is_colored(e)) ++hist[phi.color(e) - 1];
    return hist;
}

SeqStats base_stats(const Graph& g, int ell, uint64_t seed) {
    SeqStats st;
    st.n = g.vertex_count();
    st.m = g.edge_count();
    st.delta = g.max_degree();
    st.ell = ell;
    st.seed = seed;
    return st;
}

void audit_validate(const Graph& g, const PartialColoring& phi) {
    if (!validate(g, phi).ok())
        throw InternalInvariantViolation(
            "audit: coloring improper after augmentation");
}

// Audit-mode checks at one search-loop head: the candidate must link onto
// the committed chain, its path must respect the truncation cap, and a
// non-happy candidate's path must alternate its two colors under the
// current (shifted) coloring.
void audit_search_head(const Graph& g, const MsvaRun& run,
                       const PartialColoring& phi, EdgeId start, Vertex x,
                       int l) {
    const CandidateChain& cand = run.candidate();
    if (run.steps().empty()) {
        if (cand.fan.start_edge() != start || cand.fan.pivot != x)
            throw InternalInvariantViolation(
                "audit: first candidate does not start at the edge");
    } else {
        const MsvaStep& prev = run.steps().back();
        if (cand.fan.start_edge() != prev.path.end_edge() ||
            cand.fan.vstart() != prev.path.vend ||
            cand.fan.pivot != g.other_end(prev.path.end_edge(), prev.path.vend))
            throw InternalInvariantViolation(
                "audit: candidate does not link onto the previous step");
    }
    if (cand.happy_fan()) {
        if (cand.path.length() != 1)
            throw InternalInvariantViolation(
                "audit: happy candidate carries a nontrivial path");
        return;
    }
    if (cand.path.length() > 2 * l)
        throw InternalInvariantViolation("audit: candidate path exceeds 2l");
    for (int i = 1; i < cand.path.length(); ++i) {
        Color want = i % 2 == 1 ? cand.alpha : cand.beta;
        if (phi.color(cand.path.edges[i]) != want)
            throw InternalInvariantViolation(
                "audit: candidate path does not alternate its colors");
    }
}

// Dense uncolored-edge pool with O(1) uniform sampling via swap-remove.
struct EdgePool {
    std::vector<EdgeId> edges;

    explicit EdgePool(EdgeId m) {
        edges.resize(m);
        for (EdgeId e = 0; e < m; ++e) edges[e] = e;
    }

    bool empty() const { return edges.empty(); }

    EdgeId draw(Rng& rng) {
        size_t i = rng.below(edges.size());
        EdgeId e = edges[i];
        edges[i] = edges.back();
        edges.pop_back();
        return e;
    }
};

}  // namespace

std::string seq_stats_to_json(const SeqStats& stats) {
    nlohmann::json j;
    j["n"] = stats.n;
    j["m"] = stats.m;
    j["delta"] = stats.delta;
    j["ell"] = stats.ell;
    j["seed"] = stats.seed;
    j["total_iterations"] = stats.total_iterations;
    j["restarts"] = stats.restarts;
    j["wall_ns"] = stats.wall_ns;
    j["per_color_histogram"] = stats.per_color_histogram;
    return j.dump();
}

PartialColoring color_greedy(const Graph& g) {
    int delta = g.max_degree();
    int palette = std::max(2 * delta - 1, std::max(delta, 2) + 1);
    PartialColoring phi(g, palette);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.endpoints(e);
        Color c = common_missing_min(phi, u, v);
        if (c == kBlank)
            throw InternalInvariantViolation(
                "greedy: no free color at palette 2*maxdeg-1");
        phi.set(e, c);
    }
    return phi;
}

ColorResult color_vizing(const Graph& g, uint64_t seed, bool timed,
                         bool audit) {
    ColorResult res{PartialColoring(g), base_stats(g, 0, seed), {}};
    PartialColoring& phi = res.phi;
    SeqStats& st = res.stats;
    int64_t t0 = timed ? now_ns() : 0;

    Rng rng(seed);
    FanScratch scratch;
    EdgePool pool(g.edge_count());
    while (!pool.empty()) {
        EdgeId e = pool.draw(rng);
        auto [u, v] = g.endpoints(e);
        Vertex x = rng.coin() ? v : u;
        int64_t before = phi.uncolored_count();
        CandidateChain chain = vizing_chain(phi, e, x, rng, scratch);
        augment(phi, chain.flat());
        if (phi.uncolored_count() != before - 1)
            throw InternalInvariantViolation(
                "sequential: iteration did not color exactly one edge");
        if (audit) audit_validate(g, phi);
        st.path_lengths.push_back(chain.path.length());
        ++st.total_iterations;
    }

    if (timed) st.wall_ns = now_ns() - t0;
    st.per_color_histogram = color_histogram(phi);
    return res;
}

ColorResult color_msva(const Graph& g, int l, uint64_t seed, bool timed,
                       bool audit) {
    ColorResult res{PartialColoring(g), base_stats(g, l, seed), {}};
    PartialColoring& phi = res.phi;
    SeqStats& st = res.stats;
    int64_t t0 = timed ? now_ns() : 0;

    int cap = default_cap(g.vertex_count());
    Rng rng(seed);
    EdgePool pool(g.edge_count());
    MsvaScratch scratch;  // shared across calls; a fresh one per call is O(n)

    // Identical to the plain msva() call, but audit mode walks the search
    // one iteration at a time to check invariants at each loop head.
    auto run_one = [&](EdgeId e, Vertex px, int l_eff, Rng& sub) {
        if (!audit) return msva(phi, e, px, l_eff, cap, sub, scratch);
        MsvaRun run(phi, e, px, l_eff, cap, sub, scratch);
        std::optional<MsvaOutcome> out;
        while (!out) {
            audit_search_head(g, run, phi, e, px, l_eff);
            out = run.step();
        }
        return MsvaResult{run.chain(), run.record()};
    };

    while (!pool.empty()) {
        EdgeId e = pool.draw(rng);
        auto [u, v] = g.endpoints(e);
        Vertex x = rng.coin() ? v : u;
        int64_t before = phi.uncolored_count();

        // Retry capped runs on fresh substreams; the coloring comes back
        // untouched, so each attempt starts from the same state. Small l can
        // leave an edge genuinely stuck (termination is only guaranteed for
        // l >= 4*maxdeg^2), so retries re-draw the endpoint and periodically
        // double the effective truncation length up to that threshold.
        int l_max = std::max(l, 4 * st.delta * st.delta);
        for (uint64_t attempt = 0;; ++attempt) {
            if (attempt >= 4096)
                throw InternalInvariantViolation(
                    "sequential: edge " + std::to_string(e) +
                    " exhausted 4096 restart attempts");
            Rng sub(derive_seed({seed, static_cast<uint64_t>(e), attempt}));
            int l_eff = l;
            for (uint64_t a = attempt; a >= 8 && l_eff < l_max; a -= 8)
                l_eff = std::min(2 * l_eff, l_max);
            if (attempt > 0) x = sub.coin() ? v : u;
            MsvaResult r = run_one(e, x, l_eff, sub);
            st.total_iterations += r.record.iterations;
            res.records.push_back(r.record);
            if (r.record.outcome == MsvaOutcome::Success) {
                augment(phi, r.chain.flat_edges());
                st.path_lengths.push_back(
                    static_cast<int>(r.chain.flat_edges().size()));
                break;
            }
            ++st.restarts;
        }

        if (phi.uncolored_count() != before - 1)
            throw InternalInvariantViolation(
                "sequential: iteration did not color exactly one edge");
        if (audit) audit_validate(g, phi);
    }

    if (timed) st.wall_ns = now_ns() - t0;
    st.per_color_histogram = color_histogram(phi);
    return res;
}

}  // namespace vizing
