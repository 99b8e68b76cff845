#include "vizing/local_sim.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace vizing {

namespace {

// V(C_e): every endpoint of the flattened chain (fan edges included, so the
// pivot and all leaves are covered).
std::vector<Vertex> chain_vertices(const Graph& g, const MultiStepChain& c) {
    std::vector<Vertex> vs;
    for (EdgeId e : c.flat_edges()) {
        auto [u, v] = g.endpoints(e);
        vs.push_back(u);
        vs.push_back(v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

}  // namespace

std::vector<int> random_independent_set(const ConflictGraph& gamma,
                                        uint64_t seed) {
    Rng rng(seed);
    size_t nv = gamma.adj.size();
    std::vector<double> x(nv);
    for (size_t v = 0; v < nv; ++v) x[v] = rng.uniform01();

    std::vector<int> winners;
    for (size_t v = 0; v < nv; ++v) {
        bool wins = true;
        for (int u : gamma.adj[v]) {
            if (x[u] > x[v] ||
                (x[u] == x[v] && u > static_cast<int>(v))) {
                wins = false;
                break;
            }
        }
        if (wins) winners.push_back(static_cast<int>(v));
    }
    return winners;
}

StageState stage(PartialColoring& phi, int l, int t, uint64_t seed,
                 int stage_index) {
    if (l < 4) throw PreconditionViolated("stage: l must be at least 4");
    if (t < 1)
        throw PreconditionViolated("stage: iteration budget must be positive");
    const Graph& g = phi.graph();

    StageState st{phi, {}, {}, {}, {}, {}, {}, 0};
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!phi.is_colored(e)) st.uncolored.push_back(e);
    if (st.uncolored.empty()) return st;

    // Parallel-in-spirit: each edge's run only reads the frozen snapshot
    // (the search restores phi before returning), so running them one after
    // another is equivalent to running them simultaneously.
    int64_t worst_iterations = 1;
    for (EdgeId e : st.uncolored) {
        Rng sub(derive_seed({seed, static_cast<uint64_t>(stage_index),
                             static_cast<uint64_t>(e)}));
        auto [u, v] = g.endpoints(e);
        Vertex x = sub.coin() ? v : u;
        MsvaResult r = msva(phi, e, x, l, t, sub);
        worst_iterations = std::max<int64_t>(worst_iterations,
                                             r.record.iterations);
        st.records.push_back(r.record);
        if (r.record.outcome == MsvaOutcome::Success) {
            st.succeeded.push_back(e);
            st.chains.push_back(std::move(r.chain));
        }
    }

    // Conflict graph via an inverted vertex index: chains sharing a vertex
    // are pairwise adjacent.
    size_t ns = st.succeeded.size();
    st.gamma.adj.assign(ns, {});
    std::vector<std::vector<int>> touch(g.vertex_count());
    for (size_t i = 0; i < ns; ++i)
        for (Vertex v : chain_vertices(g, st.chains[i]))
            touch[v].push_back(static_cast<int>(i));
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const std::vector<int>& list = touch[v];
        for (size_t a = 0; a + 1 < list.size(); ++a)
            for (size_t b = a + 1; b < list.size(); ++b) {
                st.gamma.adj[list[a]].push_back(list[b]);
                st.gamma.adj[list[b]].push_back(list[a]);
            }
    }
    for (std::vector<int>& nbrs : st.gamma.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        st.gamma.edge_count += static_cast<int64_t>(nbrs.size());
    }
    st.gamma.edge_count /= 2;

    st.winners = random_independent_set(
        st.gamma, derive_seed({seed, static_cast<uint64_t>(stage_index),
                               0x524953ull, 1ull}));

    // Winning chains must be pairwise vertex-disjoint before the
    // simultaneous augmentation; anything else is a bug upstream.
    std::vector<char> claimed(g.vertex_count(), 0);
    for (int w : st.winners)
        for (Vertex v : chain_vertices(g, st.chains[w])) {
            if (claimed[v])
                throw SnapshotViolation(
                    "stage: winning chains share vertex " +
                    std::to_string(v));
            claimed[v] = 1;
        }

    int64_t before = phi.uncolored_count();
    for (int w : st.winners) augment(phi, st.chains[w].flat_edges());
    if (phi.uncolored_count() !=
        before - static_cast<int64_t>(st.winners.size()))
        throw InternalInvariantViolation(
            "stage: augmentations did not color exactly the winners");

    // Charged rounds: information radius 2*l per search iteration, doubled
    // for gather+broadcast, plus the winner-exchange and augment barriers.
    st.rounds_charged = 4 * static_cast<int64_t>(l) * worst_iterations + 2;
    return st;
}

std::string stage_trace_to_json(const StageTraceRow& row) {
    nlohmann::json j;
    j["stage"] = row.stage;
    j["U"] = row.uncolored;
    j["S"] = row.succeeded;
    j["W"] = row.winners;
    j["gamma_edges"] = row.gamma_edges;
    j["mean_conflict_degree"] = row.mean_conflict_degree;
    j["rounds_charged"] = row.rounds_charged;
    return j.dump();
}

DistResult run_distributed(const Graph& g, int l, int t, int stage_cap,
                           uint64_t seed) {
    if (stage_cap < 1)
        throw PreconditionViolated("run_distributed: stage_cap must be >= 1");

    DistResult res{PartialColoring(g), {}, 0, false, {}};
    for (int s = 0;; ++s) {
        if (res.phi.uncolored_count() == 0) break;
        if (s == stage_cap) {
            res.stage_cap_exceeded = true;
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                if (!res.phi.is_colored(e)) res.residual_uncolored.push_back(e);
            break;
        }
        StageState st = stage(res.phi, l, t, seed, s);
        StageTraceRow row;
        row.stage = s;
        row.uncolored = static_cast<int64_t>(st.uncolored.size());
        row.succeeded = static_cast<int64_t>(st.succeeded.size());
        row.winners = static_cast<int64_t>(st.winners.size());
        row.gamma_edges = st.gamma.edge_count;
        row.mean_conflict_degree = st.gamma.mean_degree();
        row.rounds_charged = st.rounds_charged;
        res.trace.push_back(row);
        res.total_rounds += st.rounds_charged;
    }
    return res;
}

}  // namespace vizing
