#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "test_util.hpp"
#include "vizing/msva.hpp"

using namespace vizing;

namespace {

// Fan bump at vertex 0 followed by a long alternating tail: the first chain
// walks the whole tail, so with a small step length it must be truncated.
struct TailInstance {
    Graph g;
    PartialColoring phi;

    explicit TailInstance(int tail_edges)
        : g(make_graph(tail_edges)), phi(g) {
        phi.set(1, 1);
        phi.set(2, 2);
        for (EdgeId e = 3; e < g.edge_count(); ++e)
            phi.set(e, e % 2 == 1 ? 3 : 1);
    }

    static Graph make_graph(int tail_edges) {
        std::vector<std::pair<Vertex, Vertex>> es = {{0, 1}, {0, 2}, {0, 3}};
        for (int i = 0; i < tail_edges; ++i) es.push_back({i + 3, i + 4});
        return Graph(static_cast<Vertex>(tail_edges + 4), std::move(es));
    }
};

// Complete graph on an odd number of vertices with the round-robin proper
// coloring: edge {i,j} gets color (i+j) mod n + 1, so every vertex v is full
// and misses exactly color 2v mod n + 1. Blanking a few edges yields
// colorings whose alternating paths run through most of the graph — the
// regime where runs truncate, append, and backtrack.
Graph make_complete_odd(int n) {
    std::vector<std::pair<Vertex, Vertex>> es;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) es.push_back({i, j});
    return Graph(static_cast<Vertex>(n), std::move(es));
}

PartialColoring round_robin(const Graph& g, int n) {
    PartialColoring phi(g);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [i, j] = g.endpoints(e);
        phi.set(e, static_cast<Color>((i + j) % n) + 1);
    }
    return phi;
}

void blank_random(PartialColoring& phi, int count, Rng& rng) {
    for (int b = 0; b < count; ++b) {
        EdgeId e = static_cast<EdgeId>(rng.below(phi.graph().edge_count()));
        if (phi.is_colored(e)) phi.clear(e);
    }
}

std::set<Vertex> step_vertices(const Graph& g, const ChainStep& s,
                               bool fan_only) {
    std::set<Vertex> vs;
    for (Vertex v : fan_vertices(s.fan)) vs.insert(v);
    if (!fan_only) {
        for (EdgeId e : s.path.edges) {
            auto [a, b] = g.endpoints(e);
            vs.insert(a);
            vs.insert(b);
        }
    }
    return vs;
}

std::set<EdgeId> step_edges(const ChainStep& s) {
    std::set<EdgeId> es(s.fan.edges.begin(), s.fan.edges.end());
    es.insert(s.path.edges.begin(), s.path.edges.end());
    return es;
}

// Brute-force version of the pairwise disjointness the algorithm maintains:
// fan vertices and interior path edges of an earlier step never reappear in
// a later step.
bool non_intersecting(const Graph& g, const std::vector<ChainStep>& steps) {
    for (size_t i = 0; i < steps.size(); ++i) {
        std::set<Vertex> fan_i = step_vertices(g, steps[i], true);
        std::vector<EdgeId> int_i = path_internal_edges(steps[i].path);
        for (size_t j = i + 1; j < steps.size(); ++j) {
            std::set<Vertex> all_j = step_vertices(g, steps[j], false);
            std::set<EdgeId> edges_j = step_edges(steps[j]);
            for (Vertex v : fan_i)
                if (all_j.count(v)) return false;
            for (EdgeId e : int_i)
                if (edges_j.count(e)) return false;
        }
    }
    return true;
}

void check_chain_augments(const PartialColoring& orig,
                          const MultiStepChain& chain, EdgeId e) {
    PartialColoring copy = orig;
    int64_t before = copy.uncolored_count();
    augment(copy, chain.flat_edges());
    CHECK(copy.uncolored_count() == before - 1);
    CHECK(copy.is_colored(e));
    CHECK(validate(copy.graph(), copy).ok());
}

// Per-head bookkeeping for the stepwise driver below.
struct DriveStats {
    int64_t heads = 0;
    int64_t appends = 0;
    int64_t backtracks = 0;
    int64_t successes = 0;
    int64_t cap_hits = 0;
    int64_t multi_step_successes = 0;
};

// Runs one instance through MsvaRun::step, checking the loop invariants at
// every head, the append/backtrack bookkeeping at every transition, and the
// final chain on success. `orig` is left untouched.
void drive_one(const PartialColoring& orig, EdgeId start, Vertex x, int l,
               int cap, uint64_t seed, DriveStats& st) {
    const Graph& g = orig.graph();
    PartialColoring phi = orig;
    Rng rng(seed);
    MsvaRun run(phi, start, x, l, cap, rng);

    std::vector<PartialColoring> snaps;          // coloring per depth
    std::vector<CandidateChain> committed_cand;  // candidate that built step k
    int heads_left = 20000;

    while (true) {
        REQUIRE(--heads_left > 0);
        ++st.heads;
        size_t k = run.steps().size();

        // The shifted coloring at depth k is the same every time the run is
        // at depth k: committed steps below k were never recommitted.
        if (k < snaps.size()) {
            CHECK(phi == snaps[k]);
            snaps.erase(snaps.begin() + static_cast<ptrdiff_t>(k) + 1,
                        snaps.end());
        } else {
            REQUIRE(k == snaps.size());
            snaps.push_back(phi);
        }

        const CandidateChain cand = run.candidate();

        // Start(F) = End(C), vStart(F) = vEnd(C); for the empty chain the
        // candidate starts at the run's start edge.
        if (k == 0) {
            CHECK(cand.fan.start_edge() == start);
            CHECK(cand.fan.pivot == x);
        } else {
            const MsvaStep& prev = run.steps().back();
            CHECK(cand.fan.start_edge() == prev.path.end_edge());
            CHECK(cand.fan.vstart() == prev.path.vend);
            CHECK(cand.fan.pivot ==
                  g.other_end(prev.path.end_edge(), prev.path.vend));
        }

        // Committed steps carry a truncated path of length in [l, 2l-1] and
        // link to their successors the same way.
        for (size_t i = 0; i < k; ++i) {
            const MsvaStep& s = run.steps()[i];
            CHECK(s.path.length() >= l);
            CHECK(s.path.length() <= 2 * l - 1);
            CHECK(s.full_path.length() == 2 * l);
            if (i + 1 < k) {
                const MsvaStep& t = run.steps()[i + 1];
                CHECK(t.fan.start_edge() == s.path.end_edge());
                CHECK(t.fan.vstart() == s.path.vend);
            }
        }

        // The whole chain incl. the candidate is non-intersecting and
        // shiftable from the original coloring.
        {
            std::vector<ChainStep> all;
            for (const MsvaStep& s : run.steps()) all.push_back({s.fan, s.path});
            all.push_back({cand.fan, cand.path});
            CHECK(non_intersecting(g, all));
            MultiStepChain tmp;
            tmp.steps = all;
            CHECK(testutil::chain_shiftable(orig, tmp.flat_edges()));
        }

        // Candidate fan is happy or hopeful under the current shifted
        // coloring; a non-happy candidate's path alternates its two colors.
        if (cand.happy_fan()) {
            CHECK(cand.path.length() == 1);
            CHECK(testutil::fan_happy(phi, cand.fan));
        } else {
            CHECK((testutil::fan_hopeful(phi, cand.fan, cand.alpha, cand.beta) ||
                   testutil::fan_happy(phi, cand.fan)));
            CHECK(cand.path.length() <= 2 * l);
            for (int i = 1; i < cand.path.length(); ++i) {
                Color expect = i % 2 == 1 ? cand.alpha : cand.beta;
                CHECK(phi.color(cand.path.edges[i]) == expect);
            }
        }

        // Visited marks are exactly the fan vertices and interior path edges
        // of the committed steps, owned by their step index.
        {
            std::vector<int> expect_v(g.vertex_count(), -1);
            std::vector<int> expect_e(g.edge_count(), -1);
            for (size_t i = 0; i < k; ++i) {
                for (Vertex v : fan_vertices(run.steps()[i].fan))
                    expect_v[v] = static_cast<int>(i);
                for (EdgeId e : path_internal_edges(run.steps()[i].path))
                    expect_e[e] = static_cast<int>(i);
            }
            for (Vertex v = 0; v < g.vertex_count(); ++v)
                CHECK(run.visited().owner_vertex(v) == expect_v[v]);
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                CHECK(run.visited().owner_edge(e) == expect_e[e]);
        }

        std::optional<MsvaOutcome> out = run.step();
        if (out) {
            const RunRecord& rec = run.record();
            CHECK(phi == orig);  // both finishes restore the coloring
            for (size_t i = 0; i < rec.d.size(); ++i)
                CHECK((rec.d[i] == 1 || rec.d[i] <= 0));
            int64_t prefix = 0;
            for (int d : rec.d) {
                prefix += d;
                CHECK(prefix >= 0);
            }
            if (*out == MsvaOutcome::Success) {
                ++st.successes;
                CHECK(rec.iterations == static_cast<int>(rec.d.size()) + 1);
                const MultiStepChain& chain = run.chain();
                CHECK(chain.start_edge == start);
                CHECK(chain.step_count() == static_cast<int>(k) + 1);
                if (chain.step_count() > 1) ++st.multi_step_successes;
                CHECK(non_intersecting(g, chain.steps));
                check_chain_augments(orig, chain, start);
                CHECK(rec.terminus_edge == chain.steps.back().path.end_edge());
                CHECK(rec.terminus_vertex == chain.steps.back().path.vend);

                // Under the *original* coloring, the end leaf of each
                // committed fan touches exactly one of its path colors, and
                // every committed path edge except the first still carries
                // one of them. (The final candidate is exempt: its path may
                // stop after a single edge.)
                for (size_t i = 0; i < committed_cand.size(); ++i) {
                    const CandidateChain& cc = committed_cand[i];
                    const ChainStep& s = chain.steps[i];
                    CHECK(!cc.happy_fan());
                    CHECK(testutil::deg_ab(orig, s.fan.vend(), cc.alpha,
                                           cc.beta) == 1);
                    for (int p = 1; p < s.path.length(); ++p) {
                        Color c = orig.color(s.path.edges[p]);
                        CHECK((c == cc.alpha || c == cc.beta));
                    }
                }
            } else {
                ++st.cap_hits;
                CHECK(rec.iterations == cap);
                CHECK(static_cast<int>(rec.d.size()) == cap);
                CHECK(run.chain().step_count() == 0);
            }
            return;
        }

        size_t k_new = run.steps().size();
        CHECK(!run.record().d.empty());
        CHECK(run.record().d.back() ==
              static_cast<int>(k_new) - static_cast<int>(k));
        if (k_new == k + 1) {
            ++st.appends;
            committed_cand.push_back(cand);
            const MsvaStep& s = run.steps().back();
            CHECK(s.fan.edges == cand.fan.edges);
            CHECK(s.full_path.edges == cand.path.edges);
            CHECK(s.alpha == cand.alpha);
            CHECK(s.beta == cand.beta);
            CHECK(std::equal(s.path.edges.begin(), s.path.edges.end(),
                             cand.path.edges.begin()));
        } else {
            ++st.backtracks;
            REQUIRE(k_new <= k);
            // The candidate resumes exactly as the chain that originally
            // committed step k_new, with its full-length path. k_new == k
            // means the fresh candidate collided with the step committed at
            // this very head, so the target is this head's own candidate.
            const CandidateChain& was =
                k_new == k ? cand : committed_cand[k_new];
            const CandidateChain& now = run.candidate();
            CHECK(now.fan.edges == was.fan.edges);
            CHECK(now.fan.leaves == was.fan.leaves);
            CHECK(now.path.edges == was.path.edges);
            CHECK(now.path.vend == was.path.vend);
            CHECK(now.alpha == was.alpha);
            CHECK(now.beta == was.beta);
            CHECK(now.truncated == was.truncated);
            committed_cand.resize(k_new);
        }
    }
}

}  // namespace

TEST_CASE("visited index marks owners per epoch") {
    VisitedIndex vis;
    vis.prepare(6, 5);
    for (Vertex v = 0; v < 6; ++v) CHECK(vis.owner_vertex(v) == -1);
    for (EdgeId e = 0; e < 5; ++e) CHECK(vis.owner_edge(e) == -1);

    vis.mark_vertex(3, 2);
    vis.mark_edge(1, 0);
    CHECK(vis.owner_vertex(3) == 2);
    CHECK(vis.owner_edge(1) == 0);
    CHECK(vis.owner_vertex(2) == -1);

    vis.clear_vertex(3);
    vis.clear_edge(1);
    CHECK(vis.owner_vertex(3) == -1);
    CHECK(vis.owner_edge(1) == -1);

    vis.mark_vertex(0, 7);
    vis.prepare(6, 5);  // new run: previous marks must be gone
    CHECK(vis.owner_vertex(0) == -1);

    vis.prepare(10, 12);  // growth keeps the slate clean
    vis.mark_edge(11, 3);
    CHECK(vis.owner_edge(11) == 3);
    CHECK(vis.owner_vertex(9) == -1);
}

TEST_CASE("intersection scan follows candidate element order") {
    Graph g(7, {{0, 1}, {0, 2}, {2, 3}, {3, 4}, {4, 5}});
    CandidateChain cand;
    cand.fan.pivot = 0;
    cand.fan.leaves = {1, 2};
    cand.fan.edges = {0, 1};
    cand.path.edges = {1, 2, 3, 4};
    cand.path.vstart = 0;
    cand.path.vend = 5;
    cand.alpha = 1;
    cand.beta = 2;

    VisitedIndex vis;
    vis.prepare(7, 5);
    CHECK(!check_intersection(g, cand, vis).has_value());

    vis.mark_vertex(6, 4);  // not on the chain at all
    CHECK(!check_intersection(g, cand, vis).has_value());

    vis.mark_vertex(5, 7);  // last path vertex
    CHECK(check_intersection(g, cand, vis) == 7);
    vis.mark_edge(2, 3);  // earlier path edge wins
    CHECK(check_intersection(g, cand, vis) == 3);
    vis.mark_vertex(2, 5);  // fan leaf beats the path
    CHECK(check_intersection(g, cand, vis) == 5);
    vis.mark_edge(1, 8);  // fan edge comes before its leaf
    CHECK(check_intersection(g, cand, vis) == 8);
    vis.mark_edge(0, 6);  // first fan edge beats the second
    CHECK(check_intersection(g, cand, vis) == 6);
    vis.mark_vertex(0, 9);  // pivot is scanned first of all
    CHECK(check_intersection(g, cand, vis) == 9);

    vis.clear_vertex(0);
    vis.clear_edge(0);
    vis.clear_edge(1);
    CHECK(check_intersection(g, cand, vis) == 5);

    // A trivial path means only the fan is scanned.
    CandidateChain happy;
    happy.fan.pivot = 0;
    happy.fan.leaves = {2};
    happy.fan.edges = {1};
    happy.path.edges = {1};
    happy.path.vstart = 0;
    happy.path.vend = 2;
    VisitedIndex vis2;
    vis2.prepare(7, 5);
    vis2.mark_vertex(5, 1);
    vis2.mark_edge(3, 2);
    CHECK(!check_intersection(g, happy, vis2).has_value());
}

TEST_CASE("immediate success on an empty coloring") {
    Graph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    PartialColoring phi(g);
    PartialColoring orig = phi;
    Rng rng(1);

    MsvaResult res = msva(phi, 0, 0, 4, 8, rng);
    CHECK(phi == orig);
    CHECK(res.record.outcome == MsvaOutcome::Success);
    CHECK(res.record.iterations == 1);
    CHECK(res.record.d.empty());
    CHECK(res.record.start_edge == 0);
    CHECK(res.chain.start_edge == 0);
    CHECK(res.chain.step_count() == 1);
    CHECK(res.chain.flat_edges() == std::vector<EdgeId>{0});
    CHECK(res.record.terminus_edge == 0);
    CHECK(res.record.terminus_vertex == 1);
    check_chain_augments(orig, res.chain, 0);
}

TEST_CASE("tail instance commits one step and then finishes") {
    TailInstance inst(13);  // first walk runs 14 edges, past 2l = 8
    const int l = 4;
    for (uint64_t seed = 0; seed < 8; ++seed) {
        CAPTURE(seed);
        PartialColoring phi = inst.phi;
        Rng rng(seed);
        MsvaResult res = msva(phi, 0, 0, l, 16, rng);
        CHECK(phi == inst.phi);
        CHECK(res.record.outcome == MsvaOutcome::Success);
        CHECK(res.record.iterations == 2);
        CHECK(res.record.d == std::vector<int>{1});
        REQUIRE(res.chain.step_count() == 2);

        const ChainStep& s0 = res.chain.steps[0];
        const ChainStep& s1 = res.chain.steps[1];
        CHECK(s0.fan.edges == std::vector<EdgeId>{0, 1, 2});
        CHECK(s0.path.length() >= l);
        CHECK(s0.path.length() <= 2 * l - 1);
        CHECK(s1.fan.start_edge() == s0.path.end_edge());
        CHECK(s1.fan.vstart() == s0.path.vend);
        CHECK(s1.fan.length() == 1);
        CHECK(s1.path.length() == 1);
        CHECK(res.record.terminus_edge == s1.path.end_edge());
        CHECK(non_intersecting(inst.g, res.chain.steps));
        check_chain_augments(inst.phi, res.chain, 0);

        // The committed prefix keeps original tail colors 3/1 past its
        // first edge, and the fan's end leaf touches exactly one of them.
        for (int i = 1; i < s0.path.length(); ++i) {
            Color c = inst.phi.color(s0.path.edges[i]);
            CHECK((c == 3 || c == 1));
        }
        CHECK(testutil::deg_ab(inst.phi, s0.fan.vend(), 3, 1) == 1);
    }
}

TEST_CASE("same seed reproduces the run exactly") {
    TailInstance inst(13);
    PartialColoring a = inst.phi;
    PartialColoring b = inst.phi;
    Rng ra(99), rb(99);
    MsvaResult res_a = msva(a, 0, 0, 4, 16, ra);
    MsvaResult res_b = msva(b, 0, 0, 4, 16, rb);
    CHECK(record_to_json(res_a.record) == record_to_json(res_b.record));
    CHECK(res_a.chain.flat_edges() == res_b.chain.flat_edges());
}

TEST_CASE("iteration cap restores the coloring and reports the trace") {
    // Scan blanked round-robin instances for a successful run that needed at
    // least three iterations, then replay it with smaller caps.
    std::optional<RunRecord> big;
    Graph base = make_complete_odd(15);
    PartialColoring phi = PartialColoring(base);
    EdgeId start = kNoEdge;
    Vertex x = -1;
    uint64_t run_seed = 0;

    for (uint64_t t = 0; t < 200 && !big; ++t) {
        PartialColoring cand_phi = round_robin(base, 15);
        Rng brng(t * 77 + 5);
        blank_random(cand_phi, 6, brng);
        int toggle = 0;
        for (EdgeId e = 0; e < base.edge_count() && !big; ++e) {
            if (cand_phi.is_colored(e)) continue;
            auto [u, v] = base.endpoints(e);
            Vertex px = (toggle++ % 2 == 0) ? u : v;
            PartialColoring work = cand_phi;
            Rng rng(t * 1000 + e);
            MsvaResult res = msva(work, e, px, 4, 64, rng);
            if (res.record.outcome == MsvaOutcome::Success &&
                res.record.d.size() >= 2) {
                big = res.record;
                phi = cand_phi;
                start = e;
                x = px;
                run_seed = t * 1000 + e;
            }
        }
    }
    REQUIRE(big.has_value());
    const int D = static_cast<int>(big->d.size());

    // cap = 1 stops at the first non-final head; the coloring and the trace
    // prefix come back intact, with no chain to augment.
    {
        PartialColoring work = phi;
        Rng rng(run_seed);
        MsvaResult res = msva(work, start, x, 4, 1, rng);
        CHECK(work == phi);
        CHECK(res.record.outcome == MsvaOutcome::IterationCapHit);
        CHECK(res.record.iterations == 1);
        REQUIRE(res.record.d.size() == 1);
        CHECK(res.record.d[0] == big->d[0]);
        CHECK(res.chain.step_count() == 0);
        CHECK(res.chain.flat_edges().empty());
    }

    // cap = D replays identically: the success check runs before the cap
    // check at the final head.
    {
        PartialColoring work = phi;
        Rng rng(run_seed);
        MsvaResult res = msva(work, start, x, 4, D, rng);
        CHECK(work == phi);
        CHECK(res.record.outcome == MsvaOutcome::Success);
        CHECK(record_to_json(res.record) == record_to_json(*big));
    }
}

TEST_CASE("multi step run preconditions") {
    Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
    PartialColoring phi(g);
    phi.set(1, 1);
    Rng rng(5);
    CHECK_THROWS_AS(msva(phi, 1, 1, 4, 8, rng), PreconditionViolated);
    CHECK_THROWS_AS(msva(phi, 0, 2, 4, 8, rng), PreconditionViolated);
    CHECK_THROWS_AS(msva(phi, 0, 0, 3, 8, rng), PreconditionViolated);
    CHECK_THROWS_AS(msva(phi, 0, 0, 4, 0, rng), PreconditionViolated);
}

TEST_CASE("stepwise driver keeps invariants and rolls back exactly") {
    DriveStats st;

    // Random sparse colorings: almost always happy on the spot, covering the
    // single-step fast path.
    for (uint64_t trial = 0; trial < 10; ++trial) {
        CAPTURE(trial);
        Graph g = gen_random_max_degree(26, 6, 9000 + trial);
        Rng fill_rng(31 * trial + 2);
        PartialColoring phi = testutil::make_random_partial(g, fill_rng, 0.8);
        int toggle = 0;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (phi.is_colored(e)) continue;
            auto [u, v] = g.endpoints(e);
            Vertex x = (toggle++ % 2 == 0) ? u : v;
            CAPTURE(e);
            try {
                drive_one(phi, e, x, 4, 64, trial * 313 + e, st);
            } catch (const InternalFailReached& ex) {
                FAIL("fail branch reached: ", ex.what());
            }
        }
    }
    CHECK(st.successes > 0);
    CHECK(st.backtracks == 0);  // sparse colorings never even truncate here

    // Blanked round-robin instances: long alternating paths force
    // truncation, appends, backtracks, and the occasional capped run.
    Graph kg = make_complete_odd(15);
    for (uint64_t trial = 0; trial < 40; ++trial) {
        CAPTURE(trial);
        PartialColoring phi = round_robin(kg, 15);
        Rng brng(trial * 77 + 5);
        blank_random(phi, 6, brng);
        int toggle = 0;
        for (EdgeId e = 0; e < kg.edge_count(); ++e) {
            if (phi.is_colored(e)) continue;
            auto [u, v] = kg.endpoints(e);
            Vertex x = (toggle++ % 2 == 0) ? u : v;
            CAPTURE(e);
            try {
                drive_one(phi, e, x, 4, 64, trial * 313 + e, st);
            } catch (const InternalFailReached& ex) {
                FAIL("fail branch reached: ", ex.what());
            }
        }
    }
    CHECK(st.appends > 0);
    CHECK(st.backtracks > 0);
    CHECK(st.multi_step_successes > 0);
    CHECK(st.cap_hits > 0);
}

TEST_CASE("wrapper matches a manually driven run") {
    Graph g = gen_random_max_degree(30, 5, 777);
    Rng fill_rng(12);
    PartialColoring phi = testutil::make_random_partial(g, fill_rng, 0.8);
    EdgeId start = kNoEdge;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!phi.is_colored(e)) {
            start = e;
            break;
        }
    REQUIRE(start != kNoEdge);
    Vertex x = g.endpoints(start).first;

    PartialColoring a = phi;
    Rng ra(3141);
    MsvaRun manual(a, start, x, 4, 32, ra);
    manual.run();

    PartialColoring b = phi;
    Rng rb(3141);
    MsvaResult wrapped = msva(b, start, x, 4, 32, rb);

    CHECK(record_to_json(manual.record()) == record_to_json(wrapped.record));
    CHECK(manual.chain().flat_edges() == wrapped.chain.flat_edges());
    CHECK(a == phi);
    CHECK(b == phi);
}

TEST_CASE("record summaries aggregate traces") {
    RunRecord r1;
    r1.start_edge = 0;
    r1.iterations = 1;
    RunRecord r2;
    r2.start_edge = 1;
    r2.d = {1, 1};
    r2.iterations = 3;
    RunRecord r3;
    r3.start_edge = 2;
    r3.d = {1, -1, 1, 1};
    r3.iterations = 5;

    RecordSummary s = summarize_records({r1, r2, r3}, 100, 3, 4);
    CHECK(s.runs == 3);
    CHECK(s.append_steps == 5);
    CHECK(s.backtracks == 1);
    CHECK(s.max_backtrack_depth == 1);
    CHECK(s.invalid_records == 0);
    CHECK(s.iteration_histogram == std::map<int, int64_t>{{1, 1}, {3, 1}, {5, 1}});
    CHECK(s.d_histogram == std::map<int, int64_t>{{-1, 1}, {1, 5}});
    REQUIRE(s.empirical_tail.size() == 7);
    CHECK(s.empirical_tail[0] == doctest::Approx(1.0));
    CHECK(s.empirical_tail[1] == doctest::Approx(1.0));
    CHECK(s.empirical_tail[2] == doctest::Approx(2.0 / 3.0));
    CHECK(s.empirical_tail[3] == doctest::Approx(2.0 / 3.0));
    CHECK(s.empirical_tail[4] == doctest::Approx(1.0 / 3.0));
    CHECK(s.empirical_tail[5] == doctest::Approx(1.0 / 3.0));
    CHECK(s.empirical_tail[6] == doctest::Approx(0.0));
    // 1200 * 3^15 / 4 is far above 1, so no closed-form tail is reported.
    CHECK(s.theoretical_tail.empty());

    SUBCASE("closed form tail appears once the base decays") {
        RunRecord quick;
        quick.iterations = 1;
        RecordSummary t = summarize_records({quick}, 10, 1, 2000);
        REQUIRE(t.theoretical_tail.size() == t.empirical_tail.size());
        CHECK(t.theoretical_tail[0] == doctest::Approx(40.0));
        CHECK(t.theoretical_tail[2] == doctest::Approx(40.0 * 0.6));
        CHECK(t.theoretical_tail[1] == doctest::Approx(40.0 * std::sqrt(0.6)));
    }

    SUBCASE("contract violations are flagged") {
        RunRecord bad1;
        bad1.d = {2};
        bad1.iterations = 2;
        RunRecord bad2;
        bad2.d = {-1};
        bad2.iterations = 2;
        RunRecord bad3;
        bad3.d = {1, -2};
        bad3.iterations = 3;
        RecordSummary t = summarize_records({bad1, bad2, bad3, r2}, 10, 3, 4);
        CHECK(t.invalid_records == 3);
        CHECK(t.runs == 4);
    }
}

TEST_CASE("records serialize to json lines") {
    RunRecord r;
    r.start_edge = 7;
    r.d = {1, -1, 1};
    r.terminus_edge = 9;
    r.terminus_vertex = 5;
    r.iterations = 4;
    r.outcome = MsvaOutcome::Success;

    nlohmann::json j = nlohmann::json::parse(record_to_json(r));
    CHECK(j["edge"] == 7);
    CHECK(j["iterations"] == 4);
    CHECK(j["d"] == nlohmann::json::array({1, -1, 1}));
    CHECK(j["outcome"] == "success");

    r.outcome = MsvaOutcome::IterationCapHit;
    nlohmann::json j2 = nlohmann::json::parse(record_to_json(r));
    CHECK(j2["outcome"] == "cap_hit");
}
