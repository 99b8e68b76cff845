#ifndef VIZING_LOCAL_SIM_HPP
#define VIZING_LOCAL_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vizing/msva.hpp"

namespace vizing {

// Conflict graph over the chains that succeeded in a stage: vertex i stands
// for the i-th succeeded edge, and two vertices are adjacent when their
// chains share a graph vertex.
struct ConflictGraph {
    std::vector<std::vector<int>> adj;
    int64_t edge_count = 0;

    int64_t vertex_count() const { return static_cast<int64_t>(adj.size()); }
    double mean_degree() const {
        return adj.empty() ? 0.0
                           : 2.0 * static_cast<double>(edge_count) /
                                 static_cast<double>(adj.size());
    }
};

// One round of the classic random-priority independent set: each vertex
// draws x_v ~ U(0,1) and joins W when it beats every neighbor. Ties break by
// (value, vertex id), so equal draws cannot admit both endpoints. Isolated
// vertices always join.
std::vector<int> random_independent_set(const ConflictGraph& gamma,
                                        uint64_t seed);

// Everything one stage computed, kept for audits and statistics. The chains
// were all built against `snapshot`; `winners` indexes into `succeeded` /
// `chains`.
struct StageState {
    PartialColoring snapshot;
    std::vector<EdgeId> uncolored;       // U at stage start, ascending ids
    std::vector<RunRecord> records;      // one per uncolored edge, same order
    std::vector<EdgeId> succeeded;       // S: edges whose run found a chain
    std::vector<MultiStepChain> chains;  // parallel to succeeded
    ConflictGraph gamma;
    std::vector<int> winners;  // W: indices into succeeded, ascending
    int64_t rounds_charged = 0;
};

// One synchronous stage: every uncolored edge runs the multi-step search
// against the frozen snapshot on its own substream for at most t iterations;
// an independent set of the non-conflicting successes is augmented
// simultaneously. phi advances in place; the returned state describes what
// happened. Throws SnapshotViolation if the winning chains fail the
// pairwise vertex-disjointness audit.
StageState stage(PartialColoring& phi, int l, int t, uint64_t seed,
                 int stage_index = 0);

struct StageTraceRow {
    int stage = 0;
    int64_t uncolored = 0;  // |U| entering the stage
    int64_t succeeded = 0;  // |S|
    int64_t winners = 0;    // |W|
    int64_t gamma_edges = 0;
    double mean_conflict_degree = 0.0;
    int64_t rounds_charged = 0;
};

std::string stage_trace_to_json(const StageTraceRow& row);

struct DistResult {
    PartialColoring phi;
    std::vector<StageTraceRow> trace;
    int64_t total_rounds = 0;
    // Stage cap ran out with edges left; reported rather than thrown so
    // experiment harnesses can inspect partial progress.
    bool stage_cap_exceeded = false;
    std::vector<EdgeId> residual_uncolored;
};

// Runs stages from the empty coloring until every edge is colored or
// stage_cap stages have passed.
DistResult run_distributed(const Graph& g, int l, int t, int stage_cap,
                           uint64_t seed);

}  // namespace vizing

#endif
