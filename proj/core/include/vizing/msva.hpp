#ifndef VIZING_MSVA_HPP
#define VIZING_MSVA_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vizing/chain_builder.hpp"

namespace vizing {

// Marks fan vertices and interior path edges of the active steps, each with
// the step index that owns it. Epoch stamps make per-call reset O(1).
class VisitedIndex {
public:
    void prepare(Vertex n, EdgeId m);
    void mark_vertex(Vertex v, int step);
    void mark_edge(EdgeId e, int step);
    void clear_vertex(Vertex v);
    void clear_edge(EdgeId e);
    int owner_vertex(Vertex v) const;  // -1 when unmarked
    int owner_edge(EdgeId e) const;

private:
    std::vector<uint32_t> vertex_epoch_;
    std::vector<uint32_t> edge_epoch_;
    std::vector<int> vertex_owner_;
    std::vector<int> edge_owner_;
    uint32_t epoch_ = 0;
};

// Walks the candidate's elements in their natural order (pivot, then each
// fan edge and leaf, then each path edge and vertex) and returns the owning
// step of the first marked element, or nothing if the candidate is disjoint
// from everything marked.
std::optional<int> check_intersection(const Graph& g,
                                      const CandidateChain& cand,
                                      const VisitedIndex& visited);

// Reusable working storage for runs. A fresh one works but pays an O(n + m)
// allocation on its first use, so drivers that call msva once per edge must
// reuse one instance or the whole pass turns quadratic.
struct MsvaScratch {
    FanScratch fans;
    VisitedIndex visited;
};

enum class MsvaOutcome { Success, IterationCapHit };

// Trace of one multi-step run: d has one entry per working iteration (+1 for
// an append, j-k <= 0 for a backtrack to step j), so every prefix sum equals
// the step count at that moment and stays nonnegative.
struct RunRecord {
    EdgeId start_edge = kNoEdge;
    std::vector<int> d;
    EdgeId terminus_edge = kNoEdge;
    Vertex terminus_vertex = -1;
    int iterations = 0;
    MsvaOutcome outcome = MsvaOutcome::Success;
};

// One committed step of the chain under construction. path is the random
// initial segment actually shifted; full_path is the whole walk it was cut
// from, kept so a backtrack can resume the step with its original candidate.
struct MsvaStep {
    Fan fan;
    PathChain path;
    PathChain full_path;
    Color alpha = kBlank;
    Color beta = kBlank;
    bool full_truncated = false;
};

// The multi-step run as an inspectable state machine. The coloring is
// shifted in place while the chain grows and is restored bit-exact before
// the run finishes, whatever the outcome.
class MsvaRun {
public:
    MsvaRun(PartialColoring& phi, EdgeId e, Vertex x, int l, int cap,
            Rng& rng);
    // Same, but borrowing caller-owned scratch (must outlive the run).
    MsvaRun(PartialColoring& phi, EdgeId e, Vertex x, int l, int cap,
            Rng& rng, MsvaScratch& scratch);

    // Executes one loop iteration. Returns the outcome once the run is over.
    std::optional<MsvaOutcome> step();
    MsvaOutcome run();

    const std::vector<MsvaStep>& steps() const { return steps_; }
    const CandidateChain& candidate() const { return candidate_; }
    const VisitedIndex& visited() const { return scratch_->visited; }
    const RunRecord& record() const { return record_; }
    // Populated once the run returns an outcome.
    const MultiStepChain& chain() const { return chain_; }

private:
    void init();
    void commit_current_step(int lprime);
    void rollback_steps(size_t j);
    std::optional<MsvaOutcome> finish_success();
    MsvaOutcome finish_cap_hit();

    PartialColoring& phi_;
    const Graph& g_;
    EdgeId start_edge_;
    Vertex start_vertex_;
    int l_;
    int cap_;
    Rng& rng_;
    std::unique_ptr<MsvaScratch> owned_scratch_;  // only for the borrowless ctor
    MsvaScratch* scratch_;
    std::vector<MsvaStep> steps_;
    CandidateChain candidate_;
    Color carry_beta_ = kBlank;  // pre-shift color of the last cut edge
    RunRecord record_;
    MultiStepChain chain_;
    bool done_ = false;
};

struct MsvaResult {
    MultiStepChain chain;  // empty when the iteration cap was hit
    RunRecord record;
};

// Runs the full algorithm. On Success the returned chain is happy for the
// coloring as passed in; phi itself always comes back unmodified, so the
// caller decides when to augment. Batch callers should pass a shared scratch.
MsvaResult msva(PartialColoring& phi, EdgeId e, Vertex x, int l, int cap,
                Rng& rng);
MsvaResult msva(PartialColoring& phi, EdgeId e, Vertex x, int l, int cap,
                Rng& rng, MsvaScratch& scratch);

// Default truncation length: theory wants an enormous l, but small values
// terminate fast in practice and properness never depends on l.
inline int default_ell(int delta) { return std::max(16, 4 * delta * delta); }

// Default iteration cap before the caller restarts with fresh randomness.
inline int default_cap(Vertex n) {
    int lg = 0;
    while ((int64_t{1} << (lg + 1)) <= std::max<int64_t>(n, 1)) ++lg;
    return 64 * (1 + lg);
}

// Aggregate statistics over a batch of run records. m, delta, and l describe
// the instance the records came from; the closed-form tail is only filled in
// when l is large enough to make it decay.
struct RecordSummary {
    int64_t runs = 0;
    int64_t append_steps = 0;
    int64_t backtracks = 0;
    int max_backtrack_depth = 0;
    int64_t invalid_records = 0;  // prefix-sum or d-value contract violations
    std::map<int, int64_t> iteration_histogram;
    std::map<int, int64_t> d_histogram;
    std::vector<double> empirical_tail;    // index t: fraction with iterations >= t
    std::vector<double> theoretical_tail;  // 4m * (1200 Delta^15 / l)^(t/2)
};

RecordSummary summarize_records(const std::vector<RunRecord>& rs, int64_t m,
                                int delta, int l);

std::string record_to_json(const RunRecord& r);

}  // namespace vizing

#endif
