#ifndef VIZING_SEQUENTIAL_HPP
#define VIZING_SEQUENTIAL_HPP

#include <cstdint>
#include <vector>

#include "vizing/msva.hpp"

namespace vizing {

// Run statistics for the end-to-end colorers. wall_ns stays 0 unless the
// caller asked for timing; path_lengths is per-iteration and only filled by
// the chain-based colorers.
struct SeqStats {
    Vertex n = 0;
    EdgeId m = 0;
    int delta = 0;
    int ell = 0;  // 0 for colorers without a truncation parameter
    uint64_t seed = 0;
    int64_t total_iterations = 0;
    int64_t restarts = 0;  // capped runs absorbed by retrying the edge
    int64_t wall_ns = 0;
    std::vector<int64_t> per_color_histogram;  // [c-1] = edges colored c
    std::vector<int> path_lengths;  // chain path length per outer iteration
};

std::string seq_stats_to_json(const SeqStats& stats);

// Baseline: color edges in id order with the smallest color free at both
// endpoints. Uses at most 2*maxdeg - 1 colors, so the palette is widened
// beyond the usual maxdeg + 1 when needed.
PartialColoring color_greedy(const Graph& g);

struct ColorResult {
    PartialColoring phi;
    SeqStats stats;
    std::vector<RunRecord> records;  // msva colorer only, one per attempt
};

// Repeatedly picks an uncolored edge and an endpoint uniformly at random,
// builds a full Vizing chain there, and augments. Total coloring in
// maxdeg + 1 colors. audit revalidates the whole coloring after every
// augmentation (slow; debugging only).
ColorResult color_vizing(const Graph& g, uint64_t seed, bool timed = false,
                         bool audit = false);

// Same driver with multi-step chains truncated at l. Capped runs leave the
// coloring untouched and the edge is retried on a fresh substream; every
// attempt's record is kept for later aggregation. audit additionally checks
// the chain-linkage and path invariants at every search iteration and
// revalidates after every augmentation (slow; debugging only).
ColorResult color_msva(const Graph& g, int l, uint64_t seed,
                       bool timed = false, bool audit = false);

}  // namespace vizing

#endif
