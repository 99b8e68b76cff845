#ifndef VIZING_COLORING_HPP
#define VIZING_COLORING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vizing/chain.hpp"
#include "vizing/errors.hpp"
#include "vizing/graph.hpp"

namespace vizing {

// Proper partial edge coloring with the slot inverse index and per-vertex
// missing-color bitsets. Colors are 1..palette() where palette() is
// max(maxdeg, 2) + 1; kBlank (0) marks uncolored edges. Single writer;
// copyable for frozen snapshots.
class PartialColoring {
public:
    explicit PartialColoring(const Graph& g);

    // Wider palette for algorithms that trade colors for speed (the greedy
    // baseline needs up to 2*maxdeg - 1). Throws InfeasibleParameters below
    // the max(maxdeg, 2) + 1 floor.
    PartialColoring(const Graph& g, int palette);

    const Graph& graph() const { return *g_; }
    int palette() const { return palette_; }
    int64_t uncolored_count() const { return uncolored_; }

    Color color(EdgeId e) const { return colors_[e]; }
    bool is_colored(EdgeId e) const { return colors_[e] != kBlank; }

    // Edge carrying color c at vertex x, or kNoEdge.
    EdgeId slot(Vertex x, Color c) const {
        return slots_[static_cast<size_t>(x) * palette_ + (c - 1)];
    }

    bool missing(Vertex x, Color c) const {
        return (missing_[static_cast<size_t>(x) * words_ + (c - 1) / 64] >>
                ((c - 1) % 64)) & 1u;
    }

    // Low-level proper assignment: e must be blank and c free at both
    // endpoints. Throws Error on misuse; the chain operations below are the
    // intended mutators.
    void set(EdgeId e, Color c);
    void clear(EdgeId e);

    // Debug backdoor: writes the color array only, skipping slot/missing
    // bookkeeping, so validate() can be exercised on corrupt states. Never
    // used by the algorithms.
    void poke_color_unchecked(EdgeId e, Color c) { colors_[e] = c; }

    bool operator==(const PartialColoring& o) const {
        return colors_ == o.colors_;
    }

private:
    const Graph* g_;
    int palette_;
    int words_;  // 64-bit words per vertex in missing_
    std::vector<Color> colors_;
    std::vector<EdgeId> slots_;
    std::vector<uint64_t> missing_;
    int64_t uncolored_;

    friend Color missing_min(const PartialColoring&, Vertex, Color);
    friend Color common_missing_min(const PartialColoring&, Vertex, Vertex);
};

// Smallest color in M(phi,x), skipping `exclude` if nonzero. Throws
// EmptyMissingSet only when exclude removes the sole element.
Color missing_min(const PartialColoring& phi, Vertex x, Color exclude = kBlank);

// Smallest color missing at both x and y, or kBlank if none.
Color common_missing_min(const PartialColoring& phi, Vertex x, Vertex y);

// Moves the color from e1 onto the blank edge e0 (adjacent at a shared
// vertex); e1 becomes blank. Requires phi(e1) missing at the non-shared
// endpoint of e0. Throws NotShiftable (step -1) otherwise; phi unchanged on
// failure.
void shift_pair(PartialColoring& phi, EdgeId e0, EdgeId e1);

// Iterated shift along the chain; the blank moves from the first edge to the
// last. Throws NotShiftable reporting the failing step and restores phi.
void shift_chain(PartialColoring& phi, const std::vector<EdgeId>& chain);

// Undo helper: shifting the reversed chain restores the pre-shift coloring.
std::vector<EdgeId> reversed(const std::vector<EdgeId>& chain);

// Shift the chain, then color its last edge with the smallest color missing
// at both endpoints. Throws NotHappy (restoring phi) if no common missing
// color exists after the shift. Returns the assigned color.
Color augment(PartialColoring& phi, const std::vector<EdgeId>& chain);

struct WalkResult {
    PathChain path;
    bool truncated = false;
};

// P(e; phi, ab): start_edge followed by the maximal alternating alpha/beta
// path out of from_vertex (first edge colored alpha), truncated to at most
// cap edges total. from_vertex must have alpha/beta-degree < 2
// (DegreeTwoStart otherwise).
WalkResult walk_alternating(const PartialColoring& phi, EdgeId start_edge,
                            Vertex from_vertex, Color alpha, Color beta,
                            int cap);

struct Violation {
    enum Kind { AdjacentSameColor, ColorOutOfRange, SlotDesync };
    Kind kind;
    EdgeId e = kNoEdge;
    EdgeId f = kNoEdge;
    Vertex x = -1;
    Color c = kBlank;
};

struct ValidationReport {
    std::vector<Violation> violations;
    int64_t uncolored = 0;
    Color max_color_used = 0;
    bool ok() const { return violations.empty(); }
};

// Full scan against the graph; violations are data, not exceptions.
ValidationReport validate(const Graph& g, const PartialColoring& phi);

// Text round-trip: one line per edge, "edge_id color" or "edge_id -".
std::string coloring_to_text(const PartialColoring& phi);
PartialColoring coloring_from_text(const Graph& g, const std::string& text);

}  // namespace vizing

#endif
