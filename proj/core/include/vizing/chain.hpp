#ifndef VIZING_CHAIN_HPP
#define VIZING_CHAIN_HPP

#include <cassert>
#include <vector>

#include "vizing/graph.hpp"

namespace vizing {

// Fan around a pivot: edges pivot-y0, pivot-y1, ... with distinct leaves.
// When used as a shiftable chain the first edge is the uncolored one.
struct Fan {
    Vertex pivot = -1;
    std::vector<Vertex> leaves;
    std::vector<EdgeId> edges;

    int length() const { return static_cast<int>(edges.size()); }
    EdgeId start_edge() const { return edges.front(); }
    EdgeId end_edge() const { return edges.back(); }
    Vertex vstart() const { return leaves.front(); }
    Vertex vend() const { return leaves.back(); }

    // Initial segment with the first j edges (j >= 1).
    Fan prefix(int j) const {
        assert(j >= 1 && j <= length());
        Fan f;
        f.pivot = pivot;
        f.leaves.assign(leaves.begin(), leaves.begin() + j);
        f.edges.assign(edges.begin(), edges.begin() + j);
        return f;
    }
};

// Path chain (e0, ..., e_{k-1}): e1.. form a simple path; e0 hangs off its
// first vertex. vstart/vend are the free endpoints of the first/last edge
// (for a single edge they record the orientation the walk was built with:
// vend is where the walk stopped or would continue).
struct PathChain {
    std::vector<EdgeId> edges;
    Vertex vstart = -1;
    Vertex vend = -1;

    int length() const { return static_cast<int>(edges.size()); }
    EdgeId start_edge() const { return edges.front(); }
    EdgeId end_edge() const { return edges.back(); }

    // Initial segment with the first j edges (j >= 1). For a proper prefix
    // the new vend is the vertex the cut happened at, i.e. where edge j-1
    // meets edge j.
    PathChain prefix(const Graph& g, int j) const {
        assert(j >= 1 && j <= length());
        if (j == length()) return *this;
        PathChain p;
        p.edges.assign(edges.begin(), edges.begin() + j);
        p.vstart = vstart;
        auto shared = g.shared_vertex(edges[j - 1], edges[j]);
        assert(shared.has_value());
        p.vend = *shared;
        return p;
    }
};

// Vizing chain F + P: the fan's last edge and the path's first edge are the
// same edge, so the flat edge sequence merges them.
inline std::vector<EdgeId> flatten_step(const Fan& fan, const PathChain& path) {
    assert(path.edges.empty() || fan.end_edge() == path.start_edge());
    std::vector<EdgeId> flat(fan.edges);
    if (path.length() > 1)
        flat.insert(flat.end(), path.edges.begin() + 1, path.edges.end());
    return flat;
}

// Vertices of a fan: pivot plus leaves.
inline std::vector<Vertex> fan_vertices(const Fan& fan) {
    std::vector<Vertex> vs;
    vs.reserve(fan.leaves.size() + 1);
    vs.push_back(fan.pivot);
    vs.insert(vs.end(), fan.leaves.begin(), fan.leaves.end());
    return vs;
}

// Internal edges of a path chain: everything except Start(P) and End(P).
inline std::vector<EdgeId> path_internal_edges(const PathChain& path) {
    if (path.length() <= 2) return {};
    return {path.edges.begin() + 1, path.edges.end() - 1};
}

// Multi-step chain F0+P0+...+F_{k-1}+P_{k-1}. Links: vEnd(P_i) = vStart(F_{i+1})
// and End(P_i) = Start(F_{i+1}) as edges, so the next pivot is the other
// endpoint of the boundary edge.
struct ChainStep {
    Fan fan;
    PathChain path;
};

struct MultiStepChain {
    std::vector<ChainStep> steps;
    EdgeId start_edge = kNoEdge;

    int step_count() const { return static_cast<int>(steps.size()); }

    // Flat shiftable edge sequence: consecutive steps share their boundary
    // edge (End(P_i) = Start(F_{i+1})), merged once.
    std::vector<EdgeId> flat_edges() const {
        std::vector<EdgeId> flat;
        for (size_t i = 0; i < steps.size(); ++i) {
            auto part = flatten_step(steps[i].fan, steps[i].path);
            size_t skip = 0;
            if (!flat.empty()) {
                assert(!part.empty() && part.front() == flat.back());
                skip = 1;
            }
            flat.insert(flat.end(), part.begin() + skip, part.end());
        }
        return flat;
    }
};

}  // namespace vizing

#endif
