#ifndef VIZING_FAN_HPP
#define VIZING_FAN_HPP

#include <cstdint>
#include <vector>

#include "vizing/chain.hpp"
#include "vizing/coloring.hpp"

namespace vizing {

// Reusable scratch for the fan builders: color->neighbor map and per-vertex
// fan index, reset by epoch stamps instead of reallocation since these run
// once per colored edge.
class FanScratch {
public:
    void prepare(Vertex n, int palette);

    void set_nbr(Color c, Vertex v, EdgeId e) {
        nbr_vertex_[c] = v;
        nbr_edge_[c] = e;
        nbr_epoch_[c] = epoch_;
    }
    bool has_nbr(Color c) const { return nbr_epoch_[c] == epoch_; }
    Vertex nbr_vertex(Color c) const { return nbr_vertex_[c]; }
    EdgeId nbr_edge(Color c) const { return nbr_edge_[c]; }

    void set_index(Vertex v, int i) {
        index_[v] = i;
        index_epoch_[v] = epoch_;
    }
    bool has_index(Vertex v) const { return index_epoch_[v] == epoch_; }
    int index(Vertex v) const { return index_[v]; }

private:
    std::vector<Vertex> nbr_vertex_;
    std::vector<EdgeId> nbr_edge_;
    std::vector<uint32_t> nbr_epoch_;
    std::vector<int> index_;
    std::vector<uint32_t> index_epoch_;
    uint32_t epoch_ = 0;
};

struct FanResult {
    Fan fan;
    Color color = kBlank;  // the beta/delta the fan ends on
    int index = 0;         // j with color missing at vEnd(F) and vEnd(F|j)
};

// Builds the first fan around pivot x starting at the uncolored edge e.
// Either color is missing at x and the fan is happy, or for F' = F|j and any
// alpha missing at x, one of F, F' extends to a successful chain.
FanResult first_fan(const PartialColoring& phi, EdgeId e, Vertex x,
                    FanScratch& scratch);

// Fan for the next step of a multi-step chain: like first_fan but the end
// leaf's candidate color skips beta, and a leaf whose smallest missing color
// IS beta ends the fan immediately (color = beta). No fan edge is colored
// alpha or beta for any alpha in M(phi,x)\M(phi,y). Throws
// PreconditionViolated when beta is not missing at y.
FanResult next_fan(const PartialColoring& phi, EdgeId e, Vertex x, Color beta,
                   FanScratch& scratch);

}  // namespace vizing

#endif
