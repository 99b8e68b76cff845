#include "vizing/fan.hpp"

#include <cassert>
#include <string>

namespace vizing {

void FanScratch::prepare(Vertex n, int palette) {
    if (static_cast<size_t>(palette + 1) > nbr_epoch_.size()) {
        nbr_vertex_.resize(palette + 1);
        nbr_edge_.resize(palette + 1);
        nbr_epoch_.resize(palette + 1, 0);
    }
    if (static_cast<size_t>(n) > index_epoch_.size()) {
        index_.resize(n);
        index_epoch_.resize(n, 0);
    }
    if (++epoch_ == 0) {  // stamp wraparound: start a fresh epoch space
        std::fill(nbr_epoch_.begin(), nbr_epoch_.end(), 0u);
        std::fill(index_epoch_.begin(), index_epoch_.end(), 0u);
        epoch_ = 1;
    }
}

namespace {

// Shared fan walk. next_fan differs from first_fan in two places: the very
// first candidate color skips `beta`, and a candidate equal to `beta` ends
// the fan on the spot. Passing beta = kBlank gives first_fan.
FanResult build_fan(const PartialColoring& phi, EdgeId e, Vertex x, Color beta,
                    FanScratch& scratch) {
    const Graph& g = phi.graph();
    assert(!phi.is_colored(e));
    assert(g.has_endpoint(e, x));

    scratch.prepare(g.vertex_count(), phi.palette());
    for (const Adjacency* a = g.adj_begin(x); a != g.adj_end(x); ++a) {
        Color c = phi.color(a->edge);
        if (c != kBlank) scratch.set_nbr(c, a->neighbor, a->edge);
    }

    Vertex y = g.other_end(e, x);
    FanResult out;
    out.fan.pivot = x;
    out.fan.leaves.push_back(y);
    out.fan.edges.push_back(e);
    scratch.set_index(y, 0);

    Vertex z = y;
    int k = 0;
    const int deg_x = g.degree(x);
    while (k < deg_x) {
        // candidate color of the current end leaf; only delta(y) skips beta
        Color eta = (z == y && beta != kBlank) ? missing_min(phi, z, beta)
                                               : missing_min(phi, z);
        if (phi.missing(x, eta)) {
            out.color = eta;
            out.index = k + 1;
            return out;
        }
        if (beta != kBlank && eta == beta) {
            out.color = eta;
            out.index = k + 1;
            return out;
        }
        if (!scratch.has_nbr(eta))
            throw InternalInvariantViolation(
                "fan walk: color " + std::to_string(eta) +
                " neither missing nor present at pivot " + std::to_string(x));
        Vertex next = scratch.nbr_vertex(eta);
        EdgeId next_edge = scratch.nbr_edge(eta);
        if (scratch.has_index(next)) {
            out.color = eta;
            out.index = scratch.index(next);
            return out;
        }
        ++k;
        scratch.set_index(next, k);
        out.fan.leaves.push_back(next);
        out.fan.edges.push_back(next_edge);
        z = next;
    }
    // the termination lemmas rule this out for every proper input
    throw InternalInvariantViolation("fan walk exhausted deg(x) iterations");
}

}  // namespace

FanResult first_fan(const PartialColoring& phi, EdgeId e, Vertex x,
                    FanScratch& scratch) {
    return build_fan(phi, e, x, kBlank, scratch);
}

FanResult next_fan(const PartialColoring& phi, EdgeId e, Vertex x, Color beta,
                   FanScratch& scratch) {
    Vertex y = phi.graph().other_end(e, x);
    if (beta == kBlank || !phi.missing(y, beta))
        throw PreconditionViolated("next fan: color " + std::to_string(beta) +
                                   " is not missing at vertex " +
                                   std::to_string(y));
    return build_fan(phi, e, x, beta, scratch);
}

}  // namespace vizing
