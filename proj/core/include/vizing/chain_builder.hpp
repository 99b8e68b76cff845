#ifndef VIZING_CHAIN_BUILDER_HPP
#define VIZING_CHAIN_BUILDER_HPP

#include "vizing/chain.hpp"
#include "vizing/coloring.hpp"
#include "vizing/fan.hpp"
#include "vizing/rng.hpp"

namespace vizing {

// A fan plus the alternating path hanging off its end leaf. The path's first
// edge is the fan's last edge (they merge when flattened), and the path
// starts at the pivot: Start(path) = End(fan), vStart(path) = Pivot(fan).
// alpha is the walk color missing at the pivot, beta the one missing at the
// fan's end leaf; alpha == kBlank marks a happy fan (no walk happened, the
// chain augments as is).
struct CandidateChain {
    Fan fan;
    PathChain path;
    Color alpha = kBlank;
    Color beta = kBlank;
    bool truncated = false;  // the walk hit the 2l cap with path left over

    bool happy_fan() const { return alpha == kBlank; }
    std::vector<EdgeId> flat() const { return flatten_step(fan, path); }
};

// The three builders shift phi internally to walk paths in the shifted
// coloring, and always restore it bit-exact before returning.

// Full Vizing chain for the sequential colorer: fan plus complete
// (uncapped) alternating path, with the path color drawn uniformly from the
// pivot's missing set. The result is always phi-happy.
CandidateChain vizing_chain(PartialColoring& phi, EdgeId e, Vertex x, Rng& rng,
                            FanScratch& scratch);

// First chain of a multi-step run: deterministic alpha = min M(phi,x), path
// capped at 2l edges. Returns the full fan with its path when that path is
// long or escapes the pivot, otherwise the fan prefix with its own path.
CandidateChain first_chain(PartialColoring& phi, EdgeId e, Vertex x, int l,
                           FanScratch& scratch);

// Later chains of a multi-step run. alpha/beta are the previous path's
// colors at the new pivot: alpha missing at x but present at y, beta missing
// at y. The returned walk colors are {alpha,beta} when the fan ends on beta,
// otherwise a fresh pair (gamma, delta) disjoint from {alpha,beta}; no fan
// edge is colored alpha or beta. Throws PreconditionViolated on bad colors.
CandidateChain next_chain(PartialColoring& phi, EdgeId e, Vertex x,
                          Color alpha, Color beta, int l, FanScratch& scratch);

}  // namespace vizing

#endif
