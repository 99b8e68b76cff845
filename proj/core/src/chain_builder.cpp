#include "vizing/chain_builder.hpp"

#include <limits>

#include "vizing/errors.hpp"

namespace vizing {

namespace {

// P(End(fan); Shift(phi,fan), first/second): shift the fan, walk the
// alternating path off its end leaf, then undo the shift. phi comes back
// bit-exact even if the walk throws.
WalkResult walk_from_fan(PartialColoring& phi, const Fan& fan, Color first,
                         Color second, int cap) {
    shift_chain(phi, fan.edges);
    WalkResult w;
    try {
        w = walk_alternating(phi, fan.end_edge(), fan.vend(), first, second,
                             cap);
    } catch (...) {
        shift_chain(phi, reversed(fan.edges));
        throw;
    }
    shift_chain(phi, reversed(fan.edges));
    return w;
}

CandidateChain happy_candidate(Fan fan, Color color, Vertex pivot) {
    CandidateChain c;
    c.path.edges = {fan.end_edge()};
    c.path.vstart = pivot;
    c.path.vend = fan.vend();
    c.fan = std::move(fan);
    c.alpha = kBlank;
    c.beta = color;
    return c;
}

}  // namespace

CandidateChain vizing_chain(PartialColoring& phi, EdgeId e, Vertex x, Rng& rng,
                            FanScratch& scratch) {
    FanResult fr = first_fan(phi, e, x, scratch);
    if (phi.missing(x, fr.color)) return happy_candidate(fr.fan, fr.color, x);

    std::vector<Color> pool;
    for (Color c = 1; c <= phi.palette(); ++c)
        if (phi.missing(x, c)) pool.push_back(c);
    Color alpha = pool[static_cast<size_t>(rng.below(pool.size()))];

    const int cap = std::numeric_limits<int>::max();
    WalkResult wp = walk_from_fan(phi, fr.fan, alpha, fr.color, cap);
    if (wp.path.vend != x)
        return {fr.fan, wp.path, alpha, fr.color, false};

    Fan fprime = fr.fan.prefix(fr.index);
    WalkResult wq = walk_from_fan(phi, fprime, alpha, fr.color, cap);
    return {std::move(fprime), wq.path, alpha, fr.color, false};
}

CandidateChain first_chain(PartialColoring& phi, EdgeId e, Vertex x, int l,
                           FanScratch& scratch) {
    if (l < 4) throw PreconditionViolated("first_chain: step length l must be >= 4");

    FanResult fr = first_fan(phi, e, x, scratch);
    if (phi.missing(x, fr.color)) return happy_candidate(fr.fan, fr.color, x);

    Color alpha = missing_min(phi, x);
    WalkResult wp = walk_from_fan(phi, fr.fan, alpha, fr.color, 2 * l);
    if (wp.truncated || wp.path.vend != x)
        return {fr.fan, wp.path, alpha, fr.color, wp.truncated};

    Fan fprime = fr.fan.prefix(fr.index);
    WalkResult wq = walk_from_fan(phi, fprime, alpha, fr.color, 2 * l);
    return {std::move(fprime), wq.path, alpha, fr.color, wq.truncated};
}

CandidateChain next_chain(PartialColoring& phi, EdgeId e, Vertex x,
                          Color alpha, Color beta, int l, FanScratch& scratch) {
    if (l < 4) throw PreconditionViolated("next_chain: step length l must be >= 4");
    auto ends = phi.graph().endpoints(e);
    Vertex y = (ends.first == x) ? ends.second : ends.first;
    if (!phi.missing(x, alpha) || phi.missing(y, alpha))
        throw PreconditionViolated(
            "next_chain: alpha must be missing at the pivot and present at the "
            "other endpoint");
    if (!phi.missing(y, beta))
        throw PreconditionViolated("next_chain: beta must be missing at the non-pivot endpoint");

    FanResult fr = next_fan(phi, e, x, beta, scratch);
    for (size_t i = 0; i < fr.fan.edges.size(); ++i) {
        Color c = phi.color(fr.fan.edges[i]);
        if (c == alpha || c == beta)
            throw InternalInvariantViolation(
                "next_chain: fan picked up an edge colored alpha or beta");
    }

    if (phi.missing(x, fr.color)) return happy_candidate(fr.fan, fr.color, x);

    if (fr.color == beta) {
        // The fan ends where the old pair is still usable: walk alpha-beta
        // and keep the full fan regardless of where the path lands.
        WalkResult wp = walk_from_fan(phi, fr.fan, alpha, beta, 2 * l);
        return {fr.fan, wp.path, alpha, beta, wp.truncated};
    }

    Color gamma = missing_min(phi, x, alpha);
    WalkResult wp = walk_from_fan(phi, fr.fan, gamma, fr.color, 2 * l);
    if (wp.truncated || wp.path.vend != x)
        return {fr.fan, wp.path, gamma, fr.color, wp.truncated};

    Fan fprime = fr.fan.prefix(fr.index);
    WalkResult wq = walk_from_fan(phi, fprime, gamma, fr.color, 2 * l);
    return {std::move(fprime), wq.path, gamma, fr.color, wq.truncated};
}

}  // namespace vizing
