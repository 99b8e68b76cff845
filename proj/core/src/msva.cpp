#include "vizing/msva.hpp"

#include <algorithm>
#include <string>

#include "vizing/errors.hpp"

namespace vizing {

void VisitedIndex::prepare(Vertex n, EdgeId m) {
    ++epoch_;
    if (epoch_ == 0) {
        std::fill(vertex_epoch_.begin(), vertex_epoch_.end(), 0u);
        std::fill(edge_epoch_.begin(), edge_epoch_.end(), 0u);
        epoch_ = 1;
    }
    if (vertex_epoch_.size() < static_cast<size_t>(n)) {
        vertex_epoch_.resize(n, 0u);
        vertex_owner_.resize(n, -1);
    }
    if (edge_epoch_.size() < static_cast<size_t>(m)) {
        edge_epoch_.resize(m, 0u);
        edge_owner_.resize(m, -1);
    }
}

void VisitedIndex::mark_vertex(Vertex v, int step) {
    vertex_epoch_[v] = epoch_;
    vertex_owner_[v] = step;
}

void VisitedIndex::mark_edge(EdgeId e, int step) {
    edge_epoch_[e] = epoch_;
    edge_owner_[e] = step;
}

void VisitedIndex::clear_vertex(Vertex v) { vertex_epoch_[v] = 0; }

void VisitedIndex::clear_edge(EdgeId e) { edge_epoch_[e] = 0; }

int VisitedIndex::owner_vertex(Vertex v) const {
    return vertex_epoch_[v] == epoch_ ? vertex_owner_[v] : -1;
}

int VisitedIndex::owner_edge(EdgeId e) const {
    return edge_epoch_[e] == epoch_ ? edge_owner_[e] : -1;
}

std::optional<int> check_intersection(const Graph& g,
                                      const CandidateChain& cand,
                                      const VisitedIndex& visited) {
    int o = visited.owner_vertex(cand.fan.pivot);
    if (o >= 0) return o;
    for (size_t i = 0; i < cand.fan.edges.size(); ++i) {
        o = visited.owner_edge(cand.fan.edges[i]);
        if (o >= 0) return o;
        o = visited.owner_vertex(cand.fan.leaves[i]);
        if (o >= 0) return o;
    }
    Vertex cur = cand.fan.vend();
    for (int i = 1; i < cand.path.length(); ++i) {
        EdgeId e = cand.path.edges[i];
        o = visited.owner_edge(e);
        if (o >= 0) return o;
        cur = g.other_end(e, cur);
        o = visited.owner_vertex(cur);
        if (o >= 0) return o;
    }
    return std::nullopt;
}

MsvaRun::MsvaRun(PartialColoring& phi, EdgeId e, Vertex x, int l, int cap,
                 Rng& rng)
    : phi_(phi),
      g_(phi.graph()),
      start_edge_(e),
      start_vertex_(x),
      l_(l),
      cap_(cap),
      rng_(rng),
      owned_scratch_(std::make_unique<MsvaScratch>()),
      scratch_(owned_scratch_.get()) {
    init();
}

MsvaRun::MsvaRun(PartialColoring& phi, EdgeId e, Vertex x, int l, int cap,
                 Rng& rng, MsvaScratch& scratch)
    : phi_(phi),
      g_(phi.graph()),
      start_edge_(e),
      start_vertex_(x),
      l_(l),
      cap_(cap),
      rng_(rng),
      scratch_(&scratch) {
    init();
}

void MsvaRun::init() {
    if (phi_.is_colored(start_edge_))
        throw PreconditionViolated("msva: start edge must be uncolored");
    if (!g_.has_endpoint(start_edge_, start_vertex_))
        throw PreconditionViolated("msva: start vertex must lie on the start edge");
    if (l_ < 4) throw PreconditionViolated("msva: step length l must be >= 4");
    if (cap_ < 1) throw PreconditionViolated("msva: iteration cap must be >= 1");
    scratch_->visited.prepare(static_cast<Vertex>(g_.vertex_count()),
                              static_cast<EdgeId>(g_.edge_count()));
    record_.start_edge = start_edge_;
    candidate_ = first_chain(phi_, start_edge_, start_vertex_, l_,
                             scratch_->fans);
}

void MsvaRun::commit_current_step(int lprime) {
    MsvaStep s;
    s.fan = candidate_.fan;
    s.full_path = candidate_.path;
    s.alpha = candidate_.alpha;
    s.beta = candidate_.beta;
    s.full_truncated = candidate_.truncated;
    s.path = candidate_.path.prefix(g_, lprime);
    carry_beta_ = phi_.color(s.path.end_edge());
    if (carry_beta_ != s.alpha && carry_beta_ != s.beta)
        throw InternalInvariantViolation(
            "msva: cut edge is not colored with a path color");
    steps_.push_back(std::move(s));

    const MsvaStep& sk = steps_.back();
    shift_chain(phi_, flatten_step(sk.fan, sk.path));
    int k = static_cast<int>(steps_.size()) - 1;
    for (Vertex v : fan_vertices(sk.fan)) scratch_->visited.mark_vertex(v, k);
    for (EdgeId e : path_internal_edges(sk.path)) scratch_->visited.mark_edge(e, k);
}

void MsvaRun::rollback_steps(size_t j) {
    for (size_t i = steps_.size(); i-- > j;) {
        const MsvaStep& s = steps_[i];
        shift_chain(phi_, reversed(flatten_step(s.fan, s.path)));
        for (Vertex v : fan_vertices(s.fan)) scratch_->visited.clear_vertex(v);
        for (EdgeId e : path_internal_edges(s.path)) scratch_->visited.clear_edge(e);
    }
    steps_.resize(j);
}

std::optional<MsvaOutcome> MsvaRun::finish_success() {
    record_.iterations = static_cast<int>(record_.d.size()) + 1;
    record_.outcome = MsvaOutcome::Success;
    record_.terminus_edge = candidate_.path.end_edge();
    record_.terminus_vertex = candidate_.path.vend;
    chain_.start_edge = start_edge_;
    chain_.steps.clear();
    for (const MsvaStep& s : steps_) chain_.steps.push_back({s.fan, s.path});
    chain_.steps.push_back({candidate_.fan, candidate_.path});
    rollback_steps(0);
    done_ = true;
    return MsvaOutcome::Success;
}

MsvaOutcome MsvaRun::finish_cap_hit() {
    record_.iterations = static_cast<int>(record_.d.size());
    record_.outcome = MsvaOutcome::IterationCapHit;
    record_.terminus_edge = candidate_.path.end_edge();
    record_.terminus_vertex = candidate_.path.vend;
    chain_ = MultiStepChain{};
    rollback_steps(0);
    done_ = true;
    return MsvaOutcome::IterationCapHit;
}

std::optional<MsvaOutcome> MsvaRun::step() {
    if (done_) return record_.outcome;
    if (candidate_.path.length() < 2 * l_) return finish_success();
    if (static_cast<int>(record_.d.size()) >= cap_) return finish_cap_hit();

    int lprime = l_ + static_cast<int>(rng_.below(static_cast<uint64_t>(l_)));
    commit_current_step(lprime);
    const MsvaStep& sk = steps_.back();

    // The next pivot sits at the truncation point; the color pair carries
    // over with beta taken from the cut edge's pre-shift color. The shift
    // moved that color one edge back toward the old pivot, so it stays
    // incident to the new pivot u while u's other path color went missing.
    Color next_beta = carry_beta_;
    Color next_alpha = next_beta == sk.alpha ? sk.beta : sk.alpha;
    EdgeId uv = sk.path.end_edge();
    Vertex v = sk.path.vend;
    Vertex u = g_.other_end(uv, v);

    CandidateChain cand =
        next_chain(phi_, uv, u, next_alpha, next_beta, l_, scratch_->fans);

    int k = static_cast<int>(steps_.size()) - 1;
    std::optional<int> j = check_intersection(g_, cand, scratch_->visited);
    if (j) {
        record_.d.push_back(*j - k);
        MsvaStep sj = steps_[*j];
        rollback_steps(static_cast<size_t>(*j));
        candidate_ = CandidateChain{std::move(sj.fan), std::move(sj.full_path),
                                    sj.alpha, sj.beta, sj.full_truncated};
    } else if (cand.path.length() >= 2 && cand.path.length() < 2 * l_ &&
               cand.path.vend == cand.fan.pivot) {
        rollback_steps(0);
        done_ = true;
        throw InternalFailReached(
            "msva: candidate path of length " +
            std::to_string(cand.path.length()) + " looped back to its pivot " +
            std::to_string(cand.fan.pivot) + " at step " + std::to_string(k) +
            " (start edge " + std::to_string(start_edge_) + ")");
    } else {
        record_.d.push_back(1);
        candidate_ = std::move(cand);
    }
    return std::nullopt;
}

MsvaOutcome MsvaRun::run() {
    while (true) {
        std::optional<MsvaOutcome> o = step();
        if (o) return *o;
    }
}

MsvaResult msva(PartialColoring& phi, EdgeId e, Vertex x, int l, int cap,
                Rng& rng) {
    MsvaRun run(phi, e, x, l, cap, rng);
    run.run();
    return {run.chain(), run.record()};
}

MsvaResult msva(PartialColoring& phi, EdgeId e, Vertex x, int l, int cap,
                Rng& rng, MsvaScratch& scratch) {
    MsvaRun run(phi, e, x, l, cap, rng, scratch);
    run.run();
    return {run.chain(), run.record()};
}

}  // namespace vizing
