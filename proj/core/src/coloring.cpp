#include "vizing/coloring.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace vizing {

PartialColoring::PartialColoring(const Graph& g)
    : PartialColoring(g, std::max(g.max_degree(), 2) + 1) {}

PartialColoring::PartialColoring(const Graph& g, int palette)
    : g_(&g),
      palette_(palette),
      words_((palette_ + 63) / 64),
      colors_(g.edge_count(), kBlank),
      slots_(static_cast<size_t>(g.vertex_count()) * palette_, kNoEdge),
      missing_(static_cast<size_t>(g.vertex_count()) * words_, 0),
      uncolored_(g.edge_count()) {
    if (palette < std::max(g.max_degree(), 2) + 1)
        throw InfeasibleParameters("palette " + std::to_string(palette) +
                                   " below max degree + 1");
    // every color missing at every vertex
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        for (int w = 0; w < words_; ++w) {
            int lo = w * 64;
            int count = std::min(64, palette_ - lo);
            missing_[static_cast<size_t>(v) * words_ + w] =
                count == 64 ? ~0ull : (1ull << count) - 1;
        }
    }
}

void PartialColoring::set(EdgeId e, Color c) {
    if (c < 1 || c > palette_) throw Error("set: color out of palette");
    if (colors_[e] != kBlank) throw Error("set: edge already colored");
    auto [u, v] = g_->endpoints(e);
    if (slot(u, c) != kNoEdge || slot(v, c) != kNoEdge)
        throw Error("set: color already present at an endpoint");
    colors_[e] = c;
    for (Vertex x : {u, v}) {
        slots_[static_cast<size_t>(x) * palette_ + (c - 1)] = e;
        missing_[static_cast<size_t>(x) * words_ + (c - 1) / 64] &=
            ~(1ull << ((c - 1) % 64));
    }
    --uncolored_;
}

void PartialColoring::clear(EdgeId e) {
    Color c = colors_[e];
    if (c == kBlank) throw Error("clear: edge already blank");
    auto [u, v] = g_->endpoints(e);
    colors_[e] = kBlank;
    for (Vertex x : {u, v}) {
        slots_[static_cast<size_t>(x) * palette_ + (c - 1)] = kNoEdge;
        missing_[static_cast<size_t>(x) * words_ + (c - 1) / 64] |=
            1ull << ((c - 1) % 64);
    }
    ++uncolored_;
}

Color missing_min(const PartialColoring& phi, Vertex x, Color exclude) {
    const uint64_t* base = phi.missing_.data() + static_cast<size_t>(x) * phi.words_;
    for (int w = 0; w < phi.words_; ++w) {
        uint64_t word = base[w];
        if (exclude != kBlank && (exclude - 1) / 64 == w)
            word &= ~(1ull << ((exclude - 1) % 64));
        if (word != 0)
            return w * 64 + std::countr_zero(word) + 1;
    }
    throw EmptyMissingSet("vertex " + std::to_string(x) +
                          " has no missing color after excluding " +
                          std::to_string(exclude));
}

Color common_missing_min(const PartialColoring& phi, Vertex x, Vertex y) {
    const uint64_t* bx = phi.missing_.data() + static_cast<size_t>(x) * phi.words_;
    const uint64_t* by = phi.missing_.data() + static_cast<size_t>(y) * phi.words_;
    for (int w = 0; w < phi.words_; ++w) {
        uint64_t word = bx[w] & by[w];
        if (word != 0)
            return w * 64 + std::countr_zero(word) + 1;
    }
    return kBlank;
}

namespace {

// Shared precondition check; step is only used for error reporting.
void do_shift_pair(PartialColoring& phi, EdgeId e0, EdgeId e1, int step) {
    if (e0 == e1) throw NotShiftable("edges coincide", step);
    if (phi.is_colored(e0)) throw NotShiftable("first edge not blank", step);
    if (!phi.is_colored(e1)) throw NotShiftable("second edge blank", step);
    auto pivot = phi.graph().shared_vertex(e0, e1);
    if (!pivot) throw NotShiftable("edges not adjacent", step);
    Vertex y = phi.graph().other_end(e0, *pivot);
    Color c = phi.color(e1);
    if (!phi.missing(y, c))
        throw NotShiftable("color " + std::to_string(c) +
                               " not missing at far endpoint",
                           step);
    phi.clear(e1);
    phi.set(e0, c);
}

}  // namespace

void shift_pair(PartialColoring& phi, EdgeId e0, EdgeId e1) {
    do_shift_pair(phi, e0, e1, -1);
}

std::vector<EdgeId> reversed(const std::vector<EdgeId>& chain) {
    return {chain.rbegin(), chain.rend()};
}

void shift_chain(PartialColoring& phi, const std::vector<EdgeId>& chain) {
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        try {
            do_shift_pair(phi, chain[i], chain[i + 1], static_cast<int>(i));
        } catch (const NotShiftable&) {
            // roll the applied prefix back so phi is unchanged on failure
            for (size_t j = i; j-- > 0;)
                do_shift_pair(phi, chain[j + 1], chain[j], -1);
            throw;
        }
    }
}

Color augment(PartialColoring& phi, const std::vector<EdgeId>& chain) {
    shift_chain(phi, chain);
    EdgeId end = chain.back();
    auto [u, v] = phi.graph().endpoints(end);
    Color c = common_missing_min(phi, u, v);
    if (c == kBlank) {
        shift_chain(phi, reversed(chain));
        throw NotHappy("no common missing color at edge " + std::to_string(end) +
                       " after shifting");
    }
    phi.set(end, c);
    return c;
}

WalkResult walk_alternating(const PartialColoring& phi, EdgeId start_edge,
                            Vertex from_vertex, Color alpha, Color beta,
                            int cap) {
    if (alpha == beta) throw Error("walk_alternating: alpha == beta");
    if (phi.slot(from_vertex, alpha) != kNoEdge &&
        phi.slot(from_vertex, beta) != kNoEdge)
        throw DegreeTwoStart("vertex " + std::to_string(from_vertex) +
                             " already carries both colors " +
                             std::to_string(alpha) + " and " +
                             std::to_string(beta));

    WalkResult out;
    out.path.edges.push_back(start_edge);
    out.path.vstart = phi.graph().other_end(start_edge, from_vertex);
    Vertex current = from_vertex;
    Color want = alpha;
    while (true) {
        EdgeId next = phi.slot(current, want);
        if (next == kNoEdge) break;
        if (static_cast<int>(out.path.edges.size()) >= cap) {
            out.truncated = true;
            break;
        }
        out.path.edges.push_back(next);
        current = phi.graph().other_end(next, current);
        want = want == alpha ? beta : alpha;
    }
    out.path.vend = current;
    return out;
}

ValidationReport validate(const Graph& g, const PartialColoring& phi) {
    ValidationReport report;
    report.uncolored = phi.uncolored_count();
    int palette = phi.palette();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        Color c = phi.color(e);
        if (c == kBlank) continue;
        report.max_color_used = std::max(report.max_color_used, c);
        if (c < 1 || c > palette) {
            report.violations.push_back(
                {Violation::ColorOutOfRange, e, kNoEdge, -1, c});
            continue;
        }
        auto [u, v] = g.endpoints(e);
        for (Vertex x : {u, v}) {
            // adjacent same-color pairs, reported once per pair via e < f
            for (const Adjacency* a = g.adj_begin(x); a != g.adj_end(x); ++a) {
                if (a->edge > e && phi.color(a->edge) == c)
                    report.violations.push_back(
                        {Violation::AdjacentSameColor, e, a->edge, x, c});
            }
            if (phi.slot(x, c) != e)
                report.violations.push_back(
                    {Violation::SlotDesync, e, phi.slot(x, c), x, c});
        }
    }
    // slot entries pointing at edges that do not carry that color
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        for (Color c = 1; c <= palette; ++c) {
            EdgeId e = phi.slot(x, c);
            if (e == kNoEdge) continue;
            if (phi.color(e) != c || !g.has_endpoint(e, x))
                report.violations.push_back(
                    {Violation::SlotDesync, e, kNoEdge, x, c});
        }
    }
    return report;
}

std::string coloring_to_text(const PartialColoring& phi) {
    std::ostringstream out;
    for (EdgeId e = 0; e < phi.graph().edge_count(); ++e) {
        out << e << " ";
        if (phi.is_colored(e))
            out << phi.color(e);
        else
            out << "-";
        out << "\n";
    }
    return out.str();
}

PartialColoring coloring_from_text(const Graph& g, const std::string& text) {
    PartialColoring phi(g);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        EdgeId e;
        std::string tok;
        if (!(ls >> e >> tok)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw MalformedLine(lineno, "expected 'edge_id color'");
        }
        if (e < 0 || e >= g.edge_count())
            throw MalformedLine(lineno, "edge id out of range");
        if (tok == "-") continue;
        try {
            phi.set(e, std::stoi(tok));
        } catch (const std::exception& ex) {
            throw MalformedLine(lineno, ex.what());
        }
    }
    return phi;
}

}  // namespace vizing
