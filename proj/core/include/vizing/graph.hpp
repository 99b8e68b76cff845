#ifndef VIZING_GRAPH_HPP
#define VIZING_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vizing/errors.hpp"

namespace vizing {

using Vertex = int32_t;
using EdgeId = int32_t;
using Color = int32_t;

constexpr Color kBlank = 0;
constexpr EdgeId kNoEdge = -1;

struct Adjacency {
    Vertex neighbor;
    EdgeId edge;
};

// Immutable simple undirected graph. Vertices and edges are dense 0-based
// ids; edge ids are stable (input order). Adjacency is CSR-packed so the
// per-vertex neighbor scan the fan builders do is a contiguous read.
class Graph {
public:
    Graph() = default;
    // Throws SelfLoop/DuplicateEdge (line numbers refer to edge positions,
    // 1-based) if the list is not simple.
    Graph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edge_list);

    Vertex vertex_count() const { return n_; }
    EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }
    int max_degree() const { return max_degree_; }

    int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::pair<Vertex, Vertex> endpoints(EdgeId e) const { return edges_[e]; }

    Vertex other_end(EdgeId e, Vertex v) const {
        const auto& [a, b] = edges_[e];
        return a == v ? b : a;
    }

    bool has_endpoint(EdgeId e, Vertex v) const {
        return edges_[e].first == v || edges_[e].second == v;
    }

    // Shared vertex of two distinct adjacent edges, or nullopt.
    std::optional<Vertex> shared_vertex(EdgeId e, EdgeId f) const;

    const Adjacency* adj_begin(Vertex v) const { return adj_.data() + offsets_[v]; }
    const Adjacency* adj_end(Vertex v) const { return adj_.data() + offsets_[v + 1]; }

    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }

    // Optional provenance carried along when the graph came from the
    // generator; serialized into the '#' header / JSON for reproducibility.
    struct Provenance {
        int delta = 0;
        uint64_t seed = 0;
    };
    std::optional<Provenance> provenance;

private:
    Vertex n_ = 0;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<int32_t> offsets_;
    std::vector<Adjacency> adj_;
    int max_degree_ = 0;
};

// Reads whitespace-separated "u v" lines with 0-based endpoints; lines
// starting with '#' are comments. Throws MalformedLine / DuplicateEdge /
// SelfLoop naming the offending 1-based line.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);

// Writes the graph back out in the same format, with a '#' header carrying
// generator provenance when present.
void write_edge_list(const Graph& g, std::ostream& out);

// JSON serialization with the (n, delta, seed) header embedded.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

struct GenOptions {
    bool regular = false;  // demand an exactly delta-regular graph
};

// Random simple graph with max degree <= delta, deterministic in seed.
// Aims for at least floor(n*delta/4) edges (random pair sampling with a
// deterministic top-up sweep). With regular=true, builds a seeded
// relabeling of a circulant skeleton; requires n*delta even and delta < n.
Graph gen_random_max_degree(Vertex n, int delta, uint64_t seed,
                            const GenOptions& opts = {});

int degree(const Graph& g, Vertex v);

}  // namespace vizing

#endif
