#include "vizing/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "vizing/rng.hpp"

namespace vizing {

namespace {

uint64_t pack_pair(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) |
           static_cast<uint32_t>(v);
}

}  // namespace

Graph::Graph(Vertex n, std::vector<std::pair<Vertex, Vertex>> edge_list)
    : n_(n), edges_(std::move(edge_list)) {
    std::unordered_set<uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    for (size_t i = 0; i < edges_.size(); ++i) {
        auto [u, v] = edges_[i];
        int line = static_cast<int>(i) + 1;
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw MalformedLine(line, "endpoint out of range");
        std::string name = std::to_string(u) + "-" + std::to_string(v);
        if (u == v) throw SelfLoop(line, name);
        if (!seen.insert(pack_pair(u, v)).second) throw DuplicateEdge(line, name);
    }
    offsets_.assign(n_ + 1, 0);
    for (auto [u, v] : edges_) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adj_.resize(offsets_[n_]);
    std::vector<int32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId e = 0; e < edge_count(); ++e) {
        auto [u, v] = edges_[e];
        adj_[cursor[u]++] = {v, e};
        adj_[cursor[v]++] = {u, e};
    }
    max_degree_ = 0;
    for (Vertex v = 0; v < n_; ++v) max_degree_ = std::max(max_degree_, degree(v));
}

std::optional<Vertex> Graph::shared_vertex(EdgeId e, EdgeId f) const {
    if (e == f) return std::nullopt;
    auto [a, b] = edges_[e];
    auto [c, d] = edges_[f];
    if (a == c || a == d) return a;
    if (b == c || b == d) return b;
    return std::nullopt;
}

int degree(const Graph& g, Vertex v) { return g.degree(v); }

namespace {

// Parses one non-comment line into (u, v); returns false on blank lines.
bool parse_line(const std::string& line, int lineno, Vertex& u, Vertex& v) {
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) return false;
    if (line[pos] == '#') return false;

    auto read_int = [&](Vertex& out) {
        size_t start = line.find_first_not_of(" \t\r", pos);
        if (start == std::string::npos)
            throw MalformedLine(lineno, "expected two integers");
        size_t end = line.find_first_of(" \t\r", start);
        if (end == std::string::npos) end = line.size();
        long long value = 0;
        auto [ptr, ec] =
            std::from_chars(line.data() + start, line.data() + end, value);
        if (ec != std::errc() || ptr != line.data() + end)
            throw MalformedLine(lineno, "not an integer: '" +
                                            line.substr(start, end - start) + "'");
        if (value < 0) throw MalformedLine(lineno, "negative vertex id");
        if (value > INT32_MAX) throw MalformedLine(lineno, "vertex id too large");
        out = static_cast<Vertex>(value);
        pos = end;
    };
    read_int(u);
    read_int(v);
    if (line.find_first_not_of(" \t\r", pos) != std::string::npos)
        throw MalformedLine(lineno, "trailing tokens after edge");
    return true;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<int> lines;  // source line of each edge, for error reports
    std::string line;
    int lineno = 0;
    Vertex max_id = -1;
    Vertex header_n = 0;  // from "# ... n=<count>", keeps isolated tail vertices
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first != std::string::npos && line[first] == '#') {
            size_t at = line.find("n=");
            if (at != std::string::npos) {
                long long value = 0;
                auto [ptr, ec] = std::from_chars(
                    line.data() + at + 2, line.data() + line.size(), value);
                (void)ptr;
                if (ec == std::errc() && value > 0 && value <= INT32_MAX)
                    header_n = std::max(header_n, static_cast<Vertex>(value));
            }
            continue;
        }
        Vertex u, v;
        if (!parse_line(line, lineno, u, v)) continue;
        if (u == v)
            throw SelfLoop(lineno, std::to_string(u) + "-" + std::to_string(v));
        edges.emplace_back(u, v);
        lines.push_back(lineno);
        max_id = std::max({max_id, u, v});
    }
    std::unordered_set<uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (size_t i = 0; i < edges.size(); ++i) {
        if (!seen.insert(pack_pair(edges[i].first, edges[i].second)).second)
            throw DuplicateEdge(lines[i], std::to_string(edges[i].first) + "-" +
                                              std::to_string(edges[i].second));
    }
    return Graph(std::max(header_n, max_id + 1), std::move(edges));
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    if (g.provenance) {
        out << "# generated n=" << g.vertex_count()
            << " delta=" << g.provenance->delta << " seed=" << g.provenance->seed
            << "\n";
    }
    out << "# n=" << g.vertex_count() << " m=" << g.edge_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

std::string graph_to_json(const Graph& g) {
    nlohmann::json j;
    j["schema"] = 1;
    j["n"] = g.vertex_count();
    if (g.provenance) {
        j["delta"] = g.provenance->delta;
        j["seed"] = g.provenance->seed;
    }
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j.dump();
}

Graph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Vertex n = j.at("n").get<Vertex>();
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    Graph g(n, std::move(edges));
    if (j.contains("delta") && j.contains("seed"))
        g.provenance = Graph::Provenance{j["delta"].get<int>(),
                                         j["seed"].get<uint64_t>()};
    return g;
}

namespace {

Graph gen_regular(Vertex n, int delta, uint64_t seed) {
    if (static_cast<int64_t>(n) * delta % 2 != 0)
        throw InfeasibleParameters("n*delta is odd; no " + std::to_string(delta) +
                                   "-regular graph on " + std::to_string(n) +
                                   " vertices exists");
    if (delta >= n)
        throw InfeasibleParameters("regular graph needs delta < n");

    // Circulant skeleton relabeled by a seeded permutation: offsets 1..delta/2
    // give an even-degree base, odd delta adds the antipodal matching (n is
    // even in that case since n*delta is even).
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(derive_seed({seed, 0x9e67u}));
    for (Vertex i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(static_cast<uint64_t>(i) + 1)]);

    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(static_cast<size_t>(n) * delta / 2);
    for (int off = 1; off <= delta / 2; ++off)
        for (Vertex i = 0; i < n; ++i)
            edges.emplace_back(perm[i], perm[(i + off) % n]);
    if (delta % 2 == 1)
        for (Vertex i = 0; i < n / 2; ++i)
            edges.emplace_back(perm[i], perm[i + n / 2]);

    Graph g(n, std::move(edges));
    g.provenance = Graph::Provenance{delta, seed};
    return g;
}

}  // namespace

Graph gen_random_max_degree(Vertex n, int delta, uint64_t seed,
                            const GenOptions& opts) {
    if (n < 2) throw InfeasibleParameters("need at least 2 vertices");
    if (delta < 2) throw InfeasibleParameters("need delta >= 2");
    if (opts.regular) return gen_regular(n, delta, seed);

    const int64_t target = static_cast<int64_t>(n) * delta / 4;
    Rng rng(derive_seed({seed, 0x6d67u}));
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<int> deg(n, 0);
    std::unordered_set<uint64_t> present;
    edges.reserve(target);
    present.reserve(target * 2);

    auto try_add = [&](Vertex u, Vertex v) {
        if (u == v || deg[u] >= delta || deg[v] >= delta) return false;
        if (!present.insert(pack_pair(u, v)).second) return false;
        edges.emplace_back(u, v);
        ++deg[u];
        ++deg[v];
        return true;
    };

    // Random pair sampling covers the bulk quickly; a few deterministic
    // sweeps over still-deficient vertices close the gap near saturation.
    int64_t attempts = 40 * std::max<int64_t>(target, 1);
    while (static_cast<int64_t>(edges.size()) < target && attempts-- > 0)
        try_add(static_cast<Vertex>(rng.below(n)), static_cast<Vertex>(rng.below(n)));

    while (static_cast<int64_t>(edges.size()) < target) {
        std::vector<Vertex> deficient;
        for (Vertex v = 0; v < n; ++v)
            if (deg[v] < delta) deficient.push_back(v);
        for (size_t i = deficient.size(); i > 1; --i)
            std::swap(deficient[i - 1], deficient[rng.below(i)]);
        bool added = false;
        for (size_t i = 0; i < deficient.size(); ++i) {
            for (size_t j = i + 1; j < deficient.size(); ++j) {
                if (try_add(deficient[i], deficient[j])) added = true;
                if (static_cast<int64_t>(edges.size()) >= target) break;
            }
            if (static_cast<int64_t>(edges.size()) >= target) break;
        }
        if (!added) break;  // saturated: target not attainable, return best effort
    }

    Graph g(n, std::move(edges));
    g.provenance = Graph::Provenance{delta, seed};
    return g;
}

}  // namespace vizing
