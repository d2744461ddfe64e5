#include "nlgap/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "nlgap/error.hpp"
#include "nlgap/io.hpp"
#include "text.hpp"

namespace nlgap {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("error writing '" + path + "'");
}

// ---------------------------------------------------------------------------

Multigraph::Multigraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (const Edge& e : edges_) {
        if (e.v >= n_) throw InvalidArgument("edge endpoint out of range");
    }
}

std::vector<std::size_t> Multigraph::degrees() const {
    std::vector<std::size_t> deg(n_, 0);
    for (const Edge& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g;
    g.adjacency_.resize(n);
    for (const Edge& e : edges) {
        if (e.v >= n) throw InvalidArgument("edge endpoint out of range");
        if (e.is_loop()) throw InvalidArgument("loop at vertex " + std::to_string(e.u));
        g.adjacency_[e.u].push_back(e.v);
        g.adjacency_[e.v].push_back(e.u);
    }
    for (auto& nbrs : g.adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
            throw InvalidArgument("parallel edge");
        }
    }
    g.edge_count_ = edges.size();
    if (n > 0) {
        const std::size_t d0 = g.adjacency_[0].size();
        const bool regular = std::all_of(g.adjacency_.begin(), g.adjacency_.end(),
                                         [d0](const auto& a) { return a.size() == d0; });
        if (regular) g.degree_ = d0;
    }
    return g;
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    if (a >= vertex_count() || b >= vertex_count()) return false;
    const auto& nbrs = adjacency_[a];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < adjacency_.size(); ++u) {
        for (Vertex v : adjacency_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_regular_params(std::size_t n, std::size_t d) {
    if (n < 2) throw InvalidArgument("need at least 2 vertices");
    if (d < 1) throw InvalidArgument("degree must be positive");
    if ((n * d) % 2 != 0) {
        throw InvalidArgument("n*d = " + std::to_string(n * d) +
                              " is odd; no d-regular graph exists");
    }
}

}  // namespace

Multigraph HalfEdgeMatching::project() const {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) edges.emplace_back(owner(a), owner(b));
    return Multigraph(n, std::move(edges));
}

HalfEdgeMatching sample_matching(std::size_t n, std::size_t d, Rng& rng) {
    check_regular_params(n, d);
    const std::size_t total = n * d;
    std::vector<std::uint32_t> half(total);
    std::iota(half.begin(), half.end(), 0u);

    HalfEdgeMatching m;
    m.n = n;
    m.d = d;
    m.seed = rng.seed();
    m.pairs.reserve(total / 2);
    for (std::size_t k = 0; k < total; k += 2) {
        const std::size_t j = rng.uniform(k + 1, total - 1);
        std::swap(half[k + 1], half[j]);
        m.pairs.emplace_back(half[k], half[k + 1]);
    }
    return m;
}

Multigraph sample_configuration(std::size_t n, std::size_t d, Rng& rng) {
    return sample_matching(n, d, rng).project();
}

bool is_simple(const Multigraph& g) {
    std::vector<Edge> sorted = g.edges();
    if (std::any_of(sorted.begin(), sorted.end(), [](const Edge& e) { return e.is_loop(); })) {
        return false;
    }
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Graph to_graph(const Multigraph& g) {
    if (!is_simple(g)) throw InvalidArgument("multigraph has loops or parallel edges");
    return Graph::from_edges(g.vertex_count(), g.edges());
}

namespace {

SimpleSample sample_by_pairing(std::size_t n, std::size_t d, Rng& rng, std::size_t max_attempts) {
    const std::size_t total = n * d;
    std::vector<std::uint32_t> half(total);
    std::vector<std::vector<Vertex>> nbrs(n);
    std::vector<Edge> edges;
    edges.reserve(total / 2);

    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        std::iota(half.begin(), half.end(), 0u);
        for (auto& a : nbrs) a.clear();
        edges.clear();

        bool simple = true;
        for (std::size_t k = 0; k < total; k += 2) {
            const std::size_t j = rng.uniform(k + 1, total - 1);
            std::swap(half[k + 1], half[j]);
            const auto a = static_cast<Vertex>(half[k] / d);
            const auto b = static_cast<Vertex>(half[k + 1] / d);
            if (a == b || std::find(nbrs[a].begin(), nbrs[a].end(), b) != nbrs[a].end()) {
                simple = false;
                break;
            }
            nbrs[a].push_back(b);
            nbrs[b].push_back(a);
            edges.emplace_back(a, b);
        }
        if (simple) return {Graph::from_edges(n, edges), attempt};
    }
    throw SamplingExhausted(max_attempts);
}

Graph complement(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (!g.has_edge(u, v)) edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace

SimpleSample sample_simple_regular(std::size_t n, std::size_t d, Rng& rng,
                                   std::size_t max_attempts) {
    check_regular_params(n, d);
    if (d >= n) throw InvalidArgument("simple d-regular graph needs d < n");
    if (max_attempts == 0) throw InvalidArgument("max_attempts must be positive");

    // Complementation is a bijection between simple d-regular and simple
    // (n-1-d)-regular graphs, so sampling the sparser side keeps uniformity.
    if (2 * d > n - 1) {
        const std::size_t dc = n - 1 - d;
        if (dc == 0) return {complete_graph(n), 1};
        SimpleSample s = sample_by_pairing(n, dc, rng, max_attempts);
        return {complement(s.graph), s.attempts};
    }
    return sample_by_pairing(n, d, rng, max_attempts);
}

Graph switch_edges(const Graph& g, std::pair<Vertex, Vertex> e1, std::pair<Vertex, Vertex> e2,
                   SwitchPairing pairing) {
    auto [u, v] = e1;
    auto [x, y] = e2;
    if (!g.has_edge(u, v) || !g.has_edge(x, y)) throw SwitchRejected("switch edge not in graph");
    if (u == x || u == y || v == x || v == y) {
        throw SwitchRejected("switch endpoints are not distinct");
    }
    if (pairing == SwitchPairing::crossed) std::swap(x, y);
    if (g.has_edge(u, x) || g.has_edge(v, y)) {
        throw SwitchRejected("replacement edge already present");
    }

    const Edge drop1(u, v);
    const Edge drop2(x, y);
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        if (e != drop1 && e != drop2) edges.push_back(e);
    }
    edges.emplace_back(u, x);
    edges.emplace_back(v, y);
    return Graph::from_edges(g.vertex_count(), edges);
}

std::size_t edges_between(const Graph& g, std::span<const Vertex> s, std::span<const Vertex> t) {
    const std::size_t n = g.vertex_count();
    // 1 = in s, 2 = in t
    std::vector<std::uint8_t> side(n, 0);
    for (Vertex a : s) {
        if (a >= n) throw InvalidArgument("vertex out of range");
        side[a] = 1;
    }
    for (Vertex b : t) {
        if (b >= n) throw InvalidArgument("vertex out of range");
        if (side[b] == 1) throw InvalidArgument("vertex sets are not disjoint");
        side[b] = 2;
    }
    std::size_t count = 0;
    for (Vertex a = 0; a < n; ++a) {
        if (side[a] != 1) continue;
        for (Vertex b : g.neighbors(a)) {
            if (side[b] == 2) ++count;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------

Graph read_edge_list(std::string_view text) {
    detail::LineReader reader(text);
    auto header = reader.next_nonempty();
    if (!header) throw ParseError(0, "empty edge list");
    auto head = detail::parse_uints(header->text, 2, header->number);
    const std::size_t n = head[0];
    const std::size_t e = head[1];
    if (n > std::numeric_limits<Vertex>::max()) throw ParseError(header->number, "too many vertices");

    std::vector<Edge> edges;
    edges.reserve(e);
    std::vector<std::vector<Vertex>> seen(n);
    while (auto line = reader.next_nonempty()) {
        if (edges.size() == e) throw ParseError(line->number, "more edges than declared");
        auto uv = detail::parse_uints(line->text, 2, line->number);
        if (uv[0] >= n || uv[1] >= n) {
            throw ParseError(line->number, "vertex index out of range (n = " + std::to_string(n) + ")");
        }
        if (uv[0] == uv[1]) throw ParseError(line->number, "loop edge");
        const Edge edge(static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1]));
        auto& row = seen[edge.u];
        if (std::find(row.begin(), row.end(), edge.v) != row.end()) {
            throw ParseError(line->number, "duplicate edge");
        }
        row.push_back(edge.v);
        edges.push_back(edge);
    }
    if (edges.size() != e) {
        throw ParseError(0, "declared " + std::to_string(e) + " edges, found " +
                                std::to_string(edges.size()));
    }
    return Graph::from_edges(n, edges);
}

std::string write_edge_list(const Graph& g) {
    std::string out;
    out += std::to_string(g.vertex_count()) + ' ' + std::to_string(g.edge_count()) + '\n';
    for (const Edge& e : g.edges()) {
        out += std::to_string(e.u) + ' ' + std::to_string(e.v) + '\n';
    }
    return out;
}

Graph read_edge_list_file(const std::string& path) { return read_edge_list(read_text_file(path)); }

void write_edge_list_file(const Graph& g, const std::string& path) {
    write_text_file(path, write_edge_list(g));
}

// ---------------------------------------------------------------------------

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) edges.emplace_back(u, static_cast<Vertex>((u + 1) % n));
    return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
    return Graph::from_edges(n, edges);
}

Graph petersen_graph() {
    // outer 5-cycle 0..4, spokes i -> i+5, inner pentagram 5..9
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return Graph::from_edges(10, edges);
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
    if (perm.size() != g.vertex_count()) throw InvalidArgument("permutation size mismatch");
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
    return Graph::from_edges(g.vertex_count(), edges);
}

}  // namespace nlgap
