#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlgap/random.hpp"

namespace nlgap {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with u <= v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool is_loop() const noexcept { return u == v; }
    auto operator<=>(const Edge&) const = default;
};

/// Multiset of edges on n vertices; loops and parallel edges allowed.
/// A loop contributes 2 to the degree of its vertex.
class Multigraph {
public:
    Multigraph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::vector<std::size_t> degrees() const;

private:
    std::size_t n_;
    std::vector<Edge> edges_;
};

/// Simple undirected graph with sorted adjacency lists. Immutable.
class Graph {
public:
    /// Throws InvalidArgument on loops, duplicate edges or out-of-range endpoints.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }

    /// Common degree when every vertex has the same degree.
    std::optional<std::size_t> regular_degree() const noexcept { return degree_; }

    /// Sum of all degrees (2 * edge count).
    std::size_t volume() const noexcept { return 2 * edge_count_; }

    bool has_edge(Vertex a, Vertex b) const;

    /// Edges in canonical order: u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    bool operator==(const Graph&) const = default;

private:
    Graph() = default;

    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
    std::optional<std::size_t> degree_;
};

/// Perfect matching on the n*d half-edges u_{i,j}; half-edge h belongs to
/// vertex h / d.
struct HalfEdgeMatching {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::uint64_t seed = 0;

    Vertex owner(std::uint32_t half_edge) const { return static_cast<Vertex>(half_edge / d); }
    Multigraph project() const;
};

/// Uniform perfect matching on n*d half-edges, drawn by sequential uniform
/// pairing: the lowest unmatched half-edge is paired with a uniformly chosen
/// other unmatched half-edge, repeatedly.
HalfEdgeMatching sample_matching(std::size_t n, std::size_t d, Rng& rng);

/// Configuration-model multigraph (projection of sample_matching).
Multigraph sample_configuration(std::size_t n, std::size_t d, Rng& rng);

bool is_simple(const Multigraph& g);

/// Converts a simple multigraph; throws InvalidArgument otherwise.
Graph to_graph(const Multigraph& g);

struct SimpleSample {
    Graph graph;
    std::size_t attempts;
};

inline constexpr std::size_t kDefaultMaxAttempts = 10'000;

/// Uniform simple d-regular graph by rejection over configuration-model draws.
/// A draw is abandoned as soon as its partial matching creates a loop or a
/// parallel edge; such a matching can never complete to a simple graph, so the
/// accepted distribution is unchanged. When d > (n-1)/2 the complement
/// (n-1-d)-regular graph is sampled instead and complemented, which is also
/// uniform. Throws SamplingExhausted.
SimpleSample sample_simple_regular(std::size_t n, std::size_t d, Rng& rng,
                                   std::size_t max_attempts = kDefaultMaxAttempts);

/// How the four endpoints of {u,v},{x,y} are reconnected.
enum class SwitchPairing {
    straight,  ///< {u,x},{v,y}
    crossed,   ///< {u,y},{v,x}
};

/// Degree-preserving switch. `e1` and `e2` are taken as written (e1 = {u,v},
/// e2 = {x,y}) so the pairing choice is meaningful. Throws SwitchRejected if
/// an edge is missing, the endpoints are not distinct, or a replacement edge
/// already exists.
Graph switch_edges(const Graph& g, std::pair<Vertex, Vertex> e1, std::pair<Vertex, Vertex> e2,
                   SwitchPairing pairing = SwitchPairing::straight);

/// Number of edges with one endpoint in `s` and the other in `t`.
/// Throws InvalidArgument if the sets overlap or hold out-of-range vertices.
std::size_t edges_between(const Graph& g, std::span<const Vertex> s, std::span<const Vertex> t);

/// Edge-list text: "n e" then e lines "u v" (u < v), sorted, newline-terminated.
Graph read_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

Graph read_edge_list_file(const std::string& path);
void write_edge_list_file(const Graph& g, const std::string& path);

// Named graphs used by tests, examples and the CLI.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph petersen_graph();

/// Same graph with vertex v renamed to perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

}  // namespace nlgap
