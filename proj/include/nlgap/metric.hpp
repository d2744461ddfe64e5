#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlgap/graph.hpp"

namespace nlgap {

/// Hop count; std::nullopt means unreachable.
using Hops = std::optional<std::uint32_t>;

/// All-pairs hop distances of a graph (the metric d_H).
class DistanceMatrix {
public:
    DistanceMatrix(std::size_t m, std::vector<Hops> entries);

    std::size_t size() const noexcept { return m_; }
    Hops at(std::size_t a, std::size_t b) const { return entries_[a * m_ + b]; }

    /// True iff every entry is finite (the source graph is connected).
    bool is_finite() const noexcept { return finite_; }

    /// Largest finite entry; std::nullopt if some pair is unreachable.
    std::optional<std::uint32_t> diameter() const;

    /// Symmetry, zero diagonal and the triangle inequality over finite entries.
    bool satisfies_metric_axioms() const;

    /// Row-major, tab-separated; "inf" marks unreachable pairs.
    std::string to_tsv() const;

private:
    std::size_t m_;
    std::vector<Hops> entries_;
    bool finite_;
};

std::vector<Hops> bfs_distances(const Graph& g, Vertex source);

DistanceMatrix all_pairs_distances(const Graph& g);

/// Throws Disconnected for a disconnected graph.
std::uint32_t diameter(const Graph& g);

/// |{u : dist(v, u) <= radius}|
std::size_t ball_size(const Graph& g, Vertex v, std::uint32_t radius);

bool is_connected(const Graph& g);

/// Number of connected components.
std::size_t component_count(const Graph& g);

}  // namespace nlgap
