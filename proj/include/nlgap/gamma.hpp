#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlgap/graph.hpp"
#include "nlgap/metric.hpp"

namespace nlgap {

/// A function f: V(G) -> V(H), stored as the image of each vertex of G.
class VertexMap {
public:
    /// Throws InvalidArgument if an image is >= image_count or image_count == 0.
    VertexMap(std::vector<std::uint32_t> images, std::size_t image_count);

    std::size_t domain_size() const noexcept { return images_.size(); }
    std::size_t image_count() const noexcept { return m_; }
    std::uint32_t operator[](Vertex v) const { return images_[v]; }
    std::span<const std::uint32_t> images() const noexcept { return images_; }

    bool operator==(const VertexMap&) const = default;

private:
    std::vector<std::uint32_t> images_;
    std::size_t m_;
};

/// Text form: "n m" then n lines, one image index per line.
VertexMap read_vertex_map(std::string_view text);
std::string write_vertex_map(const VertexMap& f);

/// Sizes s_i = |f^{-1}(i)| of the partition induced by f.
struct PartitionStats {
    std::vector<std::size_t> sizes;
    std::size_t max_size = 0;
};

PartitionStats partition_stats(const VertexMap& f);

/// The sets S_i = f^{-1}(i), each sorted.
std::vector<std::vector<Vertex>> preimages(const VertexMap& f);

/// f is in F(delta) iff every preimage has at most n / delta vertices.
bool in_function_class(const VertexMap& f, double delta);

/// Raw sums behind gamma(G, d, f) under the global conventions: pair_sum over
/// ordered vertex pairs, edge_sum over directed edges (each edge twice).
struct GammaReport {
    double pair_sum = 0.0;
    double edge_sum = 0.0;
    /// (d/n) * pair_sum / edge_sum; empty when edge_sum == 0.
    std::optional<double> gamma;

    bool degenerate() const noexcept { return !gamma.has_value(); }
};

/// Builds the report from sums; gamma is left empty when edge_sum is 0.
GammaReport make_gamma_report(double pair_sum, double edge_sum, std::size_t n, std::size_t d);

/// gamma(G, d_H, f). Throws InvalidArgument if G is not regular or sizes
/// disagree, Disconnected if f uses two images at infinite distance.
GammaReport gamma_value(const Graph& g, const DistanceMatrix& dist_h, const VertexMap& f);

/// The same functional for a real-valued map with metric |x - y|.
GammaReport gamma_real(const Graph& g, std::span<const double> f);

struct NearPairReport {
    double alpha = 0.0;
    double beta = 0.0;
    std::uint32_t host_diameter = 0;
    /// Ordered pairs (u, v), including u == v, with d_H(f(u), f(v)) <= alpha * D.
    std::uint64_t near_pair_count = 0;
    /// Directed edges of G that are near pairs.
    std::uint64_t crossing_edge_count = 0;
    /// Same count via sum over near image pairs (i, j) of the directed edge
    /// counts between S_i and S_j; always equals crossing_edge_count.
    std::uint64_t crossing_edge_count_by_blocks = 0;
    /// beta * d * n
    double threshold = 0.0;
    bool below_threshold = false;
};

/// Throws InvalidArgument unless 0 < alpha <= 1, Disconnected if H is.
NearPairReport near_pair_report(const Graph& g, const DistanceMatrix& dist_h, const VertexMap& f,
                                double alpha, double beta);

/// Budget and options for the adversarial search of sup_f gamma(G, d_H, f).
struct SearchStrategy {
    /// Hill-climbing restarts. Restart 0 starts from the best random sample.
    std::size_t restarts = 4;
    /// Uniformly random maps evaluated before climbing. When this is at least
    /// m^n the whole space is enumerated instead.
    std::size_t samples = 100;
    /// Improving moves allowed per climb.
    std::size_t max_moves = 100'000;
    /// Restrict to F(delta).
    std::optional<double> delta;
    std::uint64_t seed = 0;
    /// Restarts run on this many threads; the result does not depend on it.
    std::size_t workers = 1;
};

struct ClimbTrace {
    std::uint64_t seed = 0;
    /// gamma after each accepted move, starting with the initial map.
    std::vector<double> gamma;
    bool converged = false;  ///< stopped at a local maximum, not the move budget
    std::optional<VertexMap> final_map;
};

struct SupEstimate {
    /// Best nondegenerate map found; empty if every map was degenerate.
    std::optional<VertexMap> best;
    GammaReport report;
    /// Best gamma among the sampling phase alone.
    std::optional<double> best_sampled;
    std::size_t evaluated_samples = 0;
    bool exhaustive = false;
    std::vector<ClimbTrace> climbs;
};

/// Restarted best-improvement hill climbing over single-vertex image moves.
/// Ties go to the lowest vertex, then the lowest image. Returns a lower bound
/// on gamma(G, d_H) (exact when `exhaustive`). Throws InvalidArgument for an
/// empty strategy or when F(delta) admits no map.
SupEstimate gamma_sup_estimate(const Graph& g, const DistanceMatrix& dist_h,
                               const SearchStrategy& strategy);

/// Random map in F(delta): uniform maps by rejection, falling back to a
/// uniformly shuffled balanced map when rejection keeps failing.
VertexMap random_vertex_map(std::size_t n, std::size_t m, Rng& rng,
                            std::optional<double> delta = std::nullopt);

}  // namespace nlgap
