#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "nlgap/gamma.hpp"
#include "nlgap/metric.hpp"
#include "nlgap/random.hpp"

namespace nlgap {

/// Points g(x) in R^K, one row per point of the source metric.
struct Embedding {
    Eigen::MatrixXd points;
    std::size_t scales = 0;       ///< T = floor(log2 m)
    std::size_t repetitions = 0;  ///< q per scale; K = T * q
    double scale_factor = 1.0;
    std::uint64_t seed = 0;

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(points.cols()); }
    std::size_t point_count() const noexcept { return static_cast<std::size_t>(points.rows()); }

    /// One row per point, tab-separated coordinates.
    std::string to_tsv() const;
};

/// ceil(4 log2 m)
std::size_t default_repetitions(std::size_t m);

/// Bourgain-style embedding: for scale t = 1..T and repetition j = 1..q draw
/// A_{t,j} containing each point independently with probability 2^-t; the
/// (t, j) coordinate of x is d(x, A_{t,j}), or 0 when A_{t,j} is empty.
/// Throws InvalidArgument for m < 2, Disconnected for an infinite metric.
Embedding bourgain_embed(const DistanceMatrix& dist, Rng& rng,
                         std::optional<std::size_t> repetitions = std::nullopt);

struct DistortionReport {
    double max_expansion = 1.0;    ///< max ||g(x)-g(y)|| / d(x,y)
    double max_contraction = 1.0;  ///< max d(x,y) / ||g(x)-g(y)||; inf on collapse
    double distortion = 1.0;
    std::size_t collapsed_pairs = 0;
};

/// Over unordered pairs of distinct points. A one-point space has all three
/// values equal to 1.
DistortionReport distortion(const DistanceMatrix& dist, const Embedding& e);

/// F = g o f, one row per vertex of G.
Eigen::MatrixXd compose_map(const VertexMap& f, const Embedding& e);

/// gamma for a vector-valued map with the Euclidean metric.
GammaReport gamma_vector(const Graph& g, const Eigen::MatrixXd& points);

}  // namespace nlgap
