#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nlgap/graph.hpp"
#include "nlgap/metric.hpp"

namespace nlgap::detail {

/// Degree of a regular graph; throws InvalidArgument otherwise.
std::size_t require_regular(const Graph& g);

/// Row-major m x m table of squared hop distances; throws Disconnected.
std::vector<std::uint64_t> squared_distance_table(const DistanceMatrix& dist_h);

}  // namespace nlgap::detail
