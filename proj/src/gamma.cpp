#include "nlgap/gamma.hpp"

#include <algorithm>
#include <numeric>

#include "gamma_internal.hpp"
#include "nlgap/error.hpp"
#include "text.hpp"

namespace nlgap {

VertexMap::VertexMap(std::vector<std::uint32_t> images, std::size_t image_count)
    : images_(std::move(images)), m_(image_count) {
    if (m_ == 0) throw InvalidArgument("vertex map needs at least one image point");
    for (std::uint32_t x : images_) {
        if (x >= m_) throw InvalidArgument("image index " + std::to_string(x) + " out of range");
    }
}

VertexMap read_vertex_map(std::string_view text) {
    detail::LineReader reader(text);
    auto header = reader.next_nonempty();
    if (!header) throw ParseError(0, "empty vertex map");
    const auto head = detail::parse_uints(header->text, 2, header->number);
    const std::size_t n = head[0];
    const std::size_t m = head[1];
    if (m == 0) throw ParseError(header->number, "image count must be positive");

    std::vector<std::uint32_t> images;
    images.reserve(n);
    while (auto line = reader.next_nonempty()) {
        if (images.size() == n) throw ParseError(line->number, "more images than declared");
        const auto x = detail::parse_uints(line->text, 1, line->number)[0];
        if (x >= m) throw ParseError(line->number, "image index out of range (m = " + std::to_string(m) + ")");
        images.push_back(static_cast<std::uint32_t>(x));
    }
    if (images.size() != n) {
        throw ParseError(0, "declared " + std::to_string(n) + " images, found " +
                                std::to_string(images.size()));
    }
    return VertexMap(std::move(images), m);
}

std::string write_vertex_map(const VertexMap& f) {
    std::string out = std::to_string(f.domain_size()) + ' ' + std::to_string(f.image_count()) + '\n';
    for (std::uint32_t x : f.images()) out += std::to_string(x) + '\n';
    return out;
}

PartitionStats partition_stats(const VertexMap& f) {
    PartitionStats stats;
    stats.sizes.assign(f.image_count(), 0);
    for (std::uint32_t x : f.images()) ++stats.sizes[x];
    stats.max_size = *std::max_element(stats.sizes.begin(), stats.sizes.end());
    return stats;
}

std::vector<std::vector<Vertex>> preimages(const VertexMap& f) {
    std::vector<std::vector<Vertex>> sets(f.image_count());
    for (Vertex v = 0; v < f.domain_size(); ++v) sets[f[v]].push_back(v);
    return sets;
}

bool in_function_class(const VertexMap& f, double delta) {
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
    const auto max_size = static_cast<double>(partition_stats(f).max_size);
    return max_size * delta <= static_cast<double>(f.domain_size());
}

GammaReport make_gamma_report(double pair_sum, double edge_sum, std::size_t n, std::size_t d) {
    GammaReport r;
    r.pair_sum = pair_sum;
    r.edge_sum = edge_sum;
    if (edge_sum > 0.0) {
        r.gamma = (static_cast<double>(d) / static_cast<double>(n)) * pair_sum / edge_sum;
    }
    return r;
}

namespace detail {

std::size_t require_regular(const Graph& g) {
    const auto d = g.regular_degree();
    if (!d || *d == 0) throw InvalidArgument("gamma needs a regular graph of positive degree");
    return *d;
}

std::vector<std::uint64_t> squared_distance_table(const DistanceMatrix& dist_h) {
    if (!dist_h.is_finite()) throw Disconnected("host metric has unreachable pairs");
    const std::size_t m = dist_h.size();
    std::vector<std::uint64_t> sq(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            const std::uint64_t h = *dist_h.at(a, b);
            sq[a * m + b] = h * h;
        }
    }
    return sq;
}

}  // namespace detail

namespace {

void check_sizes(const Graph& g, const DistanceMatrix& dist_h, const VertexMap& f) {
    if (f.domain_size() != g.vertex_count()) throw InvalidArgument("map domain differs from |V(G)|");
    if (f.image_count() != dist_h.size()) throw InvalidArgument("map codomain differs from |V(H)|");
}

}  // namespace

GammaReport gamma_value(const Graph& g, const DistanceMatrix& dist_h, const VertexMap& f) {
    const std::size_t d = detail::require_regular(g);
    check_sizes(g, dist_h, f);
    const std::size_t n = g.vertex_count();

    const PartitionStats stats = partition_stats(f);
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < stats.sizes.size(); ++i) {
        if (stats.sizes[i] > 0) used.push_back(i);
    }

    std::uint64_t pair_sum = 0;
    for (std::size_t i : used) {
        for (std::size_t j : used) {
            const Hops h = dist_h.at(i, j);
            if (!h) throw Disconnected("map hits two components of the host graph");
            const std::uint64_t hh = *h;
            pair_sum += static_cast<std::uint64_t>(stats.sizes[i]) * stats.sizes[j] * hh * hh;
        }
    }

    std::uint64_t edge_sum = 0;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex w : g.neighbors(u)) {
            const std::uint64_t h = *dist_h.at(f[u], f[w]);
            edge_sum += h * h;
        }
    }
    return make_gamma_report(static_cast<double>(pair_sum), static_cast<double>(edge_sum), n, d);
}

GammaReport gamma_real(const Graph& g, std::span<const double> f) {
    const std::size_t d = detail::require_regular(g);
    const std::size_t n = g.vertex_count();
    if (f.size() != n) throw InvalidArgument("map domain differs from |V(G)|");

    // ordered pairs: 2n sum (f - mean)^2
    const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(n);
    double centered = 0.0;
    for (double x : f) centered += (x - mean) * (x - mean);
    const double pair_sum = 2.0 * static_cast<double>(n) * centered;

    double edge_sum = 0.0;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex w : g.neighbors(u)) edge_sum += (f[u] - f[w]) * (f[u] - f[w]);
    }
    return make_gamma_report(pair_sum, edge_sum, n, d);
}

NearPairReport near_pair_report(const Graph& g, const DistanceMatrix& dist_h, const VertexMap& f,
                                double alpha, double beta) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
    check_sizes(g, dist_h, f);
    const auto diam = dist_h.diameter();
    if (!diam) throw Disconnected("near-pair report needs a connected host");

    const std::size_t m = dist_h.size();
    const double radius = alpha * static_cast<double>(*diam);
    std::vector<char> near(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            near[a * m + b] = static_cast<double>(*dist_h.at(a, b)) <= radius;
        }
    }

    NearPairReport r;
    r.alpha = alpha;
    r.beta = beta;
    r.host_diameter = *diam;

    const PartitionStats stats = partition_stats(f);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            if (near[a * m + b]) {
                r.near_pair_count += static_cast<std::uint64_t>(stats.sizes[a]) * stats.sizes[b];
            }
        }
    }

    std::vector<std::uint64_t> block(m * m, 0);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (Vertex w : g.neighbors(u)) {
            const std::size_t cell = static_cast<std::size_t>(f[u]) * m + f[w];
            if (near[cell]) ++r.crossing_edge_count;
            ++block[cell];
        }
    }
    for (std::size_t cell = 0; cell < m * m; ++cell) {
        if (near[cell]) r.crossing_edge_count_by_blocks += block[cell];
    }

    r.threshold = beta * static_cast<double>(g.volume());
    r.below_threshold = static_cast<double>(r.crossing_edge_count) <= r.threshold;
    return r;
}

VertexMap random_vertex_map(std::size_t n, std::size_t m, Rng& rng, std::optional<double> delta) {
    if (m == 0) throw InvalidArgument("need at least one image point");
    std::vector<std::uint32_t> images(n);
    constexpr int kUniformTries = 64;
    for (int attempt = 0; attempt < kUniformTries; ++attempt) {
        for (auto& x : images) x = static_cast<std::uint32_t>(rng.uniform(0, m - 1));
        VertexMap f(images, m);
        if (!delta || in_function_class(f, *delta)) return f;
    }
    // Random balanced map: sizes differ by at most one, the most even any map can be.
    for (std::size_t v = 0; v < n; ++v) images[v] = static_cast<std::uint32_t>(v % m);
    std::shuffle(images.begin(), images.end(), rng);
    VertexMap f(std::move(images), m);
    if (!in_function_class(f, *delta)) {
        throw InvalidArgument("F(delta) is empty: even a balanced map exceeds n/delta");
    }
    return f;
}

}  // namespace nlgap
