#include "nlgap/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gamma_internal.hpp"
#include "nlgap/error.hpp"
#include "nlgap/spectral.hpp"

namespace nlgap {

std::string Embedding::to_tsv() const {
    std::ostringstream out;
    out.precision(17);
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
        for (Eigen::Index c = 0; c < points.cols(); ++c) {
            if (c) out << '\t';
            out << points(r, c);
        }
        out << '\n';
    }
    return out.str();
}

std::size_t default_repetitions(std::size_t m) {
    if (m < 2) return 1;
    return static_cast<std::size_t>(std::ceil(4.0 * std::log2(static_cast<double>(m))));
}

Embedding bourgain_embed(const DistanceMatrix& dist, Rng& rng, std::optional<std::size_t> repetitions) {
    const std::size_t m = dist.size();
    if (m < 2) throw InvalidArgument("embedding needs at least 2 points");
    if (!dist.is_finite()) throw Disconnected("embedding needs a finite metric");

    Embedding e;
    e.scales = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(m))));
    e.repetitions = repetitions.value_or(default_repetitions(m));
    if (e.repetitions == 0) throw InvalidArgument("repetitions must be positive");
    e.seed = rng.seed();
    e.points = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                     static_cast<Eigen::Index>(e.scales * e.repetitions));

    std::vector<std::size_t> members;
    Eigen::Index col = 0;
    for (std::size_t t = 1; t <= e.scales; ++t) {
        const double p = std::ldexp(1.0, -static_cast<int>(t));
        for (std::size_t j = 0; j < e.repetitions; ++j, ++col) {
            members.clear();
            for (std::size_t x = 0; x < m; ++x) {
                if (rng.bernoulli(p)) members.push_back(x);
            }
            if (members.empty()) continue;
            for (std::size_t x = 0; x < m; ++x) {
                std::uint32_t nearest = std::numeric_limits<std::uint32_t>::max();
                for (std::size_t a : members) nearest = std::min(nearest, *dist.at(x, a));
                e.points(static_cast<Eigen::Index>(x), col) = nearest;
            }
        }
    }
    return e;
}

DistortionReport distortion(const DistanceMatrix& dist, const Embedding& e) {
    const std::size_t m = dist.size();
    if (e.point_count() != m) throw InvalidArgument("embedding and metric differ in size");
    DistortionReport r;
    if (m < 2) return r;

    r.max_expansion = 0.0;
    r.max_contraction = 0.0;
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t y = x + 1; y < m; ++y) {
            const Hops h = dist.at(x, y);
            if (!h) throw Disconnected("distortion needs a finite metric");
            const auto dxy = static_cast<double>(*h);
            const double norm = (e.points.row(static_cast<Eigen::Index>(x)) -
                                 e.points.row(static_cast<Eigen::Index>(y)))
                                    .norm();
            r.max_expansion = std::max(r.max_expansion, norm / dxy);
            if (norm == 0.0) {
                ++r.collapsed_pairs;
                r.max_contraction = std::numeric_limits<double>::infinity();
            } else {
                r.max_contraction = std::max(r.max_contraction, dxy / norm);
            }
        }
    }
    r.distortion = r.collapsed_pairs ? std::numeric_limits<double>::infinity()
                                     : r.max_expansion * r.max_contraction;
    return r;
}

Eigen::MatrixXd compose_map(const VertexMap& f, const Embedding& e) {
    if (f.image_count() != e.point_count()) throw InvalidArgument("map codomain differs from embedded set");
    Eigen::MatrixXd out(static_cast<Eigen::Index>(f.domain_size()), e.points.cols());
    for (Vertex v = 0; v < f.domain_size(); ++v) out.row(v) = e.points.row(f[v]);
    return out;
}

GammaReport gamma_vector(const Graph& g, const Eigen::MatrixXd& points) {
    const std::size_t d = detail::require_regular(g);
    return make_gamma_report(ordered_pair_sum(points), directed_edge_sum(g, points),
                             g.vertex_count(), d);
}

}  // namespace nlgap
