#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlgap/error.hpp"
#include "nlgap/metric.hpp"
#include "nlgap/spectral.hpp"
#include "oracles.hpp"

using namespace nlgap;

namespace {

/// Direct double loop for the Hilbert slack; shares nothing with the library.
double slack_oracle(const Graph& g, double lambda1, const std::vector<std::vector<double>>& f) {
    const std::size_t n = g.vertex_count();
    const auto a = oracle::adjacency_matrix(g);
    const double d = static_cast<double>(g.degree(0));
    double edge = 0.0;
    double pair = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            double sq = 0.0;
            for (std::size_t k = 0; k < f[u].size(); ++k) sq += (f[u][k] - f[v][k]) * (f[u][k] - f[v][k]);
            pair += sq;
            if (a[u][v]) edge += sq;
        }
    }
    const double nn = static_cast<double>(n);
    return edge / (nn * d) - lambda1 / (nn * nn) * pair;
}

std::pair<VertexSet, VertexSet> random_disjoint_pair(std::size_t n, Rng& rng) {
    std::pair<VertexSet, VertexSet> p;
    const double px = rng.uniform01();
    const double py = rng.uniform01() * (1.0 - px);
    for (Vertex v = 0; v < n; ++v) {
        const double r = rng.uniform01();
        if (r < px) {
            p.first.push_back(v);
        } else if (r < px + py) {
            p.second.push_back(v);
        }
    }
    return p;
}

}  // namespace

TEST_CASE("normalized laplacian small cases") {
    const Eigen::MatrixXd k2 = normalized_laplacian(complete_graph(2));
    CHECK(k2(0, 0) == doctest::Approx(1.0));
    CHECK(k2(0, 1) == doctest::Approx(-1.0));
    const Eigen::MatrixXd tri = normalized_laplacian(complete_graph(3));
    CHECK(tri(0, 0) == doctest::Approx(1.0));
    CHECK(tri(1, 2) == doctest::Approx(-0.5));
    CHECK(tri.isApprox(tri.transpose(), 0.0));
    CHECK_THROWS_AS(normalized_laplacian(Graph::from_edges(3, std::vector<Edge>{{0, 1}})), InvalidArgument);
}

TEST_CASE("eigenvalues reject non-symmetric input") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 0, 1;
    CHECK_THROWS_AS(eigenvalues(m), InvalidArgument);
}

TEST_CASE("complete and cycle spectra match closed forms") {
    for (std::size_t n : {3u, 5u, 10u, 31u}) {
        const Spectrum s = eigenvalues(normalized_laplacian(complete_graph(n)));
        CHECK(std::abs(s.eigenvalues[0]) <= 1e-9);
        for (std::size_t i = 1; i < n; ++i) CHECK(std::abs(s.eigenvalues[i] - double(n) / double(n - 1)) <= 1e-9);
        CHECK(std::abs(lambda_bar(s) - 1.0 / double(n - 1)) <= 1e-9);
        CHECK(std::abs(s.sum() - double(n)) <= 1e-8 * double(n));
        CHECK(s.residual <= 1e-9);
    }
    for (std::size_t n : {3u, 4u, 7u, 12u, 40u}) {
        std::vector<double> expect;
        for (std::size_t k = 0; k < n; ++k) expect.push_back(1.0 - std::cos(2.0 * std::numbers::pi * double(k) / double(n)));
        std::sort(expect.begin(), expect.end());
        const Spectrum s = eigenvalues(normalized_laplacian(cycle_graph(n)));
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s.eigenvalues[i] - expect[i]) <= 1e-9);
        CHECK(std::abs(s.sum() - double(n)) <= 1e-8 * double(n));
    }
}

TEST_CASE("lambda bar and the spectral diameter bound") {
    const Spectrum c4 = eigenvalues(normalized_laplacian(cycle_graph(4)));
    CHECK(lambda_bar(c4) == doctest::Approx(1.0));
    CHECK_FALSE(spectral_diameter_bound(c4, 4).has_value());

    // Petersen: {0, 2/3 x5, 5/3 x4}
    const Spectrum p = eigenvalues(normalized_laplacian(petersen_graph()));
    CHECK(std::abs(p.eigenvalues[0]) <= 1e-9);
    for (int i = 1; i <= 5; ++i) CHECK(std::abs(p.eigenvalues[i] - 2.0 / 3.0) <= 1e-9);
    for (int i = 6; i <= 9; ++i) CHECK(std::abs(p.eigenvalues[i] - 5.0 / 3.0) <= 1e-9);
    CHECK(lambda_bar(p) == doctest::Approx(2.0 / 3.0));
    CHECK(spectral_diameter_bound(p, 10) == 6u);
    CHECK(*spectral_diameter_bound(p, 10) >= diameter(petersen_graph()));

    CHECK(diameter_bound_from_rate(1.0, 10) == std::nullopt);
    CHECK(diameter_bound_from_rate(0.0, 10) == 1u);
    CHECK(diameter_bound_from_rate(0.5, 9) == 3u);  // ceil(log 8 / log 2)
}

TEST_CASE("bipartite graphs have lambda bar 1") {
    for (std::size_t n : {4u, 6u, 10u}) CHECK(lambda_bar(eigenvalues(normalized_laplacian(cycle_graph(n)))) >= 1.0 - 1e-9);
}

TEST_CASE("spectrum invariants and diameter bound on random graphs") {
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        const Graph g = sample_simple_regular(500, 3, rng).graph;
        const Spectrum s = eigenvalues_only(normalized_laplacian(g));
        CHECK(s.eigenvalues.front() >= -1e-9);
        CHECK(s.largest() <= 2.0 + 1e-9);
        CHECK(std::abs(s.sum() - 500.0) <= 1e-8 * 500.0);
        CHECK(s.zero_multiplicity(1e-8) == component_count(g));
        if (!is_connected(g)) continue;
        const auto bound = spectral_diameter_bound(s, 500);
        REQUIRE(bound.has_value());
        CHECK(*bound >= diameter(g));
    }
}

TEST_CASE("zero multiplicity counts components") {
    const Graph two = Graph::from_edges(6, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    const Spectrum s = eigenvalues(normalized_laplacian(two));
    CHECK(s.zero_multiplicity(1e-8) == 2);
}

TEST_CASE("eigen residuals are small on random graphs") {
    Rng rng(2);
    for (int t = 0; t < 5; ++t) {
        const Spectrum s = eigenvalues(normalized_laplacian(sample_simple_regular(200, 4, rng).graph));
        CHECK(s.residual <= 1e-9);
    }
}

TEST_CASE("discrepancy audit") {
    SUBCASE("complete graph, hand bound") {
        const Graph k = complete_graph(8);
        const Spectrum s = eigenvalues(normalized_laplacian(k));
        std::vector<std::pair<VertexSet, VertexSet>> pairs{{{0, 1}, {2, 3, 4}}, {{0}, {7}}, {{}, {1, 2}}};
        CHECK(discrepancy_audit(k, s, pairs) <= 1e-9);
        pairs.push_back({{0, 1}, {1}});
        CHECK_THROWS_AS(discrepancy_audit(k, s, pairs), InvalidArgument);
        CHECK(std::isinf(discrepancy_audit(k, s, {})));
    }
    SUBCASE("random graphs and random disjoint pairs") {
        Rng rng(5);
        double worst = -1e300;
        for (int t = 0; t < 50; ++t) {
            const Graph g = sample_simple_regular(200, 3, rng).graph;
            const Spectrum s = eigenvalues_only(normalized_laplacian(g));
            std::vector<std::pair<VertexSet, VertexSet>> pairs;
            for (int i = 0; i < 1000; ++i) pairs.push_back(random_disjoint_pair(200, rng));
            worst = std::max(worst, discrepancy_audit(g, s, pairs));
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("hilbert expander check") {
    Rng rng(17);
    SUBCASE("constant map has zero slack") {
        const Graph g = sample_simple_regular(50, 3, rng).graph;
        const std::vector<std::vector<double>> f(50, std::vector<double>{2.0, -1.0});
        CHECK(std::abs(hilbert_expander_check(g, 0.3, f)) <= 1e-12);
    }
    SUBCASE("lambda_1 eigenvector is the equality case") {
        const Graph g = sample_simple_regular(100, 3, rng).graph;
        const EigenDecomposition e = eigen_decompose(normalized_laplacian(g));
        const Eigen::MatrixXd v = e.vectors.col(1);
        CHECK(std::abs(hilbert_expander_check(g, e.spectrum.lambda1(), v)) <= 1e-9);
    }
    SUBCASE("random gaussian maps, checked against a direct oracle") {
        for (int t = 0; t < 50; ++t) {
            const Graph g = sample_simple_regular(100, 3, rng).graph;
            const double l1 = eigenvalues_only(normalized_laplacian(g)).lambda1();
            for (std::size_t s : {1u, 2u, 5u}) {
                std::vector<std::vector<double>> f(100, std::vector<double>(s));
                for (auto& row : f) {
                    for (auto& x : row) x = rng.normal();
                }
                const double slack = hilbert_expander_check(g, l1, f);
                CHECK(slack >= -1e-9);
                CHECK(slack == doctest::Approx(slack_oracle(g, l1, f)).epsilon(1e-9));
            }
        }
    }
    SUBCASE("dimension mismatch") {
        const std::vector<std::vector<double>> f{{1.0}, {1.0, 2.0}, {0.0}};
        CHECK_THROWS_AS(hilbert_expander_check(complete_graph(3), 1.5, f), InvalidArgument);
    }
}

TEST_CASE("lambda_1 of random regular graphs on 2000 vertices clears 1 - 3/sqrt(d)") {
    Rng rng(2000);
    // degrees where rejection sampling is practical
    for (std::size_t d : {3u, 4u, 5u}) {
        for (int t = 0; t < 2; ++t) {
            const Graph g = sample_simple_regular(2000, d, rng).graph;
            CHECK(eigenvalues_only(normalized_laplacian(g)).lambda1() >= 1.0 - 3.0 / std::sqrt(double(d)));
        }
    }
}
