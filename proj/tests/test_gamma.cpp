#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nlgap/error.hpp"
#include "nlgap/gamma.hpp"
#include "nlgap/spectral.hpp"
#include "oracles.hpp"

using namespace nlgap;

namespace {

Graph c4() { return cycle_graph(4); }

VertexMap random_map(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<std::uint32_t> f(n);
    for (auto& x : f) x = static_cast<std::uint32_t>(rng.uniform(0, m - 1));
    return VertexMap(f, m);
}

VertexMap random_nonconstant_map(std::size_t n, std::size_t m, Rng& rng) {
    while (true) {
        VertexMap f = random_map(n, m, rng);
        const auto im = f.images();
        if (std::adjacent_find(im.begin(), im.end(), std::not_equal_to<>()) != im.end()) return f;
    }
}

std::vector<std::uint32_t> to_vec(const VertexMap& f) { return {f.images().begin(), f.images().end()}; }

}  // namespace

TEST_CASE("vertex maps") {
    CHECK_THROWS_AS(VertexMap({0, 2}, 2), InvalidArgument);
    CHECK_THROWS_AS(VertexMap({}, 0), InvalidArgument);
    const VertexMap f({0, 0, 1, 1}, 2);
    CHECK(read_vertex_map(write_vertex_map(f)) == f);
    CHECK(write_vertex_map(f) == "4 2\n0\n0\n1\n1\n");
    CHECK_THROWS_AS(read_vertex_map("2 2\n0\n5\n"), ParseError);
    CHECK_THROWS_AS(read_vertex_map("3 2\n0\n1\n"), ParseError);
}

TEST_CASE("partition stats and the function class") {
    const PartitionStats s = partition_stats(VertexMap({0, 0, 1, 1}, 2));
    CHECK(s.sizes == std::vector<std::size_t>{2, 2});
    CHECK(s.max_size == 2);
    const PartitionStats c = partition_stats(VertexMap(std::vector<std::uint32_t>(5, 0), 3));
    CHECK(c.sizes == std::vector<std::size_t>{5, 0, 0});
    CHECK(preimages(VertexMap({1, 0, 1}, 2)) == std::vector<std::vector<Vertex>>{{1}, {0, 2}});

    std::vector<std::uint32_t> balanced(100);
    for (std::size_t v = 0; v < 100; ++v) balanced[v] = static_cast<std::uint32_t>(v % 10);
    for (double delta : {0.5, 1.0, 5.0, 10.0}) CHECK(in_function_class(VertexMap(balanced, 10), delta));
    CHECK_FALSE(in_function_class(VertexMap(balanced, 10), 10.5));

    const VertexMap constant(std::vector<std::uint32_t>(100, 3), 10);
    CHECK(in_function_class(constant, 1.0));
    CHECK_FALSE(in_function_class(constant, 1.01));

    std::vector<std::uint32_t> skew(balanced);
    for (std::size_t v = 0; v < 10; ++v) skew[v * 10 + 1] = 0;  // image 0 gets 20, image 1 gets 0
    CHECK(partition_stats(VertexMap(skew, 10)).max_size == 20);
    CHECK(in_function_class(VertexMap(skew, 10), 5.0));
    CHECK_FALSE(in_function_class(VertexMap(skew, 10), 6.0));
}

TEST_CASE("gamma on the C4 / K2 hand example") {
    const GammaReport r = gamma_value(c4(), all_pairs_distances(complete_graph(2)), VertexMap({0, 0, 1, 1}, 2));
    CHECK(r.pair_sum == 8.0);
    CHECK(r.edge_sum == 4.0);
    REQUIRE(r.gamma.has_value());
    CHECK(*r.gamma == 1.0);
}

TEST_CASE("constant maps are degenerate") {
    const GammaReport r = gamma_value(c4(), all_pairs_distances(petersen_graph()), VertexMap({3, 3, 3, 3}, 10));
    CHECK(r.degenerate());
    CHECK(r.pair_sum == 0.0);
    CHECK(r.edge_sum == 0.0);
}

TEST_CASE("gamma errors") {
    const Graph two = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK_THROWS_AS(gamma_value(two, all_pairs_distances(two), VertexMap({0, 0, 0, 2}, 4)), Disconnected);
    CHECK_NOTHROW(gamma_value(two, all_pairs_distances(two), VertexMap({0, 1, 1, 0}, 4)));
    CHECK_THROWS_AS(gamma_value(path_graph(3), all_pairs_distances(complete_graph(2)), VertexMap({0, 1, 0}, 2)),
                    InvalidArgument);
    CHECK_THROWS_AS(gamma_value(c4(), all_pairs_distances(complete_graph(2)), VertexMap({0, 1, 0}, 2)), InvalidArgument);
}

TEST_CASE("complete G gives (n-1)/n for every nonconstant map") {
    Rng rng(3);
    const DistanceMatrix host = all_pairs_distances(petersen_graph());
    for (std::size_t n = 4; n <= 50; ++n) {
        const Graph k = complete_graph(n);
        for (int t = 0; t < 100; ++t) {
            const GammaReport r = gamma_value(k, host, random_nonconstant_map(n, 10, rng));
            REQUIRE(r.gamma.has_value());
            CHECK(std::abs(*r.gamma - double(n - 1) / double(n)) <= 1e-12);
        }
    }
}

TEST_CASE("gamma_value agrees with the brute-force oracle") {
    Rng rng(44);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 * rng.uniform(3, 15);
        const std::size_t d = rng.uniform(1, 3);
        const std::size_t m = rng.uniform(3, 12);
        const Graph g = sample_simple_regular(n, d, rng).graph;
        const Graph h = t % 3 == 0 ? cycle_graph(m) : t % 3 == 1 ? path_graph(m) : petersen_graph();
        const VertexMap f = random_map(n, h.vertex_count(), rng);
        const GammaReport r = gamma_value(g, all_pairs_distances(h), f);
        const auto fw = oracle::floyd_warshall(h);
        const auto sums = oracle::brute_sums(g, fw, to_vec(f));
        CHECK(r.pair_sum == sums.pair);
        CHECK(r.edge_sum == sums.edge);
        const auto expect = oracle::brute_gamma(g, fw, to_vec(f));
        CHECK(r.gamma.has_value() == expect.has_value());
        if (expect) CHECK(*r.gamma == doctest::Approx(*expect).epsilon(1e-12));
    }
}

TEST_CASE("gamma_real and the lambda_1 duality") {
    const std::vector<double> k2{0.0, 1.0};
    CHECK(*gamma_real(complete_graph(2), k2).gamma == doctest::Approx(0.5));
    const std::vector<double> flat{2.0, 2.0, 2.0};
    CHECK(gamma_real(complete_graph(3), flat).degenerate());

    Rng rng(55);
    for (int t = 0; t < 20; ++t) {
        const Graph g = sample_simple_regular(100, 3, rng).graph;
        const EigenDecomposition e = eigen_decompose(normalized_laplacian(g));
        const double l1 = e.spectrum.lambda1();
        if (l1 < 1e-8) continue;
        std::vector<double> v(e.vectors.col(1).data(), e.vectors.col(1).data() + 100);
        CHECK(std::abs(*gamma_real(g, v).gamma - 1.0 / l1) <= 1e-9 / l1);
        for (int k = 0; k < 100; ++k) {
            for (double& x : v) x = rng.normal();
            CHECK(*gamma_real(g, v).gamma <= 1.0 / l1 + 1e-9);
        }
    }
}

TEST_CASE("gamma is invariant under joint relabeling") {
    Rng rng(66);
    const DistanceMatrix host = all_pairs_distances(petersen_graph());
    for (int t = 0; t < 20; ++t) {
        const Graph g = sample_simple_regular(40, 3, rng).graph;
        const VertexMap f = random_map(40, 10, rng);
        std::vector<Vertex> perm(40);
        std::iota(perm.begin(), perm.end(), Vertex{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::uint32_t> moved(40);
        for (Vertex v = 0; v < 40; ++v) moved[perm[v]] = f[v];
        const GammaReport a = gamma_value(g, host, f);
        const GammaReport b = gamma_value(relabel(g, perm), host, VertexMap(moved, 10));
        CHECK(a.pair_sum == b.pair_sum);
        CHECK(a.edge_sum == b.edge_sum);
    }
}

TEST_CASE("near pair report") {
    const DistanceMatrix k2 = all_pairs_distances(complete_graph(2));
    const NearPairReport r = near_pair_report(c4(), k2, VertexMap({0, 0, 1, 1}, 2), 0.5, 0.25);
    CHECK(r.near_pair_count == 8);
    CHECK(r.crossing_edge_count == 4);
    CHECK(r.crossing_edge_count_by_blocks == 4);
    CHECK(r.threshold == doctest::Approx(0.25 * 2 * 4));
    CHECK_FALSE(r.below_threshold);

    CHECK_THROWS_AS(near_pair_report(c4(), k2, VertexMap({0, 0, 1, 1}, 2), 0.0, 0.25), InvalidArgument);
    const Graph two = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
    CHECK_THROWS_AS(near_pair_report(c4(), all_pairs_distances(two), VertexMap({0, 0, 1, 1}, 4), 0.5, 0.25),
                    Disconnected);

    Rng rng(88);
    const DistanceMatrix host = all_pairs_distances(petersen_graph());  // D = 2
    for (int t = 0; t < 50; ++t) {
        const Graph g = sample_simple_regular(60, 3, rng).graph;
        const VertexMap f = random_map(60, 10, rng);
        const auto sizes = partition_stats(f).sizes;
        const std::uint64_t same = std::accumulate(sizes.begin(), sizes.end(), std::uint64_t{0},
                                                   [](std::uint64_t acc, std::size_t s) { return acc + s * s; });
        const NearPairReport low = near_pair_report(g, host, f, 0.4, 0.25);  // alpha D < 1
        CHECK(low.near_pair_count == same);
        CHECK(low.crossing_edge_count == low.crossing_edge_count_by_blocks);
        CHECK(low.crossing_edge_count <= g.volume());
        const NearPairReport all = near_pair_report(g, host, f, 1.0, 0.25);
        CHECK(all.near_pair_count == 3600);
        CHECK(all.crossing_edge_count == g.volume());

        // every non-near directed edge contributes more than (alpha D)^2
        const NearPairReport mid = near_pair_report(g, host, f, 0.5, 0.25);
        const double ad = 0.5 * 2.0;
        const GammaReport gr = gamma_value(g, host, f);
        CHECK(gr.edge_sum >= double(g.volume() - mid.crossing_edge_count) * ad * ad);
    }
}

TEST_CASE("search rejects empty strategies and empty classes") {
    const DistanceMatrix k2 = all_pairs_distances(complete_graph(2));
    SearchStrategy s;
    s.restarts = 0;
    s.samples = 0;
    CHECK_THROWS_AS(gamma_sup_estimate(c4(), k2, s), InvalidArgument);
    SearchStrategy tight;
    tight.delta = 3.0;  // capacity floor(4/3) = 1, two images hold at most 2 vertices
    CHECK_THROWS_AS(gamma_sup_estimate(c4(), k2, tight), InvalidArgument);
}

TEST_CASE("search on complete G is flat at (n-1)/n") {
    SearchStrategy s;
    s.samples = 20;
    s.restarts = 3;
    const SupEstimate est = gamma_sup_estimate(complete_graph(12), all_pairs_distances(petersen_graph()), s);
    REQUIRE(est.report.gamma.has_value());
    CHECK(*est.report.gamma == doctest::Approx(11.0 / 12.0));
    for (const auto& c : est.climbs) {
        for (double x : c.gamma) CHECK(x == doctest::Approx(11.0 / 12.0));
    }
}

TEST_CASE("search with a one-point host finds nothing") {
    const DistanceMatrix one = DistanceMatrix(1, {Hops{0}});
    SearchStrategy s;
    s.samples = 5;
    s.restarts = 1;
    const SupEstimate est = gamma_sup_estimate(c4(), one, s);
    CHECK_FALSE(est.best.has_value());
    CHECK(est.report.degenerate());
}

TEST_CASE("search matches exhaustive enumeration") {
    Rng rng(7);
    for (std::size_t n : {4u, 6u, 8u}) {
        const Graph g = sample_simple_regular(n, 3, rng).graph;
        for (std::size_t m : {2u, 3u}) {
            const Graph h = m == 2 ? complete_graph(2) : path_graph(3);
            const DistanceMatrix dist = all_pairs_distances(h);
            const auto truth = oracle::brute_sup(g, oracle::floyd_warshall(h), m, n);
            REQUIRE(truth.has_value());

            SearchStrategy full;
            full.samples = static_cast<std::size_t>(std::pow(double(m), double(n)));
            full.restarts = 0;
            const SupEstimate exact = gamma_sup_estimate(g, dist, full);
            CHECK(exact.exhaustive);
            CHECK(*exact.report.gamma == doctest::Approx(*truth).epsilon(1e-12));

            for (std::size_t budget : {1u, 3u, 10u}) {
                SearchStrategy cheap;
                cheap.samples = budget;
                cheap.restarts = 2;
                cheap.seed = budget;
                const SupEstimate est = gamma_sup_estimate(g, dist, cheap);
                CHECK(*est.report.gamma <= *truth + 1e-12);
            }

            // restricted class: capacity n / 2 via delta = 2
            SearchStrategy restricted = full;
            restricted.delta = 2.0;
            const auto truth_r = oracle::brute_sup(g, oracle::floyd_warshall(h), m, n / 2);
            const SupEstimate est_r = gamma_sup_estimate(g, dist, restricted);
            CHECK(*est_r.report.gamma == doctest::Approx(*truth_r).epsilon(1e-12));
            CHECK(in_function_class(*est_r.best, 2.0));
        }
    }
}

TEST_CASE("search dominates random sampling and climbs are monotone") {
    Rng rng(123);
    const Graph g = sample_simple_regular(200, 3, rng).graph;
    const DistanceMatrix host = all_pairs_distances(petersen_graph());
    double best_random = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto r = gamma_value(g, host, random_map(200, 10, rng));
        if (r.gamma) best_random = std::max(best_random, *r.gamma);
    }
    SearchStrategy s;
    s.samples = 1000;
    s.restarts = 2;
    s.seed = 9;
    const SupEstimate est = gamma_sup_estimate(g, host, s);
    CHECK(*est.report.gamma >= *est.best_sampled);
    CHECK(*est.report.gamma >= best_random * 0.999);
    for (const auto& c : est.climbs) {
        CHECK(std::is_sorted(c.gamma.begin(), c.gamma.end()));
        REQUIRE(c.final_map.has_value());
        CHECK(*gamma_value(g, host, *c.final_map).gamma == doctest::Approx(c.gamma.back()));
    }
    CHECK(*gamma_value(g, host, *est.best).gamma == *est.report.gamma);
}

TEST_CASE("search result does not depend on the worker count") {
    Rng rng(5);
    const Graph g = sample_simple_regular(80, 3, rng).graph;
    const DistanceMatrix host = all_pairs_distances(petersen_graph());
    SearchStrategy s;
    s.restarts = 4;
    s.samples = 30;
    s.seed = 77;
    const SupEstimate one = gamma_sup_estimate(g, host, s);
    s.workers = 3;
    const SupEstimate three = gamma_sup_estimate(g, host, s);
    CHECK(one.best == three.best);
    CHECK(one.report.pair_sum == three.report.pair_sum);
    CHECK(one.report.edge_sum == three.report.edge_sum);
}

TEST_CASE("random vertex maps respect the class") {
    Rng rng(6);
    for (int i = 0; i < 50; ++i) {
        const VertexMap f = random_vertex_map(100, 10, rng, 9.0);
        CHECK(in_function_class(f, 9.0));
    }
    const VertexMap tight = random_vertex_map(100, 10, rng, 10.0);  // forces exactly balanced maps
    CHECK(partition_stats(tight).max_size == 10);
    CHECK_THROWS_AS(random_vertex_map(100, 10, rng, 11.0), InvalidArgument);
}
