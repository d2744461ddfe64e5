#include <algorithm>
#include <limits>

#include "gamma_internal.hpp"
#include "nlgap/error.hpp"
#include "nlgap/gamma.hpp"
#include "nlgap/parallel.hpp"

namespace nlgap {

namespace {

using Int = std::int64_t;
using Wide = __int128;

/// Ratio pair/edge compared exactly; a ratio with edge == 0 is "undefined"
/// and loses to every defined ratio.
struct Ratio {
    Int pair = 0;
    Int edge = 0;

    bool defined() const { return edge > 0; }
};

bool better(const Ratio& a, const Ratio& b) {
    if (!a.defined()) return false;
    if (!b.defined()) return true;
    return static_cast<Wide>(a.pair) * b.edge > static_cast<Wide>(b.pair) * a.edge;
}

/// Incremental evaluator of the pair and edge sums for a map that changes one
/// vertex at a time. Keeps row[x] = sum_i s_i * d_H(x, i)^2 so that a move's
/// pair-sum change is O(1) and its edge-sum change O(deg).
class MoveEvaluator {
public:
    MoveEvaluator(const Graph& g, std::size_t m, const std::vector<std::uint64_t>& sq)
        : g_(g), n_(g.vertex_count()), m_(m), sq_(sq) {}

    void reset(std::span<const std::uint32_t> images) {
        images_.assign(images.begin(), images.end());
        sizes_.assign(m_, 0);
        for (auto x : images_) ++sizes_[x];
        row_.assign(m_, 0);
        for (std::size_t x = 0; x < m_; ++x) {
            for (std::size_t i = 0; i < m_; ++i) row_[x] += static_cast<Int>(sizes_[i] * sq(x, i));
        }
        value_.pair = 0;
        for (std::size_t x = 0; x < m_; ++x) value_.pair += static_cast<Int>(sizes_[x]) * row_[x];
        value_.edge = 0;
        for (Vertex u = 0; u < n_; ++u) {
            for (Vertex w : g_.neighbors(u)) value_.edge += static_cast<Int>(sq(images_[u], images_[w]));
        }
    }

    const Ratio& value() const { return value_; }
    std::span<const std::uint32_t> images() const { return images_; }
    std::size_t size_of(std::size_t image) const { return sizes_[image]; }

    /// Sums after moving v to image b (b != current image).
    Ratio after_move(Vertex v, std::uint32_t b, Int neighbor_sum_from, Int neighbor_sum_to) const {
        const std::uint32_t a = images_[v];
        Ratio r;
        r.pair = value_.pair + 2 * (row_[b] - static_cast<Int>(sq(a, b)) - row_[a]);
        r.edge = value_.edge + 2 * (neighbor_sum_to - neighbor_sum_from);
        return r;
    }

    /// sum over neighbors w of v of d_H(x, f(w))^2
    Int neighbor_sum(Vertex v, std::uint32_t x) const {
        Int s = 0;
        for (Vertex w : g_.neighbors(v)) s += static_cast<Int>(sq(x, images_[w]));
        return s;
    }

    void apply(Vertex v, std::uint32_t b, const Ratio& next) {
        const std::uint32_t a = images_[v];
        for (std::size_t x = 0; x < m_; ++x) {
            row_[x] += static_cast<Int>(sq(x, b)) - static_cast<Int>(sq(x, a));
        }
        --sizes_[a];
        ++sizes_[b];
        images_[v] = b;
        value_ = next;
    }

private:
    std::uint64_t sq(std::size_t a, std::size_t b) const { return sq_[a * m_ + b]; }

    const Graph& g_;
    std::size_t n_;
    std::size_t m_;
    const std::vector<std::uint64_t>& sq_;
    std::vector<std::uint32_t> images_;
    std::vector<std::size_t> sizes_;
    std::vector<Int> row_;
    Ratio value_;
};

double as_gamma(const Ratio& r, std::size_t n, std::size_t d) {
    return make_gamma_report(static_cast<double>(r.pair), static_cast<double>(r.edge), n, d).gamma.value();
}

/// Largest preimage size allowed by F(delta).
std::size_t class_capacity(std::size_t n, const std::optional<double>& delta) {
    if (!delta) return n;
    // same test as in_function_class: size * delta <= n
    const auto fits = [&](std::size_t s) { return static_cast<double>(s) * *delta <= static_cast<double>(n); };
    auto cap = static_cast<std::size_t>(std::min(static_cast<double>(n), static_cast<double>(n) / *delta));
    while (cap < n && fits(cap + 1)) ++cap;
    while (cap > 0 && !fits(cap)) --cap;
    return cap;
}

ClimbTrace climb(const Graph& g, std::size_t m, const std::vector<std::uint64_t>& sq, std::size_t d,
                 const VertexMap& start, std::size_t capacity, std::size_t max_moves) {
    const std::size_t n = g.vertex_count();
    MoveEvaluator eval(g, m, sq);
    eval.reset(start.images());

    ClimbTrace trace;
    if (eval.value().defined()) trace.gamma.push_back(as_gamma(eval.value(), n, d));

    std::vector<Int> to_sums(m);
    std::size_t moves = 0;
    while (true) {
        if (moves == max_moves) break;
        Ratio best = eval.value();
        Vertex best_v = 0;
        std::uint32_t best_b = 0;
        bool found = false;
        for (Vertex v = 0; v < n; ++v) {
            const std::uint32_t a = eval.images()[v];
            for (std::uint32_t b = 0; b < m; ++b) to_sums[b] = eval.neighbor_sum(v, b);
            for (std::uint32_t b = 0; b < m; ++b) {
                if (b == a || eval.size_of(b) + 1 > capacity) continue;
                const Ratio cand = eval.after_move(v, b, to_sums[a], to_sums[b]);
                if (better(cand, best)) {
                    best = cand;
                    best_v = v;
                    best_b = b;
                    found = true;
                }
            }
        }
        if (!found) {
            trace.converged = true;
            break;
        }
        eval.apply(best_v, best_b, best);
        ++moves;
        trace.gamma.push_back(as_gamma(best, n, d));
    }
    trace.final_map = VertexMap({eval.images().begin(), eval.images().end()}, m);
    return trace;
}

/// m^n, or nullopt if it exceeds `limit`.
std::optional<std::size_t> space_size(std::size_t n, std::size_t m, std::size_t limit) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > limit / std::max<std::size_t>(m, 1)) return std::nullopt;
        total *= m;
    }
    return total <= limit ? std::optional<std::size_t>(total) : std::nullopt;
}

struct Candidate {
    Ratio value;
    std::vector<std::uint32_t> images;
};

void offer(Candidate& best, const Ratio& value, std::span<const std::uint32_t> images) {
    if (better(value, best.value)) {
        best.value = value;
        best.images.assign(images.begin(), images.end());
    }
}

bool fits(std::span<const std::uint32_t> images, std::size_t m, std::size_t capacity,
          std::vector<std::size_t>& counts) {
    counts.assign(m, 0);
    for (auto x : images) {
        if (++counts[x] > capacity) return false;
    }
    return true;
}

}  // namespace

SupEstimate gamma_sup_estimate(const Graph& g, const DistanceMatrix& dist_h,
                               const SearchStrategy& strategy) {
    if (strategy.restarts == 0 && strategy.samples == 0) {
        throw InvalidArgument("search strategy has neither samples nor restarts");
    }
    if (strategy.delta && !(*strategy.delta > 0.0)) throw InvalidArgument("delta must be positive");
    const std::size_t d = detail::require_regular(g);
    const std::size_t n = g.vertex_count();
    const std::size_t m = dist_h.size();
    if (m == 0) throw InvalidArgument("empty host metric");
    const std::vector<std::uint64_t> sq = detail::squared_distance_table(dist_h);
    const std::size_t capacity = class_capacity(n, strategy.delta);
    if (capacity * m < n) throw InvalidArgument("F(delta) is empty for these sizes");

    SupEstimate out;
    Candidate best;
    MoveEvaluator eval(g, m, sq);
    std::vector<std::size_t> counts;

    // Sampling phase: exhaustive when the budget covers all m^n maps.
    const auto space = space_size(n, m, strategy.samples);
    if (space && strategy.samples > 0) {
        out.exhaustive = true;
        std::vector<std::uint32_t> images(n, 0);
        for (std::size_t k = 0; k < *space; ++k) {
            if (fits(images, m, capacity, counts)) {
                eval.reset(images);
                offer(best, eval.value(), images);
                ++out.evaluated_samples;
            }
            for (std::size_t pos = 0; pos < n; ++pos) {  // odometer, vertex 0 fastest
                if (++images[pos] < m) break;
                images[pos] = 0;
            }
        }
    } else {
        Rng rng(derive_seed(strategy.seed, 0));
        for (std::size_t k = 0; k < strategy.samples; ++k) {
            const VertexMap f = random_vertex_map(n, m, rng, strategy.delta);
            eval.reset(f.images());
            offer(best, eval.value(), f.images());
            ++out.evaluated_samples;
        }
    }
    if (best.value.defined()) out.best_sampled = as_gamma(best.value, n, d);

    // Climbing phase.
    std::vector<VertexMap> starts;
    std::vector<std::uint64_t> seeds;
    for (std::size_t r = 0; r < strategy.restarts; ++r) {
        const std::uint64_t seed = derive_seed(strategy.seed, r + 1);
        seeds.push_back(seed);
        if (r == 0 && best.value.defined()) {
            starts.emplace_back(best.images, m);
        } else {
            Rng rng(seed);
            starts.push_back(random_vertex_map(n, m, rng, strategy.delta));
        }
    }
    out.climbs.resize(starts.size());
    parallel_for(starts.size(), strategy.workers, [&](std::size_t r) {
        out.climbs[r] = climb(g, m, sq, d, starts[r], capacity, strategy.max_moves);
        out.climbs[r].seed = seeds[r];
    });

    for (const ClimbTrace& c : out.climbs) {
        eval.reset(c.final_map->images());
        offer(best, eval.value(), c.final_map->images());
    }

    if (best.value.defined()) {
        out.best = VertexMap(best.images, m);
        out.report = gamma_value(g, dist_h, *out.best);
    } else {
        out.report = make_gamma_report(0.0, 0.0, n, d);
    }
    return out;
}

}  // namespace nlgap
