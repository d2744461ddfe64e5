#include "nlgap/metric.hpp"

#include <algorithm>
#include <limits>

#include "nlgap/error.hpp"

namespace nlgap {

namespace {

// Plain-integer BFS; kUnseen marks unreachable vertices inside this file only.
constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

void bfs_into(const Graph& g, Vertex source, std::vector<std::uint32_t>& dist,
              std::vector<Vertex>& queue) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex u = queue[head];
        for (Vertex w : g.neighbors(u)) {
            if (dist[w] == kUnseen) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::size_t m, std::vector<Hops> entries)
    : m_(m), entries_(std::move(entries)) {
    if (entries_.size() != m_ * m_) throw InvalidArgument("distance matrix must be m x m");
    finite_ = std::all_of(entries_.begin(), entries_.end(), [](const Hops& h) { return h.has_value(); });
}

std::optional<std::uint32_t> DistanceMatrix::diameter() const {
    if (!finite_) return std::nullopt;
    std::uint32_t best = 0;
    for (const Hops& h : entries_) best = std::max(best, *h);
    return best;
}

bool DistanceMatrix::satisfies_metric_axioms() const {
    for (std::size_t a = 0; a < m_; ++a) {
        if (at(a, a) != Hops(0)) return false;
        for (std::size_t b = 0; b < m_; ++b) {
            if (at(a, b) != at(b, a)) return false;
        }
    }
    for (std::size_t a = 0; a < m_; ++a) {
        for (std::size_t b = 0; b < m_; ++b) {
            const Hops ab = at(a, b);
            if (!ab) continue;
            for (std::size_t c = 0; c < m_; ++c) {
                const Hops bc = at(b, c);
                const Hops ac = at(a, c);
                if (!bc) continue;
                // a~b and b~c imply a~c
                if (!ac || *ac > *ab + *bc) return false;
            }
        }
    }
    return true;
}

std::string DistanceMatrix::to_tsv() const {
    std::string out;
    for (std::size_t a = 0; a < m_; ++a) {
        for (std::size_t b = 0; b < m_; ++b) {
            if (b) out += '\t';
            const Hops h = at(a, b);
            out += h ? std::to_string(*h) : "inf";
        }
        out += '\n';
    }
    return out;
}

std::vector<Hops> bfs_distances(const Graph& g, Vertex source) {
    if (source >= g.vertex_count()) throw InvalidArgument("BFS source out of range");
    std::vector<std::uint32_t> dist(g.vertex_count());
    std::vector<Vertex> queue;
    queue.reserve(g.vertex_count());
    bfs_into(g, source, dist, queue);

    std::vector<Hops> out(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] != kUnseen) out[i] = dist[i];
    }
    return out;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
    const std::size_t m = g.vertex_count();
    std::vector<Hops> entries(m * m);
    std::vector<std::uint32_t> dist(m);
    std::vector<Vertex> queue;
    queue.reserve(m);
    for (Vertex s = 0; s < m; ++s) {
        bfs_into(g, s, dist, queue);
        for (std::size_t t = 0; t < m; ++t) {
            if (dist[t] != kUnseen) entries[s * m + t] = dist[t];
        }
    }
    return DistanceMatrix(m, std::move(entries));
}

std::uint32_t diameter(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> dist(n);
    std::vector<Vertex> queue;
    queue.reserve(n);
    std::uint32_t best = 0;
    for (Vertex s = 0; s < n; ++s) {
        bfs_into(g, s, dist, queue);
        if (queue.size() != n) throw Disconnected("diameter of a disconnected graph");
        best = std::max(best, dist[queue.back()]);
    }
    return best;
}

std::size_t ball_size(const Graph& g, Vertex v, std::uint32_t radius) {
    if (v >= g.vertex_count()) throw InvalidArgument("vertex out of range");
    std::vector<std::uint32_t> dist(g.vertex_count());
    std::vector<Vertex> queue;
    bfs_into(g, v, dist, queue);
    // queue is in nondecreasing distance order
    return static_cast<std::size_t>(
        std::upper_bound(queue.begin(), queue.end(), radius,
                         [&](std::uint32_t r, Vertex u) { return r < dist[u]; }) -
        queue.begin());
}

std::size_t component_count(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack;
    std::size_t components = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = true;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

bool is_connected(const Graph& g) { return component_count(g) <= 1; }

}  // namespace nlgap
