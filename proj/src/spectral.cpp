#include "nlgap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nlgap/error.hpp"

namespace nlgap {

std::size_t Spectrum::zero_multiplicity(double tol) const {
    return static_cast<std::size_t>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                                  [tol](double x) { return std::abs(x) <= tol; }));
}

double Spectrum::sum() const { return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0); }

Eigen::MatrixXd normalized_laplacian(const Graph& g) {
    const std::size_t n = g.vertex_count();
    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                    static_cast<Eigen::Index>(n));
    std::vector<double> inv_sqrt(n);
    for (Vertex v = 0; v < n; ++v) {
        if (g.degree(v) == 0) throw InvalidArgument("isolated vertex " + std::to_string(v));
        inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    }
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex w : g.neighbors(u)) lap(u, w) = -inv_sqrt[u] * inv_sqrt[w];
    }
    return lap;
}

namespace {

void check_symmetric(const Eigen::MatrixXd& a, double tol) {
    if (a.rows() != a.cols()) throw InvalidArgument("matrix is not square");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
        throw InvalidArgument("matrix is not symmetric within tolerance");
    }
}

std::vector<double> to_vector(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

}  // namespace

EigenDecomposition eigen_decompose(const Eigen::MatrixXd& matrix, double tol) {
    check_symmetric(matrix, tol);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");

    EigenDecomposition out;
    out.spectrum.eigenvalues = to_vector(solver.eigenvalues());
    out.vectors = solver.eigenvectors();

    const Eigen::MatrixXd r =
        matrix * out.vectors - out.vectors * solver.eigenvalues().asDiagonal();
    out.spectrum.residual = r.colwise().norm().maxCoeff();
    const double norm2 = matrix.rows() ? solver.eigenvalues().cwiseAbs().maxCoeff() : 0.0;
    if (out.spectrum.residual > tol * std::max(norm2, 1.0)) {
        throw NumericalError("eigen-residual " + std::to_string(out.spectrum.residual) +
                             " exceeds tolerance");
    }
    return out;
}

Spectrum eigenvalues(const Eigen::MatrixXd& matrix, double tol) {
    return eigen_decompose(matrix, tol).spectrum;
}

Spectrum eigenvalues_only(const Eigen::MatrixXd& matrix, double tol) {
    check_symmetric(matrix, tol);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    return Spectrum{to_vector(solver.eigenvalues()), std::numeric_limits<double>::quiet_NaN()};
}

double lambda_bar(const Spectrum& s) {
    if (s.size() < 2) throw InvalidArgument("lambda_bar needs at least 2 eigenvalues");
    return std::max(std::abs(1.0 - s.lambda1()), std::abs(s.largest() - 1.0));
}

std::optional<std::uint32_t> diameter_bound_from_rate(double rate, std::size_t n) {
    if (n < 2) throw InvalidArgument("diameter bound needs n >= 2");
    // a rate within rounding of 1 (bipartite graphs) leaves the bound vacuous
    if (!(rate < 1.0 - 1e-9)) return std::nullopt;
    if (rate <= 0.0) return 1;  // log(1/rate) = inf; only complete-like spectra
    const double bound = std::log(static_cast<double>(n - 1)) / std::log(1.0 / rate);
    return static_cast<std::uint32_t>(std::max(1.0, std::ceil(bound)));
}

std::optional<std::uint32_t> spectral_diameter_bound(const Spectrum& s, std::size_t n) {
    return diameter_bound_from_rate(lambda_bar(s), n);
}

std::optional<std::uint32_t> spectral_diameter_bound_lambda1(const Spectrum& s, std::size_t n) {
    const double rate = 1.0 - s.lambda1();
    if (rate < 0.0) return std::nullopt;
    return diameter_bound_from_rate(rate, n);
}

double discrepancy_audit(const Graph& g, const Spectrum& s,
                         const std::vector<std::pair<VertexSet, VertexSet>>& pairs) {
    const double lb = lambda_bar(s);
    const double vol_g = static_cast<double>(g.volume());
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& [x, y] : pairs) {
        const auto e = static_cast<double>(edges_between(g, x, y));
        double vol_x = 0.0;
        double vol_y = 0.0;
        for (Vertex v : x) vol_x += static_cast<double>(g.degree(v));
        for (Vertex v : y) vol_y += static_cast<double>(g.degree(v));
        const double violation =
            std::abs(e - vol_x * vol_y / vol_g) - lb * std::sqrt(vol_x * vol_y);
        worst = std::max(worst, violation);
    }
    return worst;
}

double ordered_pair_sum(const Eigen::MatrixXd& points) {
    // sum_{u,v} ||x_u - x_v||^2 = 2n sum_u ||x_u - mean||^2
    const auto n = static_cast<double>(points.rows());
    if (points.rows() == 0) return 0.0;
    const Eigen::RowVectorXd mean = points.colwise().mean();
    return 2.0 * n * (points.rowwise() - mean).squaredNorm();
}

double directed_edge_sum(const Graph& g, const Eigen::MatrixXd& points) {
    if (static_cast<std::size_t>(points.rows()) != g.vertex_count()) {
        throw InvalidArgument("map has wrong number of points");
    }
    double total = 0.0;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        for (Vertex w : g.neighbors(u)) total += (points.row(u) - points.row(w)).squaredNorm();
    }
    return total;
}

double hilbert_expander_check(const Graph& g, double lambda1, const Eigen::MatrixXd& points) {
    const auto d = g.regular_degree();
    if (!d) throw InvalidArgument("Hilbert expander inequality needs a regular graph");
    const auto n = static_cast<double>(g.vertex_count());
    const double edge = directed_edge_sum(g, points);
    const double pair = ordered_pair_sum(points);
    return edge / (n * static_cast<double>(*d)) - lambda1 * pair / (n * n);
}

double hilbert_expander_check(const Graph& g, double lambda1,
                              const std::vector<std::vector<double>>& points) {
    const std::size_t dim = points.empty() ? 0 : points.front().size();
    Eigen::MatrixXd mat(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) throw InvalidArgument("map values differ in dimension");
        for (std::size_t j = 0; j < dim; ++j) {
            mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = points[i][j];
        }
    }
    return hilbert_expander_check(g, lambda1, mat);
}

}  // namespace nlgap
