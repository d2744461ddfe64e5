#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nlgap/graph.hpp"

namespace nlgap {

inline constexpr double kDefaultEigenTolerance = 1e-9;

/// Sorted normalized-Laplacian eigenvalues lambda_0 <= ... <= lambda_{n-1}.
struct Spectrum {
    std::vector<double> eigenvalues;
    /// max_i ||L v_i - lambda_i v_i||; NaN when eigenvectors were not computed.
    double residual = 0.0;

    std::size_t size() const noexcept { return eigenvalues.size(); }
    /// First nontrivial eigenvalue.
    double lambda1() const { return eigenvalues.at(1); }
    double largest() const { return eigenvalues.back(); }
    /// Eigenvalues within `tol` of zero.
    std::size_t zero_multiplicity(double tol) const;
    double sum() const;
};

struct EigenDecomposition {
    Spectrum spectrum;
    /// Column i is the unit eigenvector of spectrum.eigenvalues[i].
    Eigen::MatrixXd vectors;
};

/// I - D^{-1/2} A D^{-1/2}. Throws InvalidArgument on an isolated vertex.
Eigen::MatrixXd normalized_laplacian(const Graph& g);

/// Full symmetric eigendecomposition with per-pair residual check
/// ||Lv - lambda v|| <= tol * ||L||_2. Throws InvalidArgument if `matrix` is
/// not symmetric to within tol * max|entry|, NumericalError if a residual
/// exceeds the bound.
EigenDecomposition eigen_decompose(const Eigen::MatrixXd& matrix,
                                   double tol = kDefaultEigenTolerance);

/// Spectrum with the residual measured (via eigen_decompose).
Spectrum eigenvalues(const Eigen::MatrixXd& matrix, double tol = kDefaultEigenTolerance);

/// Eigenvalues only; several times faster for large n. residual is NaN.
Spectrum eigenvalues_only(const Eigen::MatrixXd& matrix, double tol = kDefaultEigenTolerance);

/// max{|1 - lambda_1|, |lambda_{n-1} - 1|}
double lambda_bar(const Spectrum& s);

/// ceil(log(n-1) / log(1/rate)), or std::nullopt when rate >= 1 (bound
/// vacuous). `rate` is lambda_bar for the two-sided form.
std::optional<std::uint32_t> diameter_bound_from_rate(double rate, std::size_t n);

/// Two-sided form using lambda_bar(s).
std::optional<std::uint32_t> spectral_diameter_bound(const Spectrum& s, std::size_t n);

/// One-sided form using 1 - lambda_1 as the rate.
std::optional<std::uint32_t> spectral_diameter_bound_lambda1(const Spectrum& s, std::size_t n);

using VertexSet = std::vector<Vertex>;

/// max over pairs of |e(X,Y) - vol X vol Y / vol G| - lambda_bar sqrt(vol X vol Y).
/// Nonpositive up to eigen-tolerance for every graph. Returns -infinity for
/// an empty pair list. Throws InvalidArgument on an overlapping pair.
double discrepancy_audit(const Graph& g, const Spectrum& s,
                         const std::vector<std::pair<VertexSet, VertexSet>>& pairs);

/// (1/(n d)) sum_{directed edges} ||F(u)-F(v)||^2
///   - (lambda1/n^2) sum_{ordered pairs} ||F(u)-F(v)||^2
/// for a map given as an n x s matrix (row v = F(v)). Nonnegative for every
/// d-regular graph.
double hilbert_expander_check(const Graph& g, double lambda1, const Eigen::MatrixXd& points);

/// Same, for a map given as per-vertex vectors; throws InvalidArgument when
/// the vectors do not share one dimension.
double hilbert_expander_check(const Graph& g, double lambda1,
                              const std::vector<std::vector<double>>& points);

/// Sum over ordered vertex pairs of ||F(u)-F(v)||^2 in O(n s).
double ordered_pair_sum(const Eigen::MatrixXd& points);

/// Sum over directed edges of ||F(u)-F(v)||^2.
double directed_edge_sum(const Graph& g, const Eigen::MatrixXd& points);

}  // namespace nlgap
