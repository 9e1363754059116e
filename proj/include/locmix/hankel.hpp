#ifndef LOCMIX_HANKEL_HPP
#define LOCMIX_HANKEL_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "moments.hpp"
#include "scalar.hpp"

namespace locmix {

template <typename S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Truncated moment matrix M_{a,b} with entries m_{i+j}, size (a+1)x(b+1).
template <typename S>
struct HankelMatrix {
    Matrix<S> entries;
    int a;
    int b;
};

template <typename S>
HankelMatrix<S> moment_matrix(const MomentSequence<S>& m, int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("moment_matrix: negative block size");
    if (m.degree() < a + b)
        throw std::invalid_argument("moment_matrix: insufficient moments for M_{a,b}");
    Matrix<S> e(a + 1, b + 1);
    for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) e(i, j) = m.values[i + j];
    return HankelMatrix<S>{std::move(e), a, b};
}

/// Number of singular values above rel_tol times the largest one.
template <typename S>
int numeric_rank(const Matrix<S>& mat, double rel_tol = 1e-8) {
    Eigen::JacobiSVD<Matrix<S>> svd(mat);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0) return 0;
    int r = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++r;
    return r;
}

namespace detail {

/// Characteristic geometric growth rate of a moment sequence, used to balance
/// Hankel blocks: with entries |m_k| ~ rho^k, the diagonal scaling
/// diag(rho^-i) M diag(rho^-j) has entries of comparable size, and diagonal
/// scaling by positive values preserves rank exactly.
template <typename S>
double growth_rate(const MomentSequence<S>& m) {
    double best = 1.0;
    for (int k = 1; k <= m.degree(); ++k) {
        const double a = abs_val(m.values[k]);
        if (a > 0) best = std::max(best, std::pow(a, 1.0 / k));
    }
    return std::clamp(best, 1e-8, 1e8);
}

}  // namespace detail

template <typename S>
int numeric_rank(const HankelMatrix<S>& h, double rel_tol = 1e-8) {
    return numeric_rank(h.entries, rel_tol);
}

/// Rank of the balanced block diag(rho^-i) M_{a,b} diag(rho^-j); insensitive
/// to the overall growth of the moments, unlike the raw SVD cut.
template <typename S>
int balanced_numeric_rank(const MomentSequence<S>& m, int a, int b, double rel_tol = 1e-8) {
    const double rho = detail::growth_rate(m);
    Matrix<S> e(a + 1, b + 1);
    for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) e(i, j) = m.values[i + j] / static_cast<S>(std::pow(rho, i + j));
    return numeric_rank(e, rel_tol);
}

/// Minimal-degree monic generator of the kernel of M_{s-1,s}.
/// Requires the rank condition rank M_{s-1,s-1} = rank M_{s,s}; the roots of
/// the returned polynomial are the support points, with multiplicity equal to
/// one plus the order of the component.
template <typename S>
std::vector<S> kernel_polynomial(const MomentSequence<S>& m, int s, double rel_tol = 1e-8) {
    if (s < 1) throw std::invalid_argument("kernel_polynomial: s must be >= 1");
    if (m.degree() < 2 * s)
        throw std::invalid_argument("kernel_polynomial: need moments up to degree 2s");
    const int rank_small = balanced_numeric_rank(m, s - 1, s - 1, rel_tol);
    const int rank_big = balanced_numeric_rank(m, s, s, rel_tol);
    if (rank_small != rank_big)
        throw std::runtime_error("kernel_polynomial: insufficient or inconsistent moments (rank condition fails)");
    const int r = rank_big;
    if (r == 0) throw std::runtime_error("kernel_polynomial: zero moment matrix");
    // Restrict the balanced M_{s-1,s} to the first r+1 columns; its kernel is
    // spanned by the coefficient vector of the degree-r generator, written in
    // the rescaled variable X = x / rho.
    const double rho = detail::growth_rate(m);
    Matrix<S> block(s, r + 1);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j <= r; ++j)
            block(i, j) = m.values[i + j] / static_cast<S>(std::pow(rho, i + j));
    Eigen::JacobiSVD<Matrix<S>> svd(block, Eigen::ComputeFullV);
    Vector<S> v = svd.matrixV().col(r);
    if (abs_val(v(r)) == 0)
        throw std::runtime_error("kernel_polynomial: degenerate kernel vector");
    std::vector<S> coeffs(r + 1);
    // undo the balancing (x^i coefficient picks up rho^{-i}) and renormalize
    for (int i = 0; i <= r; ++i) coeffs[i] = v(i) * static_cast<S>(std::pow(rho, r - i)) / v(r);
    return coeffs;
}

}  // namespace locmix

#endif
