#ifndef LOCMIX_POLY_HPP
#define LOCMIX_POLY_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "scalar.hpp"

namespace locmix::poly {

// Polynomials are coefficient vectors in ascending degree order.

template <typename S>
std::vector<S> multiply(const std::vector<S>& a, const std::vector<S>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<S> c(a.size() + b.size() - 1, S{0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

template <typename S>
std::vector<S> power(const std::vector<S>& a, int n) {
    std::vector<S> r{S{1}};
    for (int i = 0; i < n; ++i) r = multiply(r, a);
    return r;
}

template <typename S, typename X>
auto evaluate(const std::vector<S>& a, const X& x) {
    using R = decltype(S{} * X{});
    R acc{0};
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Monic polynomial from its roots.
template <typename S>
std::vector<S> from_roots(const std::vector<S>& roots) {
    std::vector<S> p{S{1}};
    for (const S& r : roots) p = multiply(p, std::vector<S>{-r, S{1}});
    return p;
}

/// All complex roots via the companion matrix of the monic normalization.
/// Leading coefficients below `deflate_tol` (relative to the max coefficient
/// magnitude) are dropped, deflating to the actual degree.
inline std::vector<cplx> roots(std::vector<cplx> c, double deflate_tol = 1e-12) {
    double scale = 0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0) throw std::invalid_argument("roots: zero polynomial");
    while (c.size() > 1 && std::abs(c.back()) < deflate_tol * scale) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    std::vector<cplx> out(n);
    for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

inline std::vector<cplx> roots(const std::vector<double>& c, double deflate_tol = 1e-12) {
    std::vector<cplx> cc(c.begin(), c.end());
    return roots(cc, deflate_tol);
}

struct RootCluster {
    cplx center;
    int multiplicity;
};

/// Greedy clustering of numerically computed roots within absolute tolerance.
/// Multiple roots of a polynomial scatter on a circle of radius ~eps^(1/k),
/// so the tolerance must exceed that scatter for the target multiplicity.
inline std::vector<RootCluster> cluster(const std::vector<cplx>& rts, double tol) {
    std::vector<RootCluster> clusters;
    std::vector<bool> used(rts.size(), false);
    for (std::size_t i = 0; i < rts.size(); ++i) {
        if (used[i]) continue;
        cplx sum = rts[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < rts.size(); ++j) {
            if (!used[j] && std::abs(rts[j] - sum / static_cast<double>(count)) <= tol) {
                sum += rts[j];
                ++count;
                used[j] = true;
            }
        }
        clusters.push_back({sum / static_cast<double>(count), count});
    }
    return clusters;
}

}  // namespace locmix::poly

#endif
