#ifndef LOCMIX_ELIMINATION_HPP
#define LOCMIX_ELIMINATION_HPP

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "moments.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace locmix {

/// Cumulants k_1..k_5 of a two-component mixture of first-order local Diracs
/// (k_6 is carried separately by the callers that need rational selection).
template <typename S>
struct TwoMixCumulants {
    S k1{}, k2{}, k3{}, k4{}, k5{};
};

/// Coefficients (ascending in s) of the eliminant quartic g_s whose roots are
/// the candidate values of s = xi_1 + xi_2. Hardcoded 50-term display,
/// cross-checked against forward instances in the tests.
template <typename S>
std::array<S, 5> g_s_poly(const TwoMixCumulants<S>& c) {
    const S k1 = c.k1, k2 = c.k2, k3 = c.k3, k4 = c.k4, k5 = c.k5;
    const S k1_2 = k1 * k1, k1_3 = k1_2 * k1, k1_4 = k1_3 * k1;
    const S k2_2 = k2 * k2, k2_3 = k2_2 * k2, k2_4 = k2_3 * k2;
    const S k3_2 = k3 * k3, k3_3 = k3_2 * k3;
    const S k4_2 = k4 * k4;

    std::array<S, 5> g;
    g[4] = S{4} * k2_3 + k3_2;
    g[3] = -(S{32} * k1 * k2_3 + S{24} * k2_2 * k3 + S{8} * k1 * k3_2 + S{4} * k3 * k4);
    g[2] = S{96} * k1_2 * k2_3 + S{24} * k2_4 + S{144} * k1 * k2_2 * k3 + S{24} * k1_2 * k3_2 +
           S{36} * k2 * k3_2 + S{20} * k2_2 * k4 + S{24} * k1 * k3 * k4 + S{4} * k4_2 +
           S{2} * k3 * k5;
    g[1] = -(S{128} * k1_3 * k2_3 + S{96} * k1 * k2_4 + S{288} * k1_2 * k2_2 * k3 +
             S{32} * k1_3 * k3_2 + S{80} * k2_3 * k3 + S{144} * k1 * k2 * k3_2 +
             S{80} * k1 * k2_2 * k4 + S{48} * k1_2 * k3 * k4 + S{8} * k3_3 +
             S{40} * k2 * k3 * k4 + S{16} * k1 * k4_2 + S{8} * k2_2 * k5 +
             S{8} * k1 * k3 * k5 + S{4} * k4 * k5);
    g[0] = S{64} * k1_4 * k2_3 + S{96} * k1_2 * k2_4 + S{192} * k1_3 * k2_2 * k3 +
           S{16} * k1_4 * k3_2 + S{160} * k1 * k2_3 * k3 + S{144} * k1_2 * k2 * k3_2 +
           S{80} * k1_2 * k2_2 * k4 + S{32} * k1_3 * k3 * k4 + S{72} * k2_2 * k3_2 +
           S{16} * k1 * k3_3 + S{80} * k1 * k2 * k3 * k4 + S{16} * k1_2 * k4_2 +
           S{16} * k1 * k2_2 * k5 + S{8} * k1_2 * k3 * k5 + S{4} * k3_2 * k4 +
           S{16} * k2 * k3 * k5 + S{8} * k1 * k4 * k5 + k5 * k5;
    return g;
}

/// The companion linear relation giving p = xi_1 xi_2 from a root s of g_s.
/// Valid in centered cumulant coordinates (k_1 = 0); callers shift the mean
/// out before use. Throws on a vanishing linear coefficient.
template <typename S>
S p_from_s(const S& s, const TwoMixCumulants<S>& c, double degenerate_tol = 1e-12) {
    const S denom = S{2} * s * c.k2 - S{2} * c.k3;
    const double scale = std::max({abs_val(s * c.k2), abs_val(c.k3), 1e-300});
    if (abs_val(denom) <= degenerate_tol * scale)
        throw std::runtime_error("p_from_s: degenerate s (vanishing linear coefficient)");
    const S num = S{6} * s * c.k2 * c.k2 - s * s * c.k3 - S{10} * c.k2 * c.k3 + S{2} * s * c.k4 - c.k5;
    return -num / denom;
}

/// One candidate parameter tuple of the elimination route.
struct TwoMixCandidate {
    cplx xi1, xi2;
    cplx lambda, alpha1, alpha2;
    double m6_residual = 0;
    bool boundary_lambda = false;  // lambda at 0 or 1: alpha undefined on that side
};

namespace detail {

inline cplx two_mix_moment(int i, const TwoMixCandidate& t) {
    const cplx l1p = t.lambda * t.alpha1, l2p = (cplx{1.0} - t.lambda) * t.alpha2;
    const double di = i;
    return t.lambda * std::pow(t.xi1, i) + l1p * di * std::pow(t.xi1, i - 1) +
           (cplx{1.0} - t.lambda) * std::pow(t.xi2, i) + l2p * di * std::pow(t.xi2, i - 1);
}

}  // namespace detail

/// Elimination-theory recovery of a 2-mixture of 1-local Diracs from
/// normalized moments of degree >= 6. Works in centered cumulant coordinates,
/// walks every root s of g_s, and ranks the resulting tuples by the deviation
/// of their predicted sixth moment. With `statistical`, complex tuples and
/// mixing weights outside [0,1] are discarded.
template <typename S>
std::vector<TwoMixCandidate> recover_two_component(const MomentSequence<S>& m,
                                                   bool statistical = false,
                                                   double boundary_tol = 1e-10) {
    if (!m.normalized) throw std::invalid_argument("recover_two_component: moments must be normalized");
    if (m.degree() < 6) throw std::invalid_argument("recover_two_component: need degree >= 6");
    const auto kall = moments_to_cumulants(m);
    const cplx k1 = cplx(kall.k(1));
    TwoMixCumulants<cplx> kc{cplx{0.0}, cplx(kall.k(2)), cplx(kall.k(3)), cplx(kall.k(4)),
                             cplx(kall.k(5))};
    const auto g = g_s_poly(kc);
    std::vector<cplx> gcoeffs(g.begin(), g.end());
    double gscale = 0;
    for (const auto& v : gcoeffs) gscale = std::max(gscale, std::abs(v));
    if (gscale == 0) throw std::runtime_error("recover_two_component: g_s vanishes identically");
    const auto sroots = poly::roots(gcoeffs);

    const cplx m6 = cplx(m[6]);
    std::vector<TwoMixCandidate> out;
    int degenerate = 0;
    for (const auto& sc : sroots) {
        cplx p;
        try {
            p = p_from_s(sc, kc, 1e-10);
        } catch (const std::runtime_error&) {
            ++degenerate;
            continue;
        }
        // xi' from X^2 - s X + p, then undo the centering shift
        const cplx disc = std::sqrt(sc * sc - cplx{4.0} * p);
        TwoMixCandidate cand;
        cand.xi1 = (sc - disc) / cplx{2.0} + k1;
        cand.xi2 = (sc + disc) / cplx{2.0} + k1;
        // linear system in (lambda, lambda_1', lambda_2') from m_1..m_5
        Eigen::MatrixXcd a(5, 3);
        Eigen::VectorXcd rhs(5);
        for (int i = 1; i <= 5; ++i) {
            const double di = i;
            a(i - 1, 0) = std::pow(cand.xi1, i) - std::pow(cand.xi2, i);
            a(i - 1, 1) = di * std::pow(cand.xi1, i - 1);
            a(i - 1, 2) = di * std::pow(cand.xi2, i - 1);
            rhs(i - 1) = cplx(m[i]) - std::pow(cand.xi2, i);
        }
        const Eigen::VectorXcd w = a.colPivHouseholderQr().solve(rhs);
        cand.lambda = w(0);
        const cplx l1p = w(1), l2p = w(2);
        if (std::abs(cand.lambda) <= boundary_tol || std::abs(cplx{1.0} - cand.lambda) <= boundary_tol) {
            cand.boundary_lambda = true;
            cand.alpha1 = std::abs(cand.lambda) > boundary_tol ? l1p / cand.lambda : cplx{0.0};
            cand.alpha2 = std::abs(cplx{1.0} - cand.lambda) > boundary_tol
                              ? l2p / (cplx{1.0} - cand.lambda)
                              : cplx{0.0};
        } else {
            cand.alpha1 = l1p / cand.lambda;
            cand.alpha2 = l2p / (cplx{1.0} - cand.lambda);
        }
        cand.m6_residual = std::abs(detail::two_mix_moment(6, cand) - m6);
        if (statistical) {
            const double imag_tol = 1e-8 * std::max(1.0, std::abs(cand.lambda));
            if (std::abs(cand.lambda.imag()) > imag_tol || cand.lambda.real() < -1e-10 ||
                cand.lambda.real() > 1 + 1e-10)
                continue;
        }
        out.push_back(cand);
    }
    if (out.empty()) {
        if (degenerate > 0)
            throw std::runtime_error("recover_two_component: all roots degenerate; fall back to the "
                                     "moment-matrix recovery route");
        throw std::runtime_error("recover_two_component: no candidates");
    }
    std::sort(out.begin(), out.end(), [](const TwoMixCandidate& x, const TwoMixCandidate& y) {
        return x.m6_residual < y.m6_residual;
    });
    return out;
}

}  // namespace locmix

#endif
