#ifndef LOCMIX_RECOVERY_HPP
#define LOCMIX_RECOVERY_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hankel.hpp"
#include "moments.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace locmix {

struct RecoveryConfig {
    int starts = 200;
    int max_iter = 100;
    double newton_tol = 1e-12;
    double cluster_tol = 1e-6;
    double rank_tol = 1e-8;
    double accept_ratio = 10.0;
    unsigned long seed = 0;
    /// Track all (l+1)^r total-degree homotopy paths in addition to random
    /// Newton starts; this is what makes the true candidate reliably found.
    bool use_homotopy = true;
    int max_homotopy_paths = 65536;
};

/// A monic candidate p of degree r with the residuals of the primary system
/// M_{r-1,(l+1)r} p^{l+1} and of the selector system M_{r,(l+1)r} p^{l+1}.
struct CandidateSolution {
    std::vector<cplx> p;
    double residual_primary = 0;
    double residual_selector = 0;
};

struct RecoveryDiagnostics {
    int candidate_count = 0;
    double best_selector_residual = 0;
    double second_selector_residual = 0;
    bool ambiguous = false;
    int rows_used = 0;
    double vandermonde_condition = 0;
    std::vector<int> rank_profile;
};

template <typename S>
struct RecoveryResult {
    LocalDiracMixture<S> mixture;
    RecoveryDiagnostics diagnostics;
};

namespace detail {

inline std::vector<cplx> to_complex(const std::vector<cplx>& v) { return v; }
inline std::vector<cplx> to_complex(const std::vector<double>& v) {
    return std::vector<cplx>(v.begin(), v.end());
}

/// Coefficients of p^{l+1} for monic p given by its low coefficients p_0..p_{r-1}.
inline std::vector<cplx> monic_power_coeffs(const std::vector<cplx>& plow, int l) {
    std::vector<cplx> full(plow);
    full.push_back(cplx{1.0});
    return poly::power(full, l + 1);
}

inline double moment_scale(const std::vector<cplx>& m) {
    double s = 0;
    for (const auto& v : m) s = std::max(s, std::abs(v));
    return s > 0 ? s : 1.0;
}

/// The moment system F(p) = M_{rows-1,(l+1)r} p^{l+1} together with its
/// analytic Jacobian, d(p^{l+1})/dp_i = (l+1) p^l X^i.
class MomentSystem {
public:
    MomentSystem(const std::vector<cplx>& m, int r, int l, int rows)
        : r_(r), l_(l), rows_(rows), cols_((l + 1) * r + 1) {
        if (static_cast<int>(m.size()) < rows + cols_ - 1)
            throw std::invalid_argument("moment system: insufficient moments");
        mat_.resize(rows, cols_);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols_; ++j) mat_(i, j) = m[i + j];
        // row equilibration: moments can span many orders of magnitude, and a
        // uniform residual tolerance is meaningless without it
        for (int i = 0; i < rows; ++i) {
            const double s = mat_.row(i).cwiseAbs().maxCoeff();
            if (s > 0) mat_.row(i) /= s;
        }
    }

    int unknowns() const { return r_; }
    int rows() const { return rows_; }

    Eigen::VectorXcd operator()(const std::vector<cplx>& p) const {
        const auto q = monic_power_coeffs(p, l_);
        Eigen::VectorXcd qv(cols_);
        for (int j = 0; j < cols_; ++j) qv(j) = q[j];
        return mat_ * qv;
    }

    Eigen::MatrixXcd jacobian(const std::vector<cplx>& p) const {
        std::vector<cplx> full(p);
        full.push_back(cplx{1.0});
        const auto plow = poly::power(full, l_);  // degree l*r
        Eigen::MatrixXcd jac(rows_, r_);
        for (int i = 0; i < r_; ++i) {
            Eigen::VectorXcd dq = Eigen::VectorXcd::Zero(cols_);
            for (std::size_t t = 0; t < plow.size(); ++t)
                dq(static_cast<int>(t) + i) = static_cast<double>(l_ + 1) * plow[t];
            jac.col(i) = mat_ * dq;
        }
        return jac;
    }

private:
    int r_, l_, rows_, cols_;
    Eigen::MatrixXcd mat_;
};

inline Eigen::VectorXcd solve_step(const Eigen::MatrixXcd& jac, const Eigen::VectorXcd& rhs) {
    if (jac.rows() == jac.cols()) return jac.partialPivLu().solve(rhs);
    return jac.colPivHouseholderQr().solve(rhs);
}

/// Damped Newton iteration on the moment system; returns the final iterate
/// if the residual dropped below tol_abs, otherwise nullopt.
inline std::optional<std::vector<cplx>> newton_polish(const MomentSystem& sys, std::vector<cplx> p,
                                                      double tol_abs, int max_iter) {
    Eigen::VectorXcd fv = sys(p);
    double fn = fv.norm();
    for (int it = 0; it < max_iter; ++it) {
        if (fn < tol_abs) return p;
        Eigen::VectorXcd dp = solve_step(sys.jacobian(p), fv);
        if (!dp.allFinite()) return std::nullopt;
        double step = 1.0;
        bool improved = false;
        std::vector<cplx> pn(p.size());
        Eigen::VectorXcd fvn;
        double fnn = fn;
        for (int h = 0; h < 50; ++h) {
            for (std::size_t i = 0; i < p.size(); ++i) pn[i] = p[i] - step * dp(i);
            fvn = sys(pn);
            fnn = fvn.norm();
            if (fnn < fn) {
                improved = true;
                break;
            }
            step /= 2;
        }
        if (!improved) break;
        p = pn;
        fv = fvn;
        fn = fnn;
    }
    return fn < tol_abs ? std::optional<std::vector<cplx>>(p) : std::nullopt;
}

/// Total-degree homotopy from the start system a_i (p_i^{l+1} - b_i) = 0 with
/// a random gamma twist; tracks all (l+1)^r paths with an Euler predictor and
/// Newton corrector. Returns raw endpoints (to be polished by the caller).
inline std::vector<std::vector<cplx>> homotopy_endpoints(const MomentSystem& sys, int r, int l,
                                                         std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 2 * 3.14159265358979323846);
    const cplx gamma = std::polar(1.0, uni(rng));
    std::vector<cplx> a(r), b(r);
    for (int i = 0; i < r; ++i) {
        a[i] = cplx(gauss(rng), gauss(rng));
        b[i] = cplx(gauss(rng), gauss(rng));
    }
    const int deg = l + 1;

    auto Gf = [&](const std::vector<cplx>& p) {
        Eigen::VectorXcd g(r);
        for (int i = 0; i < r; ++i) g(i) = a[i] * (std::pow(p[i], deg) - b[i]);
        return g;
    };
    auto JGf = [&](const std::vector<cplx>& p) {
        Eigen::MatrixXcd jg = Eigen::MatrixXcd::Zero(r, r);
        for (int i = 0; i < r; ++i) jg(i, i) = a[i] * static_cast<double>(deg) * std::pow(p[i], deg - 1);
        return jg;
    };
    auto Hf = [&](const std::vector<cplx>& p, double tau) {
        return ((1.0 - tau) * gamma * Gf(p) + tau * sys(p)).eval();
    };
    auto JHf = [&](const std::vector<cplx>& p, double tau) {
        return ((1.0 - tau) * gamma * JGf(p) + tau * sys.jacobian(p)).eval();
    };

    // start roots: all combinations of the deg-th roots of b_i
    std::vector<std::vector<cplx>> broots(r);
    const double two_pi = 2 * 3.14159265358979323846;
    for (int i = 0; i < r; ++i) {
        const double rad = std::pow(std::abs(b[i]), 1.0 / deg);
        const double ang = std::arg(b[i]) / deg;
        for (int t = 0; t < deg; ++t) broots[i].push_back(std::polar(rad, ang + two_pi * t / deg));
    }

    long total = 1;
    for (int i = 0; i < r; ++i) total *= deg;

    std::vector<std::vector<cplx>> endpoints;
    std::vector<int> idx(r, 0);
    for (long path = 0; path < total; ++path) {
        std::vector<cplx> p(r);
        long rem = path;
        for (int i = 0; i < r; ++i) {
            p[i] = broots[i][rem % deg];
            rem /= deg;
        }
        double tau = 0.0, dt = 0.02;
        bool ok = true;
        while (tau < 1.0) {
            const double step = std::min(dt, 1.0 - tau);
            const Eigen::VectorXcd rhs = (sys(p) - gamma * Gf(p)).eval();
            Eigen::VectorXcd dp = solve_step(JHf(p, tau), -rhs);
            if (!dp.allFinite()) {
                ok = false;
                break;
            }
            std::vector<cplx> pn(r);
            for (int i = 0; i < r; ++i) pn[i] = p[i] + step * dp(i);
            const double taun = tau + step;
            bool corrected = false;
            double pnorm = 0;
            for (int c = 0; c < 12; ++c) {
                pnorm = 1.0;
                for (int i = 0; i < r; ++i) pnorm = std::max(pnorm, std::abs(pn[i]));
                const Eigen::VectorXcd hv = Hf(pn, taun);
                if (hv.norm() < 1e-10 * pnorm * pnorm) {
                    corrected = true;
                    break;
                }
                Eigen::VectorXcd d = solve_step(JHf(pn, taun), hv);
                if (!d.allFinite()) break;
                for (int i = 0; i < r; ++i) pn[i] -= d(i);
            }
            if (!corrected || pnorm > 1e8) {
                dt /= 2;
                if (dt < 1e-7) {
                    ok = false;
                    break;
                }
                continue;
            }
            p = pn;
            tau = taun;
            dt = std::min(dt * 1.5, 0.1);
        }
        if (ok) endpoints.push_back(p);
    }
    return endpoints;
}

inline bool distinct_from(const std::vector<cplx>& p, const std::vector<std::vector<cplx>>& set,
                          double tol) {
    for (const auto& q : set) {
        double d = 0;
        for (std::size_t i = 0; i < p.size(); ++i) d = std::max(d, std::abs(p[i] - q[i]));
        if (d <= tol) return false;
    }
    return true;
}

}  // namespace detail

/// Residual vector M_{r-1,(l+1)r} p^{l+1} of a monic candidate p (given by
/// its low coefficients p_0..p_{r-1}).
template <typename S>
std::vector<cplx> power_system_residual(const MomentSequence<S>& m, int r, int l,
                                        const std::vector<cplx>& p) {
    const auto mc = detail::to_complex(m.values);
    detail::MomentSystem sys(mc, r, l, r);
    const Eigen::VectorXcd fv = sys(p);
    return std::vector<cplx>(fv.data(), fv.data() + fv.size());
}

/// Analytic Jacobian of power_system_residual at p, an r x r matrix.
template <typename S>
Eigen::MatrixXcd power_system_jacobian(const MomentSequence<S>& m, int r, int l,
                                       const std::vector<cplx>& p) {
    const auto mc = detail::to_complex(m.values);
    return detail::MomentSystem(mc, r, l, r).jacobian(p);
}

/// All cluster_tol-distinct solutions of M_{r-1,(l+1)r} p^{l+1} = 0 found by
/// homotopy continuation plus damped multi-start Newton. If the solution set
/// looks positive-dimensional (more distinct solutions than the Bezout bound
/// (l+1)^r), a matrix row is added and the search repeated, as far as the
/// available moments allow.
template <typename S>
std::vector<CandidateSolution> solve_minimal_system(const MomentSequence<S>& m, int r, int l,
                                                    const RecoveryConfig& cfg = {}) {
    if (r < 1 || l < 0) throw std::invalid_argument("solve_minimal_system: need r >= 1, l >= 0");
    if (m.degree() + 1 < (l + 2) * r)
        throw std::invalid_argument("solve_minimal_system: insufficient moments");
    const auto mc = detail::to_complex(m.values);
    const double scale = detail::moment_scale(mc);
    const long bezout = [&] {
        long t = 1;
        for (int i = 0; i < r; ++i) t *= (l + 1);
        return t;
    }();

    const int max_rows = m.degree() + 1 - (l + 1) * r;  // rows - 1 + (l+1)r <= degree
    for (int rows = r; rows <= std::max(r, max_rows); ++rows) {
        detail::MomentSystem sys(mc, r, l, rows);

        if (l == 0) {
            // linear Prony recurrence M_{rows-1,r} (p_0..p_{r-1},1)^T = 0
            Eigen::MatrixXcd A(rows, r);
            Eigen::VectorXcd rhs(rows);
            for (int i = 0; i < rows; ++i) {
                for (int j = 0; j < r; ++j) A(i, j) = mc[i + j];
                rhs(i) = -mc[i + r];
            }
            const Eigen::VectorXcd sol = A.colPivHouseholderQr().solve(rhs);
            CandidateSolution cand;
            cand.p.assign(sol.data(), sol.data() + r);
            cand.residual_primary = sys(cand.p).norm();
            if (cand.residual_primary > 1e-6)
                throw std::runtime_error("solve_minimal_system: linear Prony recurrence inconsistent");
            return {cand};
        }

        std::mt19937_64 rng(cfg.seed);
        std::vector<std::vector<cplx>> found;
        auto consume = [&](const std::vector<cplx>& start) {
            auto sol = detail::newton_polish(sys, start, 1e-8, cfg.max_iter);
            if (!sol) return;
            auto refined = detail::newton_polish(sys, *sol, cfg.newton_tol, 10);
            const std::vector<cplx>& p = refined ? *refined : *sol;
            if (detail::distinct_from(p, found, cfg.cluster_tol)) found.push_back(p);
        };

        if (cfg.use_homotopy && bezout <= cfg.max_homotopy_paths && rows == r) {
            for (const auto& endpoint : detail::homotopy_endpoints(sys, r, l, rng)) consume(endpoint);
        }

        // random multi-start Newton from a complex ball around the origin
        double radius = 0;
        for (std::size_t i = 0; i + 1 < mc.size(); ++i)
            if (std::abs(mc[i]) > 1e-14 * scale)
                radius = std::max(radius, std::abs(mc[i + 1] / mc[i]));
        radius = 2 * (radius > 0 ? radius : 1.0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> uni01(0.0, 1.0);
        for (int t = 0; t < cfg.starts; ++t) {
            std::vector<cplx> start(r);
            Eigen::VectorXcd dir(r);
            for (int i = 0; i < r; ++i) dir(i) = cplx(gauss(rng), gauss(rng));
            dir *= radius * std::pow(uni01(rng), 1.0 / (2 * r)) / dir.norm();
            for (int i = 0; i < r; ++i) start[i] = dir(i);
            consume(start);
        }

        if (found.empty()) {
            if (rows < max_rows) continue;
            throw std::runtime_error("solve_minimal_system: no convergent solutions");
        }
        if (static_cast<long>(found.size()) > bezout && rows < max_rows)
            continue;  // positive-dimensional solution set: add a row
        if (static_cast<long>(found.size()) > bezout)
            throw std::runtime_error("solve_minimal_system: insufficient moments to resolve "
                                     "positive-dimensional solution set");

        std::vector<CandidateSolution> out;
        for (auto& p : found) {
            CandidateSolution cand;
            cand.residual_primary = sys(p).norm();
            cand.p = std::move(p);
            out.push_back(std::move(cand));
        }
        return out;
    }
    throw std::runtime_error("solve_minimal_system: no convergent solutions");
}

/// Ranks candidates by the selector residual ||M_{r,(l+1)r} p^{l+1}|| from
/// the extra moment m_{(l+2)r}; sets the ambiguity flag unless the best is
/// accept_ratio times closer to zero than the runner-up.
template <typename S>
CandidateSolution select_candidate(std::vector<CandidateSolution> cands, const MomentSequence<S>& m,
                                   int r, int l, const RecoveryConfig& cfg,
                                   RecoveryDiagnostics* diag = nullptr) {
    if (cands.empty()) throw std::invalid_argument("select_candidate: empty candidate list");
    if (m.degree() + 1 < (l + 2) * r + 1)
        throw std::invalid_argument("select_candidate: selector moment m_{(l+2)r} unavailable");
    const auto mc = detail::to_complex(m.values);
    detail::MomentSystem selector(mc, r, l, r + 1);
    for (auto& c : cands) c.residual_selector = selector(c.p).norm();
    std::sort(cands.begin(), cands.end(), [](const CandidateSolution& x, const CandidateSolution& y) {
        return x.residual_selector < y.residual_selector;
    });
    bool ambiguous = false;
    if (cands.size() > 1)
        ambiguous = !(cands[0].residual_selector * cfg.accept_ratio <= cands[1].residual_selector);
    if (diag) {
        diag->candidate_count = static_cast<int>(cands.size());
        diag->best_selector_residual = cands[0].residual_selector;
        diag->second_selector_residual = cands.size() > 1 ? cands[1].residual_selector : 0;
        diag->ambiguous = ambiguous;
    }
    return cands[0];
}

/// Least-squares solve of the stacked confluent Vandermonde system for the
/// weight coefficients lambda_{j,k}, given distinct support points and the
/// per-component orders. Reports the condition number if requested.
inline std::vector<std::vector<cplx>> confluent_vandermonde_weights(
    const std::vector<cplx>& xis, const std::vector<int>& orders, const std::vector<cplx>& m,
    double* condition = nullptr, double duplicate_tol = 0.0) {
    if (xis.size() != orders.size())
        throw std::invalid_argument("confluent_vandermonde_weights: size mismatch");
    for (std::size_t i = 0; i < xis.size(); ++i)
        for (std::size_t j = i + 1; j < xis.size(); ++j)
            if (std::abs(xis[i] - xis[j]) <= duplicate_tol)
                throw std::invalid_argument(
                    "confluent_vandermonde_weights: duplicate support points; merge and raise the order");
    int total = 0;
    for (int l : orders) total += l + 1;
    const int d = static_cast<int>(m.size()) - 1;
    if (d + 1 < total)
        throw std::invalid_argument("confluent_vandermonde_weights: not enough moments");
    Eigen::MatrixXcd v(d + 1, total);
    int col = 0;
    for (std::size_t j = 0; j < xis.size(); ++j) {
        for (int k = 0; k <= orders[j]; ++k, ++col) {
            for (int i = 0; i <= d; ++i)
                v(i, col) = (i >= k) ? falling_factorial<cplx>(i, k) * std::pow(xis[j], i - k)
                                     : cplx{0.0};
        }
    }
    Eigen::VectorXcd rhs(d + 1);
    for (int i = 0; i <= d; ++i) rhs(i) = m[i];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (condition) {
        const auto& sv = svd.singularValues();
        *condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1)
                                           : std::numeric_limits<double>::infinity();
    }
    const Eigen::VectorXcd w = svd.solve(rhs);
    std::vector<std::vector<cplx>> out(xis.size());
    col = 0;
    for (std::size_t j = 0; j < xis.size(); ++j) {
        out[j].resize(orders[j] + 1);
        for (int k = 0; k <= orders[j]; ++k, ++col) out[j][k] = w(col);
    }
    return out;
}

namespace detail {

/// Gauss-Newton polish of all mixture parameters (support points and weight
/// coefficients) against the relative moment residuals. The moment map is
/// holomorphic in the parameters, so a complex finite-difference Jacobian is
/// exact to first order. Cleans up the error amplification of the two-stage
/// roots-then-weights solve.
inline void refine_mixture(LocalDiracMixture<cplx>& mix, const std::vector<cplx>& m,
                           int iters = 8) {
    const int d = static_cast<int>(m.size()) - 1;
    std::vector<cplx*> params;
    for (auto& c : mix.components) {
        params.push_back(&c.xi);
        for (auto& w : c.lambdas) params.push_back(&w);
    }
    const int np = static_cast<int>(params.size());
    if (np > d + 1) return;  // underdetermined; leave the algebraic solution alone

    auto residual = [&]() {
        const auto pm = local_dirac_moments(mix, d);
        Eigen::VectorXcd res(d + 1);
        for (int i = 0; i <= d; ++i)
            res(i) = (pm.values[i] - m[i]) / std::max(1.0, std::abs(m[i]));
        return res;
    };

    Eigen::VectorXcd res = residual();
    double rn = res.norm();
    for (int it = 0; it < iters && rn > 1e-15; ++it) {
        Eigen::MatrixXcd jac(d + 1, np);
        for (int j = 0; j < np; ++j) {
            const cplx saved = *params[j];
            const double h = 1e-7 * std::max(1.0, std::abs(saved));
            *params[j] = saved + h;
            jac.col(j) = (residual() - res) / h;
            *params[j] = saved;
        }
        const Eigen::VectorXcd step = jac.colPivHouseholderQr().solve(-res);
        if (!step.allFinite()) return;
        std::vector<cplx> saved(np);
        for (int j = 0; j < np; ++j) saved[j] = *params[j];
        double t = 1.0;
        bool moved = false;
        for (int k = 0; k < 20; ++k) {
            for (int j = 0; j < np; ++j) *params[j] = saved[j] + t * step(j);
            const Eigen::VectorXcd rn2 = residual();
            if (rn2.norm() < rn) {
                res = rn2;
                rn = rn2.norm();
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) {
            for (int j = 0; j < np; ++j) *params[j] = saved[j];
            return;
        }
    }
}

}  // namespace detail

/// Full minimal-moment recovery: solve the power system, pick the candidate
/// by the selector moment, take roots, then solve for the weights.
template <typename S>
RecoveryResult<cplx> recover(const MomentSequence<S>& m, int r, int l,
                             const RecoveryConfig& cfg = {}) {
    if (m.degree() + 1 < (l + 2) * r + 1)
        throw std::invalid_argument("recover: need at least (l+2)r + 1 moments");
    RecoveryDiagnostics diag;
    auto cands = solve_minimal_system(m, r, l, cfg);
    const CandidateSolution best = select_candidate(std::move(cands), m, r, l, cfg, &diag);

    std::vector<cplx> coeffs(best.p);
    coeffs.push_back(cplx{1.0});
    const auto rts = poly::roots(coeffs);
    const auto clusters = poly::cluster(rts, cfg.cluster_tol);
    std::vector<cplx> xis;
    std::vector<int> orders;
    for (const auto& c : clusters) {
        xis.push_back(c.center);
        // a root cluster of multiplicity mu absorbs mu copies of the order-l block
        orders.push_back((l + 1) * c.multiplicity - 1);
    }

    const auto mc = detail::to_complex(m.values);
    const int d = std::min<int>(m.degree(), (l + 2) * r);
    std::vector<cplx> mtrunc(mc.begin(), mc.begin() + d + 1);
    const auto weights =
        confluent_vandermonde_weights(xis, orders, mtrunc, &diag.vandermonde_condition);

    LocalDiracMixture<cplx> mix;
    for (std::size_t j = 0; j < xis.size(); ++j)
        mix.components.push_back({xis[j], weights[j]});
    detail::refine_mixture(mix, mtrunc);
    RecoveryResult<cplx> res;
    res.mixture = std::move(mix);
    res.diagnostics = diag;
    return res;
}

/// Linear Prony route from 2s+1 moments: kernel polynomial of M_{s-1,s},
/// clustered roots with multiplicities (order l_j = multiplicity - 1), then
/// confluent Vandermonde weights. Handles mixed per-component orders.
template <typename S>
RecoveryResult<cplx> prony_linear(const MomentSequence<S>& m, const RecoveryConfig& cfg = {}) {
    const int s = m.degree() / 2;
    if (s < 1) throw std::invalid_argument("prony_linear: need moments up to degree 2");
    RecoveryDiagnostics diag;
    diag.rank_profile = {balanced_numeric_rank(m, s - 1, s - 1, cfg.rank_tol),
                         balanced_numeric_rank(m, s, s, cfg.rank_tol)};
    const auto kernel = kernel_polynomial(m, s, cfg.rank_tol);
    std::vector<cplx> kc = detail::to_complex(kernel);
    const auto rts = poly::roots(kc);
    const auto clusters = poly::cluster(rts, cfg.cluster_tol);
    std::vector<cplx> xis;
    std::vector<int> orders;
    for (const auto& c : clusters) {
        xis.push_back(c.center);
        orders.push_back(c.multiplicity - 1);
    }
    const auto mc = detail::to_complex(m.values);
    const auto weights = confluent_vandermonde_weights(xis, orders, mc, &diag.vandermonde_condition);
    LocalDiracMixture<cplx> mix;
    for (std::size_t j = 0; j < xis.size(); ++j)
        mix.components.push_back({xis[j], weights[j]});
    detail::refine_mixture(mix, mc);
    diag.candidate_count = 1;
    RecoveryResult<cplx> res;
    res.mixture = std::move(mix);
    res.diagnostics = diag;
    return res;
}

/// Drops imaginary parts of a complex mixture whose entries are real to
/// within tol (relative to the overall magnitude).
inline LocalDiracMixture<double> realify(const LocalDiracMixture<cplx>& mix, double tol = 1e-6) {
    double scale = 1e-30;
    for (const auto& c : mix.components) {
        scale = std::max(scale, std::abs(c.xi));
        for (const auto& w : c.lambdas) scale = std::max(scale, std::abs(w));
    }
    LocalDiracMixture<double> out;
    for (const auto& c : mix.components) {
        if (std::abs(c.xi.imag()) > tol * scale)
            throw std::runtime_error("realify: support point has significant imaginary part");
        DiracComponent<double> rc;
        rc.xi = c.xi.real();
        for (const auto& w : c.lambdas) {
            if (std::abs(w.imag()) > tol * scale)
                throw std::runtime_error("realify: weight has significant imaginary part");
            rc.lambdas.push_back(w.real());
        }
        out.components.push_back(std::move(rc));
    }
    return out;
}

}  // namespace locmix

#endif
