#ifndef LOCMIX_STATMIX_HPP
#define LOCMIX_STATMIX_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "moments.hpp"
#include "poly.hpp"
#include "recovery.hpp"
#include "scalar.hpp"

namespace locmix {

/// One local Gaussian component: a standard Gaussian bump at xi perturbed by
/// derivative terms, psi(x) = sum_i alpha_i phi^(i)(x - xi) with alpha_0 = 1.
/// For order 2 this reads phi(u) [1 - alpha_1 u + alpha_2 (u^2 - 1)].
struct LocalGaussianComponent {
    double xi = 0;
    std::vector<double> alphas;  // alpha_1..alpha_l

    int order() const { return static_cast<int>(alphas.size()); }
};

/// Convex combination sum_j lambda_j psi_{xi_j}. Weights must sum to one for
/// the density interpretation; estimates from noisy moments may deviate, so
/// the check lives in validate() rather than the constructor.
struct LocalGaussianMixture {
    std::vector<LocalGaussianComponent> components;
    std::vector<double> weights;

    LocalGaussianMixture() = default;
    LocalGaussianMixture(std::vector<LocalGaussianComponent> comps, std::vector<double> w)
        : components(std::move(comps)), weights(std::move(w)) {
        if (components.size() != weights.size())
            throw std::invalid_argument("LocalGaussianMixture: one weight per component");
    }

    int size() const { return static_cast<int>(components.size()); }

    void validate(double tol = 1e-9) const {
        if (components.empty()) throw std::invalid_argument("LocalGaussianMixture: empty");
        double s = 0;
        for (double wi : weights) s += wi;
        if (std::abs(s - 1.0) > tol)
            throw std::invalid_argument("LocalGaussianMixture: weights must sum to 1");
    }
};

namespace detail {

inline double std_normal_pdf(double u) {
    return std::exp(-0.5 * u * u) / std::sqrt(2 * std::numbers::pi);
}

inline double std_normal_cdf(double u) { return 0.5 * std::erfc(-u / std::numbers::sqrt2); }

/// phi^(i)(u) = (-1)^i He_i(u) phi(u) with probabilists' Hermite polynomials.
inline double std_normal_derivative(int i, double u) {
    double he_prev = 1.0, he = u;
    if (i == 0) return std_normal_pdf(u);
    for (int n = 1; n < i; ++n) {
        const double he_next = u * he - n * he_prev;
        he_prev = he;
        he = he_next;
    }
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    return sign * he * std_normal_pdf(u);
}

}  // namespace detail

/// Pointwise density value (may be negative for extreme perturbations).
inline double density(const LocalGaussianMixture& gm, double x) {
    double acc = 0;
    for (int j = 0; j < gm.size(); ++j) {
        const auto& c = gm.components[j];
        const double u = x - c.xi;
        double psi = detail::std_normal_pdf(u);
        for (int i = 1; i <= c.order(); ++i)
            psi += c.alphas[i - 1] * detail::std_normal_derivative(i, u);
        acc += gm.weights[j] * psi;
    }
    return acc;
}

/// Cumulative distribution function; the derivative terms integrate in closed
/// form since int phi^(i) = phi^(i-1).
inline double distribution(const LocalGaussianMixture& gm, double x) {
    double acc = 0;
    for (int j = 0; j < gm.size(); ++j) {
        const auto& c = gm.components[j];
        const double u = x - c.xi;
        double psi_int = detail::std_normal_cdf(u);
        for (int i = 1; i <= c.order(); ++i)
            psi_int += c.alphas[i - 1] * detail::std_normal_derivative(i - 1, u);
        acc += gm.weights[j] * psi_int;
    }
    return acc;
}

/// Signed local Dirac mixture whose Gaussian convolution gives gm:
/// lambda_{j,i} = (-1)^i lambda_j alpha_{j,i}.
inline LocalDiracMixture<double> to_signed_dirac(const LocalGaussianMixture& gm) {
    LocalDiracMixture<double> mix;
    for (int j = 0; j < gm.size(); ++j) {
        const auto& c = gm.components[j];
        DiracComponent<double> d;
        d.xi = c.xi;
        d.lambdas.resize(c.order() + 1);
        d.lambdas[0] = gm.weights[j];
        double sign = -1.0;
        for (int i = 1; i <= c.order(); ++i) {
            d.lambdas[i] = sign * gm.weights[j] * c.alphas[i - 1];
            sign = -sign;
        }
        mix.components.push_back(std::move(d));
    }
    return mix;
}

/// Inverse of to_signed_dirac; throws when a component carries no mass.
inline LocalGaussianMixture from_signed_dirac(const LocalDiracMixture<double>& mix,
                                              double weight_tol = 1e-12) {
    std::vector<LocalGaussianComponent> comps;
    std::vector<double> weights;
    for (const auto& d : mix.components) {
        if (std::abs(d.lambdas[0]) <= weight_tol)
            throw std::runtime_error("from_signed_dirac: component with vanishing weight");
        LocalGaussianComponent c;
        c.xi = d.xi;
        double sign = -1.0;
        for (int i = 1; i <= d.order(); ++i) {
            c.alphas.push_back(sign * d.lambdas[i] / d.lambdas[0]);
            sign = -sign;
        }
        comps.push_back(std::move(c));
        weights.push_back(d.lambdas[0]);
    }
    return LocalGaussianMixture(std::move(comps), std::move(weights));
}

/// Population moments m_0..m_d of the mixture density: the MGF factorizes as
/// (signed Dirac part) x (standard Gaussian).
inline MomentSequence<double> mixture_moments(const LocalGaussianMixture& gm, int d) {
    return mgf_convolve(local_dirac_moments(to_signed_dirac(gm), d), gaussian_moments(d));
}

/// Inverse-CDF sampling by bisection; deterministic per seed. Requires the
/// density to be a genuine (nonnegative) density so the CDF is monotone.
inline std::vector<double> sample(const LocalGaussianMixture& gm, std::size_t n,
                                  unsigned long seed) {
    gm.validate();
    double lo0 = gm.components.front().xi, hi0 = lo0;
    for (const auto& c : gm.components) {
        lo0 = std::min(lo0, c.xi);
        hi0 = std::max(hi0, c.xi);
    }
    lo0 -= 12.0;
    hi0 += 12.0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = unif(rng);
        double lo = lo0, hi = hi0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (distribution(gm, mid) < u ? lo : hi) = mid;
        }
        out[i] = 0.5 * (lo + hi);
    }
    return out;
}

/// Raw sample moments m_i = (1/n) sum x^i, m_0 = 1.
inline MomentSequence<double> empirical_moments(const std::vector<double>& xs, int d) {
    if (xs.empty()) throw std::invalid_argument("empirical_moments: empty sample");
    std::vector<double> m(d + 1, 0.0);
    for (double x : xs) {
        double p = 1.0;
        for (int i = 0; i <= d; ++i) {
            m[i] += p;
            p *= x;
        }
    }
    for (auto& v : m) v /= static_cast<double>(xs.size());
    m[0] = 1.0;
    return MomentSequence<double>(std::move(m), true);
}

namespace detail {

/// Parameter vector layout: (xi_1..xi_r, lambda_{1,0..l}, ..., lambda_{r,0..l})
/// for the latent signed Dirac mixture; moments are compared after the
/// Gaussian convolution so the weighting matches the observed scale.
inline LocalDiracMixture<double> unpack_parameters(const Eigen::VectorXd& th, int r, int l) {
    LocalDiracMixture<double> mix;
    for (int j = 0; j < r; ++j) {
        DiracComponent<double> c;
        c.xi = th(j);
        c.lambdas.resize(l + 1);
        for (int k = 0; k <= l; ++k) c.lambdas[k] = th(r + j * (l + 1) + k);
        mix.components.push_back(std::move(c));
    }
    return mix;
}

inline MomentSequence<double> convolved_model_moments(const Eigen::VectorXd& th, int r, int l,
                                                      int d, const MomentSequence<double>& base) {
    MomentSequence<double> bt(std::vector<double>(base.values.begin(), base.values.begin() + d + 1),
                              base.normalized);
    return mgf_convolve(local_dirac_moments(unpack_parameters(th, r, l), d), bt);
}

inline double fit_score(const Eigen::VectorXd& th, int r, int l, const MomentSequence<double>& m,
                        const MomentSequence<double>& base) {
    const int d = m.degree();
    const auto pm = convolved_model_moments(th, r, l, d, base);
    double s = 0;
    for (int i = 0; i <= d; ++i) {
        const double w = 1.0 / std::max(1.0, std::abs(m[i]));
        s += std::pow((pm[i] - m[i]) * w, 2);
    }
    return s;
}

/// Damped Gauss-Newton moment matching with relative weighting; pools the
/// information of every available moment instead of an exactly determined
/// subset, which matters for sample moments.
inline Eigen::VectorXd refine_parameters(Eigen::VectorXd th, int r, int l,
                                         const MomentSequence<double>& m,
                                         const MomentSequence<double>& base, int iters = 40) {
    const int d = m.degree();
    const int np = static_cast<int>(th.size());
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXd resid(d + 1);
        Eigen::MatrixXd jac(d + 1, np);
        const auto pm = convolved_model_moments(th, r, l, d, base);
        for (int i = 0; i <= d; ++i)
            resid(i) = (pm[i] - m[i]) / std::max(1.0, std::abs(m[i]));
        for (int j = 0; j < np; ++j) {
            const double h = 1e-6 * std::max(1.0, std::abs(th(j)));
            Eigen::VectorXd tp = th;
            tp(j) += h;
            const auto pmp = convolved_model_moments(tp, r, l, d, base);
            for (int i = 0; i <= d; ++i)
                jac(i, j) = (pmp[i] - pm[i]) / h / std::max(1.0, std::abs(m[i]));
        }
        const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-resid);
        const double s0 = fit_score(th, r, l, m, base);
        double t = 1.0;
        bool moved = false;
        for (int k = 0; k < 20; ++k) {
            const Eigen::VectorXd cand = th + t * step;
            if (fit_score(cand, r, l, m, base) < s0) {
                th = cand;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) break;
    }
    return th;
}

}  // namespace detail

/// Moment estimator: deconvolve the Gaussian factor from the MGF, walk every
/// algebraic candidate of the latent signed Dirac system, keep the
/// statistically admissible ones (real locations, positive weights), refine
/// each by Gauss-Newton moment matching, and return the best fit. Needs
/// moments up to degree (l+2) r. Components come back sorted by location.
inline LocalGaussianMixture estimate(const MomentSequence<double>& m, int r, int l,
                                     const MomentSequence<double>& base_moments,
                                     const RecoveryConfig& cfg = {}) {
    if (!m.normalized) throw std::invalid_argument("estimate: moments must be normalized");
    if (!base_moments.normalized)
        throw std::invalid_argument("estimate: base moments must be normalized");
    if (m.degree() < (l + 2) * r)
        throw std::invalid_argument("estimate: need moments up to degree (l+2)r");
    if (base_moments.degree() < m.degree())
        throw std::invalid_argument("estimate: base moments must cover the observed degree");
    const auto dirac_moments = mgf_deconvolve(m, base_moments);
    const MomentSequence<cplx> mc(std::vector<cplx>(dirac_moments.values.begin(),
                                                    dirac_moments.values.end()),
                                  dirac_moments.normalized);
    const auto cands = solve_minimal_system(mc, r, l, cfg);

    const int nw = (l + 1) * r;  // weight count; square solve on m_0..m_{nw-1}
    double best_score = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_th;
    for (const auto& cand : cands) {
        std::vector<cplx> pmonic(cand.p);
        pmonic.push_back(cplx{1.0});
        const auto rts = poly::roots(pmonic);
        if (static_cast<int>(rts.size()) != r) continue;
        bool admissible = true;
        for (const auto& z : rts)
            if (std::abs(z.imag()) > 0.5) admissible = false;
        for (std::size_t i = 0; i < rts.size() && admissible; ++i)
            for (std::size_t j = i + 1; j < rts.size(); ++j)
                if (std::abs(rts[i].real() - rts[j].real()) < 1e-3) admissible = false;
        if (!admissible) continue;

        std::vector<cplx> xis;
        for (const auto& z : rts) xis.emplace_back(z.real(), 0.0);
        const std::vector<int> orders(r, l);
        const std::vector<cplx> mlow(mc.values.begin(), mc.values.begin() + nw);
        std::vector<std::vector<cplx>> w;
        try {
            w = confluent_vandermonde_weights(xis, orders, mlow, nullptr);
        } catch (const std::exception&) {
            continue;
        }
        for (int j = 0; j < r; ++j) {
            const double lam0 = w[j][0].real();
            if (lam0 < 0.005 || lam0 > 1.05) admissible = false;
        }
        if (!admissible) continue;

        Eigen::VectorXd th(r * (l + 2));
        for (int j = 0; j < r; ++j) th(j) = xis[j].real();
        for (int j = 0; j < r; ++j)
            for (int k = 0; k <= l; ++k) th(r + j * (l + 1) + k) = w[j][k].real();
        th = detail::refine_parameters(th, r, l, m, base_moments);
        const double score = detail::fit_score(th, r, l, m, base_moments);
        if (score < best_score) {
            best_score = score;
            best_th = th;
        }
    }
    if (best_th.size() == 0)
        throw std::runtime_error("estimate: no statistically admissible candidate");

    auto mix = detail::unpack_parameters(best_th, r, l);
    std::sort(mix.components.begin(), mix.components.end(),
              [](const DiracComponent<double>& a, const DiracComponent<double>& b) {
                  return a.xi < b.xi;
              });
    return from_signed_dirac(mix);
}

/// Convenience overload with the standard Gaussian base.
inline LocalGaussianMixture estimate(const MomentSequence<double>& m, int r, int l,
                                     const RecoveryConfig& cfg = {}) {
    return estimate(m, r, l, gaussian_moments(m.degree()), cfg);
}

}  // namespace locmix

#endif
