#ifndef LOCMIX_FOURIER_HPP
#define LOCMIX_FOURIER_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "moments.hpp"
#include "recovery.hpp"
#include "scalar.hpp"

namespace locmix {

/// Piecewise-linear function on [-pi, pi): r breakpoints t_1 < ... < t_r,
/// segment j carrying value f_j and slope f'_j at its left end; the function
/// is zero outside [t_1, t_r).
struct PiecewiseLinearSignal {
    std::vector<double> breakpoints;
    std::vector<double> values;  // f_1..f_{r-1}
    std::vector<double> slopes;  // f'_1..f'_{r-1}

    void validate() const {
        const std::size_t r = breakpoints.size();
        if (r < 1) throw std::invalid_argument("signal: need at least one breakpoint");
        if (values.size() != r - 1 || slopes.size() != r - 1)
            throw std::invalid_argument("signal: need r-1 values and slopes for r breakpoints");
        for (std::size_t j = 0; j < r; ++j) {
            if (breakpoints[j] < -std::numbers::pi || breakpoints[j] >= std::numbers::pi)
                throw std::invalid_argument("signal: breakpoints must lie in [-pi, pi)");
            if (j > 0 && breakpoints[j] <= breakpoints[j - 1])
                throw std::invalid_argument("signal: breakpoints must be strictly increasing");
        }
    }

    int segments() const { return static_cast<int>(breakpoints.size()); }

    double operator()(double x) const {
        for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j)
            if (x >= breakpoints[j] && x < breakpoints[j + 1])
                return values[j] + (x - breakpoints[j]) * slopes[j];
        return 0.0;
    }
};

/// Fourier coefficients c_{-s}..c_s; coefficient k lives at index k + s.
struct FourierSamples {
    int s = 0;
    std::vector<cplx> coefficients;

    const cplx& c(int k) const { return coefficients[k + s]; }
    cplx& c(int k) { return coefficients[k + s]; }
};

namespace detail {

// jump data at breakpoint j (1-based): f_j - f_{j-1} + (t_{j-1} - t_j) f'_{j-1}
inline cplx value_jump(const PiecewiseLinearSignal& sig, int j) {
    const int r = sig.segments();
    const double fj = (j <= r - 1) ? sig.values[j - 1] : 0.0;
    const double fjm1 = (j >= 2) ? sig.values[j - 2] : 0.0;
    const double fpjm1 = (j >= 2) ? sig.slopes[j - 2] : 0.0;
    const double tjm1 = (j >= 2) ? sig.breakpoints[j - 2] : 0.0;
    return fj - fjm1 + (tjm1 - sig.breakpoints[j - 1]) * fpjm1;
}

inline cplx slope_jump(const PiecewiseLinearSignal& sig, int j) {
    const int r = sig.segments();
    const double fpj = (j <= r - 1) ? sig.slopes[j - 1] : 0.0;
    const double fpjm1 = (j >= 2) ? sig.slopes[j - 2] : 0.0;
    return fpj - fpjm1;
}

}  // namespace detail

/// Closed-form Fourier coefficients of a piecewise-linear signal; c_0 by
/// direct integration (it is not consumed by the moment bridge).
inline FourierSamples fourier_coefficients(const PiecewiseLinearSignal& sig, int s) {
    sig.validate();
    if (s < 1) throw std::invalid_argument("fourier_coefficients: s must be >= 1");
    const int r = sig.segments();
    const double two_pi = 2 * std::numbers::pi;
    FourierSamples out;
    out.s = s;
    out.coefficients.assign(2 * s + 1, cplx{0.0});
    for (int k = -s; k <= s; ++k) {
        if (k == 0) {
            double integral = 0;
            for (int j = 1; j < r; ++j) {
                const double dt = sig.breakpoints[j] - sig.breakpoints[j - 1];
                integral += sig.values[j - 1] * dt + sig.slopes[j - 1] * dt * dt / 2;
            }
            out.c(0) = integral / two_pi;
            continue;
        }
        const cplx ik{0.0, static_cast<double>(k)};
        cplx acc{0.0};
        for (int j = 1; j <= r; ++j) {
            const cplx term = ik * detail::value_jump(sig, j) + detail::slope_jump(sig, j);
            acc += term * std::exp(-ik * sig.breakpoints[j - 1]);
        }
        out.c(k) = acc / (two_pi * ik * ik);
    }
    return out;
}

/// The bridge m_k = 2 pi (i(k-s))^2 c_{k-s} for 0 <= k <= 2s, k != s, with
/// the convention m_s = 0 (the slope jumps telescope to zero).
inline MomentSequence<cplx> fourier_to_moments(const FourierSamples& c) {
    const int s = c.s;
    std::vector<cplx> m(2 * s + 1, cplx{0.0});
    for (int k = 0; k <= 2 * s; ++k) {
        if (k == s) continue;
        const cplx ik{0.0, static_cast<double>(k - s)};
        m[k] = 2 * std::numbers::pi * ik * ik * c.c(k - s);
    }
    return MomentSequence<cplx>(std::move(m));
}

/// The 1-local mixture on the unit circle whose moments equal the bridged
/// Fourier data: xi_j = e^{-i t_j} with the s-dependent weights.
inline LocalDiracMixture<cplx> mixture_from_signal(const PiecewiseLinearSignal& sig, int s) {
    sig.validate();
    if (s < 1) throw std::invalid_argument("mixture_from_signal: s must be >= 1");
    const int r = sig.segments();
    LocalDiracMixture<cplx> mix;
    const cplx iu{0.0, 1.0};
    for (int j = 1; j <= r; ++j) {
        const cplx xi = std::exp(-iu * sig.breakpoints[j - 1]);
        const cplx g = detail::value_jump(sig, j);
        const cplx lambda = std::pow(xi, -s) * (detail::slope_jump(sig, j) - iu * static_cast<double>(s) * g);
        const cplx lambda_prime = std::pow(xi, 1 - s) * iu * g;
        mix.components.push_back({xi, {lambda, lambda_prime}});
    }
    return mix;
}

/// Inverts mixture_from_signal: breakpoints from the arguments of the support
/// points, then values and slopes by the triangular jump relations. Returns
/// the closure residuals (f_r, f'_r), which vanish for consistent data.
inline PiecewiseLinearSignal signal_from_mixture(const LocalDiracMixture<cplx>& mix, int s,
                                                 cplx* closure_value = nullptr,
                                                 cplx* closure_slope = nullptr,
                                                 double circle_tol = 1e-3) {
    const int r = mix.size();
    if (r < 1) throw std::invalid_argument("signal_from_mixture: empty mixture");
    struct Comp {
        double t;
        cplx xi, lambda, lambda_prime;
    };
    std::vector<Comp> comps;
    for (const auto& c : mix.components) {
        if (c.lambdas.size() != 2)
            throw std::invalid_argument("signal_from_mixture: components must have order 1");
        if (std::abs(std::abs(c.xi) - 1.0) > circle_tol)
            throw std::runtime_error("signal_from_mixture: not a circular mixture");
        const cplx xi = c.xi / std::abs(c.xi);
        double t = -std::arg(xi);
        if (t >= std::numbers::pi) t = -std::numbers::pi;
        comps.push_back({t, xi, c.lambdas[0], c.lambdas[1]});
    }
    std::sort(comps.begin(), comps.end(), [](const Comp& a, const Comp& b) { return a.t < b.t; });

    const cplx iu{0.0, 1.0};
    PiecewiseLinearSignal sig;
    cplx f_prev{0.0}, fp_prev{0.0};
    double t_prev = 0.0;
    for (int j = 1; j <= r; ++j) {
        const auto& c = comps[j - 1];
        const cplx g = -iu * c.lambda_prime * std::pow(c.xi, s - 1);
        const cplx slope_jump = c.lambda * std::pow(c.xi, s) + iu * static_cast<double>(s) * g;
        const cplx f_j = f_prev - (t_prev - c.t) * fp_prev + g;
        const cplx fp_j = fp_prev + slope_jump;
        sig.breakpoints.push_back(c.t);
        if (j <= r - 1) {
            sig.values.push_back(f_j.real());
            sig.slopes.push_back(fp_j.real());
        } else {
            if (closure_value) *closure_value = f_j;
            if (closure_slope) *closure_slope = fp_j;
        }
        f_prev = f_j;
        fp_prev = fp_j;
        t_prev = c.t;
    }
    return sig;
}

struct ReconstructionResult {
    PiecewiseLinearSignal signal;
    RecoveryDiagnostics diagnostics;
    cplx closure_value{0.0};
    cplx closure_slope{0.0};
};

/// End-to-end pipeline: Fourier coefficients -> moments -> order-1 mixture
/// recovery -> signal. Requires 2s >= 3r.
inline ReconstructionResult reconstruct_signal(const FourierSamples& c, int r,
                                               const RecoveryConfig& cfg = {}) {
    if (2 * c.s < 3 * r)
        throw std::invalid_argument("reconstruct_signal: need 2s >= 3r Fourier coefficients");
    const auto mom = fourier_to_moments(c);
    std::vector<cplx> truncated(mom.values.begin(), mom.values.begin() + 3 * r + 1);
    double mscale = 0;
    for (const auto& v : truncated) mscale = std::max(mscale, std::abs(v));
    if (mscale < 1e-14) {
        // identically zero signal: one breakpoint, no interior data
        ReconstructionResult out;
        out.signal.breakpoints = {0.0};
        return out;
    }
    MomentSequence<cplx> m(std::move(truncated));
    auto rec = recover(m, r, 1, cfg);
    ReconstructionResult out;
    out.signal = signal_from_mixture(rec.mixture, c.s, &out.closure_value, &out.closure_slope);
    out.diagnostics = rec.diagnostics;
    return out;
}

/// Adds independent complex Gaussian noise of standard deviation sigma to
/// each coefficient; deterministic per seed.
inline FourierSamples add_coefficient_noise(FourierSamples c, double sigma, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (auto& v : c.coefficients) v += cplx(gauss(rng), gauss(rng));
    return c;
}

}  // namespace locmix

#endif
