#ifndef LOCMIX_MOMENTS_HPP
#define LOCMIX_MOMENTS_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace locmix {

/// Ordered moment scalars m_0..m_d. The `normalized` flag asserts m_0 = 1,
/// the statistical convention; projective rescaling is left to callers.
template <typename S>
struct MomentSequence {
    std::vector<S> values;
    bool normalized = false;

    MomentSequence() = default;
    MomentSequence(std::vector<S> v, bool norm = false) : values(std::move(v)), normalized(norm) {
        if (values.empty()) throw std::invalid_argument("MomentSequence: length must be >= 1");
        if (normalized && values[0] != S{1})
            throw std::invalid_argument("MomentSequence: normalized flag requires m_0 = 1");
    }

    int degree() const { return static_cast<int>(values.size()) - 1; }
    const S& operator[](std::size_t i) const { return values[i]; }
    S& operator[](std::size_t i) { return values[i]; }
};

/// Cumulants k_1..k_d; k_0 = 0 is implied.
template <typename S>
struct CumulantSequence {
    std::vector<S> values;

    CumulantSequence() = default;
    explicit CumulantSequence(std::vector<S> v) : values(std::move(v)) {
        if (values.empty()) throw std::invalid_argument("CumulantSequence: length must be >= 1");
    }

    int degree() const { return static_cast<int>(values.size()); }
    /// k_i, 1-based.
    const S& k(std::size_t i) const { return values[i - 1]; }
};

/// One local Dirac component: support point xi and the coefficients of the
/// differential-operator polynomial Lambda_j, lambdas[k] multiplying the k-th
/// derivative of the Dirac at xi.
template <typename S>
struct DiracComponent {
    S xi{};
    std::vector<S> lambdas;

    int order() const { return static_cast<int>(lambdas.size()) - 1; }
};

template <typename S>
struct LocalDiracMixture {
    std::vector<DiracComponent<S>> components;

    LocalDiracMixture() = default;
    explicit LocalDiracMixture(std::vector<DiracComponent<S>> comps) : components(std::move(comps)) {
        for (const auto& c : components)
            if (c.lambdas.empty())
                throw std::invalid_argument("LocalDiracMixture: each component needs lambda_0");
    }

    int size() const { return static_cast<int>(components.size()); }

    int max_order() const {
        int l = 0;
        for (const auto& c : components) l = std::max(l, c.order());
        return l;
    }

    S weight_sum() const {
        S s{0};
        for (const auto& c : components) s += c.lambdas[0];
        return s;
    }
};

struct ParetoParams {
    double alpha;
    double xi;
};

/// m_i = sum_j sum_{k<=min(l_j,i)} lambda_{j,k} * i!/(i-k)! * xi_j^{i-k}.
template <typename S>
MomentSequence<S> local_dirac_moments(const LocalDiracMixture<S>& mix, int d) {
    if (d < 0) throw std::invalid_argument("local_dirac_moments: degree must be >= 0");
    std::vector<S> m(d + 1, S{0});
    for (const auto& comp : mix.components) {
        std::vector<S> xipow(d + 1);
        xipow[0] = S{1};
        for (int i = 1; i <= d; ++i) xipow[i] = xipow[i - 1] * comp.xi;
        for (int i = 0; i <= d; ++i) {
            const int kmax = std::min<int>(comp.order(), i);
            for (int k = 0; k <= kmax; ++k)
                m[i] += comp.lambdas[k] * falling_factorial<S>(i, k) * xipow[i - k];
        }
    }
    const bool norm = abs_val(m[0] - S{1}) == 0;
    return MomentSequence<S>(std::move(m), norm);
}

/// K(t) = log M(t) via the triangular power-series recursion on the
/// exponential generating functions; valid for any degree.
template <typename S>
CumulantSequence<S> moments_to_cumulants(const MomentSequence<S>& m) {
    if (!m.normalized || m.values[0] != S{1})
        throw std::invalid_argument("moments_to_cumulants: input must be normalized (m_0 = 1)");
    const int d = m.degree();
    // Ordinary coefficients a_i = m_i / i!; log series l_n = a_n - (1/n) sum_{k<n} k l_k a_{n-k}.
    std::vector<S> a(d + 1), l(d + 1, S{0});
    S fact{1};
    for (int i = 0; i <= d; ++i) {
        if (i > 0) fact *= static_cast<S>(i);
        a[i] = m.values[i] / fact;
    }
    for (int n = 1; n <= d; ++n) {
        S acc = a[n];
        for (int k = 1; k < n; ++k) acc -= static_cast<S>(k) * l[k] * a[n - k] / static_cast<S>(n);
        l[n] = acc;
    }
    std::vector<S> kvals(d);
    fact = S{1};
    for (int i = 1; i <= d; ++i) {
        fact *= static_cast<S>(i);
        kvals[i - 1] = l[i] * fact;
    }
    return CumulantSequence<S>(std::move(kvals));
}

/// M(t) = exp K(t); exact triangular inverse of moments_to_cumulants.
template <typename S>
MomentSequence<S> cumulants_to_moments(const CumulantSequence<S>& k) {
    const int d = k.degree();
    std::vector<S> a(d + 1, S{0});  // ordinary coefficients of K(t), a_0 = 0
    S fact{1};
    for (int i = 1; i <= d; ++i) {
        fact *= static_cast<S>(i);
        a[i] = k.values[i - 1] / fact;
    }
    std::vector<S> b(d + 1, S{0});  // exp series: b_n = (1/n) sum_{j=1}^n j a_j b_{n-j}
    b[0] = S{1};
    for (int n = 1; n <= d; ++n) {
        S acc{0};
        for (int j = 1; j <= n; ++j) acc += static_cast<S>(j) * a[j] * b[n - j];
        b[n] = acc / static_cast<S>(n);
    }
    std::vector<S> m(d + 1);
    fact = S{1};
    m[0] = S{1};
    for (int i = 1; i <= d; ++i) {
        fact *= static_cast<S>(i);
        m[i] = b[i] * fact;
    }
    return MomentSequence<S>(std::move(m), true);
}

/// Binomial convolution: coefficientwise product of the exponential
/// generating functions, i.e. the MGF product of independent summands.
template <typename S>
MomentSequence<S> mgf_convolve(const MomentSequence<S>& a, const MomentSequence<S>& b) {
    if (a.degree() != b.degree())
        throw std::invalid_argument("mgf_convolve: degrees must match");
    const int d = a.degree();
    std::vector<S> c(d + 1, S{0});
    for (int k = 0; k <= d; ++k)
        for (int j = 0; j <= k; ++j) c[k] += binomial<S>(k, j) * a.values[j] * b.values[k - j];
    const bool norm = c[0] == S{1};
    return MomentSequence<S>(std::move(c), norm);
}

/// Triangular inverse of mgf_convolve: returns b with mgf_convolve(a, b) = c.
template <typename S>
MomentSequence<S> mgf_deconvolve(const MomentSequence<S>& c, const MomentSequence<S>& a) {
    if (a.values[0] == S{0})
        throw std::invalid_argument("mgf_deconvolve: a_0 must be nonzero");
    if (a.degree() != c.degree())
        throw std::invalid_argument("mgf_deconvolve: degrees must match");
    const int d = c.degree();
    std::vector<S> b(d + 1, S{0});
    for (int k = 0; k <= d; ++k) {
        S acc = c.values[k];
        for (int j = 0; j < k; ++j) acc -= binomial<S>(k, j) * a.values[k - j] * b[j];
        b[k] = acc / a.values[0];
    }
    const bool norm = b[0] == S{1};
    return MomentSequence<S>(std::move(b), norm);
}

/// Pareto moments m_i = alpha/(alpha - i) * xi^i; poles at integer alpha <= d.
inline MomentSequence<double> pareto_moments(const ParetoParams& p, int d) {
    if (d < 0) throw std::invalid_argument("pareto_moments: degree must be >= 0");
    for (int i = 0; i <= d; ++i)
        if (p.alpha == static_cast<double>(i))
            throw std::invalid_argument("pareto_moments: alpha hits a pole in {0,...,d}");
    std::vector<double> m(d + 1);
    double xipow = 1.0;
    for (int i = 0; i <= d; ++i) {
        m[i] = p.alpha / (p.alpha - i) * xipow;
        xipow *= p.xi;
    }
    return MomentSequence<double>(std::move(m), true);
}

/// Reparametrization (alpha, xi) -> (-xi/alpha, 1/xi) under which Pareto
/// moments become coordinatewise inverses of 1-local Dirac moments.
inline ParetoParams pareto_reparametrize(double alpha, double xi) {
    if (alpha == 0 || xi == 0)
        throw std::invalid_argument("pareto_reparametrize: alpha and xi must be nonzero");
    return ParetoParams{-xi / alpha, 1.0 / xi};
}

/// Moments of the standard Gaussian: 1, 0, 1, 0, 3, 0, 15, ...
inline MomentSequence<double> gaussian_moments(int d, double sigma = 1.0) {
    std::vector<double> m(d + 1, 0.0);
    m[0] = 1.0;
    for (int i = 2; i <= d; i += 2) m[i] = m[i - 2] * (i - 1) * sigma * sigma;
    return MomentSequence<double>(std::move(m), true);
}

}  // namespace locmix

#endif
