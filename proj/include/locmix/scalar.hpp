#ifndef LOCMIX_SCALAR_HPP
#define LOCMIX_SCALAR_HPP

#include <cmath>
#include <complex>
#include <type_traits>

namespace locmix {

using cplx = std::complex<double>;

template <typename S>
struct scalar_traits {
    using real_type = S;
    static constexpr bool is_complex = false;
};

template <typename R>
struct scalar_traits<std::complex<R>> {
    using real_type = R;
    static constexpr bool is_complex = true;
};

template <typename S>
using real_t = typename scalar_traits<S>::real_type;

template <typename S>
inline real_t<S> abs_val(const S& x) {
    using std::abs;
    return abs(x);
}

/// Falling factorial i!/(i-k)! computed in the scalar field.
/// Overflow-free for the supported moment range (degree <= ~30).
template <typename S>
inline S falling_factorial(int i, int k) {
    S acc{1};
    for (int t = 0; t < k; ++t) acc *= static_cast<S>(i - t);
    return acc;
}

template <typename S>
inline S binomial(int n, int k) {
    if (k < 0 || k > n) return S{0};
    S acc{1};
    for (int t = 1; t <= k; ++t) acc = acc * static_cast<S>(n - k + t) / static_cast<S>(t);
    return acc;
}

}  // namespace locmix

#endif
