#ifndef LOCMIX_IDEALS_HPP
#define LOCMIX_IDEALS_HPP

#include <stdexcept>
#include <vector>

#include "moments.hpp"
#include "scalar.hpp"

namespace locmix {

// Numerical evaluation of the moment-ideal generator families, used as
// membership certificates for moment vectors. All evaluators assume the
// dehomogenized convention M_0 = 1 on the input sequence.

/// First-order generator family
/// f_{i,j} = (j-i+3) M_i M_j - 2(j-i+2) M_{i-1} M_{j+1} + (j-i+1) M_{i-2} M_{j+2},
/// valid for 2 <= i <= j <= d-2; vanishes on 1-local Dirac moment vectors.
template <typename S>
S eval_fij(const MomentSequence<S>& m, int i, int j) {
    const int d = m.degree();
    if (!(2 <= i && i <= j && j <= d - 2))
        throw std::invalid_argument("eval_fij: need 2 <= i <= j <= d-2");
    const S a = static_cast<S>(j - i + 3), b = static_cast<S>(j - i + 2), c = static_cast<S>(j - i + 1);
    return a * m[i] * m[j] - S{2} * b * m[i - 1] * m[j + 1] + c * m[i - 2] * m[j + 2];
}

/// Alternating binomial bilinear form
/// sum_k (-1)^k binom(n,k) M_{a0+k} M_{a1+n-k}. For n = 3 these are the
/// Vandermonde-cube generators; n = 2l+1 is the conjectural order-l family
/// (vanishing is checked experimentally, generation is not).
template <typename S>
S eval_delta_power(const MomentSequence<S>& m, int a0, int a1, int n) {
    const int d = m.degree();
    if (a0 < 0 || a1 < 0 || n < 0 || a0 + n > d || a1 + n > d)
        throw std::invalid_argument("eval_delta_power: index out of range");
    S acc{0};
    double sign = 1.0;
    for (int k = 0; k <= n; ++k) {
        acc += static_cast<S>(sign) * binomial<S>(n, k) * m[a0 + k] * m[a1 + n - k];
        sign = -sign;
    }
    return acc;
}

/// Conjectural second-order family
/// c0 M_{i+3} M_j + c1 M_{i+2} M_{j+1} + c2 M_{i+1} M_{j+2} + c3 M_i M_{j+3}
/// with c0 = (j-i+1)(j-i+2), c1 = -3(j-i-1)(j-i+2), c2 = 3(j-i+1)(j-i-2),
/// c3 = -(j-i-1)(j-i-2); valid for i >= 0, j >= 0, i >= j-3.
template <typename S>
S eval_second_order_generator(const MomentSequence<S>& m, int i, int j) {
    const int d = m.degree();
    if (i < 0 || j < 0 || i < j - 3 || i + 3 > d || j + 3 > d)
        throw std::invalid_argument("eval_second_order_generator: index out of range");
    const double u = j - i;
    const S c0 = static_cast<S>((u + 1) * (u + 2));
    const S c1 = static_cast<S>(-3 * (u - 1) * (u + 2));
    const S c2 = static_cast<S>(3 * (u + 1) * (u - 2));
    const S c3 = static_cast<S>(-(u - 1) * (u - 2));
    return c0 * m[i + 3] * m[j] + c1 * m[i + 2] * m[j + 1] + c2 * m[i + 1] * m[j + 2] +
           c3 * m[i] * m[j + 3];
}

/// Pareto generator family (quartic forms), 2 <= i <= j <= d-2:
/// (j-i+3) M_{i-2} M_{i-1} M_{j+1} M_{j+2} - 2(j-i+2) M_{i-2} M_i M_j M_{j+2}
///   + (j-i+1) M_{i-1} M_i M_j M_{j+1}.
template <typename S>
S eval_pareto_generator(const MomentSequence<S>& m, int i, int j) {
    const int d = m.degree();
    if (!(2 <= i && i <= j && j <= d - 2))
        throw std::invalid_argument("eval_pareto_generator: need 2 <= i <= j <= d-2");
    const S a = static_cast<S>(j - i + 3), b = static_cast<S>(j - i + 2), c = static_cast<S>(j - i + 1);
    return a * m[i - 2] * m[i - 1] * m[j + 1] * m[j + 2] -
           S{2} * b * m[i - 2] * m[i] * m[j] * m[j + 2] +
           c * m[i - 1] * m[i] * m[j] * m[j + 1];
}

/// Triangular Cremona linearization: returns (y_1, ..., y_d) with y_i = M_i
/// for i <= 3 and y_i = M_i - z_i above, where z follows the odd/even
/// quadratic recursion. On the 1-local Dirac variety y_4 = ... = y_d = 0.
template <typename S>
std::vector<S> cremona_transform(const MomentSequence<S>& m) {
    const int d = m.degree();
    if (d < 3) throw std::invalid_argument("cremona_transform: need degree >= 3");
    std::vector<S> z(d + 1), y(d + 1);
    for (int i = 0; i <= std::min(3, d); ++i) z[i] = m[i];
    for (int i = 4; i <= d; ++i) {
        if (i % 2 == 0) {
            const int k = i / 2;
            z[i] = static_cast<S>(k * k) * z[k - 1] * z[k + 1] -
                   static_cast<S>((k - 1) * (k + 1)) * z[k] * z[k];
        } else {
            const int k = (i - 1) / 2;
            z[i] = static_cast<S>(k * (k + 1)) / S{2} * z[k - 1] * z[k + 2] -
                   static_cast<S>((k - 1) * (k + 2)) / S{2} * z[k] * z[k + 1];
        }
    }
    std::vector<S> out(d);
    for (int i = 1; i <= d; ++i) out[i - 1] = (i <= 3) ? m[i] : m[i] - z[i];
    return out;
}

/// Discriminant quartic 3 y1^2 y2^2 - 4 y1^3 y3 - 4 y2^3 + 6 y1 y2 y3 - y3^2;
/// cuts out the tangent variety of the Veronese curve in Cremona coordinates.
template <typename S>
S eval_discriminant_quartic(const S& y1, const S& y2, const S& y3) {
    return S{3} * y1 * y1 * y2 * y2 - S{4} * y1 * y1 * y1 * y3 - S{4} * y2 * y2 * y2 +
           S{6} * y1 * y2 * y3 - y3 * y3;
}

}  // namespace locmix

#endif
