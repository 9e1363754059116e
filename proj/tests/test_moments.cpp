#include <doctest.h>

#include <locmix/moments.hpp>

#include <cmath>
#include <random>

using namespace locmix;

namespace {

LocalDiracMixture<double> single_order1(double xi, double l0, double l1) {
    LocalDiracMixture<double> mix;
    mix.components.push_back({xi, {l0, l1}});
    return mix;
}

}  // namespace

TEST_SUITE("moments") {

TEST_CASE("forward moments of a first-order component at xi=2") {
    // m_i = 2^i + i 2^{i-1}: 1, 3, 8, 20, 48
    const auto m = local_dirac_moments(single_order1(2.0, 1.0, 1.0), 4);
    REQUIRE(m.degree() == 4);
    const double want[] = {1, 3, 8, 20, 48};
    for (int i = 0; i <= 4; ++i) CHECK(m[i] == doctest::Approx(want[i]));
    CHECK(m.normalized);
}

TEST_CASE("forward moments handle several components and orders") {
    LocalDiracMixture<double> mix;
    mix.components.push_back({1.0, {0.5}});
    mix.components.push_back({-1.0, {0.5, 0.25, 0.125}});
    const auto m = local_dirac_moments(mix, 3);
    // m_i = 0.5*1 + 0.5*(-1)^i + 0.25*i*(-1)^{i-1} + 0.125*i(i-1)*(-1)^{i-2}
    CHECK(m[0] == doctest::Approx(1.0));
    CHECK(m[1] == doctest::Approx(0.5 - 0.5 + 0.25));
    CHECK(m[2] == doctest::Approx(0.5 + 0.5 - 0.5 + 0.25));
    CHECK(m[3] == doctest::Approx(0.5 - 0.5 + 0.75 - 0.75));
}

TEST_CASE("cumulants of a concrete sequence") {
    // m = (1, 3, 8, 20) -> k = (3, -1, 2)
    MomentSequence<double> m({1, 3, 8, 20}, true);
    const auto k = moments_to_cumulants(m);
    REQUIRE(k.degree() == 3);
    CHECK(k.k(1) == doctest::Approx(3));
    CHECK(k.k(2) == doctest::Approx(-1));
    CHECK(k.k(3) == doctest::Approx(2));
}

TEST_CASE("Bernoulli(1/2) cumulants") {
    // m_i = 1/2 for i >= 1 -> k = (1/2, 1/4, 0, -1/8, 0)
    MomentSequence<double> m({1, 0.5, 0.5, 0.5, 0.5, 0.5}, true);
    const auto k = moments_to_cumulants(m);
    CHECK(k.k(1) == doctest::Approx(0.5));
    CHECK(k.k(2) == doctest::Approx(0.25));
    CHECK(k.k(3) == doctest::Approx(0.0));
    CHECK(k.k(4) == doctest::Approx(-0.125));
    CHECK(k.k(5) == doctest::Approx(0.0));
}

TEST_CASE("cumulant/moment roundtrip is exact up to degree 12") {
    // the natural scale of the roundtrip is the largest intermediate cumulant
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> vals{1.0};
        for (int i = 1; i <= 12; ++i) vals.push_back(uni(rng));
        MomentSequence<double> m(vals, true);
        const auto k = moments_to_cumulants(m);
        double kmax = 1.0;
        for (int i = 1; i <= 12; ++i) kmax = std::max(kmax, std::abs(k.k(i)));
        const auto back = cumulants_to_moments(k);
        for (int i = 0; i <= 12; ++i) CHECK(std::abs(back[i] - m[i]) < 1e-12 * kmax);
    }
}

TEST_CASE("moments_to_cumulants rejects unnormalized input") {
    MomentSequence<double> m({2.0, 1.0});
    CHECK_THROWS_AS((void)moments_to_cumulants(m), std::invalid_argument);
}

TEST_CASE("MGF convolution of two standard Gaussians doubles the variance") {
    const auto g = gaussian_moments(4);
    const auto c = mgf_convolve(g, g);
    CHECK(c[2] == doctest::Approx(2.0));
    CHECK(c[4] == doctest::Approx(12.0));  // 3 sigma^4 with sigma^2 = 2
    CHECK(c[1] == doctest::Approx(0.0));
    CHECK(c[3] == doctest::Approx(0.0));
}

TEST_CASE("mgf_deconvolve inverts mgf_convolve") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a{1.0}, b{1.0};
        for (int i = 1; i <= 8; ++i) {
            a.push_back(uni(rng));
            b.push_back(uni(rng));
        }
        MomentSequence<double> ma(a, true), mb(b, true);
        const auto c = mgf_convolve(ma, mb);
        double cmax = 1.0;
        for (const auto& v : c.values) cmax = std::max(cmax, std::abs(v));
        const auto back = mgf_deconvolve(c, ma);
        for (int i = 0; i <= 8; ++i) CHECK(std::abs(back[i] - mb[i]) < 1e-11 * cmax);
    }
}

TEST_CASE("convolution with the delta-at-zero sequence is the identity") {
    std::vector<double> delta(7, 0.0);
    delta[0] = 1.0;
    MomentSequence<double> e(delta, true);
    MomentSequence<double> m({1, 2, 5, 14, 42, 132, 429}, true);
    const auto c = mgf_convolve(m, e);
    for (int i = 0; i <= 6; ++i) CHECK(c[i] == doctest::Approx(m[i]));
}

TEST_CASE("Pareto moments and the pole guard") {
    const auto m = pareto_moments({2.5, 2.0}, 2);
    CHECK(m[0] == doctest::Approx(1.0));
    CHECK(m[1] == doctest::Approx(2.5 / 1.5 * 2.0));
    CHECK(m[2] == doctest::Approx(2.5 / 0.5 * 4.0));
    CHECK_THROWS_AS((void)pareto_moments({2.0, 1.0}, 3), std::invalid_argument);
}

TEST_CASE("Pareto reparametrization gives coordinatewise inverse moments") {
    // with (alpha', xi') = (-xi/alpha, 1/xi), Pareto moments at the primed
    // parameters are 1 / (first-order local Dirac moments at (alpha, xi))
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uni(0.5, 2.5);
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = uni(rng), xi = uni(rng);
        const int d = 6;
        const auto dirac = local_dirac_moments(single_order1(xi, 1.0, alpha), d);
        const auto rep = pareto_reparametrize(alpha, xi);
        const auto par = pareto_moments(rep, d);
        for (int i = 0; i <= d; ++i)
            CHECK(par[i] * dirac[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Gaussian moments follow the double-factorial recursion") {
    const auto m = gaussian_moments(8, 2.0);
    CHECK(m[2] == doctest::Approx(4.0));
    CHECK(m[4] == doctest::Approx(48.0));
    CHECK(m[6] == doctest::Approx(960.0));
    CHECK(m[1] == 0.0);
    CHECK(m[7] == 0.0);
}

TEST_CASE("validation of the normalized flag") {
    CHECK_THROWS_AS(MomentSequence<double>({2.0}, true), std::invalid_argument);
    CHECK_THROWS_AS(MomentSequence<double>(std::vector<double>{}), std::invalid_argument);
}

}  // TEST_SUITE
