#include <doctest.h>

#include <locmix/elimination.hpp>

#include <cmath>
#include <random>

using namespace locmix;

namespace {

struct TwoMixParams {
    double xi1, xi2, lambda, alpha1, alpha2;
};

LocalDiracMixture<double> to_mixture(const TwoMixParams& p) {
    LocalDiracMixture<double> mix;
    mix.components.push_back({p.xi1, {p.lambda, p.lambda * p.alpha1}});
    mix.components.push_back({p.xi2, {1.0 - p.lambda, (1.0 - p.lambda) * p.alpha2}});
    return mix;
}

TwoMixCumulants<double> centered_cumulants(const MomentSequence<double>& m) {
    const auto k = moments_to_cumulants(m);
    return {0.0, k.k(2), k.k(3), k.k(4), k.k(5)};
}

}  // namespace

TEST_SUITE("elimination") {

TEST_CASE("the eliminant quartic vanishes at s = xi_1 + xi_2 on forward data") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> xdist(-2.0, 2.0), wdist(0.15, 0.85), adist(-0.8, 0.8);
    for (int trial = 0; trial < 40; ++trial) {
        TwoMixParams p{xdist(rng), 0, wdist(rng), adist(rng), adist(rng)};
        do p.xi2 = xdist(rng);
        while (std::abs(p.xi2 - p.xi1) < 0.4);
        const auto m = local_dirac_moments(to_mixture(p), 6);
        const auto k = moments_to_cumulants(m);
        const auto kc = centered_cumulants(m);
        const auto g = g_s_poly(kc);
        double scale = 1.0;
        for (const auto& c : g) scale = std::max(scale, std::abs(c));
        // s in the centered frame is (xi_1 - k_1) + (xi_2 - k_1)
        const double s = p.xi1 + p.xi2 - 2 * k.k(1);
        const std::vector<double> gv(g.begin(), g.end());
        CHECK(std::abs(poly::evaluate(gv, s)) < 1e-9 * scale * std::pow(1 + std::abs(s), 4));
    }
}

TEST_CASE("p_from_s returns the product of the centered support points") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> xdist(-2.0, 2.0), wdist(0.2, 0.8), adist(-0.6, 0.6);
    for (int trial = 0; trial < 40; ++trial) {
        TwoMixParams p{xdist(rng), 0, wdist(rng), adist(rng), adist(rng)};
        do p.xi2 = xdist(rng);
        while (std::abs(p.xi2 - p.xi1) < 0.4);
        const auto m = local_dirac_moments(to_mixture(p), 6);
        const auto k = moments_to_cumulants(m);
        const auto kc = centered_cumulants(m);
        const double s = p.xi1 + p.xi2 - 2 * k.k(1);
        double prod;
        try {
            prod = p_from_s(s, kc);
        } catch (const std::runtime_error&) {
            continue;  // isolated degenerate s; covered by the dedicated case below
        }
        const double want = (p.xi1 - k.k(1)) * (p.xi2 - k.k(1));
        CHECK(prod == doctest::Approx(want).epsilon(1e-7));
    }
}

TEST_CASE("full elimination recovery matches the forward parameters") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> xdist(-2.0, 2.0), wdist(0.2, 0.8), adist(-0.6, 0.6);
    for (int trial = 0; trial < 25; ++trial) {
        TwoMixParams p{xdist(rng), 0, wdist(rng), adist(rng), adist(rng)};
        do p.xi2 = xdist(rng);
        while (std::abs(p.xi2 - p.xi1) < 0.4);
        const auto m = local_dirac_moments(to_mixture(p), 6);
        const auto cands = recover_two_component(m);
        REQUIRE(cands.size() >= 1);
        CHECK(cands.size() <= 4);
        const auto& best = cands.front();
        CHECK(best.m6_residual < 1e-6);
        // match up to swapping the two components
        const bool direct = std::abs(best.xi1 - cplx{p.xi1}) < 1e-5;
        const double x1 = direct ? p.xi1 : p.xi2, x2 = direct ? p.xi2 : p.xi1;
        const double lam = direct ? p.lambda : 1.0 - p.lambda;
        const double a1 = direct ? p.alpha1 : p.alpha2, a2 = direct ? p.alpha2 : p.alpha1;
        CHECK(std::abs(best.xi1 - cplx{x1}) < 1e-5);
        CHECK(std::abs(best.xi2 - cplx{x2}) < 1e-5);
        CHECK(std::abs(best.lambda - cplx{lam}) < 1e-5);
        CHECK(std::abs(best.alpha1 - cplx{a1}) < 1e-4);
        CHECK(std::abs(best.alpha2 - cplx{a2}) < 1e-4);
    }
}

TEST_CASE("the statistical filter drops complex or out-of-range candidates") {
    TwoMixParams p{-1.0, 1.5, 0.3, 0.4, -0.2};
    const auto m = local_dirac_moments(to_mixture(p), 6);
    const auto all = recover_two_component(m, false);
    const auto filtered = recover_two_component(m, true);
    CHECK(filtered.size() <= all.size());
    for (const auto& c : filtered) {
        CHECK(std::abs(c.lambda.imag()) < 1e-7);
        CHECK(c.lambda.real() > -1e-9);
        CHECK(c.lambda.real() < 1 + 1e-9);
    }
    CHECK(std::abs(filtered.front().xi1 - cplx{-1.0}) +
              std::abs(filtered.front().xi2 - cplx{1.5}) <
          1e-5);
}

TEST_CASE("input validation") {
    MomentSequence<double> short_m({1, 1, 2, 6, 24}, true);
    CHECK_THROWS_AS((void)recover_two_component(short_m), std::invalid_argument);
    MomentSequence<double> unnorm({2, 1, 2, 6, 24, 120, 720});
    CHECK_THROWS_AS((void)recover_two_component(unnorm), std::invalid_argument);
}

TEST_CASE("p_from_s rejects a degenerate linear coefficient") {
    // with k2 = k3 = 0 the linear coefficient 2 s k2 - 2 k3 vanishes for every s
    TwoMixCumulants<double> kc{0.0, 0.0, 0.0, 1.0, 2.0};
    CHECK_THROWS_AS((void)p_from_s(1.0, kc), std::runtime_error);
}

}  // TEST_SUITE
