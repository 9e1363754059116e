#include <doctest.h>

#include <locmix/ideals.hpp>

#include <cmath>
#include <random>

using namespace locmix;

namespace {

// forward moments of one component of the given order with random data
MomentSequence<double> random_local_moments(std::mt19937_64& rng, int order, int d) {
    std::uniform_real_distribution<double> uni(-3.0, 3.0);
    LocalDiracMixture<double> mix;
    DiracComponent<double> c;
    c.xi = uni(rng);
    c.lambdas.push_back(1.0);
    for (int k = 1; k <= order; ++k) c.lambdas.push_back(uni(rng) / 3.0);
    mix.components.push_back(c);
    return local_dirac_moments(mix, d);
}

double seq_scale(const MomentSequence<double>& m) {
    double s = 1.0;
    for (const auto& v : m.values) s = std::max(s, std::abs(v));
    return s * s;  // generators are quadratic in the moments
}

}  // namespace

TEST_SUITE("ideals") {

TEST_CASE("first-order generators vanish on first-order moment vectors") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_local_moments(rng, 1, 10);
        const double tol = 1e-10 * seq_scale(m);
        for (int i = 2; i <= 8; ++i)
            for (int j = i; j <= 8; ++j)
                CHECK(std::abs(eval_fij(m, i, j)) < tol);
    }
}

TEST_CASE("first-order generators reject a generic vector") {
    MomentSequence<double> m({1, 2, 3, 5, 8, 13, 21}, true);
    bool any_nonzero = false;
    for (int i = 2; i <= 4; ++i)
        for (int j = i; j <= 4; ++j)
            if (std::abs(eval_fij(m, i, j)) > 1e-6) any_nonzero = true;
    CHECK(any_nonzero);
    CHECK_THROWS_AS((void)eval_fij(m, 1, 3), std::invalid_argument);
}

TEST_CASE("hand value of f_{2,2} on the xi=2 first-order sequence") {
    // m = (1,3,8,20,48): 3*8*8 - 2*2*3*20 + 1*1*48 = 192 - 240 + 48 = 0
    MomentSequence<double> m({1, 3, 8, 20, 48}, true);
    CHECK(eval_fij(m, 2, 2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("cube generators (alternating forms, n=3) vanish at first order") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_local_moments(rng, 1, 10);
        const double tol = 1e-10 * seq_scale(m);
        for (int a0 = 0; a0 + 3 <= 10; ++a0)
            for (int a1 = a0; a1 + 3 <= 10; ++a1)
                CHECK(std::abs(eval_delta_power(m, a0, a1, 3)) < tol);
    }
}

TEST_CASE("alternating forms with n = 2l+1 vanish at order l") {
    std::mt19937_64 rng(23);
    for (int l : {0, 1, 2, 3}) {
        const int n = 2 * l + 1;
        for (int trial = 0; trial < 20; ++trial) {
            const auto m = random_local_moments(rng, l, 12);
            const double tol = 1e-9 * seq_scale(m) * std::pow(2.0, n);
            for (int a0 = 0; a0 + n <= 12; ++a0)
                for (int a1 = a0; a1 + n <= 12; ++a1)
                    CHECK(std::abs(eval_delta_power(m, a0, a1, n)) < tol);
        }
    }
}

TEST_CASE("second-order family vanishes on order-2 moment vectors") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_local_moments(rng, 2, 10);
        const double tol = 1e-9 * seq_scale(m);
        for (int j = 0; j + 3 <= 10; ++j)
            for (int i = std::max(0, j - 3); i + 3 <= 10; ++i)
                CHECK(std::abs(eval_second_order_generator(m, i, j)) < tol);
    }
}

TEST_CASE("Pareto generators vanish on Pareto moment vectors") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> uni(0.3, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        double alpha = uni(rng) + 8.0;  // clear of the poles 0..d
        const auto m = pareto_moments({alpha, uni(rng)}, 8);
        double s = 1.0;
        for (const auto& v : m.values) s = std::max(s, std::abs(v));
        const double tol = 1e-11 * s * s * s * s;
        for (int i = 2; i <= 6; ++i)
            for (int j = i; j <= 6; ++j)
                CHECK(std::abs(eval_pareto_generator(m, i, j)) < tol);
    }
}

TEST_CASE("Cremona transform flattens first-order vectors") {
    MomentSequence<double> m({1, 3, 8, 20, 48, 112, 256}, true);
    const auto y = cremona_transform(m);
    REQUIRE(y.size() == 6);
    CHECK(y[0] == doctest::Approx(3));
    CHECK(y[1] == doctest::Approx(8));
    CHECK(y[2] == doctest::Approx(20));
    for (int i = 3; i < 6; ++i) CHECK(std::abs(y[i]) < 1e-9 * 256 * 256);
}

TEST_CASE("Cremona recursion values on a generic vector") {
    // z_4 = 4 z_1 z_3 - 3 z_2^2, z_5 = 3 z_1 z_4' - 2 z_2 z_3 with the odd rule
    MomentSequence<double> m({1, 1, 2, 6, 24, 120}, true);
    const auto y = cremona_transform(m);
    // even i=4: k=2: z4 = 4 z1 z3 - 3 z2^2 = 24 - 12 = 12 -> y4 = 24 - 12
    CHECK(y[3] == doctest::Approx(24 - 12));
    // odd i=5: k=2: z5 = 3 z1 z4 - 2 z2 z3 = 36 - 24 = 12 -> y5 = 120 - 12
    CHECK(y[4] == doctest::Approx(120 - 12));
}

TEST_CASE("discriminant quartic vanishes on tangent-variety points") {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = random_local_moments(rng, 1, 6);
        const auto y = cremona_transform(m);
        double s = 1.0;
        for (const auto& v : y) s = std::max(s, std::abs(v));
        CHECK(std::abs(eval_discriminant_quartic(y[0], y[1], y[2])) < 1e-9 * s * s * s * s);
    }
    // and takes a definite nonzero value away from it
    CHECK(eval_discriminant_quartic(1.0, 2.0, 0.0) == doctest::Approx(3 * 4 - 4 * 8));
}

}  // TEST_SUITE
