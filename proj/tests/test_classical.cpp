#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skinchain/classical.hpp"
#include "skinchain/dynamics.hpp"
#include "skinchain/errors.hpp"
#include "helpers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace skinchain;
using classical::BirthDeathModel;
using numerics::RealMatrix;
using numerics::RealVector;

TEST_CASE("build_generator: L=2 closed form") {
    const RealMatrix m = classical::build_generator({2, 1.7, 0.6});
    CHECK(m(0, 0) == doctest::Approx(-1.7));
    CHECK(m(0, 1) == doctest::Approx(0.6));
    CHECK(m(1, 0) == doctest::Approx(1.7));
    CHECK(m(1, 1) == doctest::Approx(-0.6));
}

TEST_CASE("build_generator: columns sum to zero") {
    for (int L : {2, 3, 7, 25}) {
        const RealMatrix m = classical::build_generator({L, 1.3, 0.45});
        for (int j = 0; j < L; ++j)
            CHECK(std::abs(m.col(j).sum()) < 1e-14);
    }
}

TEST_CASE("build_generator: continuous-time Monte Carlo flow agreement") {
    // Gillespie simulation of the jump process vs the exponentiated generator.
    const BirthDeathModel bd{4, 1.0, 0.5};
    const double t_final = 2.0;
    const int n_traj = 1'000'000;

    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::array<long long, 4> counts{0, 0, 0, 0};
    for (int traj = 0; traj < n_traj; ++traj) {
        int site = 0;
        double t = 0.0;
        for (;;) {
            const double rate_right = (site < bd.L - 1) ? bd.J_R : 0.0;
            const double rate_left = (site > 0) ? bd.J_L : 0.0;
            const double total = rate_right + rate_left;
            t += -std::log(1.0 - unif(rng)) / total;
            if (t >= t_final) break;
            site += (unif(rng) * total < rate_right) ? 1 : -1;
        }
        ++counts[static_cast<std::size_t>(site)];
    }

    const classical::ClassicalModes modes = classical::biorthogonal_modes(bd);
    RealVector p0 = RealVector::Zero(4);
    p0(0) = 1.0;
    const RealVector expected = classical::evolve(modes, p0, t_final);

    double tv = 0.0, sigma = 0.0;
    for (int n = 0; n < 4; ++n) {
        const double empirical = static_cast<double>(counts[static_cast<std::size_t>(n)]) / n_traj;
        tv += 0.5 * std::abs(empirical - expected(n));
        sigma += 0.5 * std::sqrt(expected(n) * (1.0 - expected(n)) / n_traj);
    }
    CHECK(tv <= 3.0 * sigma);
}

TEST_CASE("stationary_distribution: uniform at r=1") {
    for (int L : {2, 5, 13}) {
        const RealVector p = classical::stationary_distribution({L, 0.8, 0.8});
        for (int n = 0; n < L; ++n)
            CHECK(p(n) == doctest::Approx(1.0 / L).epsilon(1e-14));
    }
}

TEST_CASE("stationary_distribution: L=3, r=2 gives (1,2,4)/7") {
    const RealVector p = classical::stationary_distribution({3, 2.0, 1.0});
    CHECK(p(0) == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    CHECK(p(1) == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
    CHECK(p(2) == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("stationary_distribution: r=1/2 decreases and spans the kernel") {
    const BirthDeathModel bd{5, 0.5, 1.0};
    const RealVector p = classical::stationary_distribution(bd);
    for (int n = 1; n < 5; ++n)
        CHECK(p(n) < p(n - 1));
    const RealMatrix m = classical::build_generator(bd);
    CHECK((m * p).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("analytic_eigenvalues: closed-form substitutions") {
    const RealVector l3 = classical::analytic_eigenvalues({3, 1.0, 1.0});
    CHECK(l3(0) == doctest::Approx(0.0));
    CHECK(l3(1) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(l3(2) == doctest::Approx(-3.0).epsilon(1e-14));

    const RealVector l2 = classical::analytic_eigenvalues({2, 1.0, 1.0});
    CHECK(l2(0) == doctest::Approx(0.0));
    CHECK(l2(1) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("analytic_eigenvalues match the numerical generator spectrum") {
    for (const BirthDeathModel bd : {BirthDeathModel{7, 1.0, 0.4},
                                     BirthDeathModel{12, 2.0, 1.0},
                                     BirthDeathModel{20, 0.25, 1.0}}) {
        const RealVector lam = classical::analytic_eigenvalues(bd);
        auto pairs = numerics::eig_general(
            classical::build_generator(bd).cast<numerics::Complex>());
        std::sort(pairs.begin(), pairs.end(),
                  [](const auto& a, const auto& b) { return a.value.real() > b.value.real(); });
        for (int a = 0; a < bd.L; ++a) {
            CHECK(std::abs(pairs[static_cast<std::size_t>(a)].value.imag()) < 1e-10);
            CHECK(std::abs(pairs[static_cast<std::size_t>(a)].value.real() - lam(a)) < 1e-10);
        }
    }
}

TEST_CASE("biorthogonal_modes: r=1 reduces to an orthogonal eigenbasis") {
    const classical::ClassicalModes modes = classical::biorthogonal_modes({6, 1.0, 1.0});
    // D = identity: left and right modes agree up to the zero-mode gauge.
    for (int a = 1; a < 6; ++a)
        CHECK((modes.right_modes.col(a) - modes.left_modes.col(a)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("biorthogonal_modes: L=2, r=2 hand-computed mode pair") {
    const classical::ClassicalModes modes = classical::biorthogonal_modes({2, 2.0, 1.0});
    CHECK(modes.eigenvalues(0) == doctest::Approx(0.0));
    CHECK(modes.eigenvalues(1) == doctest::Approx(-3.0).epsilon(1e-14));
    // lambda_2 right mode ∝ (1, −1), left mode ∝ (2, −1).
    const double r_ratio = modes.right_modes(0, 1) / modes.right_modes(1, 1);
    const double l_ratio = modes.left_modes(0, 1) / modes.left_modes(1, 1);
    CHECK(r_ratio == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(l_ratio == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("biorthogonal_modes: biorthonormal and gauge-fixed") {
    for (const BirthDeathModel bd : {BirthDeathModel{5, 1.0, 0.5},
                                     BirthDeathModel{9, 2.0, 1.0},
                                     BirthDeathModel{11, 0.7, 1.4}}) {
        const classical::ClassicalModes modes = classical::biorthogonal_modes(bd);
        const RealMatrix gram = modes.left_modes.transpose() * modes.right_modes;
        CHECK((gram - RealMatrix::Identity(bd.L, bd.L)).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((modes.right_modes.col(0) - classical::stationary_distribution(bd))
                  .cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((modes.left_modes.col(0) - RealVector::Ones(bd.L)).cwiseAbs().maxCoeff() <= 1e-10);
        for (int a = 1; a < bd.L; ++a)
            CHECK(modes.eigenvalues(a) < 0.0);
    }
}

TEST_CASE("biorthogonal_modes: opposite-edge squeezing for r > 1") {
    const int L = 8;
    const classical::ClassicalModes modes = classical::biorthogonal_modes({L, 2.0, 1.0});
    for (int a = 1; a < 4; ++a) {
        // Right modes grow toward n=L, left modes toward n=1.
        CHECK(std::abs(modes.right_modes(L - 1, a)) > std::abs(modes.right_modes(0, a)));
        CHECK(std::abs(modes.left_modes(0, a)) > std::abs(modes.left_modes(L - 1, a)));
    }
}

TEST_CASE("spectral_coefficients: stationary input selects the zero mode") {
    const BirthDeathModel bd{6, 1.5, 1.0};
    const classical::ClassicalModes modes = classical::biorthogonal_modes(bd);
    const RealVector c = classical::spectral_coefficients(
        modes, classical::stationary_distribution(bd));
    CHECK(c(0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int a = 1; a < 6; ++a)
        CHECK(std::abs(c(a)) < 1e-10);
}

TEST_CASE("spectral_coefficients: c1 = 1 and exact reconstruction") {
    auto rng = testutil::make_rng(101);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const BirthDeathModel bd{7, 1.0, 0.5};
    const classical::ClassicalModes modes = classical::biorthogonal_modes(bd);
    for (int rep = 0; rep < 10; ++rep) {
        RealVector p0(7);
        for (int n = 0; n < 7; ++n) p0(n) = unif(rng);
        p0 /= p0.sum();
        const RealVector c = classical::spectral_coefficients(modes, p0);
        CHECK(c(0) == doctest::Approx(1.0).epsilon(1e-12));
        const RealVector rebuilt = modes.right_modes * c;
        CHECK((rebuilt - p0).cwiseAbs().maxCoeff() <= 1e-10);
    }
    RealVector bad = RealVector::Ones(7);
    CHECK_THROWS_AS(classical::spectral_coefficients(modes, bad), ContractViolation);
}

TEST_CASE("spectral_coefficients: edge-state ratio is 2 at L=2, r=2") {
    const classical::ClassicalModes modes = classical::biorthogonal_modes({2, 2.0, 1.0});
    RealVector d1(2), d2(2);
    d1 << 1, 0;
    d2 << 0, 1;
    const RealVector c = classical::spectral_coefficients(modes, d1);
    const RealVector cp = classical::spectral_coefficients(modes, d2);
    CHECK(std::abs(c(1) / cp(1)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("spectral_coefficients: edge-state ratio follows the exact r^(L/2) law") {
    // The similarity transform fixes |V_1/V_L| = sqrt(r) for every decaying
    // mode, hence |c_a/c'_a| = r^{(L-1)/2} * sqrt(r) = r^{L/2} exactly.
    for (int L = 8; L <= 16; ++L) {
        const double r = 2.0;
        const classical::ClassicalModes modes = classical::biorthogonal_modes({L, r, 1.0});
        RealVector d1 = RealVector::Zero(L), dL = RealVector::Zero(L);
        d1(0) = 1.0;
        dL(L - 1) = 1.0;
        const RealVector c = classical::spectral_coefficients(modes, d1);
        const RealVector cp = classical::spectral_coefficients(modes, dL);
        for (int a = 1; a <= 3; ++a) {
            const double ratio = std::abs(c(a) / cp(a));
            CHECK(ratio == doctest::Approx(std::pow(r, L / 2.0)).epsilon(1e-10));
        }
    }
}

TEST_CASE("diagonal_distances: zero for identical vectors") {
    RealVector p(3);
    p << 0.2, 0.3, 0.5;
    const auto [dtr, dhs] = classical::diagonal_distances(p, p);
    CHECK(dtr == 0.0);
    CHECK(dhs == 0.0);
}

TEST_CASE("diagonal_distances: L=2 substitution") {
    RealVector p(2), pe(2);
    p << 1, 0;
    pe << 1.0 / 3.0, 2.0 / 3.0;
    const auto [dtr, dhs] = classical::diagonal_distances(p, pe);
    CHECK(dtr == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(dhs == doctest::Approx(std::sqrt(8.0 / 9.0)).epsilon(1e-14));
}

TEST_CASE("diagonal_distances match the quantum distances on diagonal states") {
    auto rng = testutil::make_rng(55);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        const int L = 6;
        RealVector p(L), q(L);
        for (int n = 0; n < L; ++n) { p(n) = unif(rng); q(n) = unif(rng); }
        p /= p.sum();
        q /= q.sum();
        const auto [dtr, dhs] = classical::diagonal_distances(p, q);
        model::ComplexMatrix mp = model::ComplexMatrix::Zero(L, L);
        model::ComplexMatrix mq = model::ComplexMatrix::Zero(L, L);
        for (int n = 0; n < L; ++n) { mp(n, n) = p(n); mq(n, n) = q(n); }
        const model::DensityMatrix dp{mp}, dq{mq};
        CHECK(std::abs(dtr - dynamics::trace_distance(dp, dq)) <= 1e-12);
        CHECK(std::abs(dhs - dynamics::hs_distance(dp, dq)) <= 1e-12);
    }
}

TEST_CASE("quantum evolution reduces to the classical chain at J = eps = 0") {
    const int L = 5;
    const model::ChainParams p{L, 0.0, 0.0, 1.0, 0.5};
    const BirthDeathModel bd{L, p.J_R, p.J_L};
    const classical::ClassicalModes modes = classical::biorthogonal_modes(bd);

    const auto rho0 = model::DensityMatrix::site_projector(L, 1);
    RealVector p0 = RealVector::Zero(L);
    p0(0) = 1.0;

    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) grid.push_back(0.4 * k);
    const auto traj = dynamics::propagate_numeric(p, rho0, grid, 1e-10);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const RealVector pc = classical::evolve(modes, p0, grid[k]);
        for (int n = 0; n < L; ++n) {
            CHECK(std::abs(traj[k].rho(n, n).real() - pc(n)) <= 1e-8);
            for (int m = 0; m < L; ++m)
                if (n != m) CHECK(std::abs(traj[k].rho(n, m)) <= 1e-10);
        }
    }
}

TEST_CASE("BirthDeathModel validation") {
    CHECK_THROWS_AS(classical::build_generator({1, 1.0, 1.0}), ContractViolation);
    CHECK_THROWS_AS(classical::build_generator({4, 1.0, 0.0}), ContractViolation);
}
