// Randomized invariant suites over seeded chain instances, L = 2..12.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skinchain/dynamics.hpp"
#include "skinchain/errors.hpp"
#include "helpers.hpp"

#include <cmath>
#include <random>

using namespace skinchain;
using model::ChainParams;
using model::DensityMatrix;
using numerics::Complex;
using numerics::ComplexVector;

namespace {

// Random chain with a clean (unflagged) spectrum; retries a few draws.
struct Instance {
    ChainParams params;
    spectral::SpectralData sd;
};

Instance random_instance(std::mt19937_64& rng, int L) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const ChainParams p{L, 0.3 + 1.2 * u(rng), 0.0,
                            0.2 + 1.5 * u(rng), 0.2 + 1.5 * u(rng)};
        try {
            auto sd = spectral::decompose(model::build_liouvillian(p));
            if (!sd.near_degenerate) return {p, std::move(sd)};
        } catch (const ExceptionalPointError&) {
        } catch (const NonUniqueSteadyStateError&) {
        }
    }
    throw std::runtime_error("random_instance: no clean draw found");
}

} // namespace

TEST_CASE("biorthonormality holds on random instances") {
    auto rng = testutil::make_rng(0xb10c0);
    for (int L = 2; L <= 12; ++L) {
        const Instance inst = random_instance(rng, L);
        const int n = static_cast<int>(inst.sd.eigenvalues.size());
        double worst = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const Complex g = (inst.sd.left_modes[static_cast<std::size_t>(a)].adjoint() *
                                   inst.sd.right_modes[static_cast<std::size_t>(b)]).trace();
                worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
            }
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("spectral reconstruction is complete on random states") {
    auto rng = testutil::make_rng(0xc0ffee);
    int reconstructions = 0;
    for (int L = 2; L <= 12; ++L) {
        const Instance inst = random_instance(rng, L);
        for (int rep = 0; rep < 5; ++rep) {
            const auto rho = testutil::random_density_matrix(rng, L);
            const ComplexVector c = spectral::overlap_coefficients(inst.sd, rho);
            model::ComplexMatrix rebuilt = inst.sd.stationary.rho;
            for (int a = 1; a < c.size(); ++a)
                rebuilt += c(a) * inst.sd.right_modes[static_cast<std::size_t>(a)];
            CHECK((rebuilt - rho.rho).cwiseAbs().maxCoeff() <= 1e-8);
            ++reconstructions;
        }
    }
    CHECK(reconstructions >= 50);
}

TEST_CASE("spectral and numeric propagation agree on random instances") {
    auto rng = testutil::make_rng(0xaaff);
    for (int L : {2, 3, 5, 8, 12}) {
        const Instance inst = random_instance(rng, L);
        const auto rho = testutil::random_density_matrix(rng, L);
        const std::vector<double> grid{0.0, 0.5, 2.0};
        const auto numeric = dynamics::propagate_numeric(inst.params, rho, grid, 1e-10);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto spec = dynamics::propagate_spectral(inst.sd, rho, grid[k]);
            CHECK((spec.rho - numeric[k].rho).cwiseAbs().maxCoeff() <= 1e-7);
        }
    }
}

TEST_CASE("trajectories preserve trace and positivity") {
    auto rng = testutil::make_rng(0xdead);
    for (int L : {3, 6, 9, 12}) {
        const Instance inst = random_instance(rng, L);
        const auto rho = testutil::random_density_matrix(rng, L);
        std::vector<double> grid;
        for (int k = 0; k <= 40; ++k) grid.push_back(0.25 * k);
        const auto numeric = dynamics::propagate_numeric(inst.params, rho, grid, 1e-9);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto& state = numeric[k];
            CHECK(std::abs(state.rho.trace() - Complex(1.0, 0.0)) <= 1e-7);
            const auto eig = numerics::eig_hermitian(
                0.5 * (state.rho + state.rho.adjoint()), 1e-6);
            CHECK(eig.values.minCoeff() >= -1e-6);

            const auto spec = dynamics::propagate_spectral(inst.sd, rho, grid[k]);
            CHECK(std::abs(spec.rho.trace() - Complex(1.0, 0.0)) <= 1e-7);
            const auto eig2 = numerics::eig_hermitian(spec.rho, 1e-6);
            CHECK(eig2.values.minCoeff() >= -1e-6);
        }
    }
}

TEST_CASE("mirror-symmetric chains relax identically from either edge") {
    const ChainParams p{6, 0.8, 0.0, 1.1, 1.1};
    const auto sd = spectral::decompose(model::build_liouvillian(p));
    const auto rho_e = spectral::stationary_state(sd);
    std::vector<double> grid;
    for (int k = 0; k <= 60; ++k) grid.push_back(0.25 * k);
    const auto t1 = dynamics::propagate_numeric(p, DensityMatrix::site_projector(6, 1), grid, 1e-10);
    const auto tL = dynamics::propagate_numeric(p, DensityMatrix::site_projector(6, 6), grid, 1e-10);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(dynamics::trace_distance(t1[k], rho_e) -
                       dynamics::trace_distance(tL[k], rho_e)) <= 1e-8);
        CHECK(std::abs(dynamics::hs_distance(t1[k], rho_e) -
                       dynamics::hs_distance(tL[k], rho_e)) <= 1e-8);
    }
}

TEST_CASE("liouvillian routes agree for every sector size") {
    auto rng = testutil::make_rng(0xfeed);
    for (int L = 2; L <= 12; ++L) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const ChainParams p{L, u(rng), 0.5 * u(rng), 0.5 + u(rng), 0.5 + u(rng)};
        const auto sop = model::build_liouvillian(p);
        for (int rep = 0; rep < 3; ++rep) {
            const auto rho = testutil::random_hermitian(rng, L);
            const auto direct = model::liouvillian_action(p, rho);
            const auto via = numerics::unvectorize(sop.mat * numerics::vectorize(rho), L);
            CHECK((direct - via).cwiseAbs().maxCoeff() <= 1e-12);
            CHECK(std::abs(direct.trace()) <= 1e-12);
        }
    }
}
