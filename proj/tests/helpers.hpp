// Shared test utilities: seeded generators and series fitting.
#pragma once

#include "skinchain/model.hpp"

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace testutil {

using skinchain::numerics::Complex;
using skinchain::numerics::ComplexMatrix;

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eedc0de) {
    return std::mt19937_64{seed};
}

inline ComplexMatrix random_complex_matrix(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = Complex(u(rng), u(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int n) {
    const ComplexMatrix a = random_complex_matrix(rng, n);
    return 0.5 * (a + a.adjoint());
}

// Random unit-trace Hermitian positive-semidefinite matrix (a valid state).
inline skinchain::model::DensityMatrix random_density_matrix(std::mt19937_64& rng, int n) {
    const ComplexMatrix a = random_complex_matrix(rng, n);
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace();
    return skinchain::model::DensityMatrix{std::move(rho)};
}

// Least-squares slope of log(d) vs t over the samples with lo <= d <= hi.
inline double fit_log_slope(std::span<const double> times, std::span<const double> dist,
                            double lo, double hi) {
    double st = 0, sl = 0, stt = 0, stl = 0;
    int n = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (dist[i] < lo || dist[i] > hi) continue;
        const double t = times[i], l = std::log(dist[i]);
        st += t; sl += l; stt += t * t; stl += t * l;
        ++n;
    }
    if (n < 2)
        throw std::runtime_error("fit_log_slope: not enough samples in window");
    return (n * stl - st * sl) / (n * stt - st * st);
}

} // namespace testutil
