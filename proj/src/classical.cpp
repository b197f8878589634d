#include "skinchain/classical.hpp"
#include "skinchain/errors.hpp"

#include <cmath>
#include <numbers>

namespace skinchain::classical {

void BirthDeathModel::validate() const {
    if (L < 2)
        throw ContractViolation("BirthDeathModel: L must be >= 2");
    if (!(J_L > 0.0))
        throw ContractViolation("BirthDeathModel: J_L must be positive");
    if (J_R < 0.0)
        throw ContractViolation("BirthDeathModel: J_R must be nonnegative");
}

RealMatrix build_generator(const BirthDeathModel& m) {
    m.validate();
    const int L = m.L;
    RealMatrix gen = RealMatrix::Zero(L, L);
    gen(0, 0) = -m.J_R;
    gen(0, 1) = m.J_L;
    for (int n = 1; n + 1 < L; ++n) {
        gen(n, n - 1) = m.J_R;
        gen(n, n)     = -(m.J_R + m.J_L);
        gen(n, n + 1) = m.J_L;
    }
    gen(L - 1, L - 2) = m.J_R;
    gen(L - 1, L - 1) = -m.J_L;
    return gen;
}

RealVector stationary_distribution(const BirthDeathModel& m) {
    m.validate();
    const double r = m.r();
    RealVector p(m.L);
    double w = 1.0, sum = 0.0;
    for (int n = 0; n < m.L; ++n) {
        p(n) = w;
        sum += w;
        w *= r;
    }
    return p / sum;
}

RealVector analytic_eigenvalues(const BirthDeathModel& m) {
    m.validate();
    RealVector lam(m.L);
    lam(0) = 0.0;
    const double base = -(m.J_L + m.J_R);
    const double amp = 2.0 * std::sqrt(m.J_L * m.J_R);
    for (int a = 2; a <= m.L; ++a)
        lam(a - 1) = base + amp * std::cos(std::numbers::pi * (a - 1) / m.L);
    return lam;
}

ClassicalModes biorthogonal_modes(const BirthDeathModel& m) {
    m.validate();
    const int L = m.L;
    const double r = m.r();
    const RealMatrix gen = build_generator(m);

    // Half-power scaling vector d_n = r^{(n−1)/2}; tridiagonal entries only,
    // so the similarity acts through bounded ratios d_{n±1}/d_n = r^{±1/2}.
    RealVector d(L);
    for (int n = 0; n < L; ++n)
        d(n) = std::pow(r, 0.5 * n);

    numerics::ComplexMatrix u = numerics::ComplexMatrix::Zero(L, L);
    for (int i = 0; i < L; ++i)
        for (int j = std::max(0, i - 1); j <= std::min(L - 1, i + 1); ++j)
            u(i, j) = gen(i, j) * d(j) / d(i);
    if ((u - u.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ContractViolation("biorthogonal_modes: similarity transform is not symmetric");

    const auto eig = numerics::eig_hermitian(u, 1e-12);

    // eig_hermitian sorts ascending; modes are wanted descending (0 first).
    ClassicalModes modes;
    modes.eigenvalues.resize(L);
    modes.right_modes.resize(L, L);
    modes.left_modes.resize(L, L);
    for (int a = 0; a < L; ++a) {
        const int src = L - 1 - a;
        modes.eigenvalues(a) = eig.values(src);
        numerics::ComplexVector vc = eig.vectors.col(src);
        // Rotate the arbitrary global phase away: largest component real > 0.
        int imax = 0;
        for (int n = 1; n < L; ++n)
            if (std::abs(vc(n)) > std::abs(vc(imax))) imax = n;
        vc *= std::conj(vc(imax)) / std::abs(vc(imax));
        if (vc.imag().cwiseAbs().maxCoeff() > 1e-12)
            throw ContractViolation("biorthogonal_modes: eigenvector is not real");
        const RealVector v = vc.real();
        modes.right_modes.col(a) = d.cwiseProduct(v);
        modes.left_modes.col(a) = v.cwiseQuotient(d);
    }

    // Zero-mode gauge: right mode is the stationary distribution (sums to 1),
    // left mode is the all-ones row functional.
    const double s = modes.right_modes.col(0).sum();
    modes.right_modes.col(0) /= s;
    modes.left_modes.col(0) *= s;
    return modes;
}

RealVector spectral_coefficients(const ClassicalModes& modes, const RealVector& p0) {
    const int L = static_cast<int>(modes.eigenvalues.size());
    if (p0.size() != L)
        throw DimensionError("spectral_coefficients: vector length mismatch");
    if (p0.minCoeff() < -1e-12 || std::abs(p0.sum() - 1.0) > 1e-10)
        throw ContractViolation("spectral_coefficients: input is not a probability vector");
    return modes.left_modes.transpose() * p0;
}

RealVector evolve(const ClassicalModes& modes, const RealVector& p0, double t) {
    const RealVector c = spectral_coefficients(modes, p0);
    RealVector p = modes.right_modes.col(0);
    for (int a = 1; a < c.size(); ++a)
        p += c(a) * std::exp(modes.eigenvalues(a) * t) * modes.right_modes.col(a);
    return p;
}

std::pair<double, double> diagonal_distances(const RealVector& p, const RealVector& p_e) {
    if (p.size() != p_e.size())
        throw DimensionError("diagonal_distances: length mismatch");
    const RealVector diff = p - p_e;
    return {0.5 * diff.cwiseAbs().sum(), diff.norm()};
}

} // namespace skinchain::classical
