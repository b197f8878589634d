// classical.hpp — exact birth–death reduction of the purely dissipative chain
#pragma once

#include "skinchain/numerics.hpp"

#include <utility>

namespace skinchain::classical {

using numerics::RealMatrix;
using numerics::RealVector;

// Birth–death chain with reflecting boundaries: rightward rate J_R,
// leftward rate J_L, skin parameter r = J_R/J_L.
struct BirthDeathModel {
    int L = 2;
    double J_R = 0.0;
    double J_L = 0.0;

    void validate() const; // L >= 2, J_R >= 0, J_L > 0
    double r() const { return J_R / J_L; }
};

// Tridiagonal Markov generator M with dP/dt = M P; every column sums to zero.
RealMatrix build_generator(const BirthDeathModel& m);

// Stationary distribution P_n = 𝒩 r^{n−1}.
RealVector stationary_distribution(const BirthDeathModel& m);

// Closed-form spectrum: 0 followed by
// λ_α = −J_L − J_R + 2√(J_L J_R) cos(π(α−1)/L), α = 2..L, sorted descending.
RealVector analytic_eigenvalues(const BirthDeathModel& m);

// Biorthonormal mode pairs of M, columns ordered like analytic_eigenvalues.
// Column 0 gauge: right mode = stationary distribution, left mode = ones.
struct ClassicalModes {
    RealVector eigenvalues;
    RealMatrix right_modes; // L×L, columns R^{(α)}
    RealMatrix left_modes;  // L×L, columns L^{(α)}, ⟨L^{(α)}|R^{(β)}⟩ = δ_αβ
};

// Diagonalizes the symmetric similarity transform U = D^{−1/2} M D^{1/2}
// (D = diag(1, r, …, r^{L−1})) and maps eigenvectors back with half-power
// scaling R = D^{1/2}V, L = D^{−1/2}V.
ClassicalModes biorthogonal_modes(const BirthDeathModel& m);

// Expansion coefficients c_α = ⟨L^{(α)}|P0⟩ of a probability vector; c_1 = 1.
RealVector spectral_coefficients(const ClassicalModes& modes, const RealVector& p0);

// P(t) = P_E + Σ_{α>1} c_α e^{λ_α t} R^{(α)}.
RealVector evolve(const ClassicalModes& modes, const RealVector& p0, double t);

// (trace distance, Hilbert–Schmidt distance) of two probability vectors read
// as diagonal density matrices: (½‖P − Q‖₁, ‖P − Q‖₂).
std::pair<double, double> diagonal_distances(const RealVector& p, const RealVector& p_e);

} // namespace skinchain::classical
