// spectral.hpp — biorthogonal spectral analysis of the Liouvillian
#pragma once

#include "skinchain/model.hpp"

#include <vector>

namespace skinchain::spectral {

using model::ComplexMatrix;
using model::ComplexVector;
using model::DensityMatrix;
using model::Superoperator;

// Result of a full Liouvillian eigendecomposition.
//
// Ordering: eigenvalues[0] is the zero mode, the rest sorted by descending
// real part (ties: ascending imaginary part, then solver index). Gauge:
// right_modes[0] is the stationary state (Hermitian, trace 1) and
// left_modes[0] is the identity; every other right mode has unit
// Hilbert–Schmidt norm and Tr(L_α† R_β) = δ_αβ.
struct SpectralData {
    int sites = 0;                           // L
    ComplexVector eigenvalues;               // length L²
    std::vector<ComplexMatrix> right_modes;  // L×L each
    std::vector<ComplexMatrix> left_modes;   // L×L each
    DensityMatrix stationary;
    bool near_degenerate = false;            // some eigenvalue cluster has size > 1
    double liouvillian_norm = 0.0;           // ‖ℒ‖_F, scale for tolerances
    double stationary_residual = 0.0;        // ‖ℒ vec(ρ_E)‖₂
};

// Tolerance scales relative to ‖ℒ‖_F.
inline constexpr double kDegeneracyTol = 1e-9;
inline constexpr double kZeroModeTol   = 1e-9;

// Decomposes the Liouvillian into biorthonormal left/right eigenmode pairs.
// Throws NonUniqueSteadyStateError when the zero eigenvalue is not simple and
// ExceptionalPointError when a degenerate cluster is numerically defective.
SpectralData decompose(const Superoperator& superop);

// Stationary state extracted from the decomposition, with positivity checked.
DensityMatrix stationary_state(const SpectralData& sd);

// Overlap coefficients c_α = Tr(L_α† ρ); c_0 = Tr(ρ) = 1 for states.
ComplexVector overlap_coefficients(const SpectralData& sd, const DensityMatrix& rho_i);

enum class Side { left, right };

// Fraction of a mode's squared magnitude carried by the quadrant where both
// indices lie in the selected half of the chain (split at ⌈L/2⌉).
double edge_weight(const ComplexMatrix& mode, Side side);

} // namespace skinchain::spectral
