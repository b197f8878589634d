// model.hpp — dissipative chain: Hamiltonian, jump operators, Liouvillian
#pragma once

#include "skinchain/numerics.hpp"

#include <vector>

namespace skinchain::model {

using numerics::Complex;
using numerics::ComplexMatrix;
using numerics::ComplexVector;

// Physical configuration of the chain. Rates are in units of the coherent
// hopping J of the relaxation stage; times are in units of 1/J.
struct ChainParams {
    int L = 2;        // site count
    double J   = 0.0; // nearest-neighbour coherent hopping
    double eps = 0.0; // coherent end-to-end coupling
    double J_R = 0.0; // rightward incoherent hopping rate
    double J_L = 0.0; // leftward incoherent hopping rate

    // Throws unless L >= 2 and all rates are nonnegative. When
    // require_nontrivial is set, additionally rejects the all-zero rate set.
    void validate(bool require_nontrivial = true) const;

    // Skin parameter r = J_R / J_L; requires J_L > 0.
    double skin_ratio() const;
};

// Dimension of the N-excitation sector on L sites, computed exactly in
// integer arithmetic. Throws std::overflow_error past the 64-bit range.
long long hilbert_dimension(int sites, int excitations);

// Single-excitation Hamiltonian matrix: −J on the sub/superdiagonal, −eps at
// the (1,L) and (L,1) corners.
ComplexMatrix build_hamiltonian(const ChainParams& p);

// The 2(L−1) jump operators in the single-excitation basis: rightward bond n
// has √J_R at entry (n+1, n); leftward has √J_L at (n, n+1). Rightward
// operators come first.
std::vector<ComplexMatrix> build_jump_operators(const ChainParams& p);

// L×L Hermitian, unit-trace, positive-semidefinite state.
struct DensityMatrix {
    ComplexMatrix rho;

    int dim() const { return static_cast<int>(rho.rows()); }

    // |site⟩⟨site| on an L-site chain; site is 1-based.
    static DensityMatrix site_projector(int L, int site);

    // Validating constructor from an arbitrary matrix.
    static DensityMatrix from_matrix(ComplexMatrix m,
                                     double herm_tol  = 1e-10,
                                     double trace_tol = 1e-10,
                                     double psd_tol   = 1e-8);

    // Checks the three state invariants at the given tolerances.
    void validate(double herm_tol  = 1e-10,
                  double trace_tol = 1e-10,
                  double psd_tol   = 1e-8) const;
};

// Liouvillian as a dense matrix acting on column-stacked density matrices.
struct Superoperator {
    int sites = 0;       // L
    ComplexMatrix mat;   // L² × L²

    int dim() const { return static_cast<int>(mat.rows()); }
};

// Assembles ℒ = −i(I⊗H − Hᵀ⊗I) + Σ_O [ (O̅⊗O) − ½ I⊗O†O − ½ (O†O)ᵀ⊗I ]
// in the column-stacking convention.
Superoperator build_liouvillian(const ChainParams& p);

// Element-wise action dρ/dt built directly from the per-entry master
// equation (commutator, population feed, uniform damping, boundary
// corrections). Independent of build_liouvillian; used as its cross-check.
ComplexMatrix liouvillian_action(const ChainParams& p, const ComplexMatrix& rho);

} // namespace skinchain::model
