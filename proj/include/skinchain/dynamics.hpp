// dynamics.hpp — time evolution, distances, relaxation protocols
#pragma once

#include "skinchain/model.hpp"
#include "skinchain/spectral.hpp"

#include <span>
#include <string>
#include <vector>

namespace skinchain::dynamics {

using model::ChainParams;
using model::ComplexMatrix;
using model::DensityMatrix;
using spectral::SpectralData;

// ½ Tr|ρ − σ|, via the eigenvalues of the Hermitian difference.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Frobenius norm of ρ − σ.
double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// ρ(t) = ρ_E + Σ_{α>1} c_α e^{λ_α t} R_α, then symmetrized. Refuses spectra
// flagged near-degenerate (use propagate_numeric instead).
DensityMatrix propagate_spectral(const SpectralData& sd, const DensityMatrix& rho_i, double t);

// Direct integration of vec(ρ) under the Liouvillian at the given grid
// (strictly increasing, grid[0] is the initial time of rho_i).
std::vector<DensityMatrix> propagate_numeric(const ChainParams& p,
                                             const DensityMatrix& rho_i,
                                             std::span<const double> t_grid,
                                             double tol = 1e-9);

// exp(−i H₁ t) for the purely coherent end-to-end stage: a rotation on the
// {|1⟩, |L⟩} block, identity elsewhere. τ = π/(2 ε₁) gives the full swap.
ComplexMatrix swap_unitary(int L, double eps1, double t);

enum class ProtocolKind { direct, pontus };

// A relaxation protocol: the relaxation stage always runs the dissipative
// chain with ε = 0; the pontus variant first applies the coherent
// end-to-end stage for prep_tau at rate prep_eps1.
struct Protocol {
    ProtocolKind kind = ProtocolKind::direct;
    double prep_eps1 = 0.0;
    double prep_tau  = 0.0;
    ChainParams relax;

    static Protocol direct_protocol(ChainParams relax_params);
    // tau <= 0 selects the swap duration π/(2 eps1).
    static Protocol pontus_protocol(ChainParams relax_params, double eps1, double tau = 0.0);
    void validate() const;
};

enum class TrelMode { settling, first_crossing };

struct ProtocolOptions {
    double dt = 0.01;            // sample grid spacing, units of 1/J
    double horizon = 200.0;      // maximum simulated time
    double integrator_tol = 1e-9;
    bool early_stop = true;      // truncate once the decay envelope pins both
                                 // distances below threshold for all later times
    TrelMode trel_mode = TrelMode::settling;
};

// Distance-to-stationarity time series for one protocol run plus the
// extracted relaxation times.
struct RelaxationRecord {
    std::vector<double> times;
    std::vector<double> d_tr;
    std::vector<double> d_hs;
    double t_rel_tr = 0.0;
    double t_rel_hs = 0.0;
    double threshold = 0.0;
};

// Runs the protocol from rho_i, measuring both distances against the
// stationary state of the relaxation Liouvillian at every sample (including
// during preparation; the time axis is total elapsed time). Throws
// HorizonError when a distance never settles below threshold.
RelaxationRecord run_protocol(const Protocol& proto, const DensityMatrix& rho_i,
                              double threshold, const ProtocolOptions& opts = {});

// Variant reusing a precomputed decomposition of the relaxation Liouvillian.
RelaxationRecord run_protocol(const Protocol& proto, const SpectralData& relax_sd,
                              const DensityMatrix& rho_i, double threshold,
                              const ProtocolOptions& opts = {});

// Like run_protocol but never throws on an unsettled series: the
// corresponding relaxation-time fields are NaN instead.
RelaxationRecord sample_protocol(const Protocol& proto, const SpectralData& relax_sd,
                                 const DensityMatrix& rho_i, double threshold,
                                 const ProtocolOptions& opts = {});

// Default initial state |1⟩⟨1|.
RelaxationRecord run_protocol(const Protocol& proto, double threshold,
                              const ProtocolOptions& opts = {});

// Relaxation time of a sampled distance series. Settling mode returns the
// last down-crossing (smallest t* with D ≤ δ for all sampled t ≥ t*);
// first-crossing mode returns the first sample-bracketed crossing. Both are
// refined to 1e−4 by bisection on the linear interpolant of the bracketing
// samples. Throws NotRelaxedError when the series does not qualify.
double relaxation_time(std::span<const double> times, std::span<const double> dist,
                       double threshold, TrelMode mode = TrelMode::settling);

struct SweepRow {
    double tau = 0.0;
    double t_direct_tr = 0.0;
    double t_direct_hs = 0.0;
    double t_pontus_tr = 0.0;
    double t_pontus_hs = 0.0;
    std::string status; // "ok" or the per-row failure message
};

// For each τ in the grid: ε₁ = π/(2τ), run direct and pontus from |1⟩⟨1|,
// extract both relaxation times. The direct columns are computed once and
// repeated. Per-row horizon failures are recorded in `status` and the sweep
// continues.
std::vector<SweepRow> sweep_preparation_time(const ChainParams& base,
                                             std::span<const double> tau_grid,
                                             double threshold,
                                             const ProtocolOptions& opts = {});

} // namespace skinchain::dynamics
