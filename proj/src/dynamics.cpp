#include "skinchain/dynamics.hpp"
#include "skinchain/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace skinchain::dynamics {

using numerics::Complex;
using numerics::ComplexVector;

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionError("trace_distance: dimension mismatch");
    const ComplexMatrix diff = rho.rho - sigma.rho;
    const auto eig = numerics::eig_hermitian(diff, 1e-6);
    return 0.5 * eig.values.cwiseAbs().sum();
}

double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionError("hs_distance: dimension mismatch");
    return (rho.rho - sigma.rho).norm();
}

DensityMatrix propagate_spectral(const SpectralData& sd, const DensityMatrix& rho_i, double t) {
    if (sd.near_degenerate)
        throw ExceptionalPointError(
            "propagate_spectral: near-degenerate spectrum, use propagate_numeric");
    if (t < 0.0)
        throw ContractViolation("propagate_spectral: time must be nonnegative");
    const ComplexVector c = spectral::overlap_coefficients(sd, rho_i);
    ComplexMatrix out = sd.stationary.rho;
    for (int a = 1; a < c.size(); ++a)
        out += c(a) * std::exp(sd.eigenvalues(a) * t) * sd.right_modes[static_cast<std::size_t>(a)];
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix{std::move(out)};
}

std::vector<DensityMatrix> propagate_numeric(const ChainParams& p,
                                             const DensityMatrix& rho_i,
                                             std::span<const double> t_grid,
                                             double tol) {
    p.validate(false);
    if (rho_i.dim() != p.L)
        throw DimensionError("propagate_numeric: state dimension mismatch");
    const model::Superoperator sop = model::build_liouvillian(p);
    const auto samples = numerics::integrate_linear(
        [&sop](const ComplexVector& y) { return ComplexVector(sop.mat * y); },
        numerics::vectorize(rho_i.rho), t_grid, tol);
    std::vector<DensityMatrix> states;
    states.reserve(samples.size());
    for (const auto& y : samples)
        states.push_back(DensityMatrix{numerics::unvectorize(y, p.L)});
    return states;
}

ComplexMatrix swap_unitary(int L, double eps1, double t) {
    if (L < 2)
        throw DimensionError("swap_unitary: L must be >= 2");
    ComplexMatrix u = ComplexMatrix::Identity(L, L);
    const double c = std::cos(eps1 * t);
    const double s = std::sin(eps1 * t);
    u(0, 0) = c;
    u(L - 1, L - 1) = c;
    u(0, L - 1) = Complex(0.0, s);
    u(L - 1, 0) = Complex(0.0, s);
    return u;
}

Protocol Protocol::direct_protocol(ChainParams relax_params) {
    Protocol p;
    p.kind = ProtocolKind::direct;
    p.relax = relax_params;
    p.validate();
    return p;
}

Protocol Protocol::pontus_protocol(ChainParams relax_params, double eps1, double tau) {
    Protocol p;
    p.kind = ProtocolKind::pontus;
    p.relax = relax_params;
    p.prep_eps1 = eps1;
    p.prep_tau = (tau > 0.0) ? tau : std::numbers::pi / (2.0 * eps1);
    p.validate();
    return p;
}

void Protocol::validate() const {
    relax.validate(true);
    if (relax.eps != 0.0)
        throw ContractViolation("Protocol: relaxation stage requires eps = 0");
    if (kind == ProtocolKind::pontus) {
        if (!(prep_eps1 > 0.0))
            throw ContractViolation("Protocol: pontus requires prep_eps1 > 0");
        if (!(prep_tau > 0.0))
            throw ContractViolation("Protocol: pontus requires prep_tau > 0");
    }
}

namespace {

// Spectral sampler for the relaxation stage: state(t) = ρ_E + W e(t) with
// W = [c_α vec(R_α)] and e_α(t) = exp(λ_α t). Also provides the decay
// envelopes bounding the two distances for all later times.
struct SpectralSampler {
    ComplexMatrix weighted_modes;  // L² × (L²−1)
    ComplexVector rates;           // λ_α, α ≥ 2
    Eigen::VectorXd magnitudes;    // |c_α|
    ComplexVector stationary_vec;
    int L;

    SpectralSampler(const SpectralData& s, const DensityMatrix& rho0)
        : L(s.sites) {
        const ComplexVector c = spectral::overlap_coefficients(s, rho0);
        const int m = static_cast<int>(c.size()) - 1;
        weighted_modes.resize(static_cast<Eigen::Index>(L) * L, m);
        rates.resize(m);
        magnitudes.resize(m);
        for (int a = 0; a < m; ++a) {
            weighted_modes.col(a) =
                c(a + 1) * numerics::vectorize(s.right_modes[static_cast<std::size_t>(a + 1)]);
            rates(a) = s.eigenvalues(a + 1);
            magnitudes(a) = std::abs(c(a + 1));
        }
        stationary_vec = numerics::vectorize(s.stationary.rho);
    }

    DensityMatrix at(double t) const {
        ComplexVector e(rates.size());
        for (int a = 0; a < rates.size(); ++a)
            e(a) = std::exp(rates(a) * t);
        ComplexVector v = stationary_vec + weighted_modes * e;
        ComplexMatrix m = numerics::unvectorize(v, L);
        m = 0.5 * (m + m.adjoint()).eval();
        return DensityMatrix{std::move(m)};
    }

    // Upper bounds valid for every t' >= t: ‖Δ(t')‖_F ≤ Σ |c_α| e^{Re λ_α t}
    // (unit-HS modes) and Tr|Δ| ≤ √L ‖Δ‖_F.
    std::pair<double, double> envelopes(double t) const {
        double sum = 0.0;
        for (int a = 0; a < rates.size(); ++a)
            sum += magnitudes(a) * std::exp(rates(a).real() * t);
        return {0.5 * std::sqrt(static_cast<double>(L)) * sum, sum};
    }
};

} // namespace

RelaxationRecord sample_protocol(const Protocol& proto, const SpectralData& relax_sd,
                                 const DensityMatrix& rho_i, double threshold,
                                 const ProtocolOptions& opts) {
    proto.validate();
    if (!(threshold > 0.0))
        throw ContractViolation("protocol run: threshold must be positive");
    if (!(opts.dt > 0.0) || !(opts.horizon > 0.0))
        throw ContractViolation("protocol run: dt and horizon must be positive");
    if (rho_i.dim() != proto.relax.L)
        throw DimensionError("protocol run: state dimension mismatch");

    const DensityMatrix rho_e = spectral::stationary_state(relax_sd);
    const bool pontus = proto.kind == ProtocolKind::pontus;
    const double tau = pontus ? proto.prep_tau : 0.0;

    const std::size_t n_samples =
        static_cast<std::size_t>(std::ceil(opts.horizon / opts.dt - 1e-9)) + 1;

    RelaxationRecord rec;
    rec.threshold = threshold;
    rec.times.reserve(n_samples);
    rec.d_tr.reserve(n_samples);
    rec.d_hs.reserve(n_samples);

    auto push_sample = [&](double t, const DensityMatrix& state) {
        rec.times.push_back(t);
        rec.d_tr.push_back(trace_distance(state, rho_e));
        rec.d_hs.push_back(hs_distance(state, rho_e));
    };

    // Preparation stage (pontus only): purely coherent swap rotation.
    std::size_t k = 0;
    for (; k < n_samples; ++k) {
        const double t = static_cast<double>(k) * opts.dt;
        if (!pontus || t >= tau) break;
        const ComplexMatrix u = swap_unitary(proto.relax.L, proto.prep_eps1, t);
        push_sample(t, DensityMatrix{u * rho_i.rho * u.adjoint()});
    }

    // State handed to the relaxation stage.
    DensityMatrix handoff = rho_i;
    if (pontus) {
        const ComplexMatrix u = swap_unitary(proto.relax.L, proto.prep_eps1, tau);
        handoff = DensityMatrix{u * rho_i.rho * u.adjoint()};
    }

    if (!relax_sd.near_degenerate) {
        const SpectralSampler sampler(relax_sd, handoff);
        for (; k < n_samples; ++k) {
            const double t = static_cast<double>(k) * opts.dt;
            push_sample(t, sampler.at(t - tau));
            if (opts.early_stop) {
                const auto [env_tr, env_hs] = sampler.envelopes(t - tau);
                if (env_tr <= threshold && env_hs <= threshold) break;
            }
        }
    } else {
        // Degenerate spectrum: fall back to direct integration of vec(ρ).
        std::vector<double> grid;
        grid.reserve(n_samples - k + 1);
        for (std::size_t j = k; j < n_samples; ++j)
            grid.push_back(static_cast<double>(j) * opts.dt - tau);
        if (!grid.empty()) {
            std::size_t skip = 0;
            if (grid.front() > 0.0) { // handoff state sits before the first grid point
                grid.insert(grid.begin(), 0.0);
                skip = 1;
            }
            const model::Superoperator sop = model::build_liouvillian(proto.relax);
            const auto samples = numerics::integrate_linear(
                [&sop](const ComplexVector& y) { return ComplexVector(sop.mat * y); },
                numerics::vectorize(handoff.rho), grid, opts.integrator_tol);
            for (std::size_t j = skip; j < samples.size(); ++j)
                push_sample(grid[j] + tau,
                            DensityMatrix{numerics::unvectorize(samples[j], proto.relax.L)});
        }
    }

    auto extract = [&](const std::vector<double>& d) {
        try {
            return relaxation_time(rec.times, d, threshold, opts.trel_mode);
        } catch (const NotRelaxedError&) {
            return std::nan("");
        }
    };
    rec.t_rel_tr = extract(rec.d_tr);
    rec.t_rel_hs = extract(rec.d_hs);
    return rec;
}

RelaxationRecord run_protocol(const Protocol& proto, const SpectralData& relax_sd,
                              const DensityMatrix& rho_i, double threshold,
                              const ProtocolOptions& opts) {
    RelaxationRecord rec = sample_protocol(proto, relax_sd, rho_i, threshold, opts);
    if (std::isnan(rec.t_rel_tr) || std::isnan(rec.t_rel_hs))
        throw HorizonError("run_protocol: distance above threshold at horizon",
                           rec.d_tr.back(), rec.d_hs.back());
    return rec;
}

RelaxationRecord run_protocol(const Protocol& proto, const DensityMatrix& rho_i,
                              double threshold, const ProtocolOptions& opts) {
    proto.validate();
    const SpectralData sd = spectral::decompose(model::build_liouvillian(proto.relax));
    return run_protocol(proto, sd, rho_i, threshold, opts);
}

RelaxationRecord run_protocol(const Protocol& proto, double threshold,
                              const ProtocolOptions& opts) {
    return run_protocol(proto, DensityMatrix::site_projector(proto.relax.L, 1),
                        threshold, opts);
}

double relaxation_time(std::span<const double> times, std::span<const double> dist,
                       double threshold, TrelMode mode) {
    if (times.size() != dist.size() || times.empty())
        throw DimensionError("relaxation_time: series/grid size mismatch");
    if (!(threshold > 0.0))
        throw ContractViolation("relaxation_time: threshold must be positive");

    std::size_t lo_idx = 0, hi_idx = 0;
    if (mode == TrelMode::settling) {
        // Last index still above threshold; everything after must stay below.
        std::size_t last_above = times.size();
        for (std::size_t i = times.size(); i-- > 0;) {
            if (dist[i] > threshold) { last_above = i; break; }
        }
        if (last_above == times.size()) return times[0]; // never above
        if (last_above + 1 == times.size())
            throw NotRelaxedError("relaxation_time: series does not settle below threshold");
        lo_idx = last_above;
        hi_idx = last_above + 1;
    } else {
        std::size_t first_below = times.size();
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (dist[i] <= threshold) { first_below = i; break; }
        }
        if (first_below == times.size())
            throw NotRelaxedError("relaxation_time: series never reaches threshold");
        if (first_below == 0) return times[0];
        lo_idx = first_below - 1;
        hi_idx = first_below;
    }

    // Bisect the linear interpolant of the bracketing samples.
    double t_lo = times[lo_idx], t_hi = times[hi_idx];
    const double d_lo = dist[lo_idx], d_hi = dist[hi_idx];
    auto interp = [&](double t) {
        const double w = (t - times[lo_idx]) / (times[hi_idx] - times[lo_idx]);
        return d_lo + w * (d_hi - d_lo);
    };
    while (t_hi - t_lo > 1e-4) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (interp(mid) > threshold) t_lo = mid; else t_hi = mid;
    }
    return 0.5 * (t_lo + t_hi);
}

std::vector<SweepRow> sweep_preparation_time(const ChainParams& base,
                                             std::span<const double> tau_grid,
                                             double threshold,
                                             const ProtocolOptions& opts) {
    if (tau_grid.empty())
        throw ContractViolation("sweep_preparation_time: empty tau grid");
    for (double tau : tau_grid)
        if (!(tau > 0.0))
            throw ContractViolation("sweep_preparation_time: tau values must be positive");

    const SpectralData sd = spectral::decompose(model::build_liouvillian(base));
    const DensityMatrix rho_i = DensityMatrix::site_projector(base.L, 1);

    const RelaxationRecord direct =
        run_protocol(Protocol::direct_protocol(base), sd, rho_i, threshold, opts);

    std::vector<SweepRow> rows;
    rows.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        SweepRow row;
        row.tau = tau;
        row.t_direct_tr = direct.t_rel_tr;
        row.t_direct_hs = direct.t_rel_hs;
        const double eps1 = std::numbers::pi / (2.0 * tau);
        try {
            const RelaxationRecord rec = run_protocol(
                Protocol::pontus_protocol(base, eps1, tau), sd, rho_i, threshold, opts);
            row.t_pontus_tr = rec.t_rel_tr;
            row.t_pontus_hs = rec.t_rel_hs;
            row.status = "ok";
        } catch (const HorizonError& e) {
            row.t_pontus_tr = std::nan("");
            row.t_pontus_hs = std::nan("");
            row.status = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace skinchain::dynamics
