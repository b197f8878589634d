#include "skinchain/spectral.hpp"
#include "skinchain/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace skinchain::spectral {

using numerics::Complex;
using numerics::EigenPair;

namespace {

// Match each right eigenpair to the left eigenpair (of ℒ†) with the nearest
// conjugate eigenvalue. Greedy with a used-mask; ambiguity inside degenerate
// clusters is harmless because cluster Gram normalization follows.
std::vector<int> match_left_to_right(const std::vector<EigenPair>& right,
                                     const std::vector<EigenPair>& left) {
    const int n = static_cast<int>(right.size());
    std::vector<int> match(n, -1);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        const Complex target = std::conj(right[i].value);
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d = std::abs(left[j].value - target);
            if (d < best_dist) { best_dist = d; best = j; }
        }
        match[i] = best;
        used[best] = true;
    }
    return match;
}

} // namespace

SpectralData decompose(const Superoperator& superop) {
    const int L = superop.sites;
    const int n = superop.dim();
    if (L < 1 || n != L * L || superop.mat.cols() != n)
        throw DimensionError("decompose: superoperator shape mismatch");

    const double norm = superop.mat.norm();
    const double zero_tol = kZeroModeTol * norm;
    const double deg_tol  = kDegeneracyTol * norm;

    std::vector<EigenPair> right = numerics::eig_general(superop.mat);
    const std::vector<EigenPair> left_raw = numerics::eig_general(superop.mat.adjoint());
    const std::vector<int> match = match_left_to_right(right, left_raw);

    // Order: descending real part, ties by ascending imaginary part, then index.
    std::vector<int> order(right.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Complex la = right[static_cast<std::size_t>(a)].value;
        const Complex lb = right[static_cast<std::size_t>(b)].value;
        if (la.real() != lb.real()) return la.real() > lb.real();
        if (la.imag() != lb.imag()) return la.imag() < lb.imag();
        return a < b;
    });

    // The zero mode goes first regardless of floating-point noise in Re.
    int zero_count = 0;
    int zero_pos = -1;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Complex lam = right[static_cast<std::size_t>(order[k])].value;
        if (std::abs(lam) <= zero_tol) {
            ++zero_count;
            if (zero_pos < 0) zero_pos = static_cast<int>(k);
        }
        if (lam.real() > zero_tol)
            throw ContractViolation("decompose: spectrum has a positive real part");
    }
    if (zero_count != 1)
        throw NonUniqueSteadyStateError(
            "decompose: zero eigenvalue multiplicity " + std::to_string(zero_count));
    std::rotate(order.begin(), order.begin() + zero_pos, order.begin() + zero_pos + 1);

    ComplexVector values(n);
    for (int k = 0; k < n; ++k)
        values(k) = right[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])].value;

    const auto clusters = numerics::degeneracy_clusters(values, deg_tol);
    bool near_degenerate = false;
    for (const auto& c : clusters) {
        if (c.size() < 2) continue;
        near_degenerate = true;
        if (std::find(c.begin(), c.end(), 0) != c.end())
            throw NonUniqueSteadyStateError("decompose: zero mode inside a degenerate cluster");
    }

    // Gather vectorized modes in sorted order.
    std::vector<ComplexVector> rvec(static_cast<std::size_t>(n)), lvec(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const int i = order[static_cast<std::size_t>(k)];
        rvec[static_cast<std::size_t>(k)] = right[static_cast<std::size_t>(i)].vector;
        lvec[static_cast<std::size_t>(k)] = left_raw[static_cast<std::size_t>(match[static_cast<std::size_t>(i)])].vector;
    }

    // Zero mode gauge: R₁ Hermitian with unit trace, L₁ = identity (the exact
    // left eigenvector of a trace-preserving generator).
    ComplexMatrix rho_e = numerics::unvectorize(rvec[0], L);
    const Complex tr = rho_e.trace();
    if (std::abs(tr) < 1e-12)
        throw ExceptionalPointError("decompose: traceless zero mode");
    rho_e /= tr; // complex rescale: kills the arbitrary phase, trace -> 1
    rho_e = 0.5 * (rho_e + rho_e.adjoint()).eval();
    rho_e /= rho_e.trace().real();
    rvec[0] = numerics::vectorize(rho_e);
    lvec[0] = numerics::vectorize(ComplexMatrix::Identity(L, L));

    // Biorthonormalize the decaying modes. Distinct eigenvalues are already
    // biorthogonal; inside each cluster solve the Gram block.
    for (const auto& cluster : clusters) {
        if (cluster.size() == 1 && cluster[0] == 0) continue;
        const int k = static_cast<int>(cluster.size());
        if (k == 1) {
            const int a = cluster[0];
            const Complex g = lvec[static_cast<std::size_t>(a)].dot(rvec[static_cast<std::size_t>(a)]);
            if (std::abs(g) < 1e-12)
                throw ExceptionalPointError("decompose: vanishing left/right overlap");
            lvec[static_cast<std::size_t>(a)] /= std::conj(g);
            continue;
        }
        ComplexMatrix rc(n, k), lc(n, k);
        for (int j = 0; j < k; ++j) {
            rc.col(j) = rvec[static_cast<std::size_t>(cluster[static_cast<std::size_t>(j)])];
            lc.col(j) = lvec[static_cast<std::size_t>(cluster[static_cast<std::size_t>(j)])];
        }
        const ComplexMatrix gram = lc.adjoint() * rc;
        Eigen::JacobiSVD<ComplexMatrix> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(k - 1);
        if (!(smax > 0.0) || smin < 1e-10 * smax)
            throw ExceptionalPointError("decompose: defective eigenvalue cluster");
        // lc' = lc · gram⁻†  so that lc'† rc = I on the cluster.
        const ComplexMatrix gram_inv_adj = gram.inverse().adjoint();
        const ComplexMatrix fixed = lc * gram_inv_adj;
        for (int j = 0; j < k; ++j)
            lvec[static_cast<std::size_t>(cluster[static_cast<std::size_t>(j)])] = fixed.col(j);
    }

    SpectralData sd;
    sd.sites = L;
    sd.eigenvalues = std::move(values);
    sd.near_degenerate = near_degenerate;
    sd.liouvillian_norm = norm;
    sd.right_modes.reserve(static_cast<std::size_t>(n));
    sd.left_modes.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        sd.right_modes.push_back(numerics::unvectorize(rvec[static_cast<std::size_t>(k)], L));
        sd.left_modes.push_back(numerics::unvectorize(lvec[static_cast<std::size_t>(k)], L));
    }
    sd.stationary = DensityMatrix{rho_e};
    sd.stationary_residual = (superop.mat * rvec[0]).norm();
    return sd;
}

DensityMatrix stationary_state(const SpectralData& sd) {
    if (sd.stationary_residual > kZeroModeTol * sd.liouvillian_norm)
        throw ContractViolation("stationary_state: kernel residual beyond tolerance");
    ComplexMatrix rho = 0.5 * (sd.stationary.rho + sd.stationary.rho.adjoint());
    rho /= rho.trace();
    DensityMatrix out{std::move(rho)};
    out.validate(1e-10, 1e-10, 1e-8); // PositivityError on a negative eigenvalue
    return out;
}

ComplexVector overlap_coefficients(const SpectralData& sd, const DensityMatrix& rho_i) {
    if (rho_i.dim() != sd.sites)
        throw DimensionError("overlap_coefficients: state dimension mismatch");
    const int n = static_cast<int>(sd.eigenvalues.size());
    ComplexVector c(n);
    for (int a = 0; a < n; ++a)
        c(a) = (sd.left_modes[static_cast<std::size_t>(a)].adjoint() * rho_i.rho).trace();
    return c;
}

double edge_weight(const ComplexMatrix& mode, Side side) {
    const int L = static_cast<int>(mode.rows());
    if (mode.cols() != L || L < 1)
        throw DimensionError("edge_weight: mode must be square");
    const double total = mode.squaredNorm();
    if (total == 0.0)
        throw ContractViolation("edge_weight: zero matrix has undefined weight");
    const int half = (L + 1) / 2; // 1-based split index: sites <= half are "left"
    double sum = 0.0;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            const bool in_left = (i < half) && (j < half);
            const bool in_right = (i >= half) && (j >= half);
            if ((side == Side::left && in_left) || (side == Side::right && in_right))
                sum += std::norm(mode(i, j));
        }
    return sum / total;
}

} // namespace skinchain::spectral
