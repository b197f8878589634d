#include "skinchain/model.hpp"
#include "skinchain/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numeric>

namespace skinchain::model {

void ChainParams::validate(bool require_nontrivial) const {
    if (L < 2)
        throw ContractViolation("ChainParams: L must be >= 2");
    if (J < 0.0 || eps < 0.0 || J_R < 0.0 || J_L < 0.0)
        throw ContractViolation("ChainParams: rates must be nonnegative");
    if (require_nontrivial && J == 0.0 && eps == 0.0 && J_R == 0.0 && J_L == 0.0)
        throw ContractViolation("ChainParams: all couplings are zero");
}

double ChainParams::skin_ratio() const {
    if (!(J_L > 0.0))
        throw ContractViolation("ChainParams: skin ratio undefined for J_L <= 0");
    return J_R / J_L;
}

long long hilbert_dimension(int sites, int excitations) {
    if (sites < 1)
        throw ContractViolation("hilbert_dimension: L must be >= 1");
    if (excitations < 0)
        throw ContractViolation("hilbert_dimension: N must be >= 0");

    // C(N + L - 1, N), multiplicative form with exact intermediate division.
    const long long n = static_cast<long long>(excitations) + sites - 1;
    const long long k = std::min<long long>(excitations, n - excitations);
    long long result = 1;
    for (long long i = 1; i <= k; ++i) {
        const long long num = n - k + i;
        // result * num / i is exact; guard the multiplication.
        const long long g = std::gcd(result, i);
        long long r = result / g;
        long long d = i / g;
        const long long g2 = std::gcd(num, d);
        const long long m = num / g2;
        d /= g2; // d == 1 now, binomial prefixes are integers
        if (r > std::numeric_limits<long long>::max() / m)
            throw std::overflow_error("hilbert_dimension: result exceeds 64-bit range");
        result = r * m / d;
    }
    return result;
}

ComplexMatrix build_hamiltonian(const ChainParams& p) {
    p.validate(false);
    ComplexMatrix h = ComplexMatrix::Zero(p.L, p.L);
    for (int n = 0; n + 1 < p.L; ++n) {
        h(n, n + 1) = -p.J;
        h(n + 1, n) = -p.J;
    }
    h(0, p.L - 1) += -p.eps;
    h(p.L - 1, 0) += -p.eps;
    return h;
}

std::vector<ComplexMatrix> build_jump_operators(const ChainParams& p) {
    p.validate(false);
    std::vector<ComplexMatrix> ops;
    ops.reserve(2 * static_cast<std::size_t>(p.L - 1));
    const double sr = std::sqrt(p.J_R);
    const double sl = std::sqrt(p.J_L);
    for (int n = 0; n + 1 < p.L; ++n) {
        ComplexMatrix right = ComplexMatrix::Zero(p.L, p.L);
        right(n + 1, n) = sr;
        ops.push_back(std::move(right));
    }
    for (int n = 0; n + 1 < p.L; ++n) {
        ComplexMatrix left = ComplexMatrix::Zero(p.L, p.L);
        left(n, n + 1) = sl;
        ops.push_back(std::move(left));
    }
    return ops;
}

DensityMatrix DensityMatrix::site_projector(int L, int site) {
    if (L < 1 || site < 1 || site > L)
        throw DimensionError("DensityMatrix::site_projector: site out of range");
    ComplexMatrix m = ComplexMatrix::Zero(L, L);
    m(site - 1, site - 1) = 1.0;
    return DensityMatrix{std::move(m)};
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, double herm_tol,
                                         double trace_tol, double psd_tol) {
    DensityMatrix d{std::move(m)};
    d.validate(herm_tol, trace_tol, psd_tol);
    return d;
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
    if (rho.rows() != rho.cols() || rho.rows() < 1)
        throw DimensionError("DensityMatrix: matrix must be square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw ContractViolation("DensityMatrix: not Hermitian within tolerance");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > trace_tol)
        throw ContractViolation("DensityMatrix: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (rho + rho.adjoint()));
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw PositivityError("DensityMatrix: negative eigenvalue beyond tolerance");
}

Superoperator build_liouvillian(const ChainParams& p) {
    p.validate(false);
    const int L = p.L;
    const int d2 = L * L;
    const ComplexMatrix id = ComplexMatrix::Identity(L, L);
    const ComplexMatrix h = build_hamiltonian(p);

    const Complex minus_i(0.0, -1.0);
    ComplexMatrix sop = minus_i * (numerics::kron(id, h) - numerics::kron(h.transpose(), id));

    for (const ComplexMatrix& op : build_jump_operators(p)) {
        const ComplexMatrix opdop = op.adjoint() * op;
        sop += numerics::kron(op.conjugate(), op);
        sop -= 0.5 * numerics::kron(id, opdop);
        sop -= 0.5 * numerics::kron(opdop.transpose(), id);
    }

    Superoperator s;
    s.sites = L;
    s.mat = std::move(sop);
    if (s.mat.rows() != d2)
        throw DimensionError("build_liouvillian: internal size mismatch");
    return s;
}

ComplexMatrix liouvillian_action(const ChainParams& p, const ComplexMatrix& rho) {
    p.validate(false);
    const int L = p.L;
    if (rho.rows() != L || rho.cols() != L)
        throw DimensionError("liouvillian_action: state dimension mismatch");

    const ComplexMatrix h = build_hamiltonian(p);
    const Complex i_unit(0.0, 1.0);

    // i(ρH − Hρ) = −i[H, ρ]
    ComplexMatrix out = i_unit * (rho * h - h * rho);

    for (int n = 0; n < L; ++n) {
        for (int m = 0; m < L; ++m) {
            Complex v = 0.0;
            if (n == m) {
                if (n > 0)     v += p.J_R * rho(n - 1, n - 1); // feed from the left neighbour
                if (n < L - 1) v += p.J_L * rho(n + 1, n + 1); // feed from the right neighbour
            }
            v -= (p.J_R + p.J_L) * rho(n, m);
            const double at_last  = (n == L - 1 ? 1.0 : 0.0) + (m == L - 1 ? 1.0 : 0.0);
            const double at_first = (n == 0 ? 1.0 : 0.0) + (m == 0 ? 1.0 : 0.0);
            v += 0.5 * p.J_R * at_last  * rho(n, m);
            v += 0.5 * p.J_L * at_first * rho(n, m);
            out(n, m) += v;
        }
    }
    return out;
}

} // namespace skinchain::model
