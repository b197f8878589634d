#include "skinchain/numerics.hpp"
#include "skinchain/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace skinchain::numerics {

std::vector<EigenPair> eig_general(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("eig_general: matrix must be square");
    if (a.rows() < 1)
        throw DimensionError("eig_general: dimension must be >= 1");

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success) {
        // ComplexSchur sweeps are bounded at 30 iterations per row.
        const int budget = 30 * static_cast<int>(a.rows());
        throw ConvergenceError("eig_general: QR iteration did not converge", budget);
    }

    std::vector<EigenPair> pairs;
    pairs.reserve(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        EigenPair p;
        p.value  = solver.eigenvalues()(i);
        p.vector = solver.eigenvectors().col(i);
        p.vector.normalize();
        pairs.push_back(std::move(p));
    }
    return pairs;
}

HermitianEigen eig_hermitian(const ComplexMatrix& a, double hermiticity_tol) {
    if (a.rows() != a.cols())
        throw DimensionError("eig_hermitian: matrix must be square");
    if (a.rows() < 1)
        throw DimensionError("eig_hermitian: dimension must be >= 1");

    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > hermiticity_tol)
        throw ContractViolation("eig_hermitian: input not Hermitian within tolerance");

    // Symmetrize before solving so the result is exact for the Hermitian part.
    const ComplexMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("eig_hermitian: QL iteration did not converge",
                               30 * static_cast<int>(a.rows()));

    return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<std::vector<int>> degeneracy_clusters(const ComplexVector& values, double tol) {
    const int n = static_cast<int>(values.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);

    std::function<int(int)> find = [&](int i) {
        while (parent[i] != i) { parent[i] = parent[parent[i]]; i = parent[i]; }
        return i;
    };

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(values(i) - values(j)) <= tol) {
                int a = find(i), b = find(j);
                if (a != b) parent[a] = b;
            }

    std::vector<std::vector<int>> clusters;
    std::vector<int> root_slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (root_slot[r] < 0) {
            root_slot[r] = static_cast<int>(clusters.size());
            clusters.emplace_back();
        }
        clusters[static_cast<std::size_t>(root_slot[r])].push_back(i);
    }
    return clusters;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector vectorize(const ComplexMatrix& m) {
    // Eigen stores column-major, so the raw layout is already column-stacked.
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, int rows) {
    if (rows <= 0 || v.size() % rows != 0)
        throw DimensionError("unvectorize: size not divisible by row count");
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, v.size() / rows);
}

namespace {

// One classical RK4 step of size h for y' = f(y).
ComplexVector rk4_step(const LinearMap& f, const ComplexVector& y, double h) {
    const ComplexVector k1 = f(y);
    const ComplexVector k2 = f(y + (0.5 * h) * k1);
    const ComplexVector k3 = f(y + (0.5 * h) * k2);
    const ComplexVector k4 = f(y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

std::vector<ComplexVector> integrate_linear(const LinearMap& rhs,
                                            const ComplexVector& y0,
                                            std::span<const double> times,
                                            double tol) {
    if (times.empty())
        throw DimensionError("integrate_linear: empty sample grid");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw ContractViolation("integrate_linear: sample grid must be strictly increasing");
    if (!(tol > 0.0))
        throw ContractViolation("integrate_linear: tolerance must be positive");

    std::vector<ComplexVector> samples;
    samples.reserve(times.size());
    samples.push_back(y0);

    const double span = times.back() - times.front();
    const double h_min = std::max(span, 1.0) * 1e-13;

    ComplexVector y = y0;
    double h_next = 0.0; // carried between gaps; 0 means "use the gap width"

    for (std::size_t k = 1; k < times.size(); ++k) {
        double t = times[k - 1];
        const double t_end = times[k];
        if (h_next <= 0.0) h_next = t_end - t;

        while (t < t_end) {
            double h = std::min(h_next, t_end - t);
            for (;;) {
                // Step-halving control: compare one h-step against two h/2-steps.
                const ComplexVector y_full = rk4_step(rhs, y, h);
                const ComplexVector y_mid  = rk4_step(rhs, y, 0.5 * h);
                const ComplexVector y_half = rk4_step(rhs, y_mid, 0.5 * h);
                // For RK4 the difference overestimates the halved-step local
                // error by a factor of 15.
                const double err = (y_full - y_half).norm() / 15.0;
                if (err <= tol) {
                    y = y_half;
                    t += h;
                    const double grow = (err > 0.0)
                        ? std::min(2.0, 0.9 * std::pow(tol / err, 0.2))
                        : 2.0;
                    h_next = h * grow;
                    break;
                }
                h *= 0.5;
                if (h < h_min)
                    throw StiffnessError("integrate_linear: step size underflow");
            }
        }
        samples.push_back(y);
    }
    return samples;
}

std::vector<ComplexVector> integrate_linear(const ComplexMatrix& generator,
                                            const ComplexVector& y0,
                                            std::span<const double> times,
                                            double tol) {
    if (generator.rows() != generator.cols())
        throw DimensionError("integrate_linear: generator must be square");
    if (generator.cols() != y0.size())
        throw DimensionError("integrate_linear: generator/state size mismatch");
    return integrate_linear(
        [&generator](const ComplexVector& y) { return ComplexVector(generator * y); },
        y0, times, tol);
}

} // namespace skinchain::numerics
