// numerics.hpp — dense complex linear algebra and time integration primitives
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace skinchain::numerics {

using Complex       = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix    = Eigen::MatrixXd;
using RealVector    = Eigen::VectorXd;

// One eigenvalue with its (right) eigenvector, ‖vector‖₂ = 1.
struct EigenPair {
    Complex value;
    ComplexVector vector;
};

// Full eigendecomposition of a general square complex matrix.
// No ordering guaranteed. Residual ‖A v − λ v‖₂ ≤ 1e−8 ‖A‖_F per pair.
std::vector<EigenPair> eig_general(const ComplexMatrix& a);

// Eigendecomposition of a Hermitian matrix: real eigenvalues sorted
// ascending, eigenvectors as the columns of a unitary matrix.
struct HermitianEigen {
    RealVector values;
    ComplexMatrix vectors;
};

// Requires ‖a − a†‖_max ≤ hermiticity_tol; throws ContractViolation otherwise.
HermitianEigen eig_hermitian(const ComplexMatrix& a, double hermiticity_tol = 1e-9);

// Partition indices of `values` into clusters of mutually close eigenvalues
// (transitive closure of |λ_i − λ_j| ≤ tol). Singletons are size-1 clusters.
std::vector<std::vector<int>> degeneracy_clusters(const ComplexVector& values, double tol);

// Kronecker product, row-major blocks: (a ⊗ b)[i·p+k, j·q+l] = a(i,j) b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-stacking vectorization and its inverse.
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, int rows);

// Linear right-hand side y' = A y presented as a matrix-free map.
using LinearMap = std::function<ComplexVector(const ComplexVector&)>;

// Classical RK4 with step-halving error control. `times` is a strictly
// increasing sample grid; y0 is the state at times[0]. The local error per
// accepted step is kept at or below `tol`. Returns the state at every grid
// point (including times[0]). Throws StiffnessError on step underflow.
std::vector<ComplexVector> integrate_linear(const LinearMap& rhs,
                                            const ComplexVector& y0,
                                            std::span<const double> times,
                                            double tol);

std::vector<ComplexVector> integrate_linear(const ComplexMatrix& generator,
                                            const ComplexVector& y0,
                                            std::span<const double> times,
                                            double tol);

} // namespace skinchain::numerics
