// linalg.hpp — dimension-aware complex-matrix primitives for bipartite systems:
// partial transpose/trace, Hermitian eigendecomposition, Schmidt decomposition,
// PSD square root, Hilbert-Schmidt geometry.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace entwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

// Tensor-factor dimensions of a bipartite space; index convention is
// A-major: composite index = i_A * dim_b + i_B.
struct BipartiteDims {
    Eigen::Index dim_a;
    Eigen::Index dim_b;

    BipartiteDims(Eigen::Index a, Eigen::Index b) : dim_a(a), dim_b(b) {
        if (a < 2 || b < 2)
            throw std::invalid_argument("BipartiteDims: each factor must have dimension >= 2");
        if (a * b > 64)
            throw std::invalid_argument("BipartiteDims: total dimension capped at 64");
    }

    Eigen::Index total() const { return dim_a * dim_b; }
    Eigen::Index dim(Subsystem s) const { return s == Subsystem::A ? dim_a : dim_b; }
    bool operator==(const BipartiteDims&) const = default;
};

// Kronecker products with plain dense results.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron_vec(const Vector& a, const Vector& b);

// Transposition of one tensor factor: rho_{ij,kl} -> rho_{ij,lk} for subsystem B.
// Linear involution, preserves trace and Hermiticity.
Matrix partial_transpose(const Matrix& m, const BipartiteDims& dims,
                         Subsystem sub = Subsystem::B);

// Trace over one tensor factor; result lives on the kept subsystem.
Matrix partial_trace(const Matrix& m, const BipartiteDims& dims, Subsystem traced);

struct EigResult {
    RealVector values;  // ascending
    Matrix vectors;     // orthonormal columns, vectors.col(i) <-> values(i)
};

// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
// (M + M^dag)/2 before solving; deviations beyond herm_tol are an error.
EigResult hermitian_eig(const Matrix& m, double herm_tol = 1e-10);

struct SchmidtData {
    RealVector coefficients;  // nonnegative, decreasing, length min(dim_a, dim_b)
    Matrix basis_a;           // dim_a x r, orthonormal columns
    Matrix basis_b;           // dim_b x r, orthonormal columns
    // v = sum_i coefficients(i) * basis_a.col(i) (x) basis_b.col(i)
};

// Schmidt decomposition via SVD of the dim_a x dim_b reshaping. Input need not
// be normalized; coefficients scale with its norm. Zero vectors are an error.
SchmidtData schmidt(const Vector& v, const BipartiteDims& dims);

// Square of the largest Schmidt coefficient; 1 iff v is a product vector
// (for normalized v).
double max_schmidt_sq(const Vector& v, const BipartiteDims& dims);

// Square root of a PSD matrix. Eigenvalues in [-tol, 0) are clamped to zero;
// anything below -tol is an error.
Matrix matrix_sqrt_psd(const Matrix& m, double tol = 1e-10);

// Hilbert-Schmidt inner product Tr(M^dag N) and the induced norm.
Complex hs_inner(const Matrix& m, const Matrix& n);
double hs_norm(const Matrix& m);

struct HermitianSplit {
    Matrix h;  // (X + X^dag)/2
    Matrix a;  // (X - X^dag)/(2i)
    // X = h + i*a with h, a Hermitian
};
HermitianSplit hermitian_split(const Matrix& x);

// Deterministic global-phase convention: the largest-magnitude component is
// made real positive (first occurrence wins on ties).
Vector fix_global_phase(const Vector& v);

}  // namespace entwit
