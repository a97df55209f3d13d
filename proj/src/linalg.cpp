#include "entwit/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <string>

namespace entwit {

namespace {

void require_square(const Matrix& m, const BipartiteDims& dims, const char* where) {
    const Eigen::Index n = dims.total();
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(n) +
                                    "x" + std::to_string(n) + " matrix, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    out = Eigen::kroneckerProduct(a, b);
    return out;
}

Vector kron_vec(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

Matrix partial_transpose(const Matrix& m, const BipartiteDims& dims, Subsystem sub) {
    require_square(m, dims, "partial_transpose");
    const Eigen::Index da = dims.dim_a, db = dims.dim_b;
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            for (Eigen::Index k = 0; k < db; ++k)
                for (Eigen::Index l = 0; l < db; ++l) {
                    if (sub == Subsystem::B)
                        out(i * db + k, j * db + l) = m(i * db + l, j * db + k);
                    else
                        out(i * db + k, j * db + l) = m(j * db + k, i * db + l);
                }
    return out;
}

Matrix partial_trace(const Matrix& m, const BipartiteDims& dims, Subsystem traced) {
    require_square(m, dims, "partial_trace");
    const Eigen::Index da = dims.dim_a, db = dims.dim_b;
    if (traced == Subsystem::B) {
        Matrix out = Matrix::Zero(da, da);
        for (Eigen::Index i = 0; i < da; ++i)
            for (Eigen::Index j = 0; j < da; ++j)
                for (Eigen::Index k = 0; k < db; ++k)
                    out(i, j) += m(i * db + k, j * db + k);
        return out;
    }
    Matrix out = Matrix::Zero(db, db);
    for (Eigen::Index k = 0; k < db; ++k)
        for (Eigen::Index l = 0; l < db; ++l)
            for (Eigen::Index i = 0; i < da; ++i)
                out(k, l) += m(i * db + k, i * db + l);
    return out;
}

EigResult hermitian_eig(const Matrix& m, double herm_tol) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("hermitian_eig: matrix must be square");
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > herm_tol)
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian (max deviation " +
                                    std::to_string(dev) + ")");
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

SchmidtData schmidt(const Vector& v, const BipartiteDims& dims) {
    if (v.size() != dims.total())
        throw std::invalid_argument("schmidt: vector size " + std::to_string(v.size()) +
                                    " does not match dims total " + std::to_string(dims.total()));
    if (v.norm() == 0.0)
        throw std::invalid_argument("schmidt: zero vector has no Schmidt decomposition");
    const Eigen::Index da = dims.dim_a, db = dims.dim_b;
    Matrix reshaped(da, db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index k = 0; k < db; ++k)
            reshaped(i, k) = v(i * db + k);
    Eigen::JacobiSVD<Matrix> svd(reshaped, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SchmidtData out;
    out.coefficients = svd.singularValues();
    out.basis_a = svd.matrixU();
    // reshaped = U S V^dag, so the B-side Schmidt vectors are conj(V) columns
    out.basis_b = svd.matrixV().conjugate();
    return out;
}

double max_schmidt_sq(const Vector& v, const BipartiteDims& dims) {
    if (v.size() != dims.total())
        throw std::invalid_argument("max_schmidt_sq: vector size does not match dims");
    if (v.norm() == 0.0)
        throw std::invalid_argument("max_schmidt_sq: zero vector");
    const Eigen::Index da = dims.dim_a, db = dims.dim_b;
    Matrix reshaped(da, db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index k = 0; k < db; ++k)
            reshaped(i, k) = v(i * db + k);
    Eigen::JacobiSVD<Matrix> svd(reshaped);
    const double top = svd.singularValues()(0);
    return top * top;
}

Matrix matrix_sqrt_psd(const Matrix& m, double tol) {
    const EigResult eig = hermitian_eig(m);
    RealVector vals = eig.values;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals(i) < -tol)
            throw std::invalid_argument("matrix_sqrt_psd: matrix not PSD (min eigenvalue " +
                                        std::to_string(vals.minCoeff()) + ")");
        if (vals(i) < 0.0) vals(i) = 0.0;
    }
    return eig.vectors * vals.cwiseSqrt().asDiagonal() * eig.vectors.adjoint();
}

Complex hs_inner(const Matrix& m, const Matrix& n) {
    if (m.rows() != n.rows() || m.cols() != n.cols())
        throw std::invalid_argument("hs_inner: dimension mismatch");
    return (m.adjoint() * n).trace();
}

double hs_norm(const Matrix& m) {
    return m.norm();  // Frobenius = Hilbert-Schmidt
}

HermitianSplit hermitian_split(const Matrix& x) {
    if (x.rows() != x.cols())
        throw std::invalid_argument("hermitian_split: matrix must be square");
    HermitianSplit out;
    out.h = 0.5 * (x + x.adjoint());
    out.a = (x - x.adjoint()) / Complex(0.0, 2.0);
    return out;
}

Vector fix_global_phase(const Vector& v) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        if (mag > best) {
            best = mag;
            imax = i;
        }
    }
    if (best == 0.0) return v;
    const Complex phase = std::conj(v(imax)) / best;
    return phase * v;
}

}  // namespace entwit
