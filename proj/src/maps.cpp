#include "entwit/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace entwit {

namespace {

Vector random_unit(Eigen::Index n, RngStream& rng) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
    const double norm = v.norm();
    if (norm == 0.0) return random_unit(n, rng);
    return v / norm;
}

Matrix random_psd(Eigen::Index n, RngStream& rng) {
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    return g * g.adjoint();
}

}  // namespace

LinearMap::LinearMap(Matrix e, Eigen::Index in_dim, Eigen::Index out_dim)
    : choi_(std::move(e)), in_dim_(in_dim), out_dim_(out_dim) {}

LinearMap LinearMap::from_choi(Matrix e, Eigen::Index in_dim, Eigen::Index out_dim) {
    if (in_dim < 1 || out_dim < 1)
        throw std::invalid_argument("LinearMap: dimensions must be positive");
    const Eigen::Index n = in_dim * out_dim;
    if (e.rows() != n || e.cols() != n)
        throw std::invalid_argument("LinearMap: operator must be " + std::to_string(n) + "x" +
                                    std::to_string(n) + ", got " + std::to_string(e.rows()) +
                                    "x" + std::to_string(e.cols()));
    const double herm_dev = (e - e.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-10)
        throw std::invalid_argument(
            "LinearMap: operator not Hermitian (deviation " + std::to_string(herm_dev) +
            "); the map would not satisfy Lambda(X^dag) = Lambda(X)^dag");
    return LinearMap(std::move(e), in_dim, out_dim);
}

LinearMap LinearMap::from_action(const std::function<Matrix(const Matrix&)>& action,
                                 Eigen::Index in_dim, Eigen::Index out_dim) {
    const Eigen::Index n = in_dim * out_dim;
    Matrix e = Matrix::Zero(n, n);
    // E = (I (x) eps)(sum_{bb'} |bb><b'b'|), i.e. E[(b,c),(b',c')] = eps(|b><b'|)_{cc'}
    for (Eigen::Index b = 0; b < in_dim; ++b)
        for (Eigen::Index bp = 0; bp < in_dim; ++bp) {
            Matrix unit = Matrix::Zero(in_dim, in_dim);
            unit(b, bp) = 1.0;
            const Matrix mapped = action(unit);
            if (mapped.rows() != out_dim || mapped.cols() != out_dim)
                throw std::invalid_argument("LinearMap::from_action: action returned wrong shape");
            for (Eigen::Index c = 0; c < out_dim; ++c)
                for (Eigen::Index cp = 0; cp < out_dim; ++cp)
                    e(b * out_dim + c, bp * out_dim + cp) = mapped(c, cp);
        }
    return from_choi(std::move(e), in_dim, out_dim);
}

Matrix LinearMap::apply(const Matrix& x) const {
    if (x.rows() != in_dim_ || x.cols() != in_dim_)
        throw std::invalid_argument("LinearMap::apply: input must be " +
                                    std::to_string(in_dim_) + "x" + std::to_string(in_dim_));
    Matrix out = Matrix::Zero(out_dim_, out_dim_);
    for (Eigen::Index c = 0; c < out_dim_; ++c)
        for (Eigen::Index cp = 0; cp < out_dim_; ++cp) {
            Complex sum = 0.0;
            for (Eigen::Index b = 0; b < in_dim_; ++b)
                for (Eigen::Index bp = 0; bp < in_dim_; ++bp)
                    sum += choi_(b * out_dim_ + c, bp * out_dim_ + cp) * x(b, bp);
            out(c, cp) = sum;
        }
    return out;
}

LinearMap map_from_operator(const Matrix& e, const BipartiteDims& dims) {
    return LinearMap::from_choi(e, dims.dim_a, dims.dim_b);
}

Matrix operator_from_map(const LinearMap& m) { return m.choi(); }

LinearMap identity_map(Eigen::Index dim) {
    return LinearMap::from_action([](const Matrix& x) { return x; }, dim, dim);
}

LinearMap transposition_map(Eigen::Index dim) {
    return LinearMap::from_action([](const Matrix& x) { return x.transpose().eval(); }, dim,
                                  dim);
}

LinearMap reduction_map(Eigen::Index dim) {
    return LinearMap::from_action(
        [dim](const Matrix& x) {
            return (x.trace() * Matrix::Identity(dim, dim) - x).eval();
        },
        dim, dim);
}

Matrix apply_to_b(const LinearMap& m, const Matrix& mat, const BipartiteDims& dims) {
    if (dims.dim_b != m.in_dim())
        throw std::invalid_argument("apply_to_b: B dimension " + std::to_string(dims.dim_b) +
                                    " does not match map input dimension " +
                                    std::to_string(m.in_dim()));
    if (mat.rows() != dims.total() || mat.cols() != dims.total())
        throw std::invalid_argument("apply_to_b: matrix shape does not match dims");
    const Eigen::Index da = dims.dim_a, db = dims.dim_b, dc = m.out_dim();
    Matrix out(da * dc, da * dc);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            out.block(i * dc, j * dc, dc, dc) =
                m.apply(mat.block(i * db, j * db, db, db));
    return out;
}

Matrix apply_to_b(const LinearMap& m, const DensityMatrix& rho) {
    return apply_to_b(m, rho.mat, rho.dims);
}

LinearMap adjoint_map(const LinearMap& m) {
    const Eigen::Index din = m.in_dim(), dout = m.out_dim();
    Matrix e(dout * din, dout * din);
    // E_adj[(c,b),(c',b')] = conj(E[(b,c),(b',c')])
    for (Eigen::Index b = 0; b < din; ++b)
        for (Eigen::Index bp = 0; bp < din; ++bp)
            for (Eigen::Index c = 0; c < dout; ++c)
                for (Eigen::Index cp = 0; cp < dout; ++cp)
                    e(c * din + b, cp * din + bp) =
                        std::conj(m.choi()(b * dout + c, bp * dout + cp));
    return LinearMap::from_choi(std::move(e), dout, din);
}

MapCertificate certify_map(const LinearMap& m, int trials, int restarts,
                           std::uint64_t seed) {
    const Eigen::Index din = m.in_dim(), dout = m.out_dim();
    const Matrix& e = m.choi();

    // Block positivity of E by alternating eigensolves over product vectors.
    double min_expect = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        RngStream rng(seed, 1000 + static_cast<std::uint64_t>(r));
        Vector a = random_unit(din, rng);
        Vector b = random_unit(dout, rng);
        double value = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 60; ++iter) {
            Matrix ma = Matrix::Zero(din, din);
            for (Eigen::Index j = 0; j < din; ++j)
                for (Eigen::Index jp = 0; jp < din; ++jp)
                    for (Eigen::Index k = 0; k < dout; ++k)
                        for (Eigen::Index kp = 0; kp < dout; ++kp)
                            ma(j, jp) += std::conj(b(k)) * e(j * dout + k, jp * dout + kp) *
                                         b(kp);
            Eigen::SelfAdjointEigenSolver<Matrix> sa(0.5 * (ma + ma.adjoint()));
            a = sa.eigenvectors().col(0);
            Matrix mb = Matrix::Zero(dout, dout);
            for (Eigen::Index k = 0; k < dout; ++k)
                for (Eigen::Index kp = 0; kp < dout; ++kp)
                    for (Eigen::Index j = 0; j < din; ++j)
                        for (Eigen::Index jp = 0; jp < din; ++jp)
                            mb(k, kp) += std::conj(a(j)) * e(j * dout + k, jp * dout + kp) *
                                         a(jp);
            Eigen::SelfAdjointEigenSolver<Matrix> sb(0.5 * (mb + mb.adjoint()));
            b = sb.eigenvectors().col(0);
            const double v2 = sb.eigenvalues()(0);
            if (value - v2 < 1e-13) {
                value = v2;
                break;
            }
            value = v2;
        }
        min_expect = std::min(min_expect, value);
    }

    // Trace behaviour and output positivity on random PSD probes.
    double max_trace_excess = -std::numeric_limits<double>::infinity();
    double min_output_eig = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        RngStream rng(seed, 2000 + static_cast<std::uint64_t>(t));
        const Matrix x = random_psd(din, rng);
        const Matrix y = m.apply(x);
        max_trace_excess =
            std::max(max_trace_excess, y.trace().real() - x.trace().real());
        Eigen::SelfAdjointEigenSolver<Matrix> sy(0.5 * (y + y.adjoint()),
                                                 Eigen::EigenvaluesOnly);
        min_output_eig = std::min(min_output_eig, sy.eigenvalues().minCoeff());
    }

    MapCertificate cert;
    cert.min_product_expectation = min_expect;
    cert.max_trace_excess = max_trace_excess;
    cert.positive = min_expect >= -1e-9 && min_output_eig >= -1e-9;
    cert.trace_decreasing = max_trace_excess <= 1e-10;
    return cert;
}

LinearWitness witness_from_map(const LinearMap& m, const PureVector& phi) {
    if (phi.dims.dim_b != m.out_dim())
        throw std::invalid_argument("witness_from_map: phi's B dimension must equal the map's "
                                    "output dimension");
    const LinearMap adj = adjoint_map(m);
    Matrix w = apply_to_b(adj, phi.vec * phi.vec.adjoint(), phi.dims);
    const BipartiteDims wdims(phi.dims.dim_a, m.in_dim());
    return {0.5 * (w + w.adjoint()), wdims, phi};
}

double improve_via_map(const LinearMap& m, const PureVector& phi,
                       const std::vector<PureVector>& psis,
                       const std::vector<double>& alphas, const DensityMatrix& rho) {
    if (psis.size() != alphas.size())
        throw std::invalid_argument("improve_via_map: psis and alphas length mismatch");
    const MapCertificate cert = certify_map(m);
    if (!cert.positive)
        throw std::invalid_argument("improve_via_map: map failed positivity certification "
                                    "(min product expectation " +
                                    std::to_string(cert.min_product_expectation) + ")");
    if (!cert.trace_decreasing)
        throw std::invalid_argument("improve_via_map: map is not trace decreasing (excess " +
                                    std::to_string(cert.max_trace_excess) + ")");

    if (rho.dims.dim_a != phi.dims.dim_a || rho.dims.dim_b != m.in_dim())
        throw std::invalid_argument("improve_via_map: rho must live on (dim_a, map input) "
                                    "dimensions");
    const LinearMap adj = adjoint_map(m);
    const Matrix w = apply_to_b(adj, phi.vec * phi.vec.adjoint(), phi.dims);
    double value = (rho.mat * w).trace().real();
    for (std::size_t i = 0; i < psis.size(); ++i) {
        if (!(psis[i].dims == phi.dims))
            throw std::invalid_argument("improve_via_map: psi dims mismatch");
        const Matrix x = phi.vec * psis[i].vec.adjoint();
        const Complex t = (rho.mat * apply_to_b(adj, x, phi.dims)).trace();
        const Complex t_dag = (rho.mat * apply_to_b(adj, x.adjoint().eval(), phi.dims)).trace();
        value -= alphas[i] * (t * t_dag).real();
    }
    return value;
}

}  // namespace entwit
