#include "entwit/states.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace entwit {

namespace {

constexpr double kSqrt1_2 = std::numbers::sqrt2 / 2.0;

Matrix projector(const Vector& v) { return v * v.adjoint(); }

double min_eigenvalue(const Matrix& herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (herm + herm.adjoint()),
                                                 Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    gen_.seed(seq);
}

double RngStream::uniform() { return unit_(gen_); }

double RngStream::gaussian() { return normal_(gen_); }

PureVector::PureVector(Vector v, BipartiteDims d) : vec(std::move(v)), dims(d) {
    if (vec.size() != dims.total())
        throw std::invalid_argument("PureVector: size " + std::to_string(vec.size()) +
                                    " does not match dims total " +
                                    std::to_string(dims.total()));
    if (std::abs(vec.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("PureVector: vector not normalized (norm " +
                                    std::to_string(vec.norm()) + ")");
}

DensityMatrix::DensityMatrix(Matrix m, BipartiteDims d) : mat(std::move(m)), dims(d) {
    if (mat.rows() != dims.total() || mat.cols() != dims.total())
        throw std::invalid_argument("DensityMatrix: shape does not match dims");
    const double herm_dev = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-10)
        throw std::invalid_argument("DensityMatrix: not Hermitian (max deviation " +
                                    std::to_string(herm_dev) + ")");
    const double tr_dev = std::abs(mat.trace() - Complex(1.0, 0.0));
    if (tr_dev > 1e-10)
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                    std::to_string(tr_dev));
    const double lmin = min_eigenvalue(mat);
    if (lmin < -1e-10)
        throw std::invalid_argument("DensityMatrix: not PSD (min eigenvalue " +
                                    std::to_string(lmin) + ")");
}

DensityMatrix DensityMatrix::trusted(Matrix m, BipartiteDims d) {
    return DensityMatrix(std::move(m), d, Trusted{});
}

PureVector phi_alpha(double alpha) {
    if (alpha < 0.0 || alpha > std::numbers::pi / 2.0 + 1e-12)
        throw std::invalid_argument("phi_alpha: alpha must lie in [0, pi/2]");
    Vector v = Vector::Zero(4);
    v(0) = std::cos(alpha);
    v(3) = std::sin(alpha);
    return PureVector(std::move(v), BipartiteDims(2, 2));
}

std::array<PureVector, 4> bell_basis() {
    const BipartiteDims d22(2, 2);
    Vector p1 = Vector::Zero(4), p2 = Vector::Zero(4), p3 = Vector::Zero(4),
           p4 = Vector::Zero(4);
    p1(0) = kSqrt1_2; p1(3) = kSqrt1_2;
    p2(0) = kSqrt1_2; p2(3) = -kSqrt1_2;
    p3(1) = kSqrt1_2; p3(2) = kSqrt1_2;
    p4(1) = kSqrt1_2; p4(2) = -kSqrt1_2;
    return {PureVector(std::move(p1), d22), PureVector(std::move(p2), d22),
            PureVector(std::move(p3), d22), PureVector(std::move(p4), d22)};
}

DensityMatrix boundary_state(double alpha) {
    const PureVector phi = phi_alpha(alpha);
    const Matrix w = partial_transpose(projector(phi.vec), phi.dims, Subsystem::B);
    return DensityMatrix((Matrix::Identity(4, 4) - w) / 3.0, phi.dims);
}

DensityMatrix werner(double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("werner: p must lie in [0, 1]");
    const Vector singlet = bell_basis()[3].vec;
    Matrix m = p * projector(singlet) + (1.0 - p) * Matrix::Identity(4, 4) / 4.0;
    return DensityMatrix(std::move(m), BipartiteDims(2, 2));
}

DensityMatrix separable_mixture(const std::vector<ProductTerm>& terms) {
    if (terms.empty())
        throw std::invalid_argument("separable_mixture: empty term list");
    double total = 0.0;
    for (const auto& t : terms) {
        if (t.weight < 0.0)
            throw std::invalid_argument("separable_mixture: negative weight");
        total += t.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("separable_mixture: weights sum to " +
                                    std::to_string(total) + ", expected 1");
    const Eigen::Index da = terms.front().a.size(), db = terms.front().b.size();
    const BipartiteDims dims(da, db);
    Matrix m = Matrix::Zero(dims.total(), dims.total());
    for (const auto& t : terms) {
        if (t.a.size() != da || t.b.size() != db)
            throw std::invalid_argument("separable_mixture: inconsistent factor sizes");
        if (t.a.norm() == 0.0 || t.b.norm() == 0.0)
            throw std::invalid_argument("separable_mixture: zero product vector");
        const Vector prod = kron_vec(t.a.normalized(), t.b.normalized());
        m += t.weight * projector(prod);
    }
    return DensityMatrix(std::move(m), dims);
}

bool is_ppt(const DensityMatrix& rho, double tol) {
    return min_eigenvalue(partial_transpose(rho.mat, rho.dims)) >= -tol;
}

NptEigenpair npt_eigenpair(const DensityMatrix& rho) {
    const EigResult eig = hermitian_eig(partial_transpose(rho.mat, rho.dims));
    const double lmin = eig.values(0);
    if (lmin >= -1e-10)
        throw std::invalid_argument("npt_eigenpair: state not NPT (min eigenvalue of rho^Tb is " +
                                    std::to_string(lmin) + ")");
    Vector phi = fix_global_phase(eig.vectors.col(0));
    return {lmin, PureVector(std::move(phi), rho.dims)};
}

DensityMatrix sample_ginibre_state(const BipartiteDims& dims, RngStream& rng) {
    const Eigen::Index n = dims.total();
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix::trusted(std::move(m), dims);
}

namespace {

// Isotropic Gaussian on Hermitian matrices under the HS inner product,
// projected onto the traceless subspace.
Matrix traceless_hermitian_gaussian(Eigen::Index n, RngStream& rng) {
    Matrix h(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        h(i, i) = rng.gaussian();
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Complex z(rng.gaussian() * kSqrt1_2, rng.gaussian() * kSqrt1_2);
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    h -= (h.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
    return h;
}

}  // namespace

BallSample sample_ball(const DensityMatrix& center, double radius, RngStream& rng,
                       long max_tries, BallSampler scheme) {
    if (radius <= 0.0)
        throw std::invalid_argument("sample_ball: radius must be positive");
    const Eigen::Index n = center.dims.total();
    // flat measure on the (n^2 - 1)-dimensional HS-ball of traceless shifts
    const double ball_dim = static_cast<double>(n * n - 1);
    for (long tries = 1; tries <= max_tries; ++tries) {
        if (scheme == BallSampler::Perturbation) {
            Matrix delta = traceless_hermitian_gaussian(n, rng);
            const double norm = hs_norm(delta);
            if (norm == 0.0) continue;
            const double r = radius * std::pow(rng.uniform(), 1.0 / ball_dim);
            Matrix cand = center.mat + (r / norm) * delta;
            if (min_eigenvalue(cand) >= -1e-10)
                return {DensityMatrix::trusted(std::move(cand), center.dims), tries};
        } else {
            DensityMatrix cand = sample_ginibre_state(center.dims, rng);
            if (hs_norm(center.mat - cand.mat) <= radius)
                return {std::move(cand), tries};
        }
    }
    throw std::runtime_error("sample_ball: no acceptance within " + std::to_string(max_tries) +
                             " tries (acceptance rate < " +
                             std::to_string(1.0 / static_cast<double>(max_tries)) + ")");
}

}  // namespace entwit
