#include "entwit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace entwit {

namespace {

Matrix projector(const Vector& v) { return v * v.adjoint(); }

void require_same_dims(const BipartiteDims& a, const BipartiteDims& b, const char* where) {
    if (!(a == b))
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                    std::to_string(a.dim_a) + "x" + std::to_string(a.dim_b) +
                                    " vs " + std::to_string(b.dim_a) + "x" +
                                    std::to_string(b.dim_b) + ")");
}

// <psi|rho^Tb|phi> = Tr(rho X^Tb) for X = |phi><psi|.
Complex transposed_expectation(const PureVector& phi, const PureVector& psi,
                               const DensityMatrix& rho) {
    const Matrix rho_tb = partial_transpose(rho.mat, rho.dims);
    return psi.vec.dot(rho_tb * phi.vec);  // Eigen's dot conjugates the left argument
}

void require_orthonormal(const std::vector<const Vector*>& vs, const char* where,
                         double tol = 1e-10) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i; j < vs.size(); ++j) {
            const Complex overlap = vs[i]->dot(*vs[j]);
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(overlap - expected) > tol)
                throw std::invalid_argument(std::string(where) +
                                            ": vector list not orthonormal (|<v" +
                                            std::to_string(i) + "|v" + std::to_string(j) +
                                            ">| deviates by " +
                                            std::to_string(std::abs(overlap - expected)) + ")");
        }
}

}  // namespace

LinearWitness witness_from_generator(const PureVector& phi) {
    Matrix w = partial_transpose(projector(phi.vec), phi.dims, Subsystem::B);
    return {std::move(w), phi.dims, phi};
}

WitnessFromState witness_from_npt(const DensityMatrix& rho0) {
    const NptEigenpair pair = npt_eigenpair(rho0);
    return {witness_from_generator(pair.phi), pair.lambda_minus};
}

double eval_linear(const LinearWitness& w, const DensityMatrix& rho) {
    require_same_dims(w.dims, rho.dims, "eval_linear");
    return (w.w * rho.mat).trace().real();
}

double nonlinear_term(const PureVector& phi, const PureVector& psi,
                      const DensityMatrix& rho) {
    require_same_dims(phi.dims, rho.dims, "nonlinear_term");
    require_same_dims(psi.dims, rho.dims, "nonlinear_term");
    return std::norm(transposed_expectation(phi, psi, rho));
}

double eval_F1(const PureVector& phi, const PureVector& psi, const DensityMatrix& rho) {
    const double s = max_schmidt_sq(psi.vec, psi.dims);
    return eval_linear(witness_from_generator(phi), rho) -
           nonlinear_term(phi, psi, rho) / s;
}

double eval_F2(const PureVector& phi, const std::vector<PureVector>& basis,
               const DensityMatrix& rho) {
    if (basis.empty())
        throw std::invalid_argument("eval_F2: empty basis");
    std::vector<const Vector*> vs;
    vs.reserve(basis.size());
    for (const auto& psi : basis) {
        require_same_dims(psi.dims, rho.dims, "eval_F2");
        vs.push_back(&psi.vec);
    }
    require_orthonormal(vs, "eval_F2");
    const Matrix rho_tb = partial_transpose(rho.mat, rho.dims);
    const Vector eta = rho_tb * phi.vec;
    double sum = 0.0;
    for (const auto& psi : basis) sum += std::norm(psi.vec.dot(eta));
    return phi.vec.dot(eta).real() - sum;
}

// ---------------------------------------------------------------------------
// P(chi) positivity on the product manifold
// ---------------------------------------------------------------------------

namespace {

// conj of the dim_a x dim_b reshaping of w, so that <w|a(x)b> = a^T (Wc b).
Matrix reshape_conj(const Vector& w, const BipartiteDims& dims) {
    Matrix out(dims.dim_a, dims.dim_b);
    for (Eigen::Index i = 0; i < dims.dim_a; ++i)
        for (Eigen::Index k = 0; k < dims.dim_b; ++k)
            out(i, k) = std::conj(w(i * dims.dim_b + k));
    return out;
}

struct ProductObjective {
    std::vector<Matrix> quad;      // Wc per quadratic psi
    std::vector<double> quad_alpha;
    std::vector<Matrix> quart;     // Wc per quartic psi
    std::vector<double> quart_alpha;
    Matrix phi_mat;                // Wc for phi, used by the quartic factor
    bool has_quartic = false;

    double eval(const Vector& a, const Vector& b) const {
        double p = 1.0;
        for (std::size_t i = 0; i < quad.size(); ++i)
            p -= quad_alpha[i] * std::norm(a.transpose() * (quad[i] * b));
        if (has_quartic) {
            const double pphi = std::norm(a.transpose() * (phi_mat * b));
            for (std::size_t i = 0; i < quart.size(); ++i) {
                const double m = std::norm(a.transpose() * (quart[i] * b));
                p -= quart_alpha[i] * pphi * m * m;
            }
        }
        return p;
    }

    // Wirtinger gradients of P with respect to conj(a), conj(b).
    void grad(const Vector& a, const Vector& b, Vector& ga, Vector& gb) const {
        ga = Vector::Zero(a.size());
        gb = Vector::Zero(b.size());
        auto accumulate = [&](const Matrix& wc, double coeff) {
            // coeff * d|c|^2 with c = a^T (wc b)
            const Vector wb = wc * b;
            const Vector wa = wc.transpose() * a;
            const Complex c = a.transpose() * wb;
            ga += coeff * c * wb.conjugate();
            gb += coeff * c * wa.conjugate();
        };
        for (std::size_t i = 0; i < quad.size(); ++i) accumulate(quad[i], -quad_alpha[i]);
        if (has_quartic) {
            const Vector pb = phi_mat * b;
            const Vector pa = phi_mat.transpose() * a;
            const Complex cphi = a.transpose() * pb;
            const double pphi = std::norm(cphi);
            for (std::size_t i = 0; i < quart.size(); ++i) {
                const Vector wb = quart[i] * b;
                const Vector wa = quart[i].transpose() * a;
                const Complex c = a.transpose() * wb;
                const double m = std::norm(c);
                // d(pphi * m^2) = m^2 dpphi + 2 pphi m dm
                ga += -quart_alpha[i] * (m * m * cphi * pb.conjugate() +
                                         2.0 * pphi * m * c * wb.conjugate());
                gb += -quart_alpha[i] * (m * m * cphi * pa.conjugate() +
                                         2.0 * pphi * m * c * wa.conjugate());
            }
        }
    }
};

Vector random_unit(Eigen::Index n, RngStream& rng) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
    const double norm = v.norm();
    if (norm == 0.0) return random_unit(n, rng);
    return v / norm;
}

}  // namespace

PositivityReport check_P_positivity(const PureVector& phi,
                                    const std::vector<CorrectionTerm>& terms,
                                    int restarts, std::uint64_t seed) {
    if (restarts < 1)
        throw std::invalid_argument("check_P_positivity: restarts must be >= 1");
    ProductObjective obj;
    for (const auto& term : terms) {
        if (term.alpha <= 0.0)
            throw std::invalid_argument("check_P_positivity: coefficients must be positive");
        require_same_dims(term.psi.dims, phi.dims, "check_P_positivity");
        const Matrix wc = reshape_conj(term.psi.vec, term.psi.dims);
        if (term.power == TermPower::Quadratic) {
            obj.quad.push_back(wc);
            obj.quad_alpha.push_back(term.alpha);
        } else {
            obj.quart.push_back(wc);
            obj.quart_alpha.push_back(term.alpha);
        }
    }
    obj.has_quartic = !obj.quart.empty();
    if (obj.has_quartic) obj.phi_mat = reshape_conj(phi.vec, phi.dims);

    const Eigen::Index da = phi.dims.dim_a, db = phi.dims.dim_b;
    double best = std::numeric_limits<double>::infinity();
    ProductArgmin best_arg{Vector::Zero(da), Vector::Zero(db)};
    Vector ga(da), gb(db);
    for (int r = 0; r < restarts; ++r) {
        RngStream rng(seed, static_cast<std::uint64_t>(r));
        Vector a = random_unit(da, rng);
        Vector b = random_unit(db, rng);
        double value = obj.eval(a, b);
        for (int iter = 0; iter < 300; ++iter) {
            obj.grad(a, b, ga, gb);
            double step = 0.5;
            double gain = 0.0;
            for (int bt = 0; bt < 40; ++bt) {
                Vector a2 = (a - step * ga).normalized();
                Vector b2 = (b - step * gb).normalized();
                const double v2 = obj.eval(a2, b2);
                if (v2 < value) {
                    gain = value - v2;
                    a = std::move(a2);
                    b = std::move(b2);
                    value = v2;
                    break;
                }
                step *= 0.5;
            }
            if (gain < 1e-13) break;
        }
        if (value < best) {
            best = value;
            best_arg = {a, b};
        }
    }
    return {best, std::move(best_arg)};
}

NonlinearWitness::NonlinearWitness(LinearWitness base, std::vector<CorrectionTerm> terms)
    : base_(std::move(base)), terms_(std::move(terms)) {}

NonlinearWitness NonlinearWitness::f1(const PureVector& phi, const PureVector& psi) {
    require_same_dims(phi.dims, psi.dims, "NonlinearWitness::f1");
    const double s = max_schmidt_sq(psi.vec, psi.dims);
    // |<chi|psi>|^2 <= s on product chi, so alpha = 1/s keeps P(chi) >= 0
    return NonlinearWitness(witness_from_generator(phi),
                            {CorrectionTerm{psi, 1.0 / s, TermPower::Quadratic}});
}

NonlinearWitness NonlinearWitness::f2(const PureVector& phi,
                                      const std::vector<PureVector>& basis) {
    std::vector<const Vector*> vs;
    for (const auto& psi : basis) {
        require_same_dims(phi.dims, psi.dims, "NonlinearWitness::f2");
        vs.push_back(&psi.vec);
    }
    require_orthonormal(vs, "NonlinearWitness::f2");
    // sum_i |<chi|psi_i>|^2 <= 1 for orthonormal psi_i, so unit coefficients work
    std::vector<CorrectionTerm> terms;
    terms.reserve(basis.size());
    for (const auto& psi : basis) terms.push_back({psi, 1.0, TermPower::Quadratic});
    return NonlinearWitness(witness_from_generator(phi), std::move(terms));
}

NonlinearWitness NonlinearWitness::certified(LinearWitness base,
                                             std::vector<CorrectionTerm> terms,
                                             int restarts, std::uint64_t seed) {
    const PositivityReport report = check_P_positivity(base.phi, terms, restarts, seed);
    if (report.min_value < -1e-9)
        throw std::invalid_argument(
            "NonlinearWitness::certified: term set failed P(chi) positivity certification "
            "(min " + std::to_string(report.min_value) + "); adjust the coefficients");
    return NonlinearWitness(std::move(base), std::move(terms));
}

double eval_F_general(const NonlinearWitness& nw, const DensityMatrix& rho) {
    double value = eval_linear(nw.base(), rho);
    for (const auto& term : nw.terms()) {
        const double t = nonlinear_term(nw.base().phi, term.psi, rho);
        value -= term.alpha * (term.power == TermPower::Quadratic ? t : t * t);
    }
    return value;
}

double eval_F3(const PureVector& phi, const PureVector& psi1, const PureVector& psi2,
               double s_phi, const DensityMatrix& rho) {
    require_orthonormal({&phi.vec, &psi1.vec, &psi2.vec}, "eval_F3");
    if (std::abs(max_schmidt_sq(psi1.vec, psi1.dims) - 0.5) > 1e-10)
        throw std::invalid_argument("eval_F3: psi1 must have maximal squared Schmidt "
                                    "coefficient 1/2");
    if (std::abs(max_schmidt_sq(psi2.vec, psi2.dims) - 0.5) > 1e-10)
        throw std::invalid_argument("eval_F3: psi2 must have maximal squared Schmidt "
                                    "coefficient 1/2");
    if (s_phi < 0.5 - 1e-10)
        throw std::invalid_argument("eval_F3: s_phi must be >= 1/2, got " +
                                    std::to_string(s_phi));
    const double quad_coeff = 2.0 - 2.0 / (27.0 * s_phi);
    const double quart_coeff = 2.0 / s_phi;
    const double tb = nonlinear_term(phi, psi1, rho);
    const double tc = nonlinear_term(phi, psi2, rho);
    return eval_linear(witness_from_generator(phi), rho) - quad_coeff * tb -
           quart_coeff * tc * tc;
}

Detection detect_F1_iff(const PureVector& phi, const DensityMatrix& rho) {
    require_same_dims(phi.dims, rho.dims, "detect_F1_iff");
    const Matrix rho_tb = partial_transpose(rho.mat, rho.dims);
    const Vector eta = rho_tb * phi.vec;
    const double lhs = phi.vec.dot(eta).real();
    if (eta.norm() < 1e-12) return {false, lhs, 0.0};

    // sqrt route: [Tr sqrt(Tr_A(eta eta^dag))]^2
    const Matrix gram_b = partial_trace(eta * eta.adjoint(), rho.dims, Subsystem::A);
    const double tr_sqrt = matrix_sqrt_psd(gram_b).trace().real();
    const double rhs = tr_sqrt * tr_sqrt;

    // Schmidt route: (sum_i a_i)^2 for the coefficients of eta
    const double coeff_sum = schmidt(eta, rho.dims).coefficients.sum();
    const double rhs_schmidt = coeff_sum * coeff_sum;
    if (std::abs(rhs - rhs_schmidt) > 1e-9)
        throw std::logic_error("detect_F1_iff: sqrt and Schmidt routes disagree (" +
                               std::to_string(rhs) + " vs " + std::to_string(rhs_schmidt) +
                               ")");
    return {lhs < rhs - kDetectionTol, lhs, rhs};
}

Detection detect_F2_iff(const PureVector& phi, const DensityMatrix& rho) {
    require_same_dims(phi.dims, rho.dims, "detect_F2_iff");
    const Matrix rho_tb = partial_transpose(rho.mat, rho.dims);
    const Vector eta = rho_tb * phi.vec;
    const double lhs = phi.vec.dot(eta).real();
    const double rhs = eta.squaredNorm();  // <phi|(rho^Tb)^2|phi>
    return {lhs < rhs - kDetectionTol, lhs, rhs};
}

PureVector optimal_psi(const PureVector& phi, const DensityMatrix& rho) {
    require_same_dims(phi.dims, rho.dims, "optimal_psi");
    const Matrix rho_tb = partial_transpose(rho.mat, rho.dims);
    const Vector eta = rho_tb * phi.vec;
    if (eta.norm() < 1e-12)
        throw std::invalid_argument("optimal_psi: rho^Tb |phi> vanishes");
    const SchmidtData sd = schmidt(eta, rho.dims);
    const Eigen::Index d = sd.coefficients.size();  // min(dim_a, dim_b)
    Vector psi = Vector::Zero(rho.dims.total());
    for (Eigen::Index i = 0; i < d; ++i)
        psi += kron_vec(sd.basis_a.col(i), sd.basis_b.col(i));
    psi /= psi.norm();
    return PureVector(std::move(psi), rho.dims);
}

}  // namespace entwit
