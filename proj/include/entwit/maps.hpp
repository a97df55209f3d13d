// maps.hpp — the operator <-> map isomorphism E = (I (x) eps)(|phi+><phi+|),
// witness construction from positive maps, and the pathway that improves an
// arbitrary witness by routing it through its induced map.

#pragma once

#include "entwit/witness.hpp"

#include <functional>

namespace entwit {

// A linear map Lambda: B(H_in) -> B(H_out), stored through its isomorphic
// operator E on H_in (x) H_out with eps(rho) = Tr_in(E rho^T (x) 1_out).
// E must be Hermitian, which is equivalent to Lambda(X^dag) = Lambda(X)^dag.
class LinearMap {
public:
    static LinearMap from_choi(Matrix e, Eigen::Index in_dim, Eigen::Index out_dim);
    static LinearMap from_action(const std::function<Matrix(const Matrix&)>& action,
                                 Eigen::Index in_dim, Eigen::Index out_dim);

    Matrix apply(const Matrix& x) const;

    const Matrix& choi() const { return choi_; }
    Eigen::Index in_dim() const { return in_dim_; }
    Eigen::Index out_dim() const { return out_dim_; }

private:
    LinearMap(Matrix e, Eigen::Index in_dim, Eigen::Index out_dim);

    Matrix choi_;
    Eigen::Index in_dim_;
    Eigen::Index out_dim_;
};

// dims = (in_dim, out_dim) of the operator's space.
LinearMap map_from_operator(const Matrix& e, const BipartiteDims& dims);

// E = (I (x) eps)(|phi+><phi+|) with |phi+> = sum_i |ii> unnormalized;
// the stored operator, so map_from_operator(operator_from_map(m)) == m.
Matrix operator_from_map(const LinearMap& m);

// Common maps.
LinearMap identity_map(Eigen::Index dim);
LinearMap transposition_map(Eigen::Index dim);
LinearMap reduction_map(Eigen::Index dim);  // X -> Tr(X) 1 - X

// (I_A (x) Lambda)(rho), applied blockwise on the B factor.
Matrix apply_to_b(const LinearMap& m, const DensityMatrix& rho);
Matrix apply_to_b(const LinearMap& m, const Matrix& mat, const BipartiteDims& dims);

// Adjoint with respect to Tr(X^dag Y): Tr(adj(X)^dag Y) = Tr(X^dag Lambda(Y)).
LinearMap adjoint_map(const LinearMap& m);

struct MapCertificate {
    bool positive;
    bool trace_decreasing;
    double min_product_expectation;  // min <a(x)b|E|a(x)b> found
    double max_trace_excess;         // max Tr(Lambda(X)) - Tr(X) over PSD probes
};

// Numerical certification: block-positivity of the operator by multi-start
// alternating minimization over product vectors, plus trace behaviour on
// random PSD inputs.
MapCertificate certify_map(const LinearMap& m, int trials = 30, int restarts = 20,
                           std::uint64_t seed = 0);

// W = (I_A (x) Lambda)^+ (|phi><phi|). When phi is the negative-eigenvalue
// eigenvector of (I_A (x) Lambda)(rho0), then Tr(rho0 W) is that eigenvalue.
LinearWitness witness_from_map(const LinearMap& m, const PureVector& phi);

// <(I(x)L)^+(|phi><phi|)>_rho - sum_i alpha_i <(I(x)L)^+(X_i)>_rho <(I(x)L)^+(X_i^dag)>_rho
// with X_i = |phi><psi_i|. The map must certify as positive and trace
// decreasing; the (alpha_i, psi_i) set is the caller's contract (see
// check_P_positivity).
double improve_via_map(const LinearMap& m, const PureVector& phi,
                       const std::vector<PureVector>& psis,
                       const std::vector<double>& alphas, const DensityMatrix& rho);

}  // namespace entwit
