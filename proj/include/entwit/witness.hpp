// witness.hpp — linear witnesses built from NPT states, their quadratic and
// quartic nonlinear improvements, the exact detection criteria for the two
// canonical improvement families, and the optimal correction vector.

#pragma once

#include "entwit/states.hpp"

#include <cstdint>
#include <vector>

namespace entwit {

// W = |phi><phi|^Tb for a generating vector phi. Witnesses obtained through a
// positive map (see maps.hpp) carry the same structure with w living on a
// space that may differ from phi's.
struct LinearWitness {
    Matrix w;            // Hermitian, unit trace for a normalized generator
    BipartiteDims dims;  // space w acts on
    PureVector phi;      // generating vector
};

// W = |phi><phi|^Tb.
LinearWitness witness_from_generator(const PureVector& phi);

struct WitnessFromState {
    LinearWitness witness;
    double lambda_minus;  // Tr(W rho0), the negative eigenvalue that built it
};

// Witness from the minimal eigenpair of rho0^Tb; errors on PPT input.
WitnessFromState witness_from_npt(const DensityMatrix& rho0);

// Tr(W rho) = <phi|rho^Tb|phi>; negative values certify entanglement.
double eval_linear(const LinearWitness& w, const DensityMatrix& rho);

// |Tr(rho X^Tb)|^2 with X = |phi><psi|. Equals <H>^2 + <A>^2 for the
// Hermitian/anti-Hermitian split of X^Tb.
double nonlinear_term(const PureVector& phi, const PureVector& psi,
                      const DensityMatrix& rho);

// <W> - (1/s(psi)) |<X^Tb>|^2, s(psi) the largest squared Schmidt coefficient.
double eval_F1(const PureVector& phi, const PureVector& psi, const DensityMatrix& rho);

// <W> - sum_i |<X_i^Tb>|^2 over an orthonormal list (K <= dim allowed). For a
// complete basis this equals <phi|rho^Tb|phi> - <phi|(rho^Tb)^2|phi>,
// independent of the basis choice.
double eval_F2(const PureVector& phi, const std::vector<PureVector>& basis,
               const DensityMatrix& rho);

enum class TermPower { Quadratic, Quartic };

struct CorrectionTerm {
    PureVector psi;
    double alpha;  // > 0
    TermPower power;
};

struct ProductArgmin {
    Vector a;
    Vector b;
};

struct PositivityReport {
    double min_value;
    ProductArgmin argmin;
};

// Multi-start projected gradient descent of
//   P(chi) = 1 - sum_quad alpha_i |<psi_i|chi>|^2
//              - sum_quart alpha_i |<phi|chi>|^2 |<psi_i|chi>|^4
// over product vectors chi = a (x) b. A negative minimum rejects the term set.
PositivityReport check_P_positivity(const PureVector& phi,
                                    const std::vector<CorrectionTerm>& terms,
                                    int restarts = 1000, std::uint64_t seed = 0);

// A linear witness plus a correction term set whose P(chi) positivity has been
// established, either structurally (the canonical families) or numerically.
class NonlinearWitness {
public:
    // Single term, alpha = 1/s(psi).
    static NonlinearWitness f1(const PureVector& phi, const PureVector& psi);
    // Orthonormal list, alpha_i = 1.
    static NonlinearWitness f2(const PureVector& phi, const std::vector<PureVector>& basis);
    // Arbitrary term set; runs check_P_positivity and throws if it fails.
    static NonlinearWitness certified(LinearWitness base, std::vector<CorrectionTerm> terms,
                                      int restarts = 1000, std::uint64_t seed = 0);

    const LinearWitness& base() const { return base_; }
    const std::vector<CorrectionTerm>& terms() const { return terms_; }

private:
    NonlinearWitness(LinearWitness base, std::vector<CorrectionTerm> terms);

    LinearWitness base_;
    std::vector<CorrectionTerm> terms_;
};

// Concave functional value <W> - sum_i alpha_i <X_i^Tb><(X_i^Tb)^dag> with the
// quartic terms entering as the square of the quadratic ones.
double eval_F_general(const NonlinearWitness& nw, const DensityMatrix& rho);

// Fourth-order witness
//   <W> - (2 - 2/(27 s_phi)) |<B^Tb>|^2 - (2/s_phi) |<C^Tb>|^4
// with B = |phi><psi1|, C = |phi><psi2|. Requires {phi, psi1, psi2}
// orthonormal, psi1/psi2 of maximal squared Schmidt coefficient 1/2, and
// s_phi >= 1/2.
double eval_F3(const PureVector& phi, const PureVector& psi1, const PureVector& psi2,
               double s_phi, const DensityMatrix& rho);

struct Detection {
    bool detected;
    double lhs;
    double rhs;
};

// Exact criterion for the quadratic single-term family:
//   <phi|rho^Tb|phi> < [Tr sqrt(Tr_A(rho^Tb |phi><phi| rho^Tb))]^2.
// The rhs is computed both through the matrix square root and through the
// Schmidt coefficients of eta = rho^Tb|phi>; the two must agree within 1e-9.
Detection detect_F1_iff(const PureVector& phi, const DensityMatrix& rho);

// Exact criterion for the complete-basis family:
//   <phi|rho^Tb|phi> < <phi|(rho^Tb)^2|phi>.
Detection detect_F2_iff(const PureVector& phi, const DensityMatrix& rho);

// The maximally entangled vector on the Schmidt bases of eta = rho^Tb|phi>;
// plugging it into eval_F1 attains the rhs of detect_F1_iff.
PureVector optimal_psi(const PureVector& phi, const DensityMatrix& rho);

// Values within this distance of the detection threshold count as NOT
// detected, so boundary states never become false positives.
inline constexpr double kDetectionTol = 1e-12;

}  // namespace entwit
