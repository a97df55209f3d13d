// twoqubit.hpp — the explicit two-qubit parametrization: the alpha-family
// witness and its four Bell-vector correction terms written in Pauli
// expectation values, cross-checked elsewhere against the operator path.

#pragma once

#include "entwit/states.hpp"

#include <array>
#include <vector>

namespace entwit {

// <sigma_i (x) sigma_j> for i, j in {1, x, y, z}, split into local terms and
// the 3x3 correlation table (row = A-side Pauli, column = B-side Pauli).
struct PauliExpectations {
    double x1, y1, z1;       // <sigma_i (x) 1>
    double x2, y2, z2;       // <1 (x) sigma_i>
    Eigen::Matrix3d corr;    // corr(i, j) = <sigma_i (x) sigma_j>, x=0, y=1, z=2
};

PauliExpectations pauli_expectations(const DensityMatrix& rho);

struct AlphaTrig {
    double alpha, s, c, s2, c2;
    explicit AlphaTrig(double a)
        : alpha(a), s(std::sin(a)), c(std::cos(a)), s2(std::sin(2.0 * a)),
          c2(std::cos(2.0 * a)) {}
};

// (1 + z1z2 + s2 (x1x2 + y1y2) + c2 (z1 + z2)) / 4
double witness_pauli(const AlphaTrig& t, const PauliExpectations& e);

// The four correction terms X_i = <X_i^Tb><(X_i^Tb)^dag> for the Bell vectors,
// each a (1/32)-weighted sum of two squared observable combinations.
std::array<double, 4> correction_terms_pauli(const AlphaTrig& t,
                                             const PauliExpectations& e);

enum class PauliLabel {
    One,
    X1, Y1, Z1, X2, Y2, Z2,
    XX, XY, XZ, YX, YY, YZ, ZX, ZY, ZZ,
};

// Observables entering a correction term (index 0..3) with a coefficient of
// magnitude above tol at the given alpha. Derived from the same coefficient
// table the numeric evaluation uses.
std::vector<PauliLabel> correction_labels(int term_index, const AlphaTrig& t,
                                          double tol = 1e-14);

// Observables entering the witness expression at the given alpha.
std::vector<PauliLabel> witness_labels(const AlphaTrig& t, double tol = 1e-14);

}  // namespace entwit
