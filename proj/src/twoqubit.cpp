#include "entwit/twoqubit.hpp"

#include <cmath>

namespace entwit {

namespace {

Matrix pauli(int i) {
    Matrix m(2, 2);
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

double expectation(const Matrix& rho, const Matrix& op) {
    return (rho * op).trace().real();
}

using Term = std::pair<PauliLabel, double>;
using Bracket = std::vector<Term>;

// The two squared brackets of each correction term; X_i = (1/32) sum_k (sum of
// bracket k)^2. Signs follow from expanding <X_i^Tb> for X_i = |phi><psi_i|
// directly; the operator path is the oracle that pins them.
std::array<Bracket, 2> correction_brackets(int term_index, const AlphaTrig& t) {
    const double cps = t.c + t.s;
    const double cms = t.c - t.s;
    switch (term_index) {
        case 0:  // psi1 = (|00>+|11>)/sqrt2
            return {Bracket{{PauliLabel::One, cps}, {PauliLabel::XX, cps},
                            {PauliLabel::YY, cps}, {PauliLabel::ZZ, cps},
                            {PauliLabel::Z1, cms}, {PauliLabel::Z2, cms}},
                    Bracket{{PauliLabel::XY, cms}, {PauliLabel::YX, -cms}}};
        case 1:  // psi2 = (|00>-|11>)/sqrt2
            return {Bracket{{PauliLabel::One, cms}, {PauliLabel::XX, -cms},
                            {PauliLabel::YY, -cms}, {PauliLabel::ZZ, cms},
                            {PauliLabel::Z1, cps}, {PauliLabel::Z2, cps}},
                    Bracket{{PauliLabel::XY, cps}, {PauliLabel::YX, -cps}}};
        case 2:  // psi3 = (|01>+|10>)/sqrt2
            return {Bracket{{PauliLabel::X1, cps}, {PauliLabel::X2, cps},
                            {PauliLabel::ZX, cms}, {PauliLabel::XZ, cms}},
                    Bracket{{PauliLabel::Y1, cms}, {PauliLabel::Y2, -cms},
                            {PauliLabel::YZ, cps}, {PauliLabel::ZY, -cps}}};
        case 3:  // psi4 = (|01>-|10>)/sqrt2
            return {Bracket{{PauliLabel::X1, cms}, {PauliLabel::X2, -cms},
                            {PauliLabel::XZ, cps}, {PauliLabel::ZX, -cps}},
                    Bracket{{PauliLabel::Y1, cps}, {PauliLabel::Y2, cps},
                            {PauliLabel::YZ, cms}, {PauliLabel::ZY, cms}}};
        default:
            throw std::invalid_argument("correction term index must be 0..3");
    }
}

double label_value(PauliLabel l, const PauliExpectations& e) {
    switch (l) {
        case PauliLabel::One: return 1.0;
        case PauliLabel::X1: return e.x1;
        case PauliLabel::Y1: return e.y1;
        case PauliLabel::Z1: return e.z1;
        case PauliLabel::X2: return e.x2;
        case PauliLabel::Y2: return e.y2;
        case PauliLabel::Z2: return e.z2;
        case PauliLabel::XX: return e.corr(0, 0);
        case PauliLabel::XY: return e.corr(0, 1);
        case PauliLabel::XZ: return e.corr(0, 2);
        case PauliLabel::YX: return e.corr(1, 0);
        case PauliLabel::YY: return e.corr(1, 1);
        case PauliLabel::YZ: return e.corr(1, 2);
        case PauliLabel::ZX: return e.corr(2, 0);
        case PauliLabel::ZY: return e.corr(2, 1);
        case PauliLabel::ZZ: return e.corr(2, 2);
    }
    return 0.0;
}

}  // namespace

PauliExpectations pauli_expectations(const DensityMatrix& rho) {
    if (!(rho.dims == BipartiteDims(2, 2)))
        throw std::invalid_argument("pauli_expectations: state must be two-qubit");
    const Matrix id = pauli(0);
    PauliExpectations e;
    e.x1 = expectation(rho.mat, kron(pauli(1), id));
    e.y1 = expectation(rho.mat, kron(pauli(2), id));
    e.z1 = expectation(rho.mat, kron(pauli(3), id));
    e.x2 = expectation(rho.mat, kron(id, pauli(1)));
    e.y2 = expectation(rho.mat, kron(id, pauli(2)));
    e.z2 = expectation(rho.mat, kron(id, pauli(3)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            e.corr(i, j) = expectation(rho.mat, kron(pauli(i + 1), pauli(j + 1)));
    return e;
}

double witness_pauli(const AlphaTrig& t, const PauliExpectations& e) {
    return 0.25 * (1.0 + e.corr(2, 2) + t.s2 * (e.corr(0, 0) + e.corr(1, 1)) +
                   t.c2 * (e.z1 + e.z2));
}

std::array<double, 4> correction_terms_pauli(const AlphaTrig& t,
                                             const PauliExpectations& e) {
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        double total = 0.0;
        for (const Bracket& bracket : correction_brackets(i, t)) {
            double acc = 0.0;
            for (const Term& term : bracket) acc += term.second * label_value(term.first, e);
            total += acc * acc;
        }
        out[static_cast<std::size_t>(i)] = total / 32.0;
    }
    return out;
}

std::vector<PauliLabel> correction_labels(int term_index, const AlphaTrig& t, double tol) {
    std::vector<PauliLabel> labels;
    for (const Bracket& bracket : correction_brackets(term_index, t))
        for (const Term& term : bracket)
            if (std::abs(term.second) > tol) labels.push_back(term.first);
    return labels;
}

std::vector<PauliLabel> witness_labels(const AlphaTrig& t, double tol) {
    std::vector<PauliLabel> labels{PauliLabel::One, PauliLabel::ZZ};
    if (std::abs(t.s2) > tol) {
        labels.push_back(PauliLabel::XX);
        labels.push_back(PauliLabel::YY);
    }
    if (std::abs(t.c2) > tol) {
        labels.push_back(PauliLabel::Z1);
        labels.push_back(PauliLabel::Z2);
    }
    return labels;
}

}  // namespace entwit
