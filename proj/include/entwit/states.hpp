// states.hpp — construction, validation, classification (PPT/NPT), and random
// sampling of bipartite quantum states.

#pragma once

#include "entwit/linalg.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace entwit {

// Counter-based substream RNG: identical (seed, stream) gives an identical
// draw sequence, so parallel consumers can use disjoint stream indices.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    double uniform();   // [0, 1)
    double gaussian();  // standard normal

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_;
    std::uniform_real_distribution<double> unit_;
};

// Normalized state vector over a bipartite cut.
struct PureVector {
    Vector vec;
    BipartiteDims dims;

    PureVector(Vector v, BipartiteDims d);
};

// Bipartite mixed state: Hermitian, unit trace, PSD (all within tolerance).
struct DensityMatrix {
    Matrix mat;
    BipartiteDims dims;

    DensityMatrix(Matrix m, BipartiteDims d);

    // Skips validation; for constructors that already certified the matrix.
    static DensityMatrix trusted(Matrix m, BipartiteDims d);

private:
    struct Trusted {};
    DensityMatrix(Matrix m, BipartiteDims d, Trusted) : mat(std::move(m)), dims(d) {}
};

// cos(alpha)|00> + sin(alpha)|11>, alpha in [0, pi/2].
PureVector phi_alpha(double alpha);

// (|00>+|11>)/sqrt2, (|00>-|11>)/sqrt2, (|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2.
std::array<PureVector, 4> bell_basis();

// (1 - |phi(alpha)><phi(alpha)|^Tb) / 3: separable, on the boundary of the
// separable set (the witness built from phi(alpha) has zero mean on it).
DensityMatrix boundary_state(double alpha);

// p |psi-><psi-| + (1-p) 1/4, p in [0, 1]; NPT exactly for p > 1/3.
DensityMatrix werner(double p);

struct ProductTerm {
    Vector a;       // single-system vector on A (normalized internally)
    Vector b;       // single-system vector on B
    double weight;  // >= 0, weights must sum to 1
};

// sum_i w_i |a_i><a_i| (x) |b_i><b_i|
DensityMatrix separable_mixture(const std::vector<ProductTerm>& terms);

// True iff the minimal eigenvalue of rho^Tb is >= -tol.
bool is_ppt(const DensityMatrix& rho, double tol = 1e-10);

struct NptEigenpair {
    double lambda_minus;  // minimal eigenvalue of rho^Tb, < 0
    PureVector phi;       // its eigenvector, phase fixed
};

// Minimal eigenpair of rho^Tb; errors if rho is not NPT.
NptEigenpair npt_eigenpair(const DensityMatrix& rho);

// G G^dag / Tr with G of i.i.d. complex Gaussians (Hilbert-Schmidt measure).
DensityMatrix sample_ginibre_state(const BipartiteDims& dims, RngStream& rng);

enum class BallSampler {
    Perturbation,      // center + uniform traceless-Hermitian HS-ball shift, PSD-rejected
    GinibreRejection,  // full-space Ginibre draws rejected into the ball
};

struct BallSample {
    DensityMatrix state;
    long tries;  // draws consumed, including rejections
};

// Random state within hs_norm(center - rho) <= radius. Throws after max_tries
// rejections, reporting the acceptance rate seen so far.
BallSample sample_ball(const DensityMatrix& center, double radius, RngStream& rng,
                       long max_tries = 1000,
                       BallSampler scheme = BallSampler::Perturbation);

}  // namespace entwit
