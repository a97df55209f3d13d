// experiment.hpp — Monte Carlo detection-probability sweep: sample the
// Hilbert-Schmidt ball around the boundary family, classify entangled samples
// under five criteria, tabulate fractions, emit CSV / plot data / SVG.

#pragma once

#include "entwit/twoqubit.hpp"
#include "entwit/witness.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace entwit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SamplerExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

enum class Criterion : int { W = 0, F1Psi2 = 1, F2 = 2, NL5 = 3, F3 = 4 };
inline constexpr int kCriterionCount = 5;

const char* criterion_name(Criterion c);
Criterion criterion_from_name(const std::string& name);  // throws ConfigError

std::vector<double> default_alpha_grid(int points = 41);  // [0, pi/2]

struct SweepConfig {
    std::vector<double> alpha_grid = default_alpha_grid();
    long samples_per_alpha = 10000;
    double radius = 0.2;
    std::uint64_t seed = 1;
    BallSampler sampler = BallSampler::Perturbation;
    std::array<bool, kCriterionCount> criteria{true, true, true, true, true};
    long max_tries_per_sample = 1000;
    int threads = 1;
    std::string csv_path;   // written when nonempty
    std::string plot_path;  // optional columnar plot data
    std::string svg_path;   // optional self-contained chart

    void validate() const;  // throws ConfigError
};

struct SweepRow {
    double alpha = 0.0;
    long n_sampled = 0;
    long n_entangled = 0;
    double acc_rate = 0.0;
    std::array<long, kCriterionCount> detected{};
    std::array<double, kCriterionCount> fraction{};
};

// Per-alpha precomputation: the witness, Bell vectors, trig table, fourth-order
// coefficients and the boundary-state ball center.
class AlphaContext {
public:
    explicit AlphaContext(double alpha);

    const DensityMatrix& center() const { return center_; }
    double alpha() const { return alpha_; }

    struct Values {
        double w, f1psi2, f2, f3;
        Detection nl5;
        std::array<bool, kCriterionCount> detected;
    };
    // Functional values for any two-qubit state; all four functionals share the
    // same linear base value so the subtract-nonnegative orderings are exact.
    Values evaluate(const DensityMatrix& rho) const;

private:
    double alpha_;
    AlphaTrig trig_;
    PureVector phi_;
    LinearWitness witness_;
    std::array<PureVector, 4> bell_;
    double s_phi_;
    double f3_quad_coeff_;
    double f3_quart_coeff_;
    DensityMatrix center_;
};

// Criteria flags for one entangled sample; errors on PPT input (the sweep
// pre-filters on the PPT ground truth).
std::array<bool, kCriterionCount> classify_sample(double alpha, const DensityMatrix& rho);

// Deterministic for a given config: RNG substreams are indexed by the global
// sample ordinal and reduction is an ordered fold, so results do not depend on
// the worker count. Writes the configured output files.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
void emit_plotdata(const std::vector<SweepRow>& rows, const std::string& path);
void emit_svg(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace entwit
