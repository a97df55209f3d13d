#include "entwit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <thread>
#include <utility>

namespace entwit {

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::W: return "W";
        case Criterion::F1Psi2: return "F1psi2";
        case Criterion::F2: return "F2";
        case Criterion::NL5: return "NL5";
        case Criterion::F3: return "F3";
    }
    return "?";
}

Criterion criterion_from_name(const std::string& name) {
    for (int i = 0; i < kCriterionCount; ++i)
        if (name == criterion_name(static_cast<Criterion>(i)))
            return static_cast<Criterion>(i);
    throw ConfigError("unknown criterion '" + name + "' (expected W, F1psi2, F2, NL5 or F3)");
}

std::vector<double> default_alpha_grid(int points) {
    if (points < 1) throw ConfigError("alpha grid needs at least one point");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double top = std::numbers::pi / 2.0;
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] =
            points == 1 ? 0.0 : top * static_cast<double>(i) / (points - 1);
    return grid;
}

void SweepConfig::validate() const {
    if (alpha_grid.empty()) throw ConfigError("alpha grid is empty");
    for (double a : alpha_grid)
        if (a < 0.0 || a > std::numbers::pi / 2.0 + 1e-12)
            throw ConfigError("alpha " + std::to_string(a) + " outside [0, pi/2]");
    if (samples_per_alpha < 1) throw ConfigError("samples_per_alpha must be >= 1");
    if (radius <= 0.0) throw ConfigError("radius must be positive");
    if (max_tries_per_sample < 1) throw ConfigError("max_tries_per_sample must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
}

AlphaContext::AlphaContext(double alpha)
    : alpha_(alpha),
      trig_(alpha),
      phi_(phi_alpha(alpha)),
      witness_(witness_from_generator(phi_)),
      bell_(bell_basis()),
      s_phi_(std::max(trig_.c * trig_.c, trig_.s * trig_.s)),
      f3_quad_coeff_(2.0 - 2.0 / (27.0 * s_phi_)),
      f3_quart_coeff_(2.0 / s_phi_),
      center_(boundary_state(alpha)) {}

AlphaContext::Values AlphaContext::evaluate(const DensityMatrix& rho) const {
    Values v{};
    v.w = eval_linear(witness_, rho);

    const PauliExpectations e = pauli_expectations(rho);
    const std::array<double, 4> corr = correction_terms_pauli(trig_, e);
    v.f1psi2 = v.w - 2.0 * corr[1];  // 2 = 1/s(psi2)

    const Matrix rho_tb = partial_transpose(rho.mat, rho.dims);
    const Vector eta = rho_tb * phi_.vec;
    double sum = 0.0;
    for (const PureVector& psi : bell_) sum += std::norm(psi.vec.dot(eta));
    v.f2 = v.w - sum;

    const double t3 = std::norm(bell_[2].vec.dot(eta));
    const double t4 = std::norm(bell_[3].vec.dot(eta));
    v.f3 = v.w - f3_quad_coeff_ * t3 - f3_quart_coeff_ * t4 * t4;

    v.nl5 = detect_F1_iff(phi_, rho);

    v.detected[static_cast<int>(Criterion::W)] = v.w < -kDetectionTol;
    v.detected[static_cast<int>(Criterion::F1Psi2)] = v.f1psi2 < -kDetectionTol;
    v.detected[static_cast<int>(Criterion::F2)] = v.f2 < -kDetectionTol;
    v.detected[static_cast<int>(Criterion::NL5)] = v.nl5.detected;
    v.detected[static_cast<int>(Criterion::F3)] = v.f3 < -kDetectionTol;
    return v;
}

std::array<bool, kCriterionCount> classify_sample(double alpha, const DensityMatrix& rho) {
    if (is_ppt(rho))
        throw std::invalid_argument("classify_sample: state is PPT; classification is "
                                    "defined for entangled (NPT) samples only");
    return AlphaContext(alpha).evaluate(rho).detected;
}

namespace {

struct WorkerTally {
    long tries = 0;
    long entangled = 0;
    std::array<long, kCriterionCount> detected{};
    std::string error;  // first failure, empty if none
};

void check_implication(bool lhs, bool rhs, Criterion from, Criterion to,
                       const std::array<bool, kCriterionCount>& selected, double alpha,
                       long ordinal) {
    if (!selected[static_cast<int>(from)] || !selected[static_cast<int>(to)]) return;
    if (lhs && !rhs)
        throw InvariantViolation(
            std::string("per-sample ordering violated: ") + criterion_name(from) +
            " detected but " + criterion_name(to) + " not, at alpha=" +
            std::to_string(alpha) + " sample " + std::to_string(ordinal));
}

void run_range(const SweepConfig& cfg, const AlphaContext& ctx, long alpha_index, long begin,
               long end, WorkerTally& tally) {
    const auto& sel = cfg.criteria;
    for (long i = begin; i < end; ++i) {
        const std::uint64_t ordinal =
            static_cast<std::uint64_t>(alpha_index) *
                static_cast<std::uint64_t>(cfg.samples_per_alpha) +
            static_cast<std::uint64_t>(i);
        RngStream rng(cfg.seed, ordinal);
        BallSample sample = [&] {
            try {
                return sample_ball(ctx.center(), cfg.radius, rng, cfg.max_tries_per_sample,
                                   cfg.sampler);
            } catch (const std::runtime_error& e) {
                throw SamplerExhausted("alpha=" + std::to_string(ctx.alpha()) + " sample " +
                                       std::to_string(i) + ": " + e.what());
            }
        }();
        tally.tries += sample.tries;

        const AlphaContext::Values values = ctx.evaluate(sample.state);
        const auto& det = values.detected;
        if (is_ppt(sample.state)) {
            for (int c = 0; c < kCriterionCount; ++c)
                if (sel[c] && det[c])
                    throw InvariantViolation(
                        std::string("PPT sample detected by ") +
                        criterion_name(static_cast<Criterion>(c)) + " at alpha=" +
                        std::to_string(ctx.alpha()) + " sample " + std::to_string(i));
            continue;
        }

        check_implication(det[0], det[1], Criterion::W, Criterion::F1Psi2, sel, ctx.alpha(), i);
        check_implication(det[0], det[2], Criterion::W, Criterion::F2, sel, ctx.alpha(), i);
        check_implication(det[2], det[3], Criterion::F2, Criterion::NL5, sel, ctx.alpha(), i);
        check_implication(det[1], det[3], Criterion::F1Psi2, Criterion::NL5, sel, ctx.alpha(),
                          i);

        ++tally.entangled;
        for (int c = 0; c < kCriterionCount; ++c)
            if (sel[c] && det[c]) ++tally.detected[c];
    }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<SweepRow> rows;
    rows.reserve(cfg.alpha_grid.size());

    for (std::size_t ai = 0; ai < cfg.alpha_grid.size(); ++ai) {
        const AlphaContext ctx(cfg.alpha_grid[ai]);
        const long n = cfg.samples_per_alpha;
        const int nthreads = static_cast<int>(std::min<long>(cfg.threads, n));
        std::vector<WorkerTally> tallies(static_cast<std::size_t>(nthreads));

        if (nthreads == 1) {
            run_range(cfg, ctx, static_cast<long>(ai), 0, n, tallies[0]);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(nthreads));
            for (int t = 0; t < nthreads; ++t) {
                const long begin = n * t / nthreads;
                const long end = n * (t + 1) / nthreads;
                pool.emplace_back([&, t, begin, end] {
                    try {
                        run_range(cfg, ctx, static_cast<long>(ai), begin, end,
                                  tallies[static_cast<std::size_t>(t)]);
                    } catch (const std::exception& e) {
                        tallies[static_cast<std::size_t>(t)].error = e.what();
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (const auto& tally : tallies)
                if (!tally.error.empty()) {
                    if (tally.error.rfind("per-sample", 0) == 0 ||
                        tally.error.rfind("PPT sample", 0) == 0)
                        throw InvariantViolation(tally.error);
                    throw SamplerExhausted(tally.error);
                }
        }

        SweepRow row;
        row.alpha = cfg.alpha_grid[ai];
        row.n_sampled = n;
        long tries = 0;
        for (const auto& tally : tallies) {
            tries += tally.tries;
            row.n_entangled += tally.entangled;
            for (int c = 0; c < kCriterionCount; ++c) row.detected[c] += tally.detected[c];
        }
        row.acc_rate = tries > 0 ? static_cast<double>(n) / static_cast<double>(tries) : 0.0;
        for (int c = 0; c < kCriterionCount; ++c)
            row.fraction[c] = row.n_entangled > 0 ? static_cast<double>(row.detected[c]) /
                                                        static_cast<double>(row.n_entangled)
                                                  : 0.0;
        rows.push_back(std::move(row));
    }

    if (!cfg.csv_path.empty()) emit_csv(rows, cfg.csv_path);
    if (!cfg.plot_path.empty()) emit_plotdata(rows, cfg.plot_path);
    if (!cfg.svg_path.empty()) emit_svg(rows, cfg.svg_path);
    return rows;
}

// ---------------------------------------------------------------------------
// output files
// ---------------------------------------------------------------------------

namespace {

std::string fixed6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

}  // namespace

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    if (rows.empty()) throw ConfigError("emit_csv: no rows");
    auto out = open_output(path);
    out << "alpha,n_sampled,n_entangled,acc_rate,det_W,det_F1psi2,det_F2,det_NL5,det_F3,"
           "frac_W,frac_F1psi2,frac_F2,frac_NL5,frac_F3\n";
    for (const SweepRow& r : rows) {
        out << fixed6(r.alpha) << ',' << r.n_sampled << ',' << r.n_entangled << ','
            << fixed6(r.acc_rate);
        for (int c = 0; c < kCriterionCount; ++c) out << ',' << r.detected[c];
        for (int c = 0; c < kCriterionCount; ++c) out << ',' << fixed6(r.fraction[c]);
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void emit_plotdata(const std::vector<SweepRow>& rows, const std::string& path) {
    if (rows.empty()) throw ConfigError("emit_plotdata: no rows");
    auto out = open_output(path);
    out << "# alpha frac_W frac_F1psi2 frac_F2 frac_NL5 frac_F3\n";
    for (const SweepRow& r : rows) {
        out << fixed6(r.alpha);
        for (int c = 0; c < kCriterionCount; ++c) out << ' ' << fixed6(r.fraction[c]);
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void emit_svg(const std::vector<SweepRow>& rows, const std::string& path) {
    if (rows.empty()) throw ConfigError("emit_svg: no rows");
    auto out = open_output(path);
    const double width = 860, height = 540;
    const double left = 70, right = 840, top = 20, bottom = 490;
    double amin = rows.front().alpha, amax = rows.back().alpha;
    if (amax <= amin) amax = amin + 1.0;
    const auto xpos = [&](double a) {
        return left + (right - left) * (a - amin) / (amax - amin);
    };
    const auto ypos = [&](double f) { return bottom - (bottom - top) * f; };
    const char* colors[kCriterionCount] = {"#000000", "#1f77b4", "#2ca02c", "#d62728",
                                           "#9467bd"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " "
        << height << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right
        << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
        << bottom << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double f = 0.25 * i;
        out << "<line x1=\"" << left - 4 << "\" y1=\"" << ypos(f) << "\" x2=\"" << left
            << "\" y2=\"" << ypos(f) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << ypos(f) + 4
            << "\" text-anchor=\"end\">" << fixed6(f).substr(0, 4) << "</text>\n";
        const double a = amin + (amax - amin) * i / 4.0;
        out << "<line x1=\"" << xpos(a) << "\" y1=\"" << bottom << "\" x2=\"" << xpos(a)
            << "\" y2=\"" << bottom + 4 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << xpos(a) << "\" y=\"" << bottom + 18
            << "\" text-anchor=\"middle\">" << fixed6(a).substr(0, 5) << "</text>\n";
    }
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">alpha (rad)</text>\n";
    out << "<text x=\"16\" y=\"" << (top + bottom) / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (top + bottom) / 2
        << ")\">detection fraction</text>\n";
    // series
    for (int c = 0; c < kCriterionCount; ++c) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[c]
            << "\" stroke-width=\"1.5\" points=\"";
        for (const SweepRow& r : rows)
            out << fixed6(xpos(r.alpha)).substr(0, fixed6(xpos(r.alpha)).find('.') + 3) << ','
                << fixed6(ypos(r.fraction[c])).substr(0,
                                                      fixed6(ypos(r.fraction[c])).find('.') + 3)
                << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << right - 120 << "\" y=\"" << top + 18 + 16 * c
            << "\" fill=\"" << colors[c] << "\">"
            << criterion_name(static_cast<Criterion>(c)) << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace entwit
