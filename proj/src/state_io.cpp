#include "entwit/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace entwit {

namespace {

Complex parse_entry(const std::string& token, Eigen::Index row, Eigen::Index col) {
    const auto fail = [&](const char* why) {
        throw std::invalid_argument("state file entry (" + std::to_string(row) + "," +
                                    std::to_string(col) + ") '" + token + "': " + why);
    };
    double re = 0.0, im = 0.0;
    int consumed = 0;
    if (std::sscanf(token.c_str(), "%lf%lf%n", &re, &im, &consumed) != 2)
        fail("expected re+imj form");
    if (static_cast<std::size_t>(consumed) + 1 != token.size() || token[consumed] != 'j')
        fail("expected trailing 'j'");
    if (!std::isfinite(re) || !std::isfinite(im)) fail("entries must be finite");
    return {re, im};
}

}  // namespace

DensityMatrix read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file: " + path);

    std::string keyword;
    Eigen::Index da = 0, db = 0;
    if (!(in >> keyword >> da >> db) || keyword != "dims")
        throw std::invalid_argument("state file " + path +
                                    ": first line must be 'dims dA dB'");
    if (da < 2 || db < 2 || da * db > 64)
        throw std::invalid_argument("state file " + path + ": invalid dims " +
                                    std::to_string(da) + " " + std::to_string(db));
    const Eigen::Index n = da * db;
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            std::string token;
            if (!(in >> token))
                throw std::invalid_argument("state file " + path + ": expected " +
                                            std::to_string(n * n) + " entries, ran out at (" +
                                            std::to_string(r) + "," + std::to_string(c) + ")");
            m(r, c) = parse_entry(token, r, c);
        }

    const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-10)
        throw std::invalid_argument("state file " + path + ": matrix not Hermitian (max "
                                    "|M - M^dag| entry is " + std::to_string(herm_dev) + ")");
    const double tr_dev = std::abs(m.trace() - Complex(1.0, 0.0));
    if (tr_dev > 1e-10)
        throw std::invalid_argument("state file " + path + ": trace is " +
                                    std::to_string(m.trace().real()) + " (+ " +
                                    std::to_string(m.trace().imag()) + "i), expected 1");
    try {
        return DensityMatrix(std::move(m), BipartiteDims(da, db));
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("state file " + path + ": " + e.what());
    }
}

void write_state_file(const std::string& path, const DensityMatrix& rho) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write state file: " + path);
    out << "dims " << rho.dims.dim_a << " " << rho.dims.dim_b << "\n";
    const Eigen::Index n = rho.dims.total();
    char buf[80];
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", rho.mat(r, c).real(),
                          rho.mat(r, c).imag());
            out << (c ? " " : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace entwit
