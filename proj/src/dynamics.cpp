#include "wgqed/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "wgqed/error.hpp"
#include "wgqed/spectra.hpp"

namespace wgqed {

namespace {

void check_grid(std::span<const double> times) {
    if (times.empty()) throw Error(ErrorKind::Validation, "time grid is empty");
    if (times.front() < 0.0) throw Error(ErrorKind::Validation, "time grid must start at t >= 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) throw Error(ErrorKind::Validation, "time grid must be increasing");
    }
}

void record(TimeTrace& trace, double t, CVector c) {
    std::vector<double> p(static_cast<std::size_t>(c.size()));
    double sum = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        p[static_cast<std::size_t>(i)] = std::norm(c[i]);
        sum += p[static_cast<std::size_t>(i)];
    }
    trace.times.push_back(t);
    trace.amplitudes.push_back(std::move(c));
    trace.populations.push_back(std::move(p));
    trace.total.push_back(sum);
}

}  // namespace

TimeTrace evolve(const CouplingMatrix& g, double gamma_prime, double detuning, const CVector& initial,
                 std::span<const double> times) {
    const auto n = static_cast<Eigen::Index>(g.size());
    if (initial.size() != n) throw Error(ErrorKind::Validation, "initial amplitudes do not match the chain");
    check_grid(times);
    const Complex z(detuning, gamma_prime / 2.0);

    TimeTrace trace;
    try {
        const ModeDecomposition modes = decompose(g);
        // c(t) = sum_xi v_xi e^{i (z + lambda_xi) t} (v_xi^T c0)
        const CVector weights = modes.eigenvectors.transpose() * initial;
        for (double t : times) {
            CVector phase(n);
            for (Eigen::Index k = 0; k < n; ++k) phase[k] = weights[k] * std::exp(I * (z + modes.eigenvalues[k]) * t);
            record(trace, t, modes.eigenvectors * phase);
        }
        return trace;
    } catch (const QuasiDefectiveError&) {
        trace = TimeTrace{};
    }

    trace.used_matrix_exponential = true;
    CMatrix generator = g.values;
    generator.diagonal().array() += z;
    generator *= I;
    for (double t : times) {
        const CMatrix step = (generator * t).exp();
        CVector c = step * initial;
        if (!c.allFinite()) throw Error(ErrorKind::Degenerate, "matrix exponential fallback failed");
        record(trace, t, std::move(c));
    }
    return trace;
}

std::vector<double> default_time_grid(double gamma_prime) {
    if (!(gamma_prime > 0.0)) throw Error(ErrorKind::Validation, "default time grid needs Gamma' > 0");
    return linspace(0.0, 8.0 / gamma_prime, 2000);
}

CouplingMatrix zero_offdiagonal(const CouplingMatrix& g) {
    CouplingMatrix out = g;
    out.values = g.values.diagonal().asDiagonal();
    out.offdiagonal_zeroed = true;
    return out;
}

}  // namespace wgqed
