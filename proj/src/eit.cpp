#include "wgqed/eit.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "wgqed/error.hpp"

namespace wgqed {

namespace {

void require_control(double control) {
    if (!(control > 0.0) || !std::isfinite(control))
        throw Error(ErrorKind::Validation, "control Rabi frequency must be positive");
}

void require_spacing(double spacing) {
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw Error(ErrorKind::Validation, "atom spacing must be positive");
}

// log(1 + w) accurate for small |w|.
Complex log1p(Complex w) {
    const Complex u = 1.0 + w;
    if (u == Complex(1.0, 0.0)) return w;
    return std::log(u) * w / (u - 1.0);
}

// log t_xi for one factor of the EIT product.
Complex log_factor(Complex lambda, double gamma_prime, double control, double detuning) {
    const Complex zp(detuning, gamma_prime / 2.0);
    const Complex base = detuning * zp - control * control;
    if (base == Complex(0.0, 0.0)) throw Error(ErrorKind::Pole, "EIT factor numerator vanishes");
    return -log1p(detuning * lambda / base);
}

KeffCoefficients from_traces(Complex t1, Complex t2, Complex t3, double n, double gamma_prime, double control,
                             double spacing) {
    require_control(control);
    require_spacing(spacing);
    const double o2 = control * control;
    const Complex pre = -I / (n * spacing);
    const double gp = gamma_prime;
    KeffCoefficients c;
    c.linear = pre * t1 / o2;
    c.quadratic = pre * (t2 + I * gp * t1) / (2.0 * o2 * o2);
    c.cubic = pre * ((12.0 * o2 - 3.0 * gp * gp) * t1 + 6.0 * I * gp * t2 + 4.0 * t3) / (12.0 * o2 * o2 * o2);
    return c;
}

}  // namespace

Complex eit_transmission_at(const CVector& eigenvalues, double gamma_prime, double control, double detuning) {
    const Complex zp(detuning, gamma_prime / 2.0);
    const double o2 = control * control;
    Complex t(1.0, 0.0);
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
        const Complex denom = detuning * (zp + eigenvalues[k]) - o2;
        if (denom == Complex(0.0, 0.0)) {
            std::ostringstream os;
            os << "EIT response is singular at Delta_A = " << detuning;
            throw Error(ErrorKind::Pole, os.str());
        }
        t *= (detuning * zp - o2) / denom;
    }
    return t;
}

SpectrumTable eit_transmission(std::span<const double> grid, const CVector& eigenvalues, double gamma_prime,
                               double control) {
    SpectrumTable out;
    out.detuning.assign(grid.begin(), grid.end());
    out.t_ratio.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        out.t_ratio[k] = eit_transmission_at(eigenvalues, gamma_prime, control, grid[k]);
    });
    return out;
}

EitCoherences eit_coherences(const CouplingMatrix& g, double gamma_prime, double control, double detuning,
                             double two_photon_detuning, const CVector& drive) {
    require_control(control);
    const auto n = static_cast<Eigen::Index>(g.size());
    if (drive.size() != n) throw Error(ErrorKind::Validation, "drive length does not match the chain");
    CMatrix m = g.values;
    m.diagonal().array() += Complex(detuning, gamma_prime / 2.0);
    // Delta_s (M sigma_ge + Omega) = Omega_c^2 sigma_ge
    CMatrix a = two_photon_detuning * m;
    a.diagonal().array() -= control * control;
    Eigen::PartialPivLU<CMatrix> lu(a);
    EitCoherences out;
    out.ge = -two_photon_detuning * lu.solve(drive);
    if (!out.ge.allFinite()) throw Error(ErrorKind::Pole, "EIT response matrix is singular");
    out.gs = -(drive + m * out.ge) / control;
    return out;
}

KeffCoefficients keff_coefficients(const CMatrix& g, double gamma_prime, double control, double spacing) {
    const CMatrix g2 = g * g;
    return from_traces(g.trace(), g2.trace(), (g2 * g).trace(), static_cast<double>(g.rows()), gamma_prime,
                       control, spacing);
}

KeffCoefficients keff_coefficients(const ModeDecomposition& modes, double gamma_prime, double control,
                                   double spacing) {
    Complex t1(0.0, 0.0), t2(0.0, 0.0), t3(0.0, 0.0);
    for (Eigen::Index k = 0; k < modes.eigenvalues.size(); ++k) {
        const Complex l = modes.eigenvalues[k];
        t1 += l;
        t2 += l * l;
        t3 += l * l * l;
    }
    return from_traces(t1, t2, t3, static_cast<double>(modes.size()), gamma_prime, control, spacing);
}

KeffCoefficients keff_closed_form(SpacingConfiguration configuration, std::size_t n, double decay,
                                  double gamma_prime, double control, double spacing) {
    require_control(control);
    require_spacing(spacing);
    if (n == 0) throw Error(ErrorKind::Validation, "closed form needs N >= 1");
    const double N = static_cast<double>(n);
    const double o2 = control * control;
    const double gp = gamma_prime;
    const double G = decay;
    KeffCoefficients c;
    c.linear = G / (2.0 * spacing * o2);
    switch (configuration) {
    case SpacingConfiguration::Mirror:
        c.quadratic = I * G / (8.0 * spacing * o2 * o2) * (2.0 * gp + N * G);
        c.cubic = G / (24.0 * spacing * o2 * o2 * o2) * (12.0 * o2 - 3.0 * N * G * gp - N * N * G * G - 3.0 * gp * gp);
        break;
    case SpacingConfiguration::QuarterWave:
        if (n % 2 == 0) {
            c.quadratic = I * G * gp / (4.0 * spacing * o2 * o2);
            c.cubic = G / (24.0 * spacing * o2 * o2 * o2) * (12.0 * o2 + 2.0 * G * G - 3.0 * gp * gp);
        } else {
            c.quadratic = I * G / (8.0 * spacing * o2 * o2) * (2.0 * gp + G / N);
            c.cubic = G / (24.0 * spacing * o2 * o2 * o2) * (12.0 * o2 - G * G - 3.0 * gp * gp - 3.0 * G * gp / N);
        }
        break;
    default:
        throw Error(ErrorKind::Validation, "unknown spacing configuration");
    }
    return c;
}

std::vector<Complex> keff_exact(std::span<const double> grid, const CVector& eigenvalues, double gamma_prime,
                                double control, double spacing) {
    require_control(control);
    require_spacing(spacing);
    const double nd = static_cast<double>(eigenvalues.size()) * spacing;
    std::vector<Complex> out(grid.size());
    double previous = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        Complex log_t(0.0, 0.0);
        for (Eigen::Index x = 0; x < eigenvalues.size(); ++x)
            log_t += log_factor(eigenvalues[x], gamma_prime, control, grid[k]);
        // Continuity of the phase along the grid.
        double phase = log_t.imag();
        if (k > 0) phase += 2.0 * pi * std::round((previous - phase) / (2.0 * pi));
        previous = phase;
        out[k] = Complex(log_t.real(), phase) / (I * nd);
    }
    return out;
}

double group_velocity(double control, double spacing, double decay) {
    if (!(decay > 0.0)) throw Error(ErrorKind::Validation, "group velocity needs Gamma_1D > 0");
    return 2.0 * control * control * spacing / decay;
}

}  // namespace wgqed
