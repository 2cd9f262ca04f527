#include "wgqed/spectra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eigen_solve.hpp"
#include "parallel.hpp"
#include "wgqed/error.hpp"

namespace wgqed {

namespace {

using CMatrixX = Eigen::Matrix<ComplexX, Eigen::Dynamic, Eigen::Dynamic>;
using CVectorX = Eigen::Matrix<ComplexX, Eigen::Dynamic, 1>;

const ReservoirModel& require_model(const CouplingMatrix& g) {
    if (!g.model) throw Error(ErrorKind::Validation, "coupling matrix has no reservoir model attached");
    if (!has_position_evaluation(*g.model) || g.positions.size() != g.size())
        throw Error(ErrorKind::Validation,
                    std::string(model_name(*g.model)) + " model cannot be evaluated at probe positions");
    return *g.model;
}

void require_channel(const ReservoirModel& model) {
    if (!has_propagating_channel(model))
        throw Error(ErrorKind::Validation, std::string("no propagating channel for the ") + model_name(model) +
                                               " model; transmission is undefined");
}

std::string pole_message(double detuning) {
    std::ostringstream os;
    os << "response matrix is singular at Delta_A = " << detuning;
    return os.str();
}

// Couplings needed by the direct route, in extended precision.
struct DirectInputs {
    CMatrixX g;
    CVectorX to_left;   // g(x_i, x_left)
    CVectorX to_right;  // g(x_right, x_i)
    ComplexX right_left;
    ComplexX left_left;
};

DirectInputs direct_inputs(const CouplingMatrix& g, const TransmissionGeometry& geo) {
    const ReservoirModel& model = require_model(g);
    require_channel(model);
    const auto n = static_cast<Eigen::Index>(g.size());
    DirectInputs in;
    in.g.resize(n, n);
    in.to_left.resize(n);
    in.to_right.resize(n);
    const auto& x = g.positions;
    if (const auto* lay = std::get_if<LayeredReservoir>(&model)) {
        const HelmholtzSolver solver(lay->stack, lay->omega);
        auto eval = [&](double a, double b) {
            const Complex v = lay->rate_scale * solver.green(a, b);
            return ComplexX(v.real(), v.imag());
        };
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) in.g(i, j) = ComplexX(g.values(i, j).real(), g.values(i, j).imag());
            in.to_left[i] = eval(x[i], geo.x_left);
            in.to_right[i] = eval(geo.x_right, x[i]);
        }
        in.right_left = eval(geo.x_right, geo.x_left);
        in.left_left = eval(geo.x_left, geo.x_left);
        return in;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            if (g.offdiagonal_zeroed && i != j) {
                in.g(i, j) = in.g(j, i) = ComplexX(0.0L, 0.0L);
                continue;
            }
            in.g(i, j) = coupling_extended(model, x[i], x[j]);
            in.g(j, i) = in.g(i, j);
        }
        in.to_left[i] = coupling_extended(model, x[i], geo.x_left);
        in.to_right[i] = coupling_extended(model, geo.x_right, x[i]);
    }
    in.right_left = coupling_extended(model, geo.x_right, geo.x_left);
    in.left_left = coupling_extended(model, geo.x_left, geo.x_left);
    return in;
}

template <class Matrix>
bool lu_singular(const Eigen::PartialPivLU<Matrix>& lu) {
    using std::abs;
    const auto& m = lu.matrixLU();
    long double largest = 0.0L, smallest = std::numeric_limits<long double>::infinity();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const long double a = static_cast<long double>(abs(m(i, i)));
        largest = std::max(largest, a);
        smallest = std::min(smallest, a);
    }
    return smallest == 0.0L || smallest <= 1e-300L * largest || !std::isfinite(static_cast<double>(largest));
}

DirectResponse solve_direct(const DirectInputs& in, double gamma_prime, double detuning, Complex r0) {
    const auto n = in.g.rows();
    CMatrixX m = in.g;
    const ComplexX z(static_cast<long double>(detuning), static_cast<long double>(gamma_prime) / 2.0L);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) += z;
    Eigen::PartialPivLU<CMatrixX> lu(m);
    if (lu_singular(lu)) throw Error(ErrorKind::Pole, pole_message(detuning));
    const CVectorX s = lu.solve(in.to_left);
    const ComplexX t = 1.0L - (in.to_right.transpose() * s)(0, 0) / in.right_left;
    const ComplexX r = ComplexX(r0.real(), r0.imag()) - (in.to_left.transpose() * s)(0, 0) / in.left_left;
    const Complex td(static_cast<double>(t.real()), static_cast<double>(t.imag()));
    const Complex rd(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    if (!std::isfinite(td.real()) || !std::isfinite(td.imag())) throw Error(ErrorKind::Pole, pole_message(detuning));
    return {td, rd};
}

double max_rate(const ModeDecomposition& modes) {
    double m = 0.0;
    for (std::size_t k = 0; k < modes.size(); ++k) m = std::max(m, modes.rate(k));
    return m;
}

}  // namespace

TransmissionGeometry TransmissionGeometry::for_model(const ReservoirModel& model,
                                                     std::span<const double> sorted_positions) {
    if (sorted_positions.empty()) throw Error(ErrorKind::Validation, "transmission geometry needs atom positions");
    require_channel(model);
    const double lo = *std::min_element(sorted_positions.begin(), sorted_positions.end());
    const double hi = *std::max_element(sorted_positions.begin(), sorted_positions.end());
    TransmissionGeometry g;
    if (const auto* w = std::get_if<WaveguideModel>(&model)) {
        const double wavelength = 2.0 * pi / std::abs(w->probe_wavevector);
        g.x_left = lo - wavelength;
        g.x_right = hi + wavelength;
    } else if (std::holds_alternative<CavityReservoir>(model)) {
        g.x_left = 0.0;
        g.x_right = 1.0;
    } else if (const auto* lay = std::get_if<LayeredReservoir>(&model)) {
        const HelmholtzSolver solver(lay->stack, lay->omega);
        const double k_out = solver.wavevector_at(-1.0).real();
        const double wavelength = 2.0 * pi / k_out;
        g.x_left = std::min(0.0, lo) - wavelength;
        g.x_right = std::max(lay->stack.total_thickness(), hi) + wavelength;
        // Bare reflection referenced at x_left: incident e^{ikx}, reflected r e^{-ikx}.
        g.r0 = solver.reflection_left() * std::exp(Complex(0.0, -2.0 * k_out * g.x_left));
    }
    return g;
}

CVector probe_drive(const CouplingMatrix& g, const TransmissionGeometry& geometry, Complex omega_left) {
    const ReservoirModel& model = require_model(g);
    const Complex gll = coupling(model, geometry.x_left, geometry.x_left);
    if (gll == Complex(0.0, 0.0))
        throw Error(ErrorKind::Validation, "probe reference point has zero self-coupling");
    CVector drive(static_cast<Eigen::Index>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i)
        drive[static_cast<Eigen::Index>(i)] = coupling(model, g.positions[i], geometry.x_left) / gll * omega_left;
    return drive;
}

CVector steady_state_coherences(const CouplingMatrix& g, double gamma_prime, double detuning, const CVector& drive) {
    const auto n = static_cast<Eigen::Index>(g.size());
    if (drive.size() != n) throw Error(ErrorKind::Validation, "drive length does not match the chain");
    CMatrix m = g.values;
    m.diagonal().array() += Complex(detuning, gamma_prime / 2.0);
    Eigen::PartialPivLU<CMatrix> lu(m);
    if (lu_singular(lu)) throw Error(ErrorKind::Pole, pole_message(detuning));
    CVector s = -lu.solve(drive);
    if (!s.allFinite()) throw Error(ErrorKind::Pole, pole_message(detuning));
    return s;
}

CVector steady_state_coherences(const ModeDecomposition& modes, double gamma_prime, double detuning,
                                const CVector& drive) {
    const auto n = static_cast<Eigen::Index>(modes.size());
    if (drive.size() != n) throw Error(ErrorKind::Validation, "drive length does not match the chain");
    CVector s = CVector::Zero(n);
    const Complex z(detuning, gamma_prime / 2.0);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex denom = z + modes.eigenvalues[k];
        if (denom == Complex(0.0, 0.0)) throw Error(ErrorKind::Pole, pole_message(detuning));
        const auto v = modes.eigenvectors.col(k);
        s -= v * ((v.transpose() * drive)(0, 0) / denom);
    }
    return s;
}

Complex field_profile(double x, const CVector& sigma, const CouplingMatrix& g, const TransmissionGeometry& geometry,
                      Complex omega_left) {
    const ReservoirModel& model = require_model(g);
    if (sigma.size() != static_cast<Eigen::Index>(g.size()))
        throw Error(ErrorKind::Validation, "coherence vector length does not match the chain");
    const Complex gll = coupling(model, geometry.x_left, geometry.x_left);
    if (gll == Complex(0.0, 0.0))
        throw Error(ErrorKind::Validation, "probe reference point has zero self-coupling");
    Complex e = coupling(model, x, geometry.x_left) / gll * omega_left;
    for (std::size_t j = 0; j < g.size(); ++j) e += coupling(model, x, g.positions[j]) * sigma[static_cast<Eigen::Index>(j)];
    return e;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) throw Error(ErrorKind::Validation, "grid needs at least one point");
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) out[k] = lo + step * static_cast<double>(k);
    out.back() = hi;
    return out;
}

std::vector<double> default_detuning_grid(double gamma_prime, const ModeDecomposition& modes) {
    double half = 10.0 * (gamma_prime + max_rate(modes)) / 2.0;
    if (!(half > 0.0)) half = 10.0;
    return linspace(-half, half, 2001);
}

DirectResponse direct_response(const CouplingMatrix& g, double gamma_prime, double detuning,
                               const TransmissionGeometry& geometry) {
    return solve_direct(direct_inputs(g, geometry), gamma_prime, detuning, geometry.r0);
}

SpectrumTable transmission(std::span<const double> grid, const CouplingMatrix& g, double gamma_prime,
                           const TransmissionGeometry& geometry) {
    const DirectInputs in = direct_inputs(g, geometry);
    SpectrumTable out;
    out.detuning.assign(grid.begin(), grid.end());
    out.t_ratio.resize(grid.size());
    out.r.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        const DirectResponse d = solve_direct(in, gamma_prime, grid[k], geometry.r0);
        out.t_ratio[k] = d.t_ratio;
        out.r[k] = d.r;
    });
    return out;
}

Complex transmission_product_at(const CVector& eigenvalues, double gamma_prime, double detuning) {
    const Complex z(detuning, gamma_prime / 2.0);
    Complex t(1.0, 0.0);
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
        const Complex denom = z + eigenvalues[k];
        if (denom == Complex(0.0, 0.0)) throw Error(ErrorKind::Pole, pole_message(detuning));
        t *= z / denom;
    }
    return t;
}

SpectrumTable transmission_product(std::span<const double> grid, const CVector& eigenvalues, double gamma_prime) {
    SpectrumTable out;
    out.detuning.assign(grid.begin(), grid.end());
    out.t_ratio.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        out.t_ratio[k] = transmission_product_at(eigenvalues, gamma_prime, grid[k]);
    return out;
}

double FanoParameters::reduced_detuning(double detuning) const {
    return 2.0 * (detuning + exchange) / (decay + gamma_prime);
}

double FanoParameters::transmittance(double detuning) const {
    const double chi = reduced_detuning(detuning);
    return ((q + chi) * (q + chi) + background_weight) / (1.0 + chi * chi);
}

FanoParameters fano(double exchange, double decay, double gamma_prime) {
    const double width = decay + gamma_prime;
    if (!(width > 0.0)) throw Error(ErrorKind::Validation, "Fano form needs Gamma_1D + Gamma' > 0");
    const double w = gamma_prime / width;
    return {-2.0 * exchange / width, exchange, decay, gamma_prime, w * w};
}

BeerLambertTable beer_lambert(std::span<const double> grid, std::size_t n, double decay, double gamma_prime) {
    if (!(gamma_prime > 0.0)) throw Error(ErrorKind::Validation, "Beer-Lambert form needs Gamma' > 0");
    BeerLambertTable out;
    out.optical_depth = 2.0 * static_cast<double>(n) * decay / gamma_prime;
    out.detuning.assign(grid.begin(), grid.end());
    const double N = static_cast<double>(n);
    for (double d : grid) {
        const double ratio = (d * d + (gamma_prime + decay) * (gamma_prime + decay) / 4.0) /
                             (d * d + gamma_prime * gamma_prime / 4.0);
        out.exact.push_back(std::exp(-N * std::log(ratio)));
        const double x = 2.0 * d / gamma_prime;
        out.approximate.push_back(std::exp(-out.optical_depth / (1.0 + x * x)));
    }
    return out;
}

NonMarkovSpectrum nonmarkov_spectrum(std::span<const double> grid, const TabulatedCoupling& model,
                                     double gamma_prime) {
    if (grid.empty()) throw Error(ErrorKind::Validation, "non-Markov spectrum needs a grid");
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    if (*lo < model.min_detuning() || *hi > model.max_detuning())
        throw Error(ErrorKind::Validation, "probe grid extends outside the tabulated coupling range");
    NonMarkovSpectrum out;
    out.frequency_resolved.detuning.assign(grid.begin(), grid.end());
    out.frequency_resolved.t_ratio.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t k) {
        const CVector lambda = eigen_solve(model.matrix(grid[k]), false).values;
        out.frequency_resolved.t_ratio[k] = transmission_product_at(lambda, gamma_prime, grid[k]);
    });
    if (!(model.min_detuning() <= 0.0 && model.max_detuning() >= 0.0))
        throw Error(ErrorKind::Validation, "tabulated coupling does not cover Delta_A = 0 for the Markov companion");
    out.markov = transmission_product(grid, eigen_solve(model.matrix(0.0), false).values, gamma_prime);
    return out;
}

}  // namespace wgqed
