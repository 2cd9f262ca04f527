// greens.hpp - dipole-projected guided-mode Green's functions for quasi-1D reservoirs
//
// Every rate and detuning is a dimensionless multiple of one reference rate
// (Gamma', Gamma_0 or Gamma_1D, chosen per scenario). Positions are
// dimensionless in the model's natural length: probe wavelengths for the
// waveguide, lattice constants for the bandgap crystal, cavity lengths for the
// cavity, and free lengths (c = 1) for layered stacks.

#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "wgqed/error.hpp"
#include "wgqed/tabulated.hpp"
#include "wgqed/transfer_matrix.hpp"
#include "wgqed/types.hpp"

namespace wgqed {

struct RateUnits {
    std::string reference = "Gamma_prime";  // label only

    /// Re-express a rate given how many target units one reference unit is worth.
    static double convert(double value, double target_per_reference) { return value * target_per_reference; }
};

// ---------------------------------------------------------------------------
// Cavity

enum class CavityVariant { HighQ, Exact };

/// Standing-wave cavity with two identical real mirrors.
///
/// Positions are fractions u = x/L in [0, 1]. `transit_rate` is c/L in
/// reference-rate units, so the linewidth is kappa = (1 - r^2) * transit_rate
/// and the resonance sits at omega_c = 2*pi*m * transit_rate.
struct CavityModel {
    double reflectivity = 0.0;
    double transit_rate = 1.0e6;
    int mode_index = 1;
    double peak_coupling = 0.0;  // g0 at the mode antinode

    static CavityModel from_linewidth(double linewidth, double transit_rate, int mode_index,
                                      double peak_coupling);

    double linewidth() const { return (1.0 - reflectivity) * (1.0 + reflectivity) * transit_rate; }
    double resonance() const { return 2.0 * pi * mode_index * transit_rate; }
    double mode_function(double u) const { return std::cos(2.0 * pi * mode_index * u); }

    /// Throws Validation for out-of-range fields; ModelValidity when
    /// `variant` is HighQ and 1 - r^2 > 0.1.
    void validate(CavityVariant variant) const;
};

/// G_1D(x_i, x_j, omega_p) in natural cavity units (c = L = A = 1) at cavity
/// detuning Delta_c = omega_p - omega_c.
Complex cavity_green(double u_i, double u_j, double cavity_detuning, const CavityModel& model,
                     CavityVariant variant);

/// mu0 omega_p^2 d^2 / hbar in the same natural units, expressed so that
/// factor * cavity_green(...) is the coupling g_ij in reference rates.
double cavity_rate_factor(double cavity_detuning, const CavityModel& model);

struct JcRates {
    double exchange;  // J_1D^ij
    double decay;     // Gamma_1D^ij
};

/// Adiabatically eliminated Jaynes-Cummings spin-exchange and decay rates.
JcRates jc_rates(double u_i, double u_j, double cavity_detuning, const CavityModel& model);

// ---------------------------------------------------------------------------
// Waveguide and bandgap crystal

struct WaveguideModel {
    double gamma_1d = 1.0;
    double probe_wavevector = 2.0 * pi;  // positions in probe wavelengths by default

    void validate() const;
};

struct BandgapModel {
    double j_max = -1.0;
    double kappa_x = 1.0;
    double lattice_constant = 1.0;
    double residual_gamma = 0.0;

    void validate() const;
};

// Closed forms are templated so the direct transmission solve can evaluate
// them in extended precision.

template <class Real>
std::complex<Real> waveguide_coupling(Real x_i, Real x_j, const WaveguideModel& model) {
    using std::abs;
    const Real half_gamma = Real(model.gamma_1d) / Real(2);
    const Real phase = Real(model.probe_wavevector) * abs(x_i - x_j);
    return std::complex<Real>(-half_gamma * std::sin(phase), half_gamma * std::cos(phase));
}

template <class Real>
std::complex<Real> bandgap_coupling(Real x_i, Real x_j, const BandgapModel& model) {
    using std::abs;
    const Real pi_r = std::numbers::pi_v<Real>;
    const Real a = Real(model.lattice_constant);
    const Real envelope = std::cos(pi_r * x_i / a) * std::cos(pi_r * x_j / a) *
                          std::exp(-Real(model.kappa_x) * abs(x_i - x_j));
    return std::complex<Real>(Real(model.j_max) * envelope,
                              Real(model.residual_gamma) / Real(2) * envelope);
}

/// Coupling of the high-Q cavity, g_ij = -g0^2 cos cos / (Delta_c + i kappa/2).
template <class Real>
std::complex<Real> cavity_high_q_coupling(Real u_i, Real u_j, Real cavity_detuning,
                                          const CavityModel& model) {
    const Real k = Real(2) * std::numbers::pi_v<Real> * Real(model.mode_index);
    const Real g0 = Real(model.peak_coupling);
    const Real kappa = (Real(1) - Real(model.reflectivity)) * (Real(1) + Real(model.reflectivity)) *
                       Real(model.transit_rate);
    const std::complex<Real> denom(cavity_detuning, kappa / Real(2));
    const Real profile = std::cos(k * u_i) * std::cos(k * u_j);
    return -g0 * g0 * profile / denom;
}

/// Four-term finite-mirror form (v_g = c), reflectivity may be complex.
/// Positions are measured from the cavity centre, mirrors at -L/2 and L/2.
template <class Real>
std::complex<Real> cavity_exact_green_centered(Real xc_i, Real xc_j, Real wavevector, Real length,
                                               std::complex<Real> r) {
    using C = std::complex<Real>;
    using std::abs;
    const C i(0, 1);
    const Real sep = abs(xc_i - xc_j);
    const Real sum = xc_i + xc_j;
    const C bracket = std::exp(i * wavevector * sep) + r * std::exp(i * wavevector * (length + sum)) +
                      r * std::exp(i * wavevector * (length - sum)) +
                      r * r * std::exp(i * wavevector * (Real(2) * length - sep));
    return i * bracket / (Real(2) * wavevector * (Real(1) - r * r * std::exp(Real(2) * i * wavevector * length)));
}

/// Exact-variant coupling in reference rates (cavity_rate_factor times the four-term form).
template <class Real>
std::complex<Real> cavity_exact_coupling(Real u_i, Real u_j, Real cavity_detuning,
                                         const CavityModel& model) {
    using C = std::complex<Real>;
    using std::abs;
    const C i(0, 1);
    const Real T = Real(model.transit_rate);
    const Real r = Real(model.reflectivity);
    const Real two_pi_m = Real(2) * std::numbers::pi_v<Real> * Real(model.mode_index);
    const Real detune = cavity_detuning / T;  // delta k * L
    const Real omega = two_pi_m + detune;     // k_p L in natural units
    // e^{i k_p L} = e^{i delta k L} exactly because k_c L = 2 pi m.
    const Real xc_i = u_i - Real(0.5);
    const Real xc_j = u_j - Real(0.5);
    const Real sep = abs(xc_i - xc_j);
    const Real sum = xc_i + xc_j;
    const C round_trip = std::exp(i * detune);
    const C bracket = std::exp(i * omega * sep) + r * round_trip * std::exp(i * omega * sum) +
                      r * round_trip * std::exp(-i * omega * sum) +
                      r * r * round_trip * round_trip * std::exp(-i * omega * sep);
    const C green = i * bracket / (Real(2) * omega * (Real(1) - r * r * round_trip * round_trip));
    const Real g0 = Real(model.peak_coupling);
    return g0 * g0 * omega / T * green;
}

// ---------------------------------------------------------------------------
// Layered dielectric reservoir

/// Layered stack evaluated at a fixed probe frequency. `rate_scale` converts
/// the 1D Helmholtz Green's function A*G into a coupling rate.
struct LayeredReservoir {
    LayeredStack stack;
    double omega = 1.0;
    double rate_scale = 1.0;

    /// Scale such that an emitter in the outer medium has self-coupling i*gamma_1d/2.
    static LayeredReservoir with_outer_gamma(LayeredStack stack, double omega, double gamma_1d);
};

// ---------------------------------------------------------------------------
// Reservoir selection

struct CavityReservoir {
    CavityModel model;
    double cavity_detuning = 0.0;
    CavityVariant variant = CavityVariant::HighQ;
};

using ReservoirModel =
    std::variant<CavityReservoir, WaveguideModel, BandgapModel, LayeredReservoir, TabulatedCoupling>;

const char* model_name(const ReservoirModel& model);
void validate(const ReservoirModel& model);

/// True when the model supports g(x, x') at arbitrary positions (field
/// reconstruction and transmission endpoints).
bool has_position_evaluation(const ReservoirModel& model);

/// True when the model has a propagating guided channel (transmission makes sense).
bool has_propagating_channel(const ReservoirModel& model);

/// g(x, x') at positions. `probe_detuning` only matters for TabulatedCoupling,
/// which is addressed by atom index instead (throws for position evaluation).
Complex coupling(const ReservoirModel& model, double x, double x_prime);

/// Same as coupling() in extended precision where a closed form exists;
/// numerical models are promoted from double.
ComplexX coupling_extended(const ReservoirModel& model, long double x, long double x_prime);

}  // namespace wgqed
