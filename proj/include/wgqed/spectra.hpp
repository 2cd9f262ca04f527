// spectra.hpp - steady state, field reconstruction, transmission and reflection

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wgqed/collective.hpp"
#include "wgqed/types.hpp"

namespace wgqed {

/// Where the probe is referenced. t/t0 and r are ratios of field amplitudes
/// at x_right and x_left.
struct TransmissionGeometry {
    double x_left = 0.0;
    double x_right = 0.0;
    Complex r0{0.0, 0.0};  // bare-structure reflection at x_left

    /// Default placement: one probe wavelength outside the extreme atoms for
    /// the waveguide, the mirrors (u = 0, 1) for the cavity, the outer leads
    /// for a layered stack. Bandgap and tabulated models throw.
    static TransmissionGeometry for_model(const ReservoirModel& model, std::span<const double> sorted_positions);
};

/// Omega_i = g(x_i, x_left) / g(x_left, x_left) * omega_left: the probe as it
/// arrives at each atom from a source at x_left.
CVector probe_drive(const CouplingMatrix& g, const TransmissionGeometry& geometry, Complex omega_left = 1.0);

/// sigma = -M^{-1} Omega with M = (Delta_A + i Gamma'/2) 1 + g. Throws Pole if M is singular.
CVector steady_state_coherences(const CouplingMatrix& g, double gamma_prime, double detuning,
                                const CVector& drive);

/// Same through the mode expansion sum_xi v (v^T Omega) / (Delta_A + i Gamma'/2 + lambda).
CVector steady_state_coherences(const ModeDecomposition& modes, double gamma_prime, double detuning,
                                const CVector& drive);

/// E(x) = E_p(x) + sum_j g(x, x_j) sigma_j, with E_p(x) = g(x, x_left)/g(x_left, x_left) * omega_left.
Complex field_profile(double x, const CVector& sigma, const CouplingMatrix& g, const TransmissionGeometry& geometry,
                      Complex omega_left = 1.0);

struct SpectrumTable {
    std::string label;
    std::vector<double> detuning;
    std::vector<Complex> t_ratio;  // t / t0
    std::vector<Complex> r;        // empty when reflection is not available

    bool has_reflection() const { return !r.empty(); }
    double transmittance(std::size_t k) const { return std::norm(t_ratio[k]); }
    double reflectance(std::size_t k) const { return std::norm(r[k]); }
};

/// n evenly spaced points on [lo, hi] (n >= 2, or n = 1 gives lo).
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// 2001 points over +-10 (Gamma' + max Gamma_xi) / 2.
std::vector<double> default_detuning_grid(double gamma_prime, const ModeDecomposition& modes);

/// t/t0 and r at one detuning by direct solve (extended precision).
struct DirectResponse {
    Complex t_ratio;
    Complex r;
};
DirectResponse direct_response(const CouplingMatrix& g, double gamma_prime, double detuning,
                               const TransmissionGeometry& geometry);

/// Direct-solve spectrum (transmission and reflection). The matrix must carry
/// a position-evaluable model.
SpectrumTable transmission(std::span<const double> grid, const CouplingMatrix& g, double gamma_prime,
                           const TransmissionGeometry& geometry);

/// prod_xi (Delta + i Gamma'/2) / (Delta + i Gamma'/2 + lambda_xi). Throws Pole on a vanishing factor.
Complex transmission_product_at(const CVector& eigenvalues, double gamma_prime, double detuning);
SpectrumTable transmission_product(std::span<const double> grid, const CVector& eigenvalues, double gamma_prime);
inline SpectrumTable transmission_product(std::span<const double> grid, const ModeDecomposition& modes,
                                          double gamma_prime) {
    return transmission_product(grid, modes.eigenvalues, gamma_prime);
}

struct FanoParameters {
    double q;
    double exchange;  // J_1D
    double decay;     // Gamma_1D
    double gamma_prime;
    double background_weight;  // (Gamma' / (Gamma' + Gamma_1D))^2

    double reduced_detuning(double detuning) const;  // chi
    double transmittance(double detuning) const;     // two-term closed form
};

FanoParameters fano(double exchange, double decay, double gamma_prime);

struct BeerLambertTable {
    std::vector<double> detuning;
    std::vector<double> exact;
    std::vector<double> approximate;  // OD form
    double optical_depth;
};

BeerLambertTable beer_lambert(std::span<const double> grid, std::size_t n, double decay, double gamma_prime);

struct NonMarkovSpectrum {
    SpectrumTable frequency_resolved;
    SpectrumTable markov;  // g frozen at Delta_A = 0
};

/// Rebuilds g(omega) at every grid point from a tabulated model and applies the
/// product formula to its eigenvalues.
NonMarkovSpectrum nonmarkov_spectrum(std::span<const double> grid, const TabulatedCoupling& model,
                                     double gamma_prime);

}  // namespace wgqed
