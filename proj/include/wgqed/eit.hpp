// eit.hpp - Lambda-system transparency, polariton wavevector and group velocity

#pragma once

#include <span>
#include <vector>

#include "wgqed/collective.hpp"
#include "wgqed/spectra.hpp"
#include "wgqed/types.hpp"

namespace wgqed {

/// Two-photon detuning locked to the probe detuning (Delta_s = Delta_A).
Complex eit_transmission_at(const CVector& eigenvalues, double gamma_prime, double control, double detuning);
SpectrumTable eit_transmission(std::span<const double> grid, const CVector& eigenvalues, double gamma_prime,
                               double control);

struct EitCoherences {
    CVector ge;  // sigma_ge
    CVector gs;  // sigma_gs
};

/// Steady state for an arbitrary two-photon detuning. At Delta_s = 0 the
/// atoms sit in the dark state: sigma_ge = 0, sigma_gs = -Omega / Omega_c.
EitCoherences eit_coherences(const CouplingMatrix& g, double gamma_prime, double control, double detuning,
                             double two_photon_detuning, const CVector& drive);

/// k_eff = c1 Delta + c2 Delta^2 + c3 Delta^3, from traces of g powers.
struct KeffCoefficients {
    Complex linear;
    Complex quadratic;
    Complex cubic;

    Complex operator()(double detuning) const {
        return detuning * (linear + detuning * (quadratic + detuning * cubic));
    }
};

KeffCoefficients keff_coefficients(const CMatrix& g, double gamma_prime, double control, double spacing);
inline KeffCoefficients keff_coefficients(const CouplingMatrix& g, double gamma_prime, double control,
                                          double spacing) {
    return keff_coefficients(g.values, gamma_prime, control, spacing);
}

/// Same expansion with the traces taken from eigenvalues (sum lambda^beta).
KeffCoefficients keff_coefficients(const ModeDecomposition& modes, double gamma_prime, double control,
                                   double spacing);

inline Complex keff_series(const ModeDecomposition& modes, double gamma_prime, double control, double spacing,
                           double detuning) {
    return keff_coefficients(modes, gamma_prime, control, spacing)(detuning);
}

enum class SpacingConfiguration { Mirror, QuarterWave };

/// Waveguide closed forms: mirror (k_p d = n pi) and quarter-wave (k_p d odd
/// multiple of pi/2, with its N-parity branches).
KeffCoefficients keff_closed_form(SpacingConfiguration configuration, std::size_t n, double decay,
                                  double gamma_prime, double control, double spacing);

/// k_eff = log(t_EIT/t0) / (i N d) on a grid, log branch kept continuous.
std::vector<Complex> keff_exact(std::span<const double> grid, const CVector& eigenvalues, double gamma_prime,
                                double control, double spacing);

/// v_g(0) = 2 Omega_c^2 d / Gamma_1D.
double group_velocity(double control, double spacing, double decay);

}  // namespace wgqed
