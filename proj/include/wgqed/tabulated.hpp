// tabulated.hpp - frequency-resolved couplings g_ij(omega) for non-Markovian spectra

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "wgqed/types.hpp"

namespace wgqed {

/// Couplings of a fixed set of emitters, addressed by (canonical) atom index
/// and probe detuning Delta_A = omega_p - omega_A. Either a closed-form rule
/// or a cubic-spline interpolated table; evaluation outside
/// [min_detuning, max_detuning] throws.
class TabulatedCoupling {
public:
    /// g_ij(Delta_A) = -g0^2 f_i f_j / (Delta_c(Delta_A) + i kappa/2) with
    /// Delta_c = Delta_A + cavity_detuning and f_i the mode amplitudes.
    static TabulatedCoupling cavity_rule(std::vector<double> mode_amplitudes, double peak_coupling,
                                         double linewidth, double cavity_detuning,
                                         double min_detuning, double max_detuning);

    /// Interpolating table; `grid` strictly increasing, at least 4 samples,
    /// each sample an N x N symmetric matrix.
    static TabulatedCoupling from_samples(std::vector<double> grid, std::vector<CMatrix> samples);

    /// Tabulate this model on `grid` (used to build interpolated tables from rules).
    TabulatedCoupling sampled(std::span<const double> grid) const;

    std::size_t size() const;
    double min_detuning() const;
    double max_detuning() const;
    bool is_rule() const;

    Complex operator()(double probe_detuning, std::size_t i, std::size_t j) const;
    CMatrix matrix(double probe_detuning) const;

    // Rule parameters (valid only when is_rule()).
    double peak_coupling() const;
    double linewidth() const;
    double cavity_detuning() const;
    const std::vector<double>& mode_amplitudes() const;

private:
    struct Rule;
    struct Table;
    std::shared_ptr<const Rule> rule_;
    std::shared_ptr<const Table> table_;
};

/// g_ij(omega) of the frequency-dependent cavity rule, for direct use by tests.
Complex cavity_rule_coupling(double probe_detuning, double amplitude_i, double amplitude_j,
                             double peak_coupling, double linewidth, double cavity_detuning);

}  // namespace wgqed
