// dynamics.hpp - single-excitation amplitude evolution without drive

#pragma once

#include <span>
#include <vector>

#include "wgqed/collective.hpp"
#include "wgqed/types.hpp"

namespace wgqed {

struct TimeTrace {
    std::vector<double> times;
    std::vector<CVector> amplitudes;           // c(t) per time
    std::vector<std::vector<double>> populations;  // |c_i(t)|^2 per time
    std::vector<double> total;                 // sum_i |c_i|^2
    bool used_matrix_exponential = false;      // eigen route was quasi-defective
};

/// c(t) = exp(i [(Delta_A + i Gamma'/2) 1 + g] t) c0. Uses the transpose-normalized
/// eigenbasis, falling back to a scaling-and-squaring exponential near
/// exceptional points.
TimeTrace evolve(const CouplingMatrix& g, double gamma_prime, double detuning, const CVector& initial,
                 std::span<const double> times);

/// 2000 points over [0, 8 / Gamma'].
std::vector<double> default_time_grid(double gamma_prime);

/// Non-interacting companion: off-diagonal entries set to zero.
CouplingMatrix zero_offdiagonal(const CouplingMatrix& g);

}  // namespace wgqed
