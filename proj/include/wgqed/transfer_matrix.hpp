// transfer_matrix.hpp - 1D Helmholtz Green's function of piecewise-constant stacks
//
// Solves [d^2/dx^2 + omega^2 eps(x)] G(x, x') = -delta(x - x') (c = 1) through
// the two homogeneous solutions u_L (outgoing to the left) and u_R (outgoing
// to the right):
//
//     G(x, x') = u_L(min(x, x')) u_R(max(x, x')) / W,
//     W = u_R u_L' - u_R' u_L   (position independent).
//
// The stack occupies [0, total_thickness()]; the outer medium fills both
// sides. Each slab carries its own exponent so thick evanescent slabs do not
// overflow.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wgqed/types.hpp"

namespace wgqed {

struct Slab {
    double thickness;
    Complex permittivity;
};

struct LayeredStack {
    std::vector<Slab> slabs;
    Complex outer_permittivity{1.0, 0.0};
    double mode_area = 1.0;

    double total_thickness() const;
    void validate() const;
};

/// A complex number stored as mantissa * exp(log_scale).
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    double log_scale = 0.0;

    Complex value() const;  // may overflow; only for moderate scales
};

/// Solution value and derivative sharing one scale.
struct FieldSample {
    Complex value;
    Complex derivative;
    double log_scale = 0.0;
};

/// Precomputed homogeneous solutions for one stack at one frequency.
class HelmholtzSolver {
public:
    HelmholtzSolver(LayeredStack stack, double omega);

    const LayeredStack& stack() const { return stack_; }
    double omega() const { return omega_; }

    FieldSample left_solution(double x) const;   // u_L
    FieldSample right_solution(double x) const;  // u_R

    /// Wronskian evaluated at x; should not depend on x.
    ScaledComplex wronskian(double x) const;

    /// A * G_1D(x, x') (the 1D Green's function G~). Throws Degenerate when
    /// |W| is negligible against its terms, Overflow if the result cannot be
    /// represented.
    Complex green(double x, double x_prime) const;

    /// Reflection seen from the left lead, referenced at x = 0.
    Complex reflection_left() const;
    /// Transmission left lead -> right lead, referenced at x = 0 and x = L.
    Complex transmission() const;

    /// Wavevector in the layer containing x (Im >= 0 branch).
    Complex wavevector_at(double x) const;

private:
    struct Layer {
        double start;       // left boundary (reference point for the exponentials)
        double thickness;   // +inf for the right lead, 0 for the left lead
        Complex k;
        ScaledComplex forward;   // coefficient of exp(+ik (x - start))
        ScaledComplex backward;  // coefficient of exp(-ik (x - start))
    };

    std::size_t layer_index(double x) const;
    FieldSample evaluate(const std::vector<Layer>& layers, double x) const;

    LayeredStack stack_;
    double omega_;
    std::vector<Layer> left_;   // u_L coefficients per region (lead, slabs..., lead)
    std::vector<Layer> right_;  // u_R coefficients per region
};

/// A * G_1D(x, x', omega) for a layered stack.
Complex helmholtz_green(double x, double x_prime, double omega, const LayeredStack& stack);

/// Largest relative deviation of W across `positions` from its value at the first one.
double wronskian_spread(const HelmholtzSolver& solver, std::span<const double> positions);

}  // namespace wgqed
