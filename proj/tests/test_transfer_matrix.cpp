#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "wgqed/error.hpp"
#include "wgqed/transfer_matrix.hpp"

using namespace wgqed;

namespace {

Complex free_green(double x, double xp, Complex k) { return I * std::exp(I * k * std::abs(x - xp)) / (2.0 * k); }

LayeredStack random_stack(std::mt19937_64& rng, std::size_t slabs) {
    std::uniform_real_distribution<double> thick(0.05, 0.6), eps(1.0, 12.0), loss(0.0, 0.05);
    LayeredStack s;
    for (std::size_t k = 0; k < slabs; ++k) s.slabs.push_back({thick(rng), {eps(rng), loss(rng)}});
    return s;
}

// Fabry-Perot slab of index n in vacuum, referenced at its left face.
Complex slab_reflection(Complex n, double thickness, double omega) {
    const Complex r12 = (1.0 - n) / (1.0 + n);
    const Complex e = std::exp(2.0 * I * n * omega * thickness);
    return r12 * (1.0 - e) / (1.0 - r12 * r12 * e);
}

// Two identical mirrors around a gap of length L, mirror reflection r at the
// inner faces; positions measured from the gap centre.
Complex two_mirror_green(double x, double xp, double k, double length, Complex r) {
    const double sep = std::abs(x - xp), sum = x + xp;
    const Complex bracket = std::exp(I * k * sep) + r * std::exp(I * k * (length + sum)) +
                            r * std::exp(I * k * (length - sum)) + r * r * std::exp(I * k * (2.0 * length - sep));
    return I * bracket / (2.0 * k * (1.0 - r * r * std::exp(2.0 * I * k * length)));
}

}  // namespace

TEST_CASE("uniform stack reproduces the free Green's function") {
    for (Complex eps : {Complex(1.0, 0.0), Complex(2.25, 0.0), Complex(4.0, 0.0)}) {
        LayeredStack s;
        s.outer_permittivity = eps;
        s.slabs = {{0.3, eps}, {0.55, eps}, {0.2, eps}};
        const double omega = 2.3;
        const HelmholtzSolver solver(s, omega);
        const Complex k = omega * std::sqrt(eps);
        std::mt19937_64 rng(3);
        for (int n = 0; n < 40; ++n) {
            const auto xs = oracle::uniform(rng, 2, -1.0, 2.0);
            const Complex ref = free_green(xs[0], xs[1], k);
            CHECK(std::abs(solver.green(xs[0], xs[1]) - ref) <= 1e-10 * std::abs(ref));
        }
        CHECK(std::abs(solver.reflection_left()) < 1e-14);
    }
    // no slabs at all
    LayeredStack empty;
    CHECK(std::abs(helmholtz_green(0.1, 0.7, 1.5, empty) - free_green(0.1, 0.7, 1.5)) < 1e-14);
}

TEST_CASE("reciprocity and Wronskian constancy in random stacks") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const LayeredStack s = random_stack(rng, 5);
        const double omega = std::uniform_real_distribution<double>(0.5, 8.0)(rng);
        const HelmholtzSolver solver(s, omega);
        const double L = s.total_thickness();
        for (int n = 0; n < 20; ++n) {
            const auto xs = oracle::uniform(rng, 2, -0.5, L + 0.5);
            const Complex a = solver.green(xs[0], xs[1]);
            const Complex b = solver.green(xs[1], xs[0]);
            CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
        }
        const auto probe = oracle::uniform(rng, 30, -1.0, L + 1.0);
        CHECK(wronskian_spread(solver, probe) < 1e-10);
    }
}

TEST_CASE("Green's function solves the Helmholtz equation with a unit derivative jump") {
    LayeredStack s;
    s.slabs = {{0.4, {3.0, 0.0}}, {0.5, {1.5, 0.1}}, {0.3, {6.0, 0.0}}};
    const double omega = 2.7;
    const HelmholtzSolver solver(s, omega);
    const double xp = 0.6;  // inside the middle slab
    const double h = 2e-4;

    // finite-difference residual of G'' + omega^2 eps G at points away from x'
    for (double x : {-0.3, 0.2, 0.75, 1.0, 1.5}) {
        const Complex gm = solver.green(x - h, xp), g0 = solver.green(x, xp), gp = solver.green(x + h, xp);
        const Complex second = (gp - 2.0 * g0 + gm) / (h * h);
        const Complex k = solver.wavevector_at(x);
        const Complex residual = second + k * k * g0;
        CHECK(std::abs(residual) < 1e-6 * std::abs(k * k * g0));
    }

    // one-sided second-order derivatives either side of x'
    const Complex g0 = solver.green(xp, xp);
    const Complex right = (-3.0 * g0 + 4.0 * solver.green(xp + h, xp) - solver.green(xp + 2 * h, xp)) / (2.0 * h);
    const Complex left = (3.0 * g0 - 4.0 * solver.green(xp - h, xp) + solver.green(xp - 2 * h, xp)) / (2.0 * h);
    CHECK(std::abs(right - left - Complex(-1.0, 0.0)) < 1e-5);

    // same jump from the homogeneous solutions themselves
    const FieldSample l = solver.left_solution(xp), r = solver.right_solution(xp);
    const Complex w = solver.wronskian(xp).value();
    const double scale = std::exp(l.log_scale + r.log_scale);
    const Complex jump = (l.value * r.derivative - l.derivative * r.value) * scale / w;
    CHECK(std::abs(jump + 1.0) < 1e-12);
}

TEST_CASE("single slab reflection matches the Fabry-Perot formula, lossless flux balance") {
    for (double eps : {2.0, 9.0, 400.0}) {
        LayeredStack s;
        s.slabs = {{0.137, {eps, 0.0}}};
        const double omega = 3.1;
        const HelmholtzSolver solver(s, omega);
        const Complex ref = slab_reflection(std::sqrt(eps), 0.137, omega);
        CHECK(std::abs(solver.reflection_left() - ref) < 1e-12);
        CHECK(std::norm(solver.reflection_left()) + std::norm(solver.transmission()) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("thin-mirror cavity stack matches the two-mirror closed form") {
    const double mirror = 0.01, length = 1.0;
    for (double omega : {1.0, 6.0, 6.28}) {
        LayeredStack s;
        s.slabs = {{mirror, {400.0, 0.0}}, {length, {1.0, 0.0}}, {mirror, {400.0, 0.0}}};
        const HelmholtzSolver solver(s, omega);
        const Complex r = slab_reflection(20.0, mirror, omega);
        const double centre = mirror + length / 2.0;
        double worst = 0.0;
        for (int i = 1; i < 40; ++i)
            for (int j = 1; j < 40; j += 3) {
                const double x = mirror + length * i / 40.0, xp = mirror + length * j / 40.0;
                const Complex ref = two_mirror_green(x - centre, xp - centre, omega, length, r);
                worst = std::max(worst, std::abs(solver.green(x, xp) - ref) / std::abs(ref));
            }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("thick evanescent barrier is handled by scaled propagation") {
    LayeredStack s;
    s.slabs = {{0.2, {2.0, 0.0}}, {60.0, {-100.0, 0.0}}, {0.2, {2.0, 0.0}}};
    const HelmholtzSolver solver(s, 1.0);
    const Complex across = solver.green(-0.1, 60.5);
    CHECK(std::isfinite(across.real()));
    CHECK(std::abs(across) < 1e-200);
    const Complex inside = solver.green(30.0, 30.0);  // deep in the barrier: ~ i/(2k) with k = 10i
    CHECK(std::abs(inside - I / (2.0 * Complex(0.0, 10.0))) < 1e-12);
}

TEST_CASE("stack validation") {
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Io;
    };
    LayeredStack neg;
    neg.slabs = {{-0.1, {2.0, 0.0}}};
    CHECK(kind_of([&] { HelmholtzSolver(neg, 1.0); }) == ErrorKind::Validation);
    LayeredStack gain;
    gain.slabs = {{0.1, {2.0, -0.5}}};
    CHECK(kind_of([&] { HelmholtzSolver(gain, 1.0); }) == ErrorKind::Validation);
    CHECK(kind_of([&] { HelmholtzSolver(LayeredStack{}, 0.0); }) == ErrorKind::Validation);
}
