#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "wgqed/greens.hpp"

using namespace wgqed;

namespace {

bool throws_kind(ErrorKind kind, auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

CavityModel high_q_cavity(int m = 3, double g0 = 0.4, double kappa = 1.0) {
    return CavityModel::from_linewidth(kappa, 1.0e6, m, g0);
}

}  // namespace

TEST_CASE("waveguide coupling closed-form values") {
    const WaveguideModel wg{2.0, 2.0 * pi};
    const ReservoirModel model = wg;
    const Complex self = coupling(model, 0.3, 0.3);
    CHECK(self.real() == 0.0);
    CHECK(self.imag() == doctest::Approx(1.0).epsilon(1e-15));

    // k|dx| = pi -> -i Gamma/2
    const Complex half = coupling(model, 0.1, 0.6);
    CHECK(std::abs(half - Complex(0.0, -1.0)) < 1e-14);
    // k|dx| = pi/2 -> -Gamma/2
    const Complex quarter = coupling(model, 0.0, 0.25);
    CHECK(std::abs(quarter - Complex(-1.0, 0.0)) < 1e-14);

    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        const auto xs = oracle::uniform(rng, 2, -3.0, 3.0);
        const Complex g = coupling(model, xs[0], xs[1]);
        CHECK(g == coupling(model, xs[1], xs[0]));
        CHECK(oracle::rel(std::complex<long double>(g), oracle::waveguide(xs[0], xs[1], 2.0)) < 1e-13);
    }
}

TEST_CASE("bandgap coupling: antinodes, nodes and the fig4b decay factor") {
    const BandgapModel b{-3.0, 1.0 / 80.0, 1.0, 0.0};
    const ReservoirModel model = b;
    const Complex g = coupling(model, 0.0, 2.0);
    CHECK(g.imag() == 0.0);
    CHECK(g.real() == doctest::Approx(-3.0 * 0.9753099120283326).epsilon(1e-14));
    CHECK(std::abs(coupling(model, 0.5, 4.0)) < 1e-15);
    CHECK(std::exp(-b.kappa_x * 2.0) == doctest::Approx(0.9753099120283326).epsilon(1e-15));

    std::mt19937_64 rng(12);
    for (int k = 0; k < 50; ++k) {
        const auto xs = oracle::uniform(rng, 2, -5.0, 5.0);
        CHECK(coupling(model, xs[0], xs[1]) == coupling(model, xs[1], xs[0]));
        CHECK(coupling(model, xs[0], xs[1]).imag() == 0.0);
    }

    const ReservoirModel lossy = BandgapModel{-1.0, 0.5, 1.0, 0.2};
    const Complex gl = coupling(lossy, 0.0, 0.0);
    CHECK(gl.real() == doctest::Approx(-1.0));
    CHECK(gl.imag() == doctest::Approx(0.1));
}

TEST_CASE("high-Q cavity Green's function") {
    const CavityModel m = high_q_cavity(3);
    // k_c u = pi/2 is a node
    const Complex antinode = cavity_green(0.0, 0.0, 0.3, m, CavityVariant::HighQ);
    for (double u : {0.0, 0.2, 0.5, 0.77})
        CHECK(std::abs(cavity_green(1.0 / 12.0, u, 0.3, m, CavityVariant::HighQ)) < 1e-15 * std::abs(antinode));

    const Complex res = cavity_green(0.0, 1.0 / 3.0, 0.0, m, CavityVariant::HighQ);
    CHECK(res.real() == 0.0);
    CHECK(res.imag() > 0.0);

    const Complex with_rate = cavity_rate_factor(0.0, m) * res;
    const double g0 = m.peak_coupling;
    CHECK(with_rate.imag() == doctest::Approx(2.0 * g0 * g0 / m.linewidth()).epsilon(1e-12));
}

TEST_CASE("finite-mirror and high-Q cavity forms agree near resonance") {
    const CavityModel m = high_q_cavity(2, 0.3, 1.0);
    const double dc = 0.1 * m.linewidth();
    for (double ui : {0.0, 0.1, 0.35})
        for (double uj : {0.05, 0.5, 0.9}) {
            const auto exact = cavity_exact_coupling<double>(ui, uj, dc, m);
            const auto hq = cavity_high_q_coupling<double>(ui, uj, dc, m);
            if (std::abs(hq) < 1e-6) continue;
            CHECK(std::abs(exact - hq) / std::abs(hq) < 1e-2);
        }
}

TEST_CASE("Jaynes-Cummings rates") {
    const CavityModel m = high_q_cavity(1, 0.5, 2.0);
    const double kappa = m.linewidth();
    const JcRates on = jc_rates(0.0, 0.5, 0.0, m);
    CHECK(on.exchange == 0.0);
    CHECK(on.decay == doctest::Approx(4.0 * 0.25 / kappa * std::cos(pi)).epsilon(1e-12));

    const JcRates half = jc_rates(0.0, 0.0, kappa / 2.0, m);
    CHECK(half.exchange / half.decay == doctest::Approx(-0.5).epsilon(1e-14));

    // g = J + i Gamma / 2 for the coupling used in the matrix
    const ReservoirModel model = CavityReservoir{m, 0.37, CavityVariant::HighQ};
    for (double ui : {0.0, 0.13, 0.4})
        for (double uj : {0.02, 0.5}) {
            const JcRates r = jc_rates(ui, uj, 0.37, m);
            const Complex g = coupling(model, ui, uj);
            CHECK(std::abs(g - Complex(r.exchange, r.decay / 2.0)) < 1e-12 * std::max(1.0, std::abs(g)));
        }
}

TEST_CASE("cavity model validity and position checks") {
    CavityModel leaky;
    leaky.reflectivity = 0.9;
    leaky.transit_rate = 10.0;
    leaky.peak_coupling = 0.1;
    CHECK(throws_kind(ErrorKind::ModelValidity, [&] { leaky.validate(CavityVariant::HighQ); }));
    CHECK_NOTHROW(leaky.validate(CavityVariant::Exact));
    CHECK(std::isfinite(std::abs(cavity_green(0.2, 0.4, 0.1, leaky, CavityVariant::Exact))));

    const CavityModel m = high_q_cavity();
    CHECK(throws_kind(ErrorKind::Validation, [&] { cavity_green(-0.1, 0.5, 0.0, m, CavityVariant::HighQ); }));
    CHECK(throws_kind(ErrorKind::Validation, [&] { cavity_green(0.5, 1.2, 0.0, m, CavityVariant::HighQ); }));
    CHECK(throws_kind(ErrorKind::Validation, [&] { CavityModel::from_linewidth(-1.0, 1e6, 1, 0.1); }));
}

TEST_CASE("cavity reciprocity is exact for both variants") {
    CavityModel m = high_q_cavity(4);
    const ReservoirModel hq = CavityReservoir{m, 0.2, CavityVariant::HighQ};
    const ReservoirModel ex = CavityReservoir{m, 0.2, CavityVariant::Exact};
    std::mt19937_64 rng(5);
    for (int k = 0; k < 40; ++k) {
        const auto u = oracle::uniform(rng, 2, 0.0, 1.0);
        CHECK(coupling(hq, u[0], u[1]) == coupling(hq, u[1], u[0]));
        CHECK(coupling(ex, u[0], u[1]) == coupling(ex, u[1], u[0]));
    }
}

TEST_CASE("model validation") {
    CHECK(throws_kind(ErrorKind::Validation, [] { validate(ReservoirModel{WaveguideModel{-1.0}}); }));
    CHECK(throws_kind(ErrorKind::Validation, [] { validate(ReservoirModel{BandgapModel{-1.0, 0.0}}); }));
    CHECK(throws_kind(ErrorKind::Validation, [] { validate(ReservoirModel{BandgapModel{-1.0, 1.0, 1.0, -0.1}}); }));
    CHECK_NOTHROW(validate(ReservoirModel{WaveguideModel{}}));
    CHECK(has_propagating_channel(ReservoirModel{WaveguideModel{}}));
    CHECK_FALSE(has_propagating_channel(ReservoirModel{BandgapModel{}}));
}

TEST_CASE("layered reservoir rate scale gives i Gamma/2 in the outer medium") {
    LayeredStack stack;
    // index-matched slabs, so nothing reflects back onto the outer self term
    stack.slabs = {{0.2, {2.25, 0.0}}, {0.7, {2.25, 0.0}}};
    stack.outer_permittivity = {2.25, 0.0};
    const ReservoirModel model = LayeredReservoir::with_outer_gamma(stack, 3.0, 0.8);
    const Complex self = coupling(model, -0.4, -0.4);
    CHECK(std::abs(self - Complex(0.0, 0.4)) < 1e-12);
    const Complex a = coupling(model, -0.3, 0.5);
    const Complex b = coupling(model, 0.5, -0.3);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
}
