#include "wgqed/greens.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wgqed {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::ModelValidity: return "model-validity";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::QuasiDefective: return "quasi-defective";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw Error(ErrorKind::Validation, message);
}

void require_position_in_cavity(double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        std::ostringstream os;
        os << "cavity position " << u << " outside [0, L]";
        throw Error(ErrorKind::Validation, os.str());
    }
}

}  // namespace

CavityModel CavityModel::from_linewidth(double linewidth, double transit_rate, int mode_index,
                                        double peak_coupling) {
    require(linewidth > 0.0, "cavity linewidth must be positive");
    require(transit_rate > linewidth, "cavity transit rate c/L must exceed the linewidth");
    CavityModel m;
    m.reflectivity = std::sqrt(1.0 - linewidth / transit_rate);
    m.transit_rate = transit_rate;
    m.mode_index = mode_index;
    m.peak_coupling = peak_coupling;
    return m;
}

void CavityModel::validate(CavityVariant variant) const {
    require(reflectivity > 0.0 && reflectivity < 1.0, "mirror reflectivity must lie in (0, 1)");
    require(transit_rate > 0.0 && std::isfinite(transit_rate), "cavity transit rate must be positive");
    require(mode_index >= 1, "cavity mode index must be >= 1");
    require(std::isfinite(peak_coupling), "cavity peak coupling must be finite");
    if (variant == CavityVariant::HighQ && (1.0 - reflectivity * reflectivity) > 0.1) {
        throw Error(ErrorKind::ModelValidity,
                    "high-Q cavity requires 1 - r^2 << 1 (got " +
                        std::to_string(1.0 - reflectivity * reflectivity) + ")");
    }
}

Complex cavity_green(double u_i, double u_j, double cavity_detuning, const CavityModel& model,
                     CavityVariant variant) {
    model.validate(variant);
    require_position_in_cavity(u_i);
    require_position_in_cavity(u_j);
    const double T = model.transit_rate;
    const double omega = 2.0 * pi * model.mode_index + cavity_detuning / T;
    if (variant == CavityVariant::HighQ) {
        const double kappa = model.linewidth() / T;
        return -model.mode_function(u_i) * model.mode_function(u_j) /
               (omega * Complex(cavity_detuning / T, kappa / 2.0));
    }
    // Reuse the coupling expression with g0 = 1 and strip the rate factor; it
    // keeps e^{i 2 pi m} = 1 exact, which the centered form would not.
    CavityModel unit = model;
    unit.peak_coupling = 1.0;
    const ComplexX g = cavity_exact_coupling<long double>(u_i, u_j, cavity_detuning, unit);
    return Complex(g / static_cast<long double>(cavity_rate_factor(cavity_detuning, unit)));
}

double cavity_rate_factor(double cavity_detuning, const CavityModel& model) {
    const double T = model.transit_rate;
    const double omega = 2.0 * pi * model.mode_index + cavity_detuning / T;
    return model.peak_coupling * model.peak_coupling * omega / T;
}

JcRates jc_rates(double u_i, double u_j, double cavity_detuning, const CavityModel& model) {
    const double kappa = model.linewidth();
    const double g0 = model.peak_coupling;
    const double profile = model.mode_function(u_i) * model.mode_function(u_j);
    const double denom = cavity_detuning * cavity_detuning + kappa * kappa / 4.0;
    return {-g0 * g0 * cavity_detuning * profile / denom, g0 * g0 * kappa * profile / denom};
}

void WaveguideModel::validate() const {
    require(gamma_1d > 0.0 && std::isfinite(gamma_1d), "waveguide gamma_1d must be positive");
    require(probe_wavevector > 0.0 && std::isfinite(probe_wavevector), "waveguide probe wavevector must be positive");
}

void BandgapModel::validate() const {
    require(kappa_x > 0.0 && std::isfinite(kappa_x), "bandgap kappa_x must be positive");
    require(lattice_constant > 0.0, "bandgap lattice constant must be positive");
    require(residual_gamma >= 0.0, "bandgap residual_gamma must be >= 0");
    require(std::isfinite(j_max), "bandgap j_max must be finite");
}

LayeredReservoir LayeredReservoir::with_outer_gamma(LayeredStack stack, double omega, double gamma_1d) {
    stack.validate();
    require(omega > 0.0, "layered reservoir frequency must be positive");
    const Complex k_out = omega * std::sqrt(stack.outer_permittivity);
    // Outer-medium self term: A G = i / (2k)  ->  rate_scale * i/(2k) = i gamma/2.
    LayeredReservoir r{std::move(stack), omega, gamma_1d * k_out.real()};
    return r;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

const char* model_name(const ReservoirModel& model) {
    return std::visit(overloaded{
                          [](const CavityReservoir&) { return "cavity"; },
                          [](const WaveguideModel&) { return "waveguide"; },
                          [](const BandgapModel&) { return "bandgap"; },
                          [](const LayeredReservoir&) { return "layered"; },
                          [](const TabulatedCoupling&) { return "tabulated"; },
                      },
                      model);
}

void validate(const ReservoirModel& model) {
    std::visit(overloaded{
                   [](const CavityReservoir& c) { c.model.validate(c.variant); },
                   [](const WaveguideModel& w) { w.validate(); },
                   [](const BandgapModel& b) { b.validate(); },
                   [](const LayeredReservoir& l) {
                       l.stack.validate();
                       require(l.omega > 0.0, "layered reservoir frequency must be positive");
                   },
                   [](const TabulatedCoupling& t) {
                       require(t.size() > 0, "tabulated coupling has no emitters");
                   },
               },
               model);
}

bool has_position_evaluation(const ReservoirModel& model) {
    return !std::holds_alternative<TabulatedCoupling>(model);
}

bool has_propagating_channel(const ReservoirModel& model) {
    return !std::holds_alternative<BandgapModel>(model) && !std::holds_alternative<TabulatedCoupling>(model);
}

Complex coupling(const ReservoirModel& model, double x, double x_prime) {
    return std::visit(
        overloaded{
            [&](const CavityReservoir& c) -> Complex {
                require_position_in_cavity(x);
                require_position_in_cavity(x_prime);
                if (c.variant == CavityVariant::HighQ)
                    return cavity_high_q_coupling<double>(x, x_prime, c.cavity_detuning, c.model);
                return Complex(cavity_exact_coupling<long double>(x, x_prime, c.cavity_detuning, c.model));
            },
            [&](const WaveguideModel& w) { return waveguide_coupling<double>(x, x_prime, w); },
            [&](const BandgapModel& b) { return bandgap_coupling<double>(x, x_prime, b); },
            [&](const LayeredReservoir& l) {
                return l.rate_scale * helmholtz_green(x, x_prime, l.omega, l.stack);
            },
            [&](const TabulatedCoupling&) -> Complex {
                throw Error(ErrorKind::Validation,
                            "tabulated couplings are addressed by atom index, not position");
            },
        },
        model);
}

ComplexX coupling_extended(const ReservoirModel& model, long double x, long double x_prime) {
    return std::visit(
        overloaded{
            [&](const CavityReservoir& c) -> ComplexX {
                require_position_in_cavity(static_cast<double>(x));
                require_position_in_cavity(static_cast<double>(x_prime));
                if (c.variant == CavityVariant::HighQ)
                    return cavity_high_q_coupling<long double>(x, x_prime, c.cavity_detuning, c.model);
                return cavity_exact_coupling<long double>(x, x_prime, c.cavity_detuning, c.model);
            },
            [&](const WaveguideModel& w) { return waveguide_coupling<long double>(x, x_prime, w); },
            [&](const BandgapModel& b) { return bandgap_coupling<long double>(x, x_prime, b); },
            [&](const LayeredReservoir& l) -> ComplexX {
                const Complex g = l.rate_scale * helmholtz_green(static_cast<double>(x),
                                                                 static_cast<double>(x_prime), l.omega, l.stack);
                return ComplexX(g.real(), g.imag());
            },
            [&](const TabulatedCoupling&) -> ComplexX {
                throw Error(ErrorKind::Validation,
                            "tabulated couplings are addressed by atom index, not position");
            },
        },
        model);
}

}  // namespace wgqed
