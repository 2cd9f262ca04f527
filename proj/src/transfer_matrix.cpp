#include "wgqed/transfer_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wgqed/error.hpp"

namespace wgqed {

namespace {

constexpr double max_log_scale = 700.0;  // exp() stays finite below ~709

// Renormalize so the mantissa magnitude is ~1.
ScaledComplex normalized(Complex m, double s) {
    const double mag = std::abs(m);
    if (mag == 0.0 || !std::isfinite(mag)) return {m, mag == 0.0 ? 0.0 : s};
    const double e = std::log(mag);
    return {m / mag, s + e};
}

// m * exp(i k t) with the growth/decay moved into the scale.
ScaledComplex times_phase(const ScaledComplex& c, Complex k, double t) {
    if (c.mantissa == Complex(0.0, 0.0)) return c;
    const double re = k.real() * t;
    const double im = k.imag() * t;
    return {c.mantissa * std::polar(1.0, re), c.log_scale - im};
}

// Sum a + b, both carrying their own scale; result carries the larger one.
ScaledComplex add(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.mantissa == Complex(0.0, 0.0)) return b;
    if (b.mantissa == Complex(0.0, 0.0)) return a;
    const double s = std::max(a.log_scale, b.log_scale);
    const Complex m = a.mantissa * std::exp(a.log_scale - s) + b.mantissa * std::exp(b.log_scale - s);
    return {m, s};
}

ScaledComplex scale_by(const ScaledComplex& a, Complex f) { return {a.mantissa * f, a.log_scale}; }

Complex branch_wavevector(double omega, Complex eps) {
    Complex k = omega * std::sqrt(eps);
    if (k.imag() < 0.0 || (k.imag() == 0.0 && k.real() < 0.0)) k = -k;
    return k;
}

}  // namespace

Complex ScaledComplex::value() const {
    if (mantissa == Complex(0.0, 0.0)) return mantissa;
    return mantissa * std::exp(log_scale);
}

double LayeredStack::total_thickness() const {
    double t = 0.0;
    for (const auto& s : slabs) t += s.thickness;
    return t;
}

void LayeredStack::validate() const {
    auto fail = [](const std::string& m) { throw Error(ErrorKind::Validation, m); };
    if (!(mode_area > 0.0)) fail("layered stack mode area must be positive");
    if (outer_permittivity.imag() < 0.0) fail("outer permittivity must be passive (Im eps >= 0)");
    if (outer_permittivity.imag() != 0.0 || !(outer_permittivity.real() > 0.0))
        fail("outer medium must be lossless with Re eps > 0 (it carries the probe)");
    for (std::size_t i = 0; i < slabs.size(); ++i) {
        const auto& s = slabs[i];
        const std::string where = "slab " + std::to_string(i) + ": ";
        if (!(s.thickness > 0.0) || !std::isfinite(s.thickness)) fail(where + "thickness must be positive");
        if (s.permittivity.imag() < 0.0) fail(where + "permittivity must be passive (Im eps >= 0)");
        if (std::abs(s.permittivity) == 0.0) fail(where + "permittivity must be nonzero");
    }
}

HelmholtzSolver::HelmholtzSolver(LayeredStack stack, double omega) : stack_(std::move(stack)), omega_(omega) {
    stack_.validate();
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw Error(ErrorKind::Validation, "Helmholtz frequency must be positive");

    // Region geometry: left lead, slabs, right lead.
    std::vector<Layer> geom;
    geom.push_back({0.0, 0.0, branch_wavevector(omega, stack_.outer_permittivity), {}, {}});
    double x = 0.0;
    for (const auto& s : stack_.slabs) {
        geom.push_back({x, s.thickness, branch_wavevector(omega, s.permittivity), {}, {}});
        x += s.thickness;
    }
    geom.push_back({x, std::numeric_limits<double>::infinity(),
                    branch_wavevector(omega, stack_.outer_permittivity), {}, {}});
    const std::size_t n = geom.size();

    // u_L: pure e^{-ik x} in the left lead, propagated to the right.
    left_ = geom;
    left_[0].forward = {};
    left_[0].backward = {Complex(1.0, 0.0), 0.0};
    for (std::size_t m = 0; m + 1 < n; ++m) {
        const Layer& cur = left_[m];
        const ScaledComplex f = times_phase(cur.forward, cur.k, cur.thickness);
        const ScaledComplex b = times_phase(cur.backward, -cur.k, cur.thickness);
        const ScaledComplex u = add(f, b);
        const ScaledComplex du = scale_by(add(f, scale_by(b, -1.0)), I * cur.k);
        Layer& next = left_[m + 1];
        const Complex inv = 1.0 / (I * next.k);
        next.forward = add(u, scale_by(du, inv));
        next.backward = add(u, scale_by(du, -inv));
        next.forward = normalized(next.forward.mantissa * 0.5, next.forward.log_scale);
        next.backward = normalized(next.backward.mantissa * 0.5, next.backward.log_scale);
    }

    // u_R: pure e^{+ik (x - L)} in the right lead, propagated to the left.
    right_ = geom;
    right_[n - 1].forward = {Complex(1.0, 0.0), 0.0};
    right_[n - 1].backward = {};
    for (std::size_t m = n - 1; m > 0; --m) {
        const Layer& cur = right_[m];
        const ScaledComplex u = add(cur.forward, cur.backward);
        const ScaledComplex du = scale_by(add(cur.forward, scale_by(cur.backward, -1.0)), I * cur.k);
        Layer& prev = right_[m - 1];
        const Complex inv = 1.0 / (I * prev.k);
        ScaledComplex fp = add(u, scale_by(du, inv));
        ScaledComplex bp = add(u, scale_by(du, -inv));
        fp = times_phase(scale_by(fp, 0.5), -prev.k, prev.thickness);
        bp = times_phase(scale_by(bp, 0.5), prev.k, prev.thickness);
        prev.forward = normalized(fp.mantissa, fp.log_scale);
        prev.backward = normalized(bp.mantissa, bp.log_scale);
    }
}

std::size_t HelmholtzSolver::layer_index(double x) const {
    if (x < 0.0) return 0;
    const std::size_t n = left_.size();
    for (std::size_t m = 1; m + 1 < n; ++m) {
        if (x <= left_[m].start + left_[m].thickness) return m;
    }
    return n - 1;
}

FieldSample HelmholtzSolver::evaluate(const std::vector<Layer>& layers, double x) const {
    const Layer& L = layers[layer_index(x)];
    const double t = x - L.start;
    const ScaledComplex f = times_phase(L.forward, L.k, t);
    const ScaledComplex b = times_phase(L.backward, -L.k, t);
    const ScaledComplex v = add(f, b);
    const ScaledComplex d = scale_by(add(f, scale_by(b, -1.0)), I * L.k);
    // Put both on a common scale.
    const double s = std::max(v.mantissa == Complex(0.0, 0.0) ? -1e300 : v.log_scale,
                              d.mantissa == Complex(0.0, 0.0) ? -1e300 : d.log_scale);
    const double common = s == -1e300 ? 0.0 : s;
    return {v.mantissa * std::exp(v.log_scale - common), d.mantissa * std::exp(d.log_scale - common), common};
}

FieldSample HelmholtzSolver::left_solution(double x) const { return evaluate(left_, x); }
FieldSample HelmholtzSolver::right_solution(double x) const { return evaluate(right_, x); }

ScaledComplex HelmholtzSolver::wronskian(double x) const {
    const FieldSample l = left_solution(x);
    const FieldSample r = right_solution(x);
    return normalized(r.value * l.derivative - r.derivative * l.value, l.log_scale + r.log_scale);
}

Complex HelmholtzSolver::green(double x, double x_prime) const {
    const double lo = std::min(x, x_prime);
    const double hi = std::max(x, x_prime);
    const FieldSample l = left_solution(lo);
    const FieldSample r = right_solution(hi);

    const FieldSample rw = right_solution(lo);
    const Complex a = rw.value * l.derivative;
    const Complex b = rw.derivative * l.value;
    const Complex w = a - b;
    if (std::abs(w) <= 1e-13 * (std::abs(a) + std::abs(b)) || w == Complex(0.0, 0.0))
        throw Error(ErrorKind::Degenerate, "vanishing Wronskian in layered Green's function");
    const double w_scale = l.log_scale + rw.log_scale;

    const Complex m = l.value * r.value / w;
    if (m == Complex(0.0, 0.0)) return m;
    const double s = l.log_scale + r.log_scale - w_scale + std::log(std::abs(m));
    if (s > max_log_scale)
        throw Error(ErrorKind::Overflow, "layered Green's function exceeds representable range");
    return m / std::abs(m) * std::exp(s);
}

Complex HelmholtzSolver::reflection_left() const {
    const Layer& lead = right_.front();
    if (lead.forward.mantissa == Complex(0.0, 0.0))
        throw Error(ErrorKind::Degenerate, "stack has no incoming component on the left");
    return lead.backward.mantissa / lead.forward.mantissa *
           std::exp(lead.backward.log_scale - lead.forward.log_scale);
}

Complex HelmholtzSolver::transmission() const {
    const Layer& lead = right_.front();
    if (lead.forward.mantissa == Complex(0.0, 0.0))
        throw Error(ErrorKind::Degenerate, "stack has no incoming component on the left");
    return 1.0 / lead.forward.mantissa * std::exp(-lead.forward.log_scale);
}

Complex HelmholtzSolver::wavevector_at(double x) const { return left_[layer_index(x)].k; }

Complex helmholtz_green(double x, double x_prime, double omega, const LayeredStack& stack) {
    return HelmholtzSolver(stack, omega).green(x, x_prime);
}

double wronskian_spread(const HelmholtzSolver& solver, std::span<const double> positions) {
    if (positions.empty()) return 0.0;
    const ScaledComplex w0 = solver.wronskian(positions.front());
    double worst = 0.0;
    for (double x : positions) {
        const ScaledComplex w = solver.wronskian(x);
        const Complex ratio = w.mantissa / w0.mantissa * std::exp(w.log_scale - w0.log_scale);
        worst = std::max(worst, std::abs(ratio - 1.0));
    }
    return worst;
}

}  // namespace wgqed
