#include "wgqed/tabulated.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_interp.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wgqed/error.hpp"

namespace wgqed {

struct TabulatedCoupling::Rule {
    std::vector<double> amplitudes;
    double peak_coupling;
    double linewidth;
    double cavity_detuning;
    double min_detuning;
    double max_detuning;
};

// One natural cubic spline per real/imag part of each upper-triangular entry.
struct TabulatedCoupling::Table {
    struct InterpDeleter {
        void operator()(gsl_interp* p) const { gsl_interp_free(p); }
    };
    std::size_t n = 0;
    std::vector<double> grid;
    std::vector<std::vector<double>> values;  // [entry*2 + part][grid index]
    std::vector<std::unique_ptr<gsl_interp, InterpDeleter>> splines;

    std::size_t entry(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return i * n - i * (i + 1) / 2 + j;
    }

    double eval(std::size_t series, double x) const {
        // gsl_interp_eval with a null accelerator is re-entrant.
        return gsl_interp_eval(splines[series].get(), grid.data(), values[series].data(), x, nullptr);
    }
};

namespace {

void check_range(double x, double lo, double hi) {
    if (!(x >= lo && x <= hi)) {
        std::ostringstream os;
        os << "detuning " << x << " outside tabulated range [" << lo << ", " << hi << "]";
        throw Error(ErrorKind::Validation, os.str());
    }
}

}  // namespace

Complex cavity_rule_coupling(double probe_detuning, double amplitude_i, double amplitude_j,
                             double peak_coupling, double linewidth, double cavity_detuning) {
    const Complex denom(probe_detuning + cavity_detuning, linewidth / 2.0);
    return -peak_coupling * peak_coupling * amplitude_i * amplitude_j / denom;
}

TabulatedCoupling TabulatedCoupling::cavity_rule(std::vector<double> mode_amplitudes, double peak_coupling,
                                                 double linewidth, double cavity_detuning, double min_detuning,
                                                 double max_detuning) {
    if (mode_amplitudes.empty()) throw Error(ErrorKind::Validation, "cavity rule needs at least one emitter");
    if (!(linewidth > 0.0)) throw Error(ErrorKind::Validation, "cavity rule linewidth must be positive");
    if (!(min_detuning < max_detuning)) throw Error(ErrorKind::Validation, "cavity rule range is empty");
    TabulatedCoupling t;
    t.rule_ = std::make_shared<const Rule>(
        Rule{std::move(mode_amplitudes), peak_coupling, linewidth, cavity_detuning, min_detuning, max_detuning});
    return t;
}

TabulatedCoupling TabulatedCoupling::from_samples(std::vector<double> grid, std::vector<CMatrix> samples) {
    if (grid.size() < 4) throw Error(ErrorKind::Validation, "tabulated coupling needs at least 4 samples");
    if (grid.size() != samples.size())
        throw Error(ErrorKind::Validation, "tabulated grid and sample counts differ");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1]))
            throw Error(ErrorKind::Validation, "tabulated grid must be strictly increasing");
    }
    const auto n = static_cast<std::size_t>(samples.front().rows());
    if (n == 0) throw Error(ErrorKind::Validation, "tabulated samples are empty");
    for (const auto& s : samples) {
        if (static_cast<std::size_t>(s.rows()) != n || static_cast<std::size_t>(s.cols()) != n)
            throw Error(ErrorKind::Validation, "tabulated samples must all be N x N");
    }

    auto table = std::make_shared<Table>();
    table->n = n;
    table->grid = std::move(grid);
    const std::size_t entries = n * (n + 1) / 2;
    table->values.assign(2 * entries, std::vector<double>(table->grid.size()));
    for (std::size_t k = 0; k < samples.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                // Symmetrize: the stored matrix must be exactly symmetric.
                const Complex v = 0.5 * (samples[k](i, j) + samples[k](j, i));
                const std::size_t e = table->entry(i, j);
                table->values[2 * e][k] = v.real();
                table->values[2 * e + 1][k] = v.imag();
            }
        }
    }
    gsl_set_error_handler_off();
    for (const auto& series : table->values) {
        std::unique_ptr<gsl_interp, Table::InterpDeleter> sp(
            gsl_interp_alloc(gsl_interp_cspline, table->grid.size()));
        if (!sp || gsl_interp_init(sp.get(), table->grid.data(), series.data(), table->grid.size()) != GSL_SUCCESS)
            throw Error(ErrorKind::Validation, "cubic spline initialization failed");
        table->splines.push_back(std::move(sp));
    }
    TabulatedCoupling t;
    t.table_ = std::move(table);
    return t;
}

TabulatedCoupling TabulatedCoupling::sampled(std::span<const double> grid) const {
    std::vector<CMatrix> samples;
    samples.reserve(grid.size());
    for (double x : grid) samples.push_back(matrix(x));
    return from_samples(std::vector<double>(grid.begin(), grid.end()), std::move(samples));
}

std::size_t TabulatedCoupling::size() const {
    if (rule_) return rule_->amplitudes.size();
    if (table_) return table_->n;
    return 0;
}

double TabulatedCoupling::min_detuning() const { return rule_ ? rule_->min_detuning : table_->grid.front(); }
double TabulatedCoupling::max_detuning() const { return rule_ ? rule_->max_detuning : table_->grid.back(); }
bool TabulatedCoupling::is_rule() const { return static_cast<bool>(rule_); }

Complex TabulatedCoupling::operator()(double probe_detuning, std::size_t i, std::size_t j) const {
    if (i >= size() || j >= size()) throw Error(ErrorKind::Validation, "tabulated atom index out of range");
    check_range(probe_detuning, min_detuning(), max_detuning());
    if (rule_) {
        return cavity_rule_coupling(probe_detuning, rule_->amplitudes[i], rule_->amplitudes[j],
                                    rule_->peak_coupling, rule_->linewidth, rule_->cavity_detuning);
    }
    const std::size_t e = table_->entry(i, j);
    return {table_->eval(2 * e, probe_detuning), table_->eval(2 * e + 1, probe_detuning)};
}

CMatrix TabulatedCoupling::matrix(double probe_detuning) const {
    const std::size_t n = size();
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            g(i, j) = (*this)(probe_detuning, i, j);
            g(j, i) = g(i, j);
        }
    }
    return g;
}

double TabulatedCoupling::peak_coupling() const { return rule_ ? rule_->peak_coupling : 0.0; }
double TabulatedCoupling::linewidth() const { return rule_ ? rule_->linewidth : 0.0; }
double TabulatedCoupling::cavity_detuning() const { return rule_ ? rule_->cavity_detuning : 0.0; }

const std::vector<double>& TabulatedCoupling::mode_amplitudes() const {
    static const std::vector<double> empty;
    return rule_ ? rule_->amplitudes : empty;
}

}  // namespace wgqed
