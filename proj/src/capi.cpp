#include "wgqed/wgqed.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>

#include "parallel.hpp"
#include "wgqed/dynamics.hpp"
#include "wgqed/scenario.hpp"
#include "wgqed/spectra.hpp"

struct wgqed_scenario {
    wgqed::scenario::ScenarioConfig config;
};
struct wgqed_matrix {
    wgqed::CouplingMatrix g;
};
struct wgqed_modes {
    wgqed::ModeDecomposition modes;
};

namespace {

thread_local std::string last_error;

wgqed_status status_of(wgqed::ErrorKind kind) {
    using wgqed::ErrorKind;
    switch (kind) {
    case ErrorKind::Validation: return WGQED_ERR_VALIDATION;
    case ErrorKind::ModelValidity: return WGQED_ERR_MODEL_VALIDITY;
    case ErrorKind::Pole: return WGQED_ERR_POLE;
    case ErrorKind::Degenerate: return WGQED_ERR_DEGENERATE;
    case ErrorKind::QuasiDefective: return WGQED_ERR_QUASI_DEFECTIVE;
    case ErrorKind::Overflow: return WGQED_ERR_OVERFLOW;
    case ErrorKind::Config: return WGQED_ERR_CONFIG;
    case ErrorKind::Io: return WGQED_ERR_IO;
    }
    return WGQED_ERR_INTERNAL;
}

wgqed_status fail(wgqed_status s, std::string message) {
    last_error = std::move(message);
    return s;
}

struct NullArgument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
wgqed_status guard(F&& body) {
    try {
        last_error.clear();
        body();
        return WGQED_OK;
    } catch (const NullArgument& e) {
        return fail(WGQED_ERR_INVALID_ARGUMENT, e.what());
    } catch (const wgqed::Error& e) {
        return fail(status_of(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(WGQED_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(WGQED_ERR_INTERNAL, e.what());
    }
}

template <class T>
void need(const T* p, const char* what) {
    if (!p) throw NullArgument(std::string(what) + " is null");
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<std::string> collect(const char* const* overrides, std::size_t count) {
    std::vector<std::string> out;
    if (count) need(overrides, "overrides");
    for (std::size_t k = 0; k < count; ++k) {
        need(overrides[k], "override");
        out.emplace_back(overrides[k]);
    }
    return out;
}

std::vector<double> copy_positions(const double* positions, std::size_t n) {
    if (n == 0) throw wgqed::Error(wgqed::ErrorKind::Validation, "at least one emitter is required");
    need(positions, "positions");
    return {positions, positions + n};
}

wgqed_status build(const wgqed::ReservoirModel& model, const double* positions, std::size_t n, wgqed_matrix** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        wgqed::validate(model);
        const auto chain = wgqed::EmitterChain::from_positions(copy_positions(positions, n), 0.0);
        *out = new wgqed_matrix{wgqed::build_coupling_matrix(chain, model)};
    });
}

}  // namespace

extern "C" {

const char* wgqed_version(void) { return WGQED_VERSION; }

const char* wgqed_status_name(wgqed_status status) {
    switch (status) {
    case WGQED_OK: return "ok";
    case WGQED_ERR_VALIDATION: return "validation";
    case WGQED_ERR_MODEL_VALIDITY: return "model-validity";
    case WGQED_ERR_POLE: return "pole";
    case WGQED_ERR_DEGENERATE: return "degenerate";
    case WGQED_ERR_QUASI_DEFECTIVE: return "quasi-defective";
    case WGQED_ERR_OVERFLOW: return "overflow";
    case WGQED_ERR_CONFIG: return "config";
    case WGQED_ERR_IO: return "io";
    case WGQED_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case WGQED_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* wgqed_last_error(void) { return last_error.c_str(); }

void wgqed_string_free(char* s) { std::free(s); }

void wgqed_set_threads(unsigned threads) { wgqed::set_thread_limit(threads); }

wgqed_status wgqed_scenario_load(const char* json, const char* const* overrides, size_t override_count,
                                 wgqed_scenario** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        need(json, "json");
        *out = new wgqed_scenario{wgqed::scenario::load_config(json, collect(overrides, override_count))};
    });
}

wgqed_status wgqed_scenario_load_file(const char* path, const char* const* overrides, size_t override_count,
                                      wgqed_scenario** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        need(path, "path");
        *out = new wgqed_scenario{wgqed::scenario::load_config_file(path, collect(overrides, override_count))};
    });
}

wgqed_status wgqed_scenario_preset(const char* name, const char* const* overrides, size_t override_count,
                                   wgqed_scenario** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        need(name, "name");
        *out = new wgqed_scenario{wgqed::scenario::load_preset(name, collect(overrides, override_count))};
    });
}

void wgqed_scenario_free(wgqed_scenario* scenario) { delete scenario; }

wgqed_status wgqed_scenario_canonical(const wgqed_scenario* scenario, char** json_out) {
    return guard([&] {
        need(scenario, "scenario");
        need(json_out, "json_out");
        *json_out = duplicate(wgqed::scenario::serialize(scenario->config));
    });
}

wgqed_status wgqed_scenario_hash(const wgqed_scenario* scenario, char** hex_out) {
    return guard([&] {
        need(scenario, "scenario");
        need(hex_out, "hex_out");
        *hex_out = duplicate(wgqed::scenario::config_hash(scenario->config));
    });
}

wgqed_status wgqed_scenario_run(const wgqed_scenario* scenario, const char* out_dir, unsigned analyses,
                                int fill_defaults, char** summary_out) {
    return guard([&] {
        need(scenario, "scenario");
        need(out_dir, "out_dir");
        if (summary_out) *summary_out = nullptr;
        wgqed::scenario::RunOptions options;
        options.out_dir = out_dir;
        options.analyses = analyses & WGQED_ANALYSIS_ALL;
        options.fill_defaults = fill_defaults != 0;
        const auto result = wgqed::scenario::run_scenario(scenario->config, options);
        if (summary_out) *summary_out = duplicate(result.summary.dump());
    });
}

wgqed_status wgqed_preset_list(char** json_out) {
    return guard([&] {
        need(json_out, "json_out");
        nlohmann::json list = nlohmann::json::array();
        for (const auto& name : wgqed::scenario::preset_names())
            list.push_back({{"name", name}, {"description", wgqed::scenario::preset_description(name)}});
        *json_out = duplicate(list.dump());
    });
}

wgqed_status wgqed_matrix_waveguide(const double* positions, size_t n, double gamma_1d, wgqed_matrix** out) {
    wgqed::WaveguideModel m;
    m.gamma_1d = gamma_1d;
    return build(m, positions, n, out);
}

wgqed_status wgqed_matrix_cavity(const double* positions, size_t n, double linewidth, double transit_rate,
                                 int mode_index, double peak_coupling, double cavity_detuning, int exact,
                                 wgqed_matrix** out) {
    wgqed::CavityReservoir c;
    const wgqed_status s = guard([&] {
        c.model = wgqed::CavityModel::from_linewidth(linewidth, transit_rate, mode_index, peak_coupling);
    });
    if (s != WGQED_OK) return s;
    c.cavity_detuning = cavity_detuning;
    c.variant = exact ? wgqed::CavityVariant::Exact : wgqed::CavityVariant::HighQ;
    return build(c, positions, n, out);
}

wgqed_status wgqed_matrix_bandgap(const double* positions, size_t n, double j_max, double kappa_x,
                                  double lattice_constant, double residual_gamma, wgqed_matrix** out) {
    return build(wgqed::BandgapModel{j_max, kappa_x, lattice_constant, residual_gamma}, positions, n, out);
}

wgqed_status wgqed_matrix_from_values(const double* values, size_t n, wgqed_matrix** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        need(values, "values");
        if (n == 0) throw wgqed::Error(wgqed::ErrorKind::Validation, "matrix must be at least 1x1");
        const auto dim = static_cast<Eigen::Index>(n);
        wgqed::CMatrix m(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j) {
                const std::size_t at = 2 * (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j));
                m(i, j) = {values[at], values[at + 1]};
            }
        *out = new wgqed_matrix{wgqed::coupling_from_matrix(std::move(m))};
    });
}

wgqed_status wgqed_matrix_from_scenario(const wgqed_scenario* scenario, wgqed_matrix** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        need(scenario, "scenario");
        const auto chain = wgqed::scenario::build_chain(scenario->config);
        const auto model = wgqed::scenario::build_model(scenario->config, chain);
        *out = new wgqed_matrix{wgqed::build_coupling_matrix(chain, model)};
    });
}

void wgqed_matrix_free(wgqed_matrix* matrix) { delete matrix; }

size_t wgqed_matrix_size(const wgqed_matrix* matrix) { return matrix ? matrix->g.size() : 0; }

wgqed_status wgqed_matrix_entry(const wgqed_matrix* matrix, size_t i, size_t j, double* re, double* im) {
    if (!matrix || !re || !im) return fail(WGQED_ERR_INVALID_ARGUMENT, "null argument");
    if (i >= matrix->g.size() || j >= matrix->g.size()) return fail(WGQED_ERR_INVALID_ARGUMENT, "index out of range");
    const auto v = matrix->g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    *re = v.real();
    *im = v.imag();
    return WGQED_OK;
}

wgqed_status wgqed_decompose(const wgqed_matrix* matrix, wgqed_modes** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        need(matrix, "matrix");
        *out = new wgqed_modes{wgqed::decompose(matrix->g)};
    });
}

void wgqed_modes_free(wgqed_modes* modes) { delete modes; }

size_t wgqed_modes_size(const wgqed_modes* modes) { return modes ? modes->modes.size() : 0; }

wgqed_status wgqed_modes_eigenvalue(const wgqed_modes* modes, size_t xi, double* re, double* im) {
    if (!modes || !re || !im) return fail(WGQED_ERR_INVALID_ARGUMENT, "null argument");
    if (xi >= modes->modes.size()) return fail(WGQED_ERR_INVALID_ARGUMENT, "mode index out of range");
    const auto v = modes->modes.eigenvalues[static_cast<Eigen::Index>(xi)];
    *re = v.real();
    *im = v.imag();
    return WGQED_OK;
}

wgqed_status wgqed_modes_eigenvector(const wgqed_modes* modes, size_t xi, size_t i, double* re, double* im) {
    if (!modes || !re || !im) return fail(WGQED_ERR_INVALID_ARGUMENT, "null argument");
    if (xi >= modes->modes.size() || i >= modes->modes.size())
        return fail(WGQED_ERR_INVALID_ARGUMENT, "index out of range");
    const auto v = modes->modes.eigenvectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(xi));
    *re = v.real();
    *im = v.imag();
    return WGQED_OK;
}

wgqed_status wgqed_transmission_product(const wgqed_modes* modes, double gamma_prime, const double* grid, size_t n,
                                        double* t_out) {
    return guard([&] {
        need(modes, "modes");
        need(grid, "grid");
        need(t_out, "t_out");
        const auto table = wgqed::transmission_product({grid, n}, modes->modes, gamma_prime);
        for (std::size_t k = 0; k < n; ++k) {
            t_out[2 * k] = table.t_ratio[k].real();
            t_out[2 * k + 1] = table.t_ratio[k].imag();
        }
    });
}

wgqed_status wgqed_transmission_direct(const wgqed_matrix* matrix, double gamma_prime, const double* grid, size_t n,
                                       double* t_out, double* r_out) {
    return guard([&] {
        need(matrix, "matrix");
        need(grid, "grid");
        need(t_out, "t_out");
        need(matrix->g.model.get(), "matrix model");
        const auto geometry = wgqed::TransmissionGeometry::for_model(*matrix->g.model, matrix->g.positions);
        const auto table = wgqed::transmission({grid, n}, matrix->g, gamma_prime, geometry);
        for (std::size_t k = 0; k < n; ++k) {
            t_out[2 * k] = table.t_ratio[k].real();
            t_out[2 * k + 1] = table.t_ratio[k].imag();
            if (r_out) {
                r_out[2 * k] = table.r[k].real();
                r_out[2 * k + 1] = table.r[k].imag();
            }
        }
    });
}

wgqed_status wgqed_evolve(const wgqed_matrix* matrix, double gamma_prime, double detuning, const double* initial,
                          const double* times, size_t times_count, double* populations_out) {
    return guard([&] {
        need(matrix, "matrix");
        need(initial, "initial");
        need(populations_out, "populations_out");
        if (times_count) need(times, "times");
        const auto n = static_cast<Eigen::Index>(matrix->g.size());
        wgqed::CVector c0(n);
        for (Eigen::Index k = 0; k < n; ++k) c0[k] = {initial[2 * k], initial[2 * k + 1]};
        const auto trace = wgqed::evolve(matrix->g, gamma_prime, detuning, c0, {times, times_count});
        for (std::size_t s = 0; s < times_count; ++s)
            for (std::size_t k = 0; k < matrix->g.size(); ++k)
                populations_out[s * matrix->g.size() + k] = trace.populations[s][k];
    });
}

wgqed_status wgqed_helmholtz_green(const double* thickness, const double* permittivity, size_t slabs,
                                   double outer_re, double outer_im, double omega, double x, double x_prime,
                                   double* re, double* im) {
    return guard([&] {
        need(re, "re");
        need(im, "im");
        if (slabs) {
            need(thickness, "thickness");
            need(permittivity, "permittivity");
        }
        wgqed::LayeredStack stack;
        for (std::size_t k = 0; k < slabs; ++k)
            stack.slabs.push_back({thickness[k], {permittivity[2 * k], permittivity[2 * k + 1]}});
        stack.outer_permittivity = {outer_re, outer_im};
        const auto g = wgqed::helmholtz_green(x, x_prime, omega, stack);
        *re = g.real();
        *im = g.imag();
    });
}

}  // extern "C"
