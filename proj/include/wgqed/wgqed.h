/* wgqed.h - C interface to the wgqed engine
 *
 * All functions return a wgqed_status; on failure wgqed_last_error() holds a
 * message for the calling thread. Handles are opaque and owned by the caller.
 * Strings returned through char** must be released with wgqed_string_free.
 * Complex arrays are interleaved (re, im).
 */
#ifndef WGQED_H
#define WGQED_H

#include <stddef.h>

#if defined(WGQED_BUILDING_LIBRARY)
#define WGQED_API __attribute__((visibility("default")))
#else
#define WGQED_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wgqed_status {
    WGQED_OK = 0,
    WGQED_ERR_VALIDATION = 1,
    WGQED_ERR_MODEL_VALIDITY = 2,
    WGQED_ERR_POLE = 3,
    WGQED_ERR_DEGENERATE = 4,
    WGQED_ERR_QUASI_DEFECTIVE = 5,
    WGQED_ERR_OVERFLOW = 6,
    WGQED_ERR_CONFIG = 7,
    WGQED_ERR_IO = 8,
    WGQED_ERR_INVALID_ARGUMENT = 9, /* null handle, index out of range */
    WGQED_ERR_INTERNAL = 10
} wgqed_status;

/* analysis subset for wgqed_scenario_run */
enum {
    WGQED_ANALYSIS_SPECTRUM = 1u << 0,
    WGQED_ANALYSIS_FANO = 1u << 1,
    WGQED_ANALYSIS_BEER_LAMBERT = 1u << 2,
    WGQED_ANALYSIS_NONMARKOV = 1u << 3,
    WGQED_ANALYSIS_MODES = 1u << 4,
    WGQED_ANALYSIS_DYNAMICS = 1u << 5,
    WGQED_ANALYSIS_EIT = 1u << 6,
    WGQED_ANALYSIS_GREENS = 1u << 7,
    WGQED_ANALYSIS_ALL = 0xffu
};

typedef struct wgqed_scenario wgqed_scenario;
typedef struct wgqed_matrix wgqed_matrix;
typedef struct wgqed_modes wgqed_modes;

WGQED_API const char* wgqed_version(void);
WGQED_API const char* wgqed_status_name(wgqed_status status);
WGQED_API const char* wgqed_last_error(void);
WGQED_API void wgqed_string_free(char* s);

/* 0 = hardware concurrency */
WGQED_API void wgqed_set_threads(unsigned threads);

/* --- scenarios ----------------------------------------------------------- */

/* overrides: "dotted.path=value" strings, may be NULL when count is 0 */
WGQED_API wgqed_status wgqed_scenario_load(const char* json, const char* const* overrides, size_t override_count,
                                           wgqed_scenario** out);
WGQED_API wgqed_status wgqed_scenario_load_file(const char* path, const char* const* overrides,
                                                size_t override_count, wgqed_scenario** out);
WGQED_API wgqed_status wgqed_scenario_preset(const char* name, const char* const* overrides, size_t override_count,
                                             wgqed_scenario** out);
WGQED_API void wgqed_scenario_free(wgqed_scenario* scenario);

WGQED_API wgqed_status wgqed_scenario_canonical(const wgqed_scenario* scenario, char** json_out);
WGQED_API wgqed_status wgqed_scenario_hash(const wgqed_scenario* scenario, char** hex_out);

/* Writes CSV files and metadata.json into out_dir. summary_out (optional)
 * receives a one-line JSON summary. */
WGQED_API wgqed_status wgqed_scenario_run(const wgqed_scenario* scenario, const char* out_dir, unsigned analyses,
                                          int fill_defaults, char** summary_out);

/* JSON array of {"name", "description"} */
WGQED_API wgqed_status wgqed_preset_list(char** json_out);

/* --- coupling matrices --------------------------------------------------- */

/* positions in probe wavelengths (k_p = 2 pi) */
WGQED_API wgqed_status wgqed_matrix_waveguide(const double* positions, size_t n, double gamma_1d, wgqed_matrix** out);
/* positions as fractions of the cavity length; exact != 0 selects the finite-mirror form */
WGQED_API wgqed_status wgqed_matrix_cavity(const double* positions, size_t n, double linewidth, double transit_rate,
                                           int mode_index, double peak_coupling, double cavity_detuning, int exact,
                                           wgqed_matrix** out);
WGQED_API wgqed_status wgqed_matrix_bandgap(const double* positions, size_t n, double j_max, double kappa_x,
                                            double lattice_constant, double residual_gamma, wgqed_matrix** out);
/* n*n interleaved values, row major; must be symmetric */
WGQED_API wgqed_status wgqed_matrix_from_values(const double* values, size_t n, wgqed_matrix** out);
WGQED_API wgqed_status wgqed_matrix_from_scenario(const wgqed_scenario* scenario, wgqed_matrix** out);
WGQED_API void wgqed_matrix_free(wgqed_matrix* matrix);
WGQED_API size_t wgqed_matrix_size(const wgqed_matrix* matrix);
WGQED_API wgqed_status wgqed_matrix_entry(const wgqed_matrix* matrix, size_t i, size_t j, double* re, double* im);

/* --- modes --------------------------------------------------------------- */

WGQED_API wgqed_status wgqed_decompose(const wgqed_matrix* matrix, wgqed_modes** out);
WGQED_API void wgqed_modes_free(wgqed_modes* modes);
WGQED_API size_t wgqed_modes_size(const wgqed_modes* modes);
WGQED_API wgqed_status wgqed_modes_eigenvalue(const wgqed_modes* modes, size_t xi, double* re, double* im);
/* component i of eigenvector xi (v^T v = 1) */
WGQED_API wgqed_status wgqed_modes_eigenvector(const wgqed_modes* modes, size_t xi, size_t i, double* re, double* im);

/* --- spectra and dynamics ------------------------------------------------ */

/* t/t0 on a grid from the eigenvalues; t_out has 2*n entries */
WGQED_API wgqed_status wgqed_transmission_product(const wgqed_modes* modes, double gamma_prime, const double* grid,
                                                  size_t n, double* t_out);
/* direct solve with the default probe geometry; r_out may be NULL */
WGQED_API wgqed_status wgqed_transmission_direct(const wgqed_matrix* matrix, double gamma_prime, const double* grid,
                                                 size_t n, double* t_out, double* r_out);
/* populations_out: times_count * size entries, time major, sorted atom order */
WGQED_API wgqed_status wgqed_evolve(const wgqed_matrix* matrix, double gamma_prime, double detuning,
                                    const double* initial, const double* times, size_t times_count,
                                    double* populations_out);

/* A*G of a layered stack; permittivities interleaved */
WGQED_API wgqed_status wgqed_helmholtz_green(const double* thickness, const double* permittivity, size_t slabs,
                                             double outer_re, double outer_im, double omega, double x,
                                             double x_prime, double* re, double* im);

#ifdef __cplusplus
}
#endif

#endif
