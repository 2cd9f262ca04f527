/* Exercises the C interface from plain C, linking only libwgqed. */
#define _POSIX_C_SOURCE 200809L

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "wgqed/wgqed.h"

static int failures = 0;

#define EXPECT(cond)                                                        \
    do {                                                                    \
        if (!(cond)) {                                                      \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                     \
        }                                                                   \
    } while (0)

#define OK(call) EXPECT((call) == WGQED_OK)

static void test_strings(void) {
    char* list = NULL;
    EXPECT(strlen(wgqed_version()) > 0);
    EXPECT(strcmp(wgqed_status_name(WGQED_ERR_POLE), wgqed_status_name(WGQED_OK)) != 0);
    OK(wgqed_preset_list(&list));
    EXPECT(list && strstr(list, "\"fig3\"") && strstr(list, "\"fig5\""));
    wgqed_string_free(list);
}

static void test_scenarios(void) {
    const char* overrides[] = {"chain.geometry.count=6"};
    wgqed_scenario* s = NULL;
    wgqed_scenario* t = NULL;
    char* hash_a = NULL;
    char* hash_b = NULL;
    char* canon = NULL;
    char* summary = NULL;
    char dir[] = "/tmp/wgqed_capi_XXXXXX";

    OK(wgqed_scenario_preset("fig3", NULL, 0, &s));
    OK(wgqed_scenario_preset("fig3", overrides, 1, &t));
    OK(wgqed_scenario_hash(s, &hash_a));
    OK(wgqed_scenario_hash(t, &hash_b));
    EXPECT(hash_a && strlen(hash_a) == 64);
    EXPECT(hash_a && hash_b && strcmp(hash_a, hash_b) != 0);
    OK(wgqed_scenario_canonical(t, &canon));
    EXPECT(canon && strstr(canon, "\"count\": 6"));
    wgqed_string_free(hash_a);
    wgqed_string_free(hash_b);
    wgqed_string_free(canon);
    wgqed_scenario_free(t);
    wgqed_scenario_free(s);

    EXPECT(wgqed_scenario_load("{\"model\": {\"type\": \"nope\"}, \"chain\": {}}", NULL, 0, &s) == WGQED_ERR_CONFIG);
    EXPECT(s == NULL);
    EXPECT(strstr(wgqed_last_error(), "model.type") != NULL);
    EXPECT(wgqed_scenario_preset("nope", NULL, 0, &s) == WGQED_ERR_CONFIG);
    EXPECT(wgqed_scenario_load_file("/nonexistent/x.json", NULL, 0, &s) == WGQED_ERR_IO);
    EXPECT(wgqed_scenario_hash(NULL, &hash_a) == WGQED_ERR_INVALID_ARGUMENT);

    EXPECT(mkdtemp(dir) != NULL);
    OK(wgqed_scenario_preset("fig1b", NULL, 0, &s));
    OK(wgqed_scenario_run(s, dir, WGQED_ANALYSIS_ALL, 0, &summary));
    EXPECT(summary && strstr(summary, "fano_ratio_5.csv"));
    wgqed_string_free(summary);
    wgqed_scenario_free(s);
}

static void test_matrices(void) {
    const double mirror[] = {0.0, 0.5, 1.0, 1.5, 2.0};
    wgqed_matrix* g = NULL;
    wgqed_modes* m = NULL;
    double re, im;
    double grid[3] = {-1.0, 0.0, 0.8};
    double tp[6], td[6], r[6];
    size_t k;

    OK(wgqed_matrix_waveguide(mirror, 5, 1.0, &g));
    EXPECT(wgqed_matrix_size(g) == 5);
    OK(wgqed_matrix_entry(g, 0, 0, &re, &im));
    EXPECT(re == 0.0 && fabs(im - 0.5) < 1e-15);
    EXPECT(wgqed_matrix_entry(g, 5, 0, &re, &im) == WGQED_ERR_INVALID_ARGUMENT);

    OK(wgqed_decompose(g, &m));
    EXPECT(wgqed_modes_size(m) == 5);
    OK(wgqed_modes_eigenvalue(m, 0, &re, &im));
    EXPECT(fabs(re) < 1e-10 && fabs(im - 2.5) < 1e-10);
    OK(wgqed_modes_eigenvector(m, 0, 2, &re, &im));
    EXPECT(fabs(re * re - im * im - 0.2) < 1e-10); /* v_i^2 = 1/5 for the bright mode */

    OK(wgqed_transmission_product(m, 1.0, grid, 3, tp));
    OK(wgqed_transmission_direct(g, 1.0, grid, 3, td, r));
    for (k = 0; k < 6; ++k) EXPECT(fabs(tp[k] - td[k]) < 1e-10);
    /* on resonance t = 1 / (1 + N) with Gamma_1D = Gamma' */
    EXPECT(fabs(td[2] - 1.0 / 6.0) < 1e-12 && fabs(td[3]) < 1e-12);
    OK(wgqed_transmission_direct(g, 1.0, grid, 3, td, NULL));

    {
        const double initial[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
        const double times[2] = {0.0, 1.0};
        double pops[10];
        double total = 0.0;
        OK(wgqed_evolve(g, 1.0, 0.0, initial, times, 2, pops));
        EXPECT(fabs(pops[0] - 1.0) < 1e-14);
        for (k = 5; k < 10; ++k) total += pops[k];
        EXPECT(total < 1.0 && total > 0.0);
    }
    wgqed_modes_free(m);
    wgqed_matrix_free(g);

    {
        const double bad[8] = {0, 1, 1, 0, 2, 0, 0, 1}; /* g01 != g10 */
        EXPECT(wgqed_matrix_from_values(bad, 2, &g) == WGQED_ERR_VALIDATION);
        EXPECT(wgqed_matrix_waveguide(mirror, 0, 1.0, &g) != WGQED_OK);
    }
    {
        const double ep[8] = {1, 0, 0, 1, 0, 1, -1, 0}; /* [[1, i], [i, -1]] */
        OK(wgqed_matrix_from_values(ep, 2, &g));
        EXPECT(wgqed_decompose(g, &m) == WGQED_ERR_QUASI_DEFECTIVE);
        wgqed_matrix_free(g);
    }
    {
        const double pos[2] = {0.0, 2.0};
        OK(wgqed_matrix_bandgap(pos, 2, -3.0, 1.0 / 80.0, 1.0, 0.0, &g));
        OK(wgqed_matrix_entry(g, 0, 1, &re, &im));
        EXPECT(fabs(re + 3.0 * exp(-1.0 / 40.0)) < 1e-14 && im == 0.0);
        wgqed_matrix_free(g);
    }
    {
        const double pos[2] = {0.0, 0.5};
        OK(wgqed_matrix_cavity(pos, 2, 1.0, 1e6, 1, 0.5, 0.0, 0, &g));
        OK(wgqed_matrix_entry(g, 0, 1, &re, &im));
        EXPECT(fabs(re) < 1e-15 && fabs(im + 0.5) < 1e-10); /* cos(pi) * 2 g0^2 / kappa */
        wgqed_matrix_free(g);
    }
}

static void test_helmholtz(void) {
    const double thick[2] = {0.4, 0.3};
    const double eps[4] = {1.0, 0.0, 1.0, 0.0};
    double re, im;
    const double k = 2.0;
    OK(wgqed_helmholtz_green(thick, eps, 2, 1.0, 0.0, k, 0.1, 0.6, &re, &im));
    /* i e^{ik|x - x'|} / (2k) */
    EXPECT(fabs(re + sin(k * 0.5) / (2 * k)) < 1e-12 && fabs(im - cos(k * 0.5) / (2 * k)) < 1e-12);
    EXPECT(wgqed_helmholtz_green(thick, eps, 2, 1.0, 0.0, -1.0, 0.1, 0.6, &re, &im) == WGQED_ERR_VALIDATION);
}

int main(void) {
    test_strings();
    test_scenarios();
    test_matrices();
    test_helmholtz();
    wgqed_set_threads(2);
    if (failures) {
        fprintf(stderr, "%d failures\n", failures);
        return 1;
    }
    printf("capi: all checks passed\n");
    return 0;
}
