#include <math.h>
#include <stdio.h>
#include <string.h>

#include "groupbell.h"

int main(void) {
    GbScenario *sc = NULL;
    if (gb_scenario_from_registry("d3", &sc) != GB_STATUS_OK) {
        fprintf(stderr, "%s\n", gb_last_error_message());
        return 1;
    }
    uint64_t sc_value = 0;
    double sq = 0.0;
    if (gb_classical_bound(sc, &sc_value) != GB_STATUS_OK) return 2;
    if (gb_quantum_value(sc, GB_METHOD_ALL, &sq) != GB_STATUS_OK) return 3;
    GbShape shape;
    if (gb_scenario_shape(sc, &shape) != GB_STATUS_OK) return 4;
    double re[4], im[4];
    size_t n = 0;
    if (gb_optimal_state(sc, GB_METHOD_DENSE, re, im, 4, &n) != GB_STATUS_OK || n != 4) return 5;
    char *json = NULL;
    if (gb_result_json(sc, GB_METHOD_ALL, GB_GAME_FULL, &json) != GB_STATUS_OK) return 6;
    int has_cert = strstr(json, "\"certificate\"") != NULL;
    gb_string_free(json);
    gb_scenario_free(sc);
    if (gb_scenario_from_registry("nope", &sc) != GB_STATUS_UNKNOWN_SCENARIO) return 7;
    printf("%llu %.12f %zu %d\n", (unsigned long long)sc_value, sq, shape.joint_dim, has_cert);
    return (sc_value == 5 && fabs(sq - 5.25) < 1e-9 && has_cert) ? 0 : 8;
}
