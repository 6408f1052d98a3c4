/* SPDX-License-Identifier: Apache-2.0 */
#include "nsmlab/nsmlab.h"

#include <stdio.h>
#include <string.h>

#define EXPECT(cond)                                               \
    do {                                                           \
        if (!(cond)) {                                             \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                              \
        }                                                          \
    } while (0)

int main(void)
{
    nsm_config* cfg = NULL;
    nsm_sim* sim = NULL;
    double re = 0.0, im = 0.0, n = 0.0;

    EXPECT(strcmp(nsm_version(), "0.3.0") == 0);
    EXPECT(nsm_config_new(&cfg) == NSM_OK);
    EXPECT(nsm_config_merge(cfg, "{\"grid\": {\"Nx\": 8, \"Ny\": 16}, \"params\": {\"normalized\": true}}") == NSM_OK);
    EXPECT(nsm_config_set_mode(cfg, "linear") == NSM_OK);
    EXPECT(nsm_sim_create(cfg, &sim) == NSM_OK);
    EXPECT(nsm_sim_advance(sim, 3) == NSM_OK);
    EXPECT(nsm_sim_norm(sim, 1, &n) == NSM_OK);
    EXPECT(n >= 0.0);
    nsm_sim_free(sim);
    EXPECT(nsm_dispersion_root(-4096, &re, &im) == NSM_OK);
    EXPECT(re > 0.0);
    EXPECT(nsm_config_set_mode(cfg, "nope") == NSM_ERR_CONFIG);
    printf("capi smoke: %s\n", nsm_last_error());
    nsm_config_free(cfg);
    return 0;
}
