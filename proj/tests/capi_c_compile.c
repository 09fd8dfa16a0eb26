/* Compiled as C99 to pin the header's C compatibility. */
#include <string.h>

#include "afg/afg.h"

int afg_header_compiles_from_c(void) {
    const double a[] = {1.0, 2.0, 3.0};
    const double b[] = {4.0, 5.0, 7.0};
    double t = 0.0, df = 0.0, p = 0.0;
    afg_status status = afg_welch_t(a, 3, b, 3, &t, &df, &p);
    if (status != AFG_OK)
        return 0;

    afg_config* config = afg_config_new();
    afg_env* env = NULL;
    if (afg_env_new(config, 1u, &env) != AFG_OK) {
        afg_config_free(config);
        return 0;
    }
    int ok = afg_env_time(env) == 0 && strlen(afg_version()) > 0;
    afg_env_free(env);
    afg_config_free(config);
    return ok;
}
