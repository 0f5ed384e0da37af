/* Smoke test of the generated header from plain C. */
#include <prwalk.h>

#include <math.h>
#include <string.h>

int main(void) {
    PrwParams *params = NULL;
    if (prw_params_new(0.7, 0.4, &params) != PRW_STATUS_OK) return 1;

    double mean_x = 0.0;
    if (prw_mean_x(params, 10, &mean_x) != PRW_STATUS_OK) return 2;
    if (fabs(mean_x - 10.0 * 0.3 / 0.9) > 1e-12) return 3;

    double p = 0.0;
    if (prw_joint_prob(params, 4, 2, 3, &p) != PRW_STATUS_OK) return 4;
    if (p <= 0.0) return 5;

    PrwPmf *pmf = NULL;
    if (prw_pmf_new(params, 12, &pmf) != PRW_STATUS_OK) return 6;
    double mass = 0.0;
    if (prw_pmf_total_mass(pmf, &mass) != PRW_STATUS_OK) return 7;
    if (fabs(mass - 1.0) > 1e-12) return 8;
    if (prw_pmf_n(pmf) != 12) return 9;
    prw_pmf_free(pmf);
    prw_params_free(params);

    PrwParams *bad = NULL;
    if (prw_params_new(2.0, 0.5, &bad) != PRW_STATUS_INVALID_PARAMETER) return 10;

    double er = 0.0, el = 0.0;
    if (prw_estimate(0.5, 0.375, &er, &el) != PRW_STATUS_OK) return 11;
    if (fabs(er - 0.75) > 1e-14 || fabs(el - 0.25) > 1e-14) return 12;

    if (strcmp(prw_status_message(PRW_STATUS_OK), "ok") != 0) return 13;
    return 0;
}
