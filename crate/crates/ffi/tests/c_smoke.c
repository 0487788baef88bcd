#include <math.h>
#include <stdio.h>
#include <string.h>
#include "theta_lab.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, theta_lab_last_error()); return 1; } } while (0)

int main(void) {
    ThetaLabMp *s = NULL, *s2 = NULL;
    CHECK(theta_lab_mp_parse("0,-1,1,0:+", &s) == THETA_LAB_STATUS_OK);
    CHECK(theta_lab_mp_mul(s, s, &s2) == THETA_LAB_STATUS_OK);
    char *text = NULL;
    CHECK(theta_lab_mp_to_string(s2, &text) == THETA_LAB_STATUS_OK);
    CHECK(strcmp(text, "(-1,0,0,-1:+)") == 0);
    theta_lab_string_free(text);

    ThetaLabMatrix *rho = NULL;
    CHECK(theta_lab_weil_rep(4, s, &rho) == THETA_LAB_STATUS_OK);
    CHECK(theta_lab_matrix_rows(rho) == 4 && theta_lab_matrix_cols(rho) == 4);
    ThetaLabComplex z;
    CHECK(theta_lab_matrix_get(rho, 0, 0, &z) == THETA_LAB_STATUS_OK);
    CHECK(fabs(z.re - 0.5 * cos(-M_PI / 4)) < 1e-14 && fabs(z.im - 0.5 * sin(-M_PI / 4)) < 1e-14);
    CHECK(theta_lab_matrix_get(rho, 4, 0, &z) == THETA_LAB_STATUS_INVALID_ARGUMENT);
    theta_lab_matrix_free(rho);

    ThetaLabRegistry *reg = theta_lab_registry_new();
    ThetaLabTransformReport rep;
    ThetaLabComplex tau = {0.3, 1.1};
    CHECK(theta_lab_verify_transformation(4, s, tau, 1e-9, reg, &rep) == THETA_LAB_STATUS_OK);
    CHECK(rep.pass && rep.residual < 1e-9);
    ThetaLabComplex low = {0.3, 0.01};
    ThetaLabComplex vals[4];
    CHECK(theta_lab_theta_constants(4, low, 1e-12, vals, 4, NULL) == THETA_LAB_STATUS_TAU_TOO_LOW);
    CHECK(strlen(theta_lab_last_error()) > 0);
    theta_lab_registry_free(reg);

    int64_t gamma[4] = {0, 3, 1, 0};
    uint64_t num = 0, den = 0;
    CHECK(theta_lab_discriminant(0, gamma, 4, &num, &den) == THETA_LAB_STATUS_OK);
    CHECK(num == 1 && den == 4);

    theta_lab_mp_free(s);
    theta_lab_mp_free(s2);
    printf("ok\n");
    return 0;
}
