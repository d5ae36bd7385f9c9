#include <stdio.h>
#include <string.h>
#include "kneser.h"

int main(void) {
    uint32_t sets[] = {1, 2, 3, 5, 1, 2, 6, 9};
    KneserFamily *f = NULL;
    if (kneser_family_new(9, 4, sets, 2, &f) != KNESER_STATUS_OK) return 1;
    KneserVerifyResult res;
    KneserFamily *viol = NULL;
    if (kneser_verify(f, KNESER_INVARIANT_TWO_PACKING, 0, &res, &viol) != KNESER_STATUS_OK) return 2;
    if (!res.valid || kneser_family_len(viol) != 0) return 3;
    kneser_family_free(viol);
    kneser_family_free(f);

    KneserFamily *w = NULL;
    if (kneser_construct("rho4", 0, 9, 0, 3, 0, NULL, &w) != KNESER_STATUS_OK) return 4;
    uint32_t buf[9];
    if (kneser_family_member(w, 0, buf, 9) != KNESER_STATUS_OK) return 5;
    if (kneser_family_member(w, 0, buf, 2) != KNESER_STATUS_BUFFER_TOO_SMALL) return 6;
    char msg[128];
    size_t len = kneser_last_error(msg, sizeof msg);
    if (len == 0 || strlen(msg) != len) return 7;
    kneser_family_free(w);

    KneserSolveOutcome out;
    if (kneser_solve(KNESER_INVARIANT_TWO_PACKING, 7, 3, 0, 10.0, 1, &out, NULL) != KNESER_STATUS_OK) return 8;
    if (out.status != KNESER_SOLVE_STATUS_OPTIMAL || out.value != 7) return 9;
    printf("ok %s\n", kneser_version());
    return 0;
}
