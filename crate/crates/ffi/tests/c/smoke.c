#include <stdio.h>
#include <string.h>

#include "singknot.h"

int main(void) {
    SkBraid *b = NULL;
    SkParams *p = NULL;
    SkValue *v = NULL;
    if (sk_braid_parse("t1", 0, &b) != SK_STATUS_OK) return 1;
    if (sk_params_new(3, "uniform", &p) != SK_STATUS_OK) return 2;
    if (sk_delta(p, b, &v) != SK_STATUS_OK) return 3;
    char *s = sk_value_to_string(v);
    if (s == NULL) return 4;
    printf("%s\n", s);
    sk_string_free(s);
    if (sk_braid_parse("s1 ^", 0, &b) != SK_STATUS_PARSE) return 5;
    if (strstr(sk_last_error(), "position") == NULL) return 6;
    sk_value_free(v);
    sk_params_free(p);
    sk_braid_free(b);
    return 0;
}
