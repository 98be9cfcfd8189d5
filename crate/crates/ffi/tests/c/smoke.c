#include <stdio.h>
#include <string.h>
#include "tangentad.h"

static const char *ONE = "{\"base\": 1, \"section\": {\"source_dim\": 1, \"target_dim\": 2, "
                         "\"components\": [[[1, 1, [1]]], [[1, 1, [0]]]]}}";
static const char *X = "{\"base\": 1, \"section\": {\"source_dim\": 1, \"target_dim\": 2, "
                       "\"components\": [[[1, 1, [1]]], [[1, 1, [1]]]]}}";

int main(void) {
    TadVectorField *u = NULL, *v = NULL, *b = NULL;
    if (tad_field_parse(ONE, &u) != TAD_STATUS_OK || tad_field_parse(X, &v) != TAD_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", tad_last_error());
        return 1;
    }
    if (tad_field_bracket(u, v, &b) != TAD_STATUS_OK) {
        fprintf(stderr, "bracket: %s\n", tad_last_error());
        return 1;
    }
    char *p = tad_field_principal(b);
    int ok = strcmp(p, "[\"1\"]") == 0;
    printf("bracket %s\n", p);
    tad_string_free(p);
    tad_field_free(b);
    tad_field_free(v);
    tad_field_free(u);

    TadReport *r = NULL;
    if (tad_run_suite("weil", 0, 0, NULL, &r) != TAD_STATUS_OK) {
        fprintf(stderr, "weil: %s\n", tad_last_error());
        return 1;
    }
    printf("weil %zu diagrams, %zu failures\n", tad_report_len(r), tad_report_failures(r));
    ok = ok && tad_report_len(r) > 0 && tad_report_failures(r) == 0;
    tad_report_free(r);
    return ok ? 0 : 1;
}
