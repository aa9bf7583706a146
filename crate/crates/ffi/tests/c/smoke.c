#include <stdio.h>
#include "helitwist.h"

static const char *DOUBLED =
    "{\"tets\": 2, \"gluings\": ["
    "{\"from\": [0, 0], \"to\": [1, 0], \"perm\": [1, 2, 3]},"
    "{\"from\": [0, 1], \"to\": [1, 1], \"perm\": [0, 2, 3]},"
    "{\"from\": [0, 2], \"to\": [1, 2], \"perm\": [0, 1, 3]},"
    "{\"from\": [0, 3], \"to\": [1, 3], \"perm\": [0, 1, 2]}]}";

static const char *SURFACE =
    "{\"pieces\": {"
    "\"0\": {\"helicoids\": [\"helix(axis=[[0,1],[2,3]], twist=3)\"]},"
    "\"1\": {\"helicoids\": [\"helix(axis=[[0,1],[2,3]], twist=3)\"]}}}";

int main(void) {
    HtTriangulation *m = NULL;
    HtSurface *h = NULL;
    if (ht_triangulation_parse(DOUBLED, &m) != HT_STATUS_OK) {
        fprintf(stderr, "%s\n", ht_last_error());
        return 1;
    }
    if (ht_surface_parse(m, SURFACE, &h) != HT_STATUS_OK) {
        fprintf(stderr, "%s\n", ht_last_error());
        return 1;
    }
    size_t delta[1] = {0};
    int64_t range[2];
    if (ht_surface_net_range(m, h, delta, 1, range) != HT_STATUS_OK || range[0] != 3 || range[1] != 3) {
        return 2;
    }
    if (ht_triangulation_parse("{", &m) != HT_STATUS_PARSE_ERROR || ht_last_error()[0] == '\0') {
        return 3;
    }
    ht_surface_free(h);
    ht_triangulation_free(m);
    printf("ok\n");
    return 0;
}
