#include <stdio.h>
#include <string.h>

#include "semap.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "failed: %s (%s)\n", #cond,               \
                    semap_last_error_message());                      \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    SemapMap *snub = NULL, *rhombi = NULL, *back = NULL, *q = NULL;
    CHECK(semap_catalog_build("snub-cube", &snub) == SEMAP_STATUS_OK);
    size_t f0, f1, f2;
    CHECK(semap_map_counts(snub, &f0, &f1, &f2) == SEMAP_STATUS_OK);
    CHECK(f0 == 24 && f1 == 60 && f2 == 38);
    char *type = NULL;
    CHECK(semap_map_vertex_type(snub, &type) == SEMAP_STATUS_OK);
    CHECK(strcmp(type, "[3^4,4]") == 0);
    semap_string_free(type);

    CHECK(semap_map_apply(snub, SEMAP_OP_REMOVE_DEEP_BLUE, &rhombi) == SEMAP_STATUS_OK);
    CHECK(semap_map_apply(rhombi, SEMAP_OP_INSERT_MATCHING, &back) == SEMAP_STATUS_OK);
    bool iso = false;
    CHECK(semap_are_isomorphic(snub, back, &iso) == SEMAP_STATUS_OK && iso);

    SemapMap *tc = NULL;
    CHECK(semap_catalog_build("truncated-cube", &tc) == SEMAP_STATUS_OK);
    CHECK(semap_map_apply(tc, SEMAP_OP_QUOTIENT, &q) == SEMAP_STATUS_NON_POLYHEDRAL_QUOTIENT);
    CHECK(strlen(semap_last_error_message()) > 0);
    CHECK(semap_catalog_build("heptagon", &q) == SEMAP_STATUS_UNKNOWN_NAME);

    semap_map_free(tc);
    semap_map_free(back);
    semap_map_free(rhombi);
    semap_map_free(snub);
    puts("ok");
    return 0;
}
