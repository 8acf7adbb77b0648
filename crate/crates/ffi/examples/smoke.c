#include "nullkit.h"
#include <assert.h>
#include <stdio.h>
#include <string.h>

int main(void) {
    NkGrid *grid = nk_grid_from_json("{\"ring\":{\"kind\":\"Z\"},\"axes\":[[0,1],[0,1]]}", 0);
    assert(grid != NULL);
    NkGridClass class;
    assert(nk_grid_class(grid, &class) == NkStatus_Ok);
    assert(class == NkGridClass_Division);
    assert(nk_grid_num_points(grid) == 4);

    NkPoly *poly = nk_poly_from_json(
        "{\"nvars\":2,\"ring\":{\"kind\":\"Z\"},\"terms\":[{\"exp\":[1,1],\"coef\":1}]}");
    assert(poly != NULL);
    char *out = NULL;
    assert(nk_coeff_main(grid, poly, &out) == NkStatus_Ok);
    assert(strcmp(out, "1") == 0);
    nk_string_free(out);

    char *cd = NULL;
    assert(nk_run("check-cd", "{\"p\":5,\"a\":[0,1],\"b\":[0,1]}", &cd) == NkStatus_Ok);
    printf("check-cd: %s\n", cd);
    nk_string_free(cd);

    NkRing *bad = nk_ring_from_json("{\"kind\":\"Q\"}");
    assert(bad == NULL);
    char *msg = nk_last_error_message();
    assert(msg != NULL);
    printf("expected error: %s\n", msg);
    nk_string_free(msg);

    nk_poly_free(poly);
    nk_grid_free(grid);
    puts("C smoke test passed");
    return 0;
}
