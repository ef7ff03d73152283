#include "trimoduli.h"

int census_obtuse_ratio(uint32_t n, double *ratio) {
    TmWeightedSet *set = NULL;
    TmStatus st = tm_enumerate_weighted(n, &set);
    if (st != TM_STATUS_OK) {
        return (int)st;
    }
    st = tm_weighted_set_obtuse_ratio(set, ratio);
    tm_weighted_set_free(set);
    return (int)st;
}

int unit_square_key(TmKey *key) {
    TmTriangle t = {{0, 0}, {1, 0}, {0, 1}};
    return (int)tm_similarity_key(&t, key);
}
