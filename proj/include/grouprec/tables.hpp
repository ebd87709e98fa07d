#pragma once

#include <stdexcept>

namespace grouprec {

/// Proportions of permutations in S_n that are Jordan / giant / primitive
/// (contained only in giant primitive groups / only in giant transitive
/// groups / only in primitive transitive groups).  Precomputed constants for
/// n up to 34; recomputing them needs a primitive-groups database.
struct ElementClassProportions {
    double jordan;
    double giant;
    double primitive;
};

inline constexpr int kMaxProportionDegree = 34;

inline constexpr ElementClassProportions kProportions[kMaxProportionDegree + 1] = {
    /* n=0 */ {1.00, 1.00, 1.00},  // unused padding
    /* 1  */ {1.00, 1.00, 1.00},
    /* 2  */ {1.00, 1.00, 1.00},
    /* 3  */ {1.00, 1.00, 1.00},
    /* 4  */ {1.00, 0.333, 0.333},
    /* 5  */ {0.417, 0.417, 1.00},
    /* 6  */ {0.368, 0.000, 0.200},
    /* 7  */ {0.468, 0.468, 1.00},
    /* 8  */ {0.426, 0.200, 0.343},
    /* 9  */ {0.501, 0.315, 0.543},
    /* 10 */ {0.660, 0.254, 0.316},
    /* 11 */ {0.690, 0.690, 1.00},
    /* 12 */ {0.602, 0.168, 0.259},
    /* 13 */ {0.773, 0.773, 1.00},
    /* 14 */ {0.791, 0.313, 0.390},
    /* 15 */ {0.910, 0.467, 0.477},
    /* 16 */ {0.853, 0.325, 0.393},
    /* 17 */ {0.810, 0.810, 1.00},
    /* 18 */ {0.843, 0.247, 0.306},
    /* 19 */ {0.885, 0.885, 1.00},
    /* 20 */ {0.861, 0.318, 0.370},
    /* 21 */ {0.920, 0.567, 0.585},
    /* 22 */ {0.977, 0.467, 0.478},
    /* 23 */ {0.896, 0.896, 1.00},
    /* 24 */ {0.858, 0.276, 0.319},
    /* 25 */ {0.920, 0.745, 0.791},
    /* 26 */ {0.933, 0.506, 0.507},
    /* 27 */ {0.943, 0.615, 0.657},
    /* 28 */ {0.938, 0.426, 0.426},
    /* 29 */ {0.927, 0.927, 1.00},
    /* 30 */ {0.911, 0.310, 0.345},
    /* 31 */ {0.921, 0.921, 1.00},
    /* 32 */ {0.889, 0.458, 0.490},
    /* 33 */ {0.953, 0.656, 0.672},
    /* 34 */ {1.00, 0.552, 0.552},
};

inline ElementClassProportions element_class_proportions(int n) {
    if (n < 1 || n > kMaxProportionDegree)
        throw std::out_of_range("element class proportions tabulated only up to degree 34");
    return kProportions[n];
}

}  // namespace grouprec
