#pragma once

// Table-driven reference formulas, written out term by term so they share no
// code with the library.

#include <cmath>
#include <vector>

namespace testing {

inline double pw(double b, double e) {
    if (e == 0.0) return 1.0;
    if (b == 0.0) return 0.0;
    return std::pow(b, e);
}

/// Entry (i,j) of F_{kind}(x,y).
inline double oracle_F(int kind, double a, double b, double xi, double xj, double yi, double yj) {
    switch (kind) {
    case 1: return pw(xi, a) * pw(yj, 1 - a);
    case 2: return pw(xi * xj, a) * pw(yi * yj, 1 - a);
    case 3: return pw(xi * yj, a) * pw(xj * yi, 1 - a);
    case 4: return a * xi * xj + (1 - a) * yi * yj;
    case 5: return a * xi * yj + (1 - a) * xj * yi;
    case 6: return (a * xi + (1 - a) * yi) * (a * xj + (1 - a) * yj);
    case 7: return (a * xi + (1 - a) * yi) * (a * yj + (1 - a) * xj);
    case 8: return pw(pw(xi, b) * pw(yi, 1 - b), a) * pw(pw(xj, b) * pw(yj, 1 - b), 1 - a);
    case 9: return pw(pw(xi, b) * pw(yi, 1 - b), a) * pw(pw(yj, b) * pw(xj, 1 - b), 1 - a);
    case 10: return b * pw(xi, a) * pw(xj, 1 - a) + (1 - b) * pw(yi, a) * pw(yj, 1 - a);
    case 11: return b * pw(xi, a) * pw(yj, 1 - a) + (1 - b) * pw(yi, a) * pw(xj, 1 - a);
    case 12: return pw(b * xi + (1 - b) * yi, a) * pw(b * xj + (1 - b) * yj, 1 - a);
    case 13: return pw(b * xi + (1 - b) * yi, a) * pw(b * yj + (1 - b) * xj, 1 - a);
    }
    return NAN;
}

/// Shape of the 27 generic forms: 0 point, 1 product, 2 power mean.
inline int oracle_form_shape(int k) { return k <= 3 ? 0 : (k <= 13 ? 1 : 2); }

/// rho^{(k)} of the generic table; point forms ignore (gj, hj).
inline double oracle_form_rho(int k, double gi, double gj, double hi, double hj, double a, double b) {
    switch (k) {
    case 1: return gi;
    case 2: return pw(gi, a) * pw(hi, 1 - a);
    case 3: return a * gi + (1 - a) * hi;
    case 4: return gi * gj;
    case 5: return gi * hj;
    case 6: return pw(gi * gj, a) * pw(hi * hj, 1 - a);
    case 7: return pw(gi * hj, a) * pw(gj * hi, 1 - a);
    case 8: return a * gi * gj + (1 - a) * hi * hj;
    case 9: return a * gi * hj + (1 - a) * gj * hi;
    case 10: return (a * gi + (1 - a) * hi) * (a * gj + (1 - a) * hj);
    case 11: return (a * gi + (1 - a) * hi) * (a * hj + (1 - a) * gj);
    case 12: return (a * gi + (1 - a) * hj) * (a * gj + (1 - a) * hi);
    case 13: return (a * gi + (1 - a) * gj) * (a * hj + (1 - a) * hi);
    case 14: return pw(gi, a) * pw(gj, 1 - a);
    case 15: return pw(gi, a) * pw(hj, 1 - a);
    case 16: return a * gi + (1 - a) * gj;
    case 17: return a * gi + (1 - a) * hj;
    case 18: return pw(pw(gi, b) * pw(hi, 1 - b), a) * pw(pw(gj, b) * pw(hj, 1 - b), 1 - a);
    case 19: return pw(pw(gi, b) * pw(hi, 1 - b), a) * pw(pw(hj, b) * pw(gj, 1 - b), 1 - a);
    case 20: return b * pw(gi, a) * pw(gj, 1 - a) + (1 - b) * pw(hi, a) * pw(hj, 1 - a);
    case 21: return b * pw(gi, a) * pw(hj, 1 - a) + (1 - b) * pw(hi, a) * pw(gj, 1 - a);
    case 22: return a * pw(gi, b) * pw(hi, 1 - b) + (1 - a) * pw(gj, b) * pw(hj, 1 - b);
    case 23: return a * pw(gi, b) * pw(hi, 1 - b) + (1 - a) * pw(hj, b) * pw(gj, 1 - b);
    case 24: return pw(b * gi + (1 - b) * hi, a) * pw(b * gj + (1 - b) * hj, 1 - a);
    case 25: return pw(b * gi + (1 - b) * hi, a) * pw(b * hj + (1 - b) * gj, 1 - a);
    case 26: return pw(a * gi + (1 - a) * gj, b) * pw(a * hi + (1 - a) * hj, 1 - b);
    case 27: return pw(a * gi + (1 - a) * hj, b) * pw(a * hi + (1 - a) * gj, 1 - b);
    }
    return NAN;
}

/// Shape of the 31 kinds of the row/column catalogs.
inline int oracle_kind_shape(int k) { return k <= 4 ? 0 : (k <= 15 ? 1 : 2); }

/// rho^{(k)} of the kind table, with (r, c) the row and column vectors.
inline double oracle_kind_rho(int k, double ri, double rj, double ci, double cj, double a, double b) {
    switch (k) {
    case 1: return ri;
    case 2: return ci;
    case 3: return pw(ri, a) * pw(ci, 1 - a);
    case 4: return a * ri + (1 - a) * ci;
    case 5: return ri * rj;
    case 6: return ci * cj;
    case 7: return ri * cj;
    case 8: return pw(ri * rj, a) * pw(ci * cj, 1 - a);
    case 9: return pw(ri * cj, a) * pw(rj * ci, 1 - a);
    case 10: return a * ri * rj + (1 - a) * ci * cj;
    case 11: return a * ri * cj + (1 - a) * rj * ci;
    case 12: return (a * ri + (1 - a) * ci) * (a * rj + (1 - a) * cj);
    case 13: return (a * ri + (1 - a) * ci) * (a * cj + (1 - a) * rj);
    case 14: return (a * ri + (1 - a) * cj) * (a * rj + (1 - a) * ci);
    case 15: return (a * ri + (1 - a) * rj) * (a * cj + (1 - a) * ci);
    case 16: return pw(ri, a) * pw(rj, 1 - a);
    case 17: return pw(ci, a) * pw(cj, 1 - a);
    case 18: return pw(ri, a) * pw(cj, 1 - a);
    case 19: return a * ri + (1 - a) * rj;
    case 20: return a * ci + (1 - a) * cj;
    case 21: return a * ri + (1 - a) * cj;
    case 22: return pw(pw(ri, b) * pw(ci, 1 - b), a) * pw(pw(rj, b) * pw(cj, 1 - b), 1 - a);
    case 23: return pw(pw(ri, b) * pw(ci, 1 - b), a) * pw(pw(cj, b) * pw(rj, 1 - b), 1 - a);
    case 24: return b * pw(ri, a) * pw(rj, 1 - a) + (1 - b) * pw(ci, a) * pw(cj, 1 - a);
    case 25: return b * pw(ri, a) * pw(cj, 1 - a) + (1 - b) * pw(ci, a) * pw(rj, 1 - a);
    case 26: return a * pw(ri, b) * pw(ci, 1 - b) + (1 - a) * pw(rj, b) * pw(cj, 1 - b);
    case 27: return a * pw(ri, b) * pw(ci, 1 - b) + (1 - a) * pw(cj, b) * pw(rj, 1 - b);
    case 28: return pw(b * ri + (1 - b) * ci, a) * pw(b * rj + (1 - b) * cj, 1 - a);
    case 29: return pw(b * ri + (1 - b) * ci, a) * pw(b * cj + (1 - b) * rj, 1 - a);
    case 30: return pw(a * ri + (1 - a) * rj, b) * pw(a * ci + (1 - a) * cj, 1 - b);
    case 31: return pw(a * ri + (1 - a) * cj, b) * pw(a * ci + (1 - a) * rj, 1 - b);
    }
    return NAN;
}

inline double oracle_lhs(int shape, double di, double dj, double a) {
    if (shape == 0) return di;
    if (shape == 1) return di * dj;
    return pw(di, a) * pw(dj, 1 - a);
}

}  // namespace testing
