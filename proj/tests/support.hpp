#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "gddkit/matrix.hpp"
#include "gddkit/random.hpp"

namespace testing {

using gddkit::cplx;
using gddkit::ComplexMatrix;
using gddkit::PositiveScaling;
using gddkit::Rng;

inline ComplexMatrix singular3() { return ComplexMatrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}; }
inline ComplexMatrix cassini2() { return ComplexMatrix{{2, 4}, {0.5, 2}}; }
inline ComplexMatrix sym2() { return ComplexMatrix{{3, 1}, {1, 3}}; }

inline cplx unit_disk(Rng& rng) {
    const double r = std::sqrt(gddkit::uniform01(rng));
    const double t = 2.0 * M_PI * gddkit::uniform01(rng);
    return std::polar(r, t);
}

/// Entries uniform in the unit disk, rows scaled by a random diagonal.
inline ComplexMatrix random_disk_matrix(Rng& rng, std::size_t n, double sparsity = 0.0) {
    ComplexMatrix a(n);
    std::vector<double> d(n);
    for (auto& v : d) v = std::exp(gddkit::uniform(rng, std::log(0.1), std::log(10.0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx z = unit_disk(rng);
            if (i != j && gddkit::uniform01(rng) < sparsity) z = 0.0;
            a.set(i, j, d[i] * z);
        }
    return a;
}

/// Random matrix with a boosted diagonal so that a good share are H-matrices.
inline ComplexMatrix random_fuzz_matrix(Rng& rng, std::size_t n) {
    const double sparsity = gddkit::uniform01(rng) < 0.3 ? 0.5 : 0.0;
    ComplexMatrix a = random_disk_matrix(rng, n, sparsity);
    const double boost = gddkit::uniform(rng, 0.0, 1.5 * static_cast<double>(n));
    std::vector<double> col(n);
    for (auto& v : col) v = std::exp(gddkit::uniform(rng, std::log(0.2), std::log(5.0)));
    for (std::size_t i = 0; i < n; ++i) {
        const cplx di = a(i, i);
        const double m = std::abs(di) == 0.0 ? 1.0 : std::abs(di);
        a.set(i, i, di / m * (m + boost * std::abs(a(i, (i + 1) % n)) + boost * 0.3));
    }
    // Column scaling keeps diagonal dominance patterns non-trivial.
    ComplexMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b.set(i, j, a(i, j) * col[j]);
    return b;
}

/// Strictly diagonally dominant by rows.
inline ComplexMatrix random_sdd(Rng& rng, std::size_t n) {
    ComplexMatrix b = random_disk_matrix(rng, n);
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) r += std::abs(b(i, j));
        const cplx phase = std::polar(1.0, 2.0 * M_PI * gddkit::uniform01(rng));
        b.set(i, i, phase * (r * (1.0 + gddkit::uniform(rng, 0.05, 1.0)) + 1e-3));
    }
    return b;
}

/// X B X^{-1}.
inline ComplexMatrix similarity(const ComplexMatrix& b, const PositiveScaling& x) {
    const std::size_t n = b.order();
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a.set(i, j, x[i] * b(i, j) / x[j]);
    return a;
}

/// Explicit X^{-1} A X, entry by entry.
inline ComplexMatrix explicit_scale(const ComplexMatrix& a, const std::vector<double>& x) {
    const std::size_t n = a.order();
    ComplexMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s.set(i, j, a(i, j) * x[j] / x[i]);
    return s;
}

inline std::vector<double> oracle_row_sums(const ComplexMatrix& a) {
    std::vector<double> r(a.order(), 0.0);
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
            if (i != j) r[i] += std::abs(a(i, j));
    return r;
}

inline std::vector<double> oracle_col_sums(const ComplexMatrix& a) {
    std::vector<double> c(a.order(), 0.0);
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
            if (i != j) c[j] += std::abs(a(i, j));
    return c;
}

/// Nonsingular M-matrix test on the comparison matrix through leading
/// principal minors (Gaussian elimination without pivoting).
inline bool oracle_h_matrix(const ComplexMatrix& a) {
    const std::size_t n = a.order();
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = i == j ? std::abs(a(i, j)) : -std::abs(a(i, j));
    for (std::size_t k = 0; k < n; ++k) {
        if (!(m[k * n + k] > 0.0)) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = m[i * n + k] / m[k * n + k];
            for (std::size_t j = k; j < n; ++j) m[i * n + j] -= l * m[k * n + j];
        }
    }
    return true;
}

/// Minimal pivot ratio during the elimination above; small values mean the
/// comparison matrix is close to singular.
inline double oracle_h_slack(const ComplexMatrix& a) {
    const std::size_t n = a.order();
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = i == j ? std::abs(a(i, j)) : -std::abs(a(i, j));
    double slack = HUGE_VAL;
    for (std::size_t k = 0; k < n; ++k) {
        const double d0 = std::abs(a(k, k));
        slack = std::min(slack, d0 > 0 ? m[k * n + k] / d0 : -1.0);
        if (!(m[k * n + k] > 0.0)) return slack;
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = m[i * n + k] / m[k * n + k];
            for (std::size_t j = k; j < n; ++j) m[i * n + j] -= l * m[k * n + j];
        }
    }
    return slack;
}

/// Optimal matching distance between two multisets of equal size (n <= 9).
inline double matching_distance(std::vector<cplx> a, const std::vector<cplx>& b) {
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = HUGE_VAL;
    do {
        double worst = 0.0;
        for (std::size_t t = 0; t < a.size() && worst < best; ++t) worst = std::max(worst, std::abs(a[t] - b[perm[t]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Relative closeness used by equality checks.
inline bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace testing
