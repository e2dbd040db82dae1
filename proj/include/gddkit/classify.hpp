#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gddkit/matrix.hpp"

namespace gddkit {

enum class Verdict { no, yes, inconclusive };

const char* to_string(Verdict v) noexcept;

/// |a_ii| > r_i(A) + tau for every i.
bool is_sdd(const ComplexMatrix& a, double tau = 0.0);

/// Real matrix with nonpositive off-diagonal entries.
bool is_z_matrix(const ComplexMatrix& a);

struct RadiusEstimate {
    double value = 0.0;  // midpoint of [lower, upper]
    double lower = 0.0;
    double upper = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Default iteration budget 10 n log(n+1) + 1000.
std::size_t default_power_budget(std::size_t n);

/// Spectral radius of an entrywise nonnegative real matrix, blockwise over
/// its normal form. Each irreducible block runs power iteration on B + I
/// with Collatz-Wielandt brackets; convergence is best when rho is O(1).
/// Non-convergence is reported through `converged`, never truncated.
RadiusEstimate spectral_radius_nonneg(const ComplexMatrix& b, double tol = 1e-12,
                                      std::size_t max_iter = 0);

struct MatrixTest {
    Verdict verdict = Verdict::no;
    std::string witness;
    std::optional<RadiusEstimate> radius;
};

/// A = sI - B with s = max a_ii; M-matrix iff rho(B) < s under the
/// strictness policy (rho/s <= 1 - 1e-10 accepts, otherwise rejects unless
/// the bracket is unresolved).
MatrixTest is_m_matrix(const ComplexMatrix& a);

struct ClassifyOptions {
    double tol = 1e-12;
    std::size_t max_iter = 0;  // 0 selects default_power_budget(n)
    double margin = 1e-10;     // rho <= 1 - margin certifies
};

struct ClassificationReport {
    std::size_t n = 0;
    bool is_sdd = false;
    bool is_z = false;
    std::optional<bool> is_m;
    Verdict m_verdict = Verdict::no;
    Verdict h_verdict = Verdict::no;
    bool is_h_gdd = false;
    std::optional<PositiveScaling> certificate;
    std::string witness;
    std::optional<double> jacobi_radius;
    double jacobi_lower = 0.0;
    double jacobi_upper = 0.0;
    std::size_t block_count = 0;
    std::size_t iterations = 0;
};

/// H-matrix / GDD decision through the block Jacobi matrix of the comparison
/// matrix, with a self-verified diagonal scaling certificate on success.
ClassificationReport classify_h(const ComplexMatrix& a, const ClassifyOptions& opt = {});

}  // namespace gddkit
