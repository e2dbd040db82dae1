#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gddkit/matrix.hpp"
#include "gddkit/regions.hpp"

namespace gddkit {

struct Spectrum {
    std::vector<cplx> eigenvalues;  // sorted by real part, then imaginary part
    double residual = 0.0;          // max backward error estimate
    bool converged = true;
    std::size_t iterations = 0;
    std::size_t deflated = 0;  // eigenvalues isolated before a failure
    std::string message;
};

struct EigenOptions {
    std::size_t max_order = 64;
    std::size_t iterations_per_eigenvalue = 60;
};

/// Householder reduction to Hessenberg form followed by single-shift complex
/// QR with deflation. On failure `converged` is false and `eigenvalues` holds
/// the deflated values followed by the diagonal of the unreduced window.
Spectrum eigenvalues(const ComplexMatrix& a, const EigenOptions& opt = {});

/// Plain text, one "re im" pair per line; '#' starts a comment.
Spectrum parse_spectrum(std::string_view text);
Spectrum load_spectrum(const std::string& path);

/// Relative backward error of (lambda, v) after two inverse iteration steps.
double backward_error(const ComplexMatrix& a, cplx lambda);

struct InclusionRecord {
    cplx lambda{};
    bool contained = false;
    std::optional<std::size_t> region;  // witnessing region when contained
    std::size_t i = 0, j = 0;           // its index or pair
    double margin = 0.0;                // max over regions of rho - lhs(lambda)
};

struct InclusionReport {
    std::vector<InclusionRecord> records;
    std::size_t violations = 0;

    bool ok() const { return violations == 0; }
};

InclusionReport verify_inclusion(const std::vector<cplx>& spectrum, const RegionSet& s, double tol = 1e-12);
InclusionReport verify_inclusion(const ComplexMatrix& a, const RegionSet& s, double tol = 1e-12);

}  // namespace gddkit
