#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gddkit {

using cplx = std::complex<double>;

enum class ErrorCode {
    invalid_argument = 1,
    dimension_mismatch,
    parse_error,
    not_converged,
    unknown_criterion,
    io_error,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

enum class Axis { row, column };

/// Dense n x n complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t n);
    ComplexMatrix(std::size_t n, std::vector<cplx> row_major);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<cplx>& d);

    std::size_t order() const noexcept { return n_; }
    cplx operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, cplx v);
    const std::vector<cplx>& data() const noexcept { return a_; }

    bool is_real() const noexcept;
    double max_abs() const noexcept;
    double frobenius_norm() const noexcept;

    bool operator==(const ComplexMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

private:
    std::size_t n_;
    std::vector<cplx> a_;
};

/// Diagonal of a positive diagonal matrix X.
class PositiveScaling {
public:
    explicit PositiveScaling(std::vector<double> x);
    static PositiveScaling ones(std::size_t n);

    std::size_t size() const noexcept { return x_.size(); }
    double operator[](std::size_t i) const { return x_[i]; }
    const std::vector<double>& values() const noexcept { return x_; }
    PositiveScaling inverse() const;

    bool operator==(const PositiveScaling& o) const { return x_ == o.x_; }

private:
    std::vector<double> x_;
};

struct SumVector {
    std::vector<double> values;
    Axis axis = Axis::row;
    std::optional<PositiveScaling> weight;
    bool tilde = false;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

ComplexMatrix transpose(const ComplexMatrix& a);

/// X^{-1} A X formed explicitly.
ComplexMatrix scale(const ComplexMatrix& a, const PositiveScaling& x);

/// |a_ii| for every i.
std::vector<double> diag_abs(const ComplexMatrix& a);

SumVector deleted_sums(const ComplexMatrix& a, Axis axis);

/// r^X(A) = r(X^{-1}AX) for rows, c^Y(A) = c(Y^{-1}AY) for columns.
SumVector weighted_deleted_sums(const ComplexMatrix& a, const PositiveScaling& s, Axis axis);

/// Real comparison matrix: |a_ii| on the diagonal, -|a_ij| elsewhere.
ComplexMatrix comparison_matrix(const ComplexMatrix& a);

namespace detail {
// Shared kernel for plain, weighted and blockwise sums. A null mask keeps
// every off-diagonal entry; otherwise only j with block[j] == block[i].
std::vector<double> off_diagonal_sums(const ComplexMatrix& a, Axis axis,
                                      const PositiveScaling* s,
                                      const std::vector<std::size_t>* block);
}  // namespace detail

}  // namespace gddkit
