#include "gddkit/matrix.hpp"

#include <cmath>
#include <sstream>

namespace gddkit {

namespace {

void require_finite(cplx v, std::size_t i, std::size_t j) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream os;
        os << "non-finite entry at (" << i + 1 << "," << j + 1 << ")";
        throw Error(ErrorCode::invalid_argument, os.str());
    }
}

void require_order(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::invalid_argument, "matrix order must be at least 1");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n) { require_order(n); }

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<cplx> row_major)
    : n_(n), a_(std::move(row_major)) {
    require_order(n);
    if (a_.size() != n * n)
        throw Error(ErrorCode::dimension_mismatch, "entry count does not match n*n");
    for (std::size_t k = 0; k < a_.size(); ++k) require_finite(a_[k], k / n, k % n);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : n_(rows.size()) {
    require_order(n_);
    a_.reserve(n_ * n_);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n_) throw Error(ErrorCode::dimension_mismatch, "matrix is not square");
        std::size_t j = 0;
        for (const auto& v : row) {
            require_finite(v, i, j++);
            a_.push_back(v);
        }
        ++i;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
}

void ComplexMatrix::set(std::size_t i, std::size_t j, cplx v) {
    if (i >= n_ || j >= n_) throw Error(ErrorCode::invalid_argument, "index out of range");
    require_finite(v, i, j);
    a_[i * n_ + j] = v;
}

bool ComplexMatrix::is_real() const noexcept {
    for (const auto& v : a_)
        if (v.imag() != 0.0) return false;
    return true;
}

double ComplexMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::frobenius_norm() const noexcept {
    double scale = 0.0, ssq = 1.0;
    for (const auto& v : a_) {
        for (double t : {std::abs(v.real()), std::abs(v.imag())}) {
            if (t == 0.0) continue;
            if (scale < t) {
                ssq = 1.0 + ssq * (scale / t) * (scale / t);
                scale = t;
            } else {
                ssq += (t / scale) * (t / scale);
            }
        }
    }
    return scale * std::sqrt(ssq);
}

PositiveScaling::PositiveScaling(std::vector<double> x) : x_(std::move(x)) {
    if (x_.empty()) throw Error(ErrorCode::invalid_argument, "scaling must be nonempty");
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!(x_[i] > 0.0) || !std::isfinite(x_[i])) {
            std::ostringstream os;
            os << "scaling component " << i + 1 << " is not positive and finite";
            throw Error(ErrorCode::invalid_argument, os.str());
        }
    }
}

PositiveScaling PositiveScaling::ones(std::size_t n) { return PositiveScaling(std::vector<double>(n, 1.0)); }

PositiveScaling PositiveScaling::inverse() const {
    std::vector<double> y(x_.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 1.0 / x_[i];
    return PositiveScaling(std::move(y));
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    const std::size_t n = a.order();
    std::vector<cplx> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a(i, j);
    return ComplexMatrix(n, std::move(t));
}

ComplexMatrix scale(const ComplexMatrix& a, const PositiveScaling& x) {
    const std::size_t n = a.order();
    if (x.size() != n) throw Error(ErrorCode::dimension_mismatch, "scaling length differs from matrix order");
    std::vector<cplx> s(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s[i * n + j] = a(i, j) * (x[j] / x[i]);
    return ComplexMatrix(n, std::move(s));
}

std::vector<double> diag_abs(const ComplexMatrix& a) {
    std::vector<double> d(a.order());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(a(i, i));
    return d;
}

namespace detail {

std::vector<double> off_diagonal_sums(const ComplexMatrix& a, Axis axis,
                                      const PositiveScaling* s,
                                      const std::vector<std::size_t>* block) {
    const std::size_t n = a.order();
    if (s && s->size() != n)
        throw Error(ErrorCode::dimension_mismatch, "scaling length differs from matrix order");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (block && (*block)[j] != (*block)[i]) continue;
            const double m = std::abs(axis == Axis::row ? a(i, j) : a(j, i));
            if (!s)
                sum += m;
            else if (axis == Axis::row)
                sum += m * (*s)[j];
            else
                sum += m / (*s)[j];
        }
        if (s) sum = axis == Axis::row ? sum / (*s)[i] : sum * (*s)[i];
        out[i] = sum;
    }
    return out;
}

}  // namespace detail

SumVector deleted_sums(const ComplexMatrix& a, Axis axis) {
    return SumVector{detail::off_diagonal_sums(a, axis, nullptr, nullptr), axis, std::nullopt, false};
}

SumVector weighted_deleted_sums(const ComplexMatrix& a, const PositiveScaling& s, Axis axis) {
    return SumVector{detail::off_diagonal_sums(a, axis, &s, nullptr), axis, s, false};
}

ComplexMatrix comparison_matrix(const ComplexMatrix& a) {
    const std::size_t n = a.order();
    std::vector<cplx> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double v = std::abs(a(i, j));
            m[i * n + j] = i == j ? v : -v;
        }
    return ComplexMatrix(n, std::move(m));
}

}  // namespace gddkit
