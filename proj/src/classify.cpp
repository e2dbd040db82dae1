#include "gddkit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gddkit/structure.hpp"

namespace gddkit {

namespace {

struct PerronRun {
    double lower = 0.0;        // best Collatz-Wielandt lower bound seen
    double upper = 0.0;        // best upper bound seen
    std::vector<double> x;     // vector attaining `upper`
    std::size_t iterations = 0;
    bool converged = false;
};

// Power iteration on M + I for a dense irreducible nonnegative block.
// Stops early once the lower bound reaches `reject_at`.
PerronRun perron(const std::vector<double>& m, std::size_t k, double tol, std::size_t max_iter,
                 double reject_at) {
    PerronRun run;
    if (k == 1) {
        run.lower = run.upper = m[0];
        run.x = {1.0};
        run.converged = true;
        return run;
    }
    std::vector<double> x(k, 1.0), y(k);
    run.upper = std::numeric_limits<double>::infinity();
    for (std::size_t it = 1; it <= max_iter; ++it) {
        run.iterations = it;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < k; ++j) s += m[i * k + j] * x[j];
            y[i] = s;
            const double q = s / x[i];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        run.lower = std::max(run.lower, lo);
        if (hi < run.upper) {
            run.upper = hi;
            run.x = x;
        }
        if (run.upper - run.lower <= 2.0 * tol * (1.0 + run.lower)) {
            run.converged = true;
            break;
        }
        if (run.lower >= reject_at) break;
        double mx = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            y[i] += x[i];
            mx = std::max(mx, y[i]);
        }
        if (!(mx > 0.0) || !std::isfinite(mx)) break;
        for (std::size_t i = 0; i < k; ++i) {
            x[i] = y[i] / mx;
            if (!(x[i] > 0.0)) x[i] = std::numeric_limits<double>::min();
        }
    }
    return run;
}

std::string index_list(const std::vector<std::size_t>& idx) {
    std::ostringstream os;
    os << "{";
    for (std::size_t t = 0; t < idx.size(); ++t) os << (t ? "," : "") << idx[t] + 1;
    os << "}";
    return os.str();
}

Verdict decide(const PerronRun& run, double threshold) {
    if (run.upper <= threshold) return Verdict::yes;
    if (run.lower >= threshold) return Verdict::no;
    if (run.converged) return Verdict::no;  // inside the tolerance band around 1
    return Verdict::inconclusive;
}

}  // namespace

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        default: return "inconclusive";
    }
}

bool is_sdd(const ComplexMatrix& a, double tau) {
    const auto r = deleted_sums(a, Axis::row);
    for (std::size_t i = 0; i < a.order(); ++i)
        if (!(std::abs(a(i, i)) > r[i] + tau)) return false;
    return true;
}

bool is_z_matrix(const ComplexMatrix& a) {
    if (!a.is_real()) return false;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
            if (i != j && a(i, j).real() > 0.0) return false;
    return true;
}

std::size_t default_power_budget(std::size_t n) {
    return static_cast<std::size_t>(10.0 * static_cast<double>(n) * std::log(static_cast<double>(n) + 1.0)) + 1000;
}

RadiusEstimate spectral_radius_nonneg(const ComplexMatrix& b, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
    const std::size_t n = b.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (b(i, j).imag() != 0.0 || b(i, j).real() < 0.0)
                throw Error(ErrorCode::invalid_argument, "matrix is not entrywise nonnegative real");
    if (max_iter == 0) max_iter = default_power_budget(n);

    const FrobeniusForm f = frobenius_normal_form(b);
    RadiusEstimate est;
    est.converged = true;
    for (std::size_t blk = 0; blk < f.block_count(); ++blk) {
        const auto idx = f.block_indices(blk);
        const std::size_t k = idx.size();
        std::vector<double> m(k * k);
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t q = 0; q < k; ++q) m[p * k + q] = b(idx[p], idx[q]).real();
        const PerronRun run = perron(m, k, tol, max_iter, std::numeric_limits<double>::infinity());
        est.lower = std::max(est.lower, run.lower);
        est.upper = std::max(est.upper, run.upper);
        est.iterations += run.iterations;
        est.converged = est.converged && run.converged;
    }
    est.value = 0.5 * (est.lower + est.upper);
    return est;
}

MatrixTest is_m_matrix(const ComplexMatrix& a) {
    MatrixTest out;
    const std::size_t n = a.order();
    if (!a.is_real()) {
        out.witness = "matrix has complex entries";
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && a(i, j).real() > 0.0) {
                std::ostringstream os;
                os << "not a Z-matrix: positive off-diagonal entry at (" << i + 1 << "," << j + 1 << ")";
                out.witness = os.str();
                return out;
            }
    double s = a(0, 0).real();
    for (std::size_t i = 1; i < n; ++i) s = std::max(s, a(i, i).real());
    if (!(s > 0.0)) {
        out.witness = "largest diagonal entry is not positive";
        return out;
    }
    std::vector<cplx> bs(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) bs[i * n + j] = ((i == j ? s : 0.0) - a(i, j).real()) / s;
    RadiusEstimate est = spectral_radius_nonneg(ComplexMatrix(n, std::move(bs)));
    const double threshold = 1.0 - 1e-10;
    if (est.upper <= threshold) {
        out.verdict = Verdict::yes;
    } else if (est.lower >= threshold || est.converged) {
        out.witness = "rho(B) >= s";
    } else {
        out.verdict = Verdict::inconclusive;
        out.witness = "power iteration did not resolve rho(B) against s";
    }
    est.value *= s;
    est.lower *= s;
    est.upper *= s;
    out.radius = est;
    return out;
}

ClassificationReport classify_h(const ComplexMatrix& a, const ClassifyOptions& opt) {
    const std::size_t n = a.order();
    ClassificationReport rep;
    rep.n = n;
    rep.is_sdd = is_sdd(a);
    rep.is_z = is_z_matrix(a);
    if (rep.is_z) {
        const MatrixTest m = is_m_matrix(a);
        rep.m_verdict = m.verdict;
        if (m.verdict != Verdict::inconclusive) rep.is_m = m.verdict == Verdict::yes;
    }

    const FrobeniusForm f = frobenius_normal_form(a);
    rep.block_count = f.block_count();
    const std::vector<double> d = diag_abs(a);

    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] == 0.0) {
            std::ostringstream os;
            os << "zero diagonal entry at index " << i + 1 << " (block " << f.block_of[i] + 1 << ")";
            rep.witness = os.str();
            rep.h_verdict = Verdict::no;
            return rep;
        }
    }

    const std::size_t budget = opt.max_iter ? opt.max_iter : default_power_budget(n);
    const double threshold = 1.0 - opt.margin;
    std::vector<std::vector<double>> perron_vec(f.block_count());
    Verdict overall = Verdict::yes;
    std::string first_bad, first_open;
    double lower = 0.0, upper = 0.0;

    for (std::size_t blk = 0; blk < f.block_count(); ++blk) {
        const auto idx = f.block_indices(blk);
        const std::size_t k = idx.size();
        std::vector<double> m(k * k, 0.0);
        for (std::size_t p = 0; p < k; ++p)
            for (std::size_t q = 0; q < k; ++q)
                if (p != q) m[p * k + q] = std::abs(a(idx[p], idx[q])) / d[idx[p]];
        const PerronRun run = perron(m, k, opt.tol, budget, threshold);
        rep.iterations += run.iterations;
        lower = std::max(lower, run.lower);
        upper = std::max(upper, run.upper);
        const Verdict v = decide(run, threshold);
        if (v == Verdict::no) {
            if (first_bad.empty()) {
                std::ostringstream os;
                os << "block " << blk + 1 << " " << index_list(idx)
                   << " has Jacobi spectral radius >= 1 (bracket [" << run.lower << ", " << run.upper << "])";
                first_bad = os.str();
            }
            overall = Verdict::no;
        } else if (v == Verdict::inconclusive) {
            if (first_open.empty()) {
                std::ostringstream os;
                os << "block " << blk + 1 << " " << index_list(idx) << " unresolved after " << run.iterations
                   << " iterations (bracket [" << run.lower << ", " << run.upper << "])";
                first_open = os.str();
            }
            if (overall == Verdict::yes) overall = Verdict::inconclusive;
        }
        perron_vec[blk] = run.x;
    }
    rep.jacobi_lower = lower;
    rep.jacobi_upper = upper;
    rep.jacobi_radius = 0.5 * (lower + upper);
    rep.h_verdict = overall;
    rep.is_h_gdd = overall == Verdict::yes;
    if (overall == Verdict::no) {
        rep.witness = first_bad;
        return rep;
    }
    if (overall == Verdict::inconclusive) {
        rep.witness = first_open;
        return rep;
    }

    // Assemble from the last block backwards; each block is inflated by the
    // least power of two that keeps its rows dominant over later blocks.
    for (int attempt = 0; attempt < 8; ++attempt) {
        const double guard = std::ldexp(1.0, attempt);
        std::vector<double> x(n, 0.0);
        for (std::size_t blk = f.block_count(); blk-- > 0;) {
            const auto idx = f.block_indices(blk);
            const auto& v = perron_vec[blk];
            double t = 1.0;
            for (std::size_t p = 0; p < idx.size(); ++p) {
                const std::size_t i = idx[p];
                double in_block = 0.0, coupling = 0.0;
                for (std::size_t q = 0; q < idx.size(); ++q)
                    if (q != p) in_block += std::abs(a(i, idx[q])) * v[q];
                for (std::size_t j = 0; j < n; ++j)
                    if (f.block_of[j] > blk) coupling += std::abs(a(i, j)) * x[j];
                const double slack = d[i] * v[p] - in_block;
                coupling *= guard;
                while (t * slack <= coupling && t < 1e300) t *= 2.0;
            }
            for (std::size_t p = 0; p < idx.size(); ++p) x[idx[p]] = t * v[p];
        }
        const double mx = *std::max_element(x.begin(), x.end());
        int e = 0;
        std::frexp(mx, &e);
        bool finite = true;
        for (auto& xi : x) {
            xi = std::ldexp(xi, 1 - e);
            finite = finite && xi > 0.0 && std::isfinite(xi);
        }
        if (!finite) break;
        PositiveScaling cert(x);
        if (is_sdd(scale(a, cert))) {
            rep.certificate = std::move(cert);
            return rep;
        }
    }
    rep.witness = "scaling certificate failed verification";
    return rep;
}

}  // namespace gddkit
