#include "gddkit/eigen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace gddkit {

namespace {

using Dense = std::vector<cplx>;  // row-major n x n

void hessenberg(Dense& h, std::size_t n) {
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm = std::hypot(norm, std::abs(h[i * n + k]));
        if (norm == 0.0) continue;
        const cplx x0 = h[(k + 1) * n + k];
        const cplx phase = std::abs(x0) == 0.0 ? cplx(1.0) : x0 / std::abs(x0);
        const cplx alpha = -phase * norm;
        for (std::size_t i = k + 1; i < n; ++i) v[i] = h[i * n + k];
        v[k + 1] -= alpha;
        double vn = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vn = std::hypot(vn, std::abs(v[i]));
        if (vn == 0.0) continue;
        for (std::size_t i = k + 1; i < n; ++i) v[i] /= vn;
        // H <- (I - 2vv*) H
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h[i * n + j];
            s *= 2.0;
            for (std::size_t i = k + 1; i < n; ++i) h[i * n + j] -= v[i] * s;
        }
        // H <- H (I - 2vv*)
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += h[i * n + j] * v[j];
            s *= 2.0;
            for (std::size_t j = k + 1; j < n; ++j) h[i * n + j] -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h[i * n + k] = 0.0;
    }
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
cplx wilkinson(cplx a, cplx b, cplx c, cplx d) {
    const cplx tr2 = 0.5 * (a + d);
    const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const cplx l1 = tr2 + disc, l2 = tr2 - disc;
    return std::abs(l1 - d) <= std::abs(l2 - d) ? l1 : l2;
}

struct Givens {
    double c;
    cplx s;
};

Givens givens(cplx a, cplx b) {
    const double aa = std::abs(a), bb = std::abs(b);
    if (bb == 0.0) return {1.0, 0.0};
    if (aa == 0.0) return {0.0, 1.0};
    const double r = std::hypot(aa, bb);
    return {aa / r, (a / aa) * std::conj(b) / r};
}

bool complex_less(cplx p, cplx q) {
    return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag());
}

// LU with partial pivoting of (A - lambda I); zero pivots are nudged.
struct LU {
    std::size_t n;
    Dense m;
    std::vector<std::size_t> piv;
};

LU factor_shifted(const ComplexMatrix& a, cplx lambda, double nudge) {
    const std::size_t n = a.order();
    LU f{n, Dense(n * n), std::vector<std::size_t>(n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) f.m[i * n + j] = a(i, j) - (i == j ? lambda : cplx(0.0));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(f.m[i * n + k]) > std::abs(f.m[p * n + k])) p = i;
        f.piv[k] = p;
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) std::swap(f.m[k * n + j], f.m[p * n + j]);
        if (std::abs(f.m[k * n + k]) < nudge) f.m[k * n + k] = nudge;
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx l = f.m[i * n + k] / f.m[k * n + k];
            f.m[i * n + k] = l;
            for (std::size_t j = k + 1; j < n; ++j) f.m[i * n + j] -= l * f.m[k * n + j];
        }
    }
    return f;
}

void solve(const LU& f, std::vector<cplx>& b) {
    const std::size_t n = f.n;
    for (std::size_t k = 0; k < n; ++k) {
        std::swap(b[k], b[f.piv[k]]);
        for (std::size_t i = k + 1; i < n; ++i) b[i] -= f.m[i * n + k] * b[k];
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = k + 1; j < n; ++j) b[k] -= f.m[k * n + j] * b[j];
        b[k] /= f.m[k * n + k];
    }
}

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (cplx x : v) s = std::hypot(s, std::abs(x));
    return s;
}

}  // namespace

double backward_error(const ComplexMatrix& a, cplx lambda) {
    const std::size_t n = a.order();
    const double an = a.frobenius_norm();
    if (an == 0.0) return std::abs(lambda);
    const double nudge = std::numeric_limits<double>::epsilon() * an;
    const LU f = factor_shifted(a, lambda, nudge);
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cplx(1.0, 0.5 / static_cast<double>(i + 1));
    double best = std::numeric_limits<double>::infinity();
    std::vector<cplx> r(n);
    for (int step = 0; step < 3; ++step) {
        solve(f, v);
        const double vn = norm2(v);
        if (!(vn > 0.0) || !std::isfinite(vn)) break;
        for (auto& x : v) x /= vn;
        for (std::size_t i = 0; i < n; ++i) {
            cplx s = -lambda * v[i];
            for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
            r[i] = s;
        }
        best = std::min(best, norm2(r) / an);
    }
    return best;
}

Spectrum eigenvalues(const ComplexMatrix& a, const EigenOptions& opt) {
    const std::size_t n = a.order();
    if (n > opt.max_order)
        throw Error(ErrorCode::invalid_argument,
                    "matrix order " + std::to_string(n) + " exceeds the eigenvalue cap " + std::to_string(opt.max_order));
    Spectrum out;
    Dense h(a.data().begin(), a.data().end());
    hessenberg(h, n);
    double hnorm = 0.0;
    for (cplx x : h) hnorm = std::hypot(hnorm, std::abs(x));

    const std::size_t budget = opt.iterations_per_eigenvalue * std::max<std::size_t>(n, 1);
    std::vector<cplx> found;
    std::size_t hi = n;  // active window is [lo, hi)
    std::size_t since = 0;
    while (hi > 0) {
        // Locate the start of the unreduced block ending at hi - 1.
        std::size_t lo = hi - 1;
        while (lo > 0) {
            const cplx sub = h[lo * n + lo - 1];
            double ref = std::abs(h[(lo - 1) * n + lo - 1]) + std::abs(h[lo * n + lo]);
            if (ref == 0.0) ref = hnorm;
            if (std::abs(sub) <= 1e-14 * ref) {
                h[lo * n + lo - 1] = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi - 1) {
            found.push_back(h[lo * n + lo]);
            --hi;
            since = 0;
            ++out.deflated;
            continue;
        }
        if (out.iterations >= budget) {
            out.converged = false;
            std::ostringstream os;
            os << "QR iteration did not converge after " << out.iterations << " iterations; " << out.deflated
               << " of " << n << " eigenvalues deflated";
            out.message = os.str();
            for (std::size_t i = 0; i < hi; ++i) found.push_back(h[i * n + i]);
            break;
        }
        ++out.iterations;
        ++since;
        const std::size_t m = hi - 1;
        cplx mu;
        if (since % 10 == 0) {
            mu = h[m * n + m] + 0.75 * std::abs(h[m * n + m - 1]) * cplx(1.0, 1.0);
        } else {
            mu = wilkinson(h[(m - 1) * n + m - 1], h[(m - 1) * n + m], h[m * n + m - 1], h[m * n + m]);
        }
        for (std::size_t i = lo; i < hi; ++i) h[i * n + i] -= mu;
        std::vector<Givens> rot;
        rot.reserve(hi - lo);
        for (std::size_t k = lo; k + 1 < hi; ++k) {
            const Givens g = givens(h[k * n + k], h[(k + 1) * n + k]);
            rot.push_back(g);
            for (std::size_t j = k; j < hi; ++j) {
                const cplx t1 = h[k * n + j], t2 = h[(k + 1) * n + j];
                h[k * n + j] = g.c * t1 + g.s * t2;
                h[(k + 1) * n + j] = -std::conj(g.s) * t1 + g.c * t2;
            }
        }
        for (std::size_t k = lo; k + 1 < hi; ++k) {
            const Givens& g = rot[k - lo];
            const std::size_t last = std::min(k + 2, hi - 1);
            for (std::size_t i = lo; i <= last; ++i) {
                const cplx t1 = h[i * n + k], t2 = h[i * n + k + 1];
                h[i * n + k] = t1 * g.c + t2 * std::conj(g.s);
                h[i * n + k + 1] = -t1 * g.s + t2 * g.c;
            }
        }
        for (std::size_t i = lo; i < hi; ++i) h[i * n + i] += mu;
    }
    std::sort(found.begin(), found.end(), complex_less);
    out.eigenvalues = std::move(found);
    for (cplx l : out.eigenvalues) out.residual = std::max(out.residual, backward_error(a, l));
    return out;
}

Spectrum parse_spectrum(std::string_view text) {
    Spectrum s;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<double> vals;
        std::size_t p = 0;
        while (p < line.size()) {
            while (p < line.size() && (line[p] == ' ' || line[p] == '\t' || line[p] == '\r' || line[p] == ',')) ++p;
            if (p >= line.size()) break;
            std::size_t q = p;
            while (q < line.size() && line[q] != ' ' && line[q] != '\t' && line[q] != '\r' && line[q] != ',') ++q;
            double v = 0.0;
            const auto tok = line.substr(p, q - p);
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
                throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": bad number '" + std::string(tok) + "'");
            vals.push_back(v);
            p = q;
        }
        if (vals.empty()) continue;
        if (vals.size() != 2)
            throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected 're im'");
        s.eigenvalues.emplace_back(vals[0], vals[1]);
        if (end == text.size()) break;
    }
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), complex_less);
    s.message = "supplied spectrum";
    return s;
}

Spectrum load_spectrum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open spectrum file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spectrum(ss.str());
}

InclusionReport verify_inclusion(const std::vector<cplx>& spectrum, const RegionSet& s, double tol) {
    InclusionReport rep;
    for (cplx z : spectrum) {
        InclusionRecord rec;
        rec.lambda = z;
        rec.margin = -std::numeric_limits<double>::infinity();
        std::optional<std::size_t> best;
        for (std::size_t t = 0; t < s.regions.size(); ++t) {
            const Region& r = s.regions[t];
            const double m = r.rho - r.lhs(z);
            if (!best || m > rec.margin) {
                rec.margin = m;
                best = t;
            }
            if (!rec.region && r.contains(z, tol)) rec.region = t;
        }
        rec.contained = rec.region.has_value();
        if (const auto w = rec.region ? rec.region : best) {
            rec.i = s.regions[*w].i;
            rec.j = s.regions[*w].j;
        }
        if (!rec.contained) ++rep.violations;
        rep.records.push_back(rec);
    }
    return rep;
}

InclusionReport verify_inclusion(const ComplexMatrix& a, const RegionSet& s, double tol) {
    const Spectrum sp = eigenvalues(a);
    if (!sp.converged) throw Error(ErrorCode::not_converged, sp.message);
    return verify_inclusion(sp.eigenvalues, s, tol);
}

}  // namespace gddkit
