#include "gddkit/gfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gddkit/structure.hpp"

namespace gddkit {

namespace {

constexpr double constraint_slack = 1e-12;

// x^a y^(1-a) with 0^0 = 1; exact when x == y.
double wgm(double x, double y, double a) {
    if (a == 1.0 || x == y) return x;
    if (a == 0.0) return y;
    if (x == 0.0 || y == 0.0) return 0.0;
    const double ratio = y / x;
    if (ratio > 0.0 && std::isfinite(ratio)) return x * std::pow(ratio, 1.0 - a);
    return std::pow(x, a) * std::pow(y, 1.0 - a);
}

double conj_exponent(double p) { return p / (p - 1.0); }

void require_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw Error(ErrorCode::invalid_argument, "constraint violated: p must satisfy 1 < p < inf");
}

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << name << " must lie in [0,1]";
        throw Error(ErrorCode::invalid_argument, os.str());
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

const char* to_string(GFamily f) noexcept {
    switch (f) {
        case GFamily::r: return "r";
        case GFamily::c: return "c";
        case GFamily::r_tilde: return "r_tilde";
        case GFamily::c_tilde: return "c_tilde";
        case GFamily::r_weighted: return "r_weighted";
        case GFamily::c_weighted: return "c_weighted";
        case GFamily::r_tilde_weighted: return "r_tilde_weighted";
        case GFamily::c_tilde_weighted: return "c_tilde_weighted";
        case GFamily::g1: return "g1";
        case GFamily::g2: return "g2";
        case GFamily::g3: return "g3";
        case GFamily::g4: return "g4";
    }
    return "?";
}

GFunctionId GFunctionId::plain(GFamily f) {
    if (f != GFamily::r && f != GFamily::c && f != GFamily::r_tilde && f != GFamily::c_tilde)
        throw Error(ErrorCode::invalid_argument, std::string("family ") + to_string(f) + " needs parameters");
    GFunctionId id;
    id.family = f;
    return id;
}

GFunctionId GFunctionId::weighted(GFamily f, PositiveScaling s) {
    if (f != GFamily::r_weighted && f != GFamily::c_weighted && f != GFamily::r_tilde_weighted &&
        f != GFamily::c_tilde_weighted)
        throw Error(ErrorCode::invalid_argument, std::string("family ") + to_string(f) + " takes no scaling");
    GFunctionId id;
    id.family = f;
    id.scaling = std::move(s);
    return id;
}

GFunctionId GFunctionId::g1(double alpha, double p) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error(ErrorCode::invalid_argument, "constraint violated: g1 needs 0 < alpha < 1");
    require_p(p);
    GFunctionId id;
    id.family = GFamily::g1;
    id.alpha = alpha;
    id.p = p;
    return id;
}

GFunctionId GFunctionId::g2(std::vector<double> alpha_bar, double p) {
    require_p(p);
    if (alpha_bar.empty()) throw Error(ErrorCode::invalid_argument, "g2 needs one alpha_k per index");
    double s = 0.0;
    for (double a : alpha_bar) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw Error(ErrorCode::invalid_argument, "constraint violated: g2 needs alpha_k > 0");
        s += 1.0 / (1.0 + a);
    }
    if (s > 1.0 + constraint_slack)
        throw Error(ErrorCode::invalid_argument, "constraint violated: sum 1/(1+alpha_k) <= 1 (got " + fmt(s) + ")");
    GFunctionId id;
    id.family = GFamily::g2;
    id.alpha_bar = std::move(alpha_bar);
    id.p = p;
    return id;
}

GFunctionId GFunctionId::g3(std::vector<double> alpha_bar, double p) {
    require_p(p);
    if (alpha_bar.empty()) throw Error(ErrorCode::invalid_argument, "g3 needs one alpha_k per index");
    const double q = conj_exponent(p);
    double s = 0.0;
    for (double a : alpha_bar) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw Error(ErrorCode::invalid_argument, "constraint violated: g3 needs alpha_k > 0");
        s += std::pow(a, q);
    }
    if (s > 1.0 + constraint_slack)
        throw Error(ErrorCode::invalid_argument, "constraint violated: sum alpha_k^q <= 1 (got " + fmt(s) + ")");
    GFunctionId id;
    id.family = GFamily::g3;
    id.alpha_bar = std::move(alpha_bar);
    id.p = p;
    return id;
}

GFunctionId GFunctionId::g4(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw Error(ErrorCode::invalid_argument, "constraint violated: g4 needs alpha > 0");
    GFunctionId id;
    id.family = GFamily::g4;
    id.alpha = alpha;
    return id;
}

std::string GFunctionId::label() const {
    std::string s = to_string(family);
    switch (family) {
        case GFamily::g1: return s + "(alpha=" + fmt(alpha) + ",p=" + fmt(p) + ")";
        case GFamily::g2:
        case GFamily::g3: return s + "(p=" + fmt(p) + ")";
        case GFamily::g4: return s + "(alpha=" + fmt(alpha) + ")";
        default: return s;
    }
}

double deleted_norm(const ComplexMatrix& a, std::size_t k, double s, Axis axis) {
    const std::size_t n = a.order();
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        if (j != k) m = std::max(m, std::abs(axis == Axis::row ? a(k, j) : a(j, k)));
    if (m == 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += std::pow(std::abs(axis == Axis::row ? a(k, j) : a(j, k)) / m, s);
    return m * std::pow(sum, 1.0 / s);
}

double g4_min_alpha(const ComplexMatrix& a) {
    const auto r = deleted_sums(a, Axis::row);
    double s = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i) {
        double m = 0.0;
        for (std::size_t j = 0; j < a.order(); ++j)
            if (j != i) m = std::max(m, std::abs(a(i, j)));
        if (m > 0.0) s += r[i] / m;
    }
    double alpha = 0.5 * (std::sqrt(1.0 + 4.0 * s) - 1.0);
    alpha = std::max(alpha, std::numeric_limits<double>::min());
    while (alpha * (1.0 + alpha) < s) alpha = std::nextafter(alpha, HUGE_VAL);
    return alpha;
}

SumVector eval_gfunction(const GFunctionId& id, const ComplexMatrix& a) {
    const std::size_t n = a.order();
    auto need_scaling = [&]() -> const PositiveScaling& {
        if (!id.scaling) throw Error(ErrorCode::invalid_argument, std::string(to_string(id.family)) + " needs a scaling");
        if (id.scaling->size() != n) throw Error(ErrorCode::dimension_mismatch, "scaling length differs from matrix order");
        return *id.scaling;
    };
    switch (id.family) {
        case GFamily::r: return deleted_sums(a, Axis::row);
        case GFamily::c: return deleted_sums(a, Axis::column);
        case GFamily::r_tilde: return tilde_sums(a, Axis::row);
        case GFamily::c_tilde: return tilde_sums(a, Axis::column);
        case GFamily::r_weighted: return weighted_deleted_sums(a, need_scaling(), Axis::row);
        case GFamily::c_weighted: return weighted_deleted_sums(a, need_scaling(), Axis::column);
        case GFamily::r_tilde_weighted: return tilde_sums(a, Axis::row, need_scaling());
        case GFamily::c_tilde_weighted: return tilde_sums(a, Axis::column, need_scaling());
        default: break;
    }
    SumVector out;
    out.values.assign(n, 0.0);
    const double q = id.family == GFamily::g4 ? 0.0 : conj_exponent(id.p);
    if ((id.family == GFamily::g2 || id.family == GFamily::g3) && id.alpha_bar.size() != n)
        throw Error(ErrorCode::dimension_mismatch, "alpha_bar length differs from matrix order");
    if (id.family == GFamily::g4) {
        const auto r = deleted_sums(a, Axis::row);
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double m = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) m = std::max(m, std::abs(a(k, j)));
            out.values[k] = id.alpha * m;
            if (m > 0.0) s += r[k] / m;
        }
        if (s > id.alpha * (1.0 + id.alpha))
            throw Error(ErrorCode::invalid_argument,
                        "constraint violated: sum r_k/max_k <= alpha(1+alpha) (sum " + fmt(s) + ", alpha " + fmt(id.alpha) + ")");
        return out;
    }
    for (std::size_t k = 0; k < n; ++k) {
        switch (id.family) {
            case GFamily::g1: {
                const double rk = deleted_norm(a, k, id.alpha * id.p, Axis::row);
                const double ck = deleted_norm(a, k, (1.0 - id.alpha) * q, Axis::column);
                out.values[k] = wgm(rk, ck, id.alpha);
                break;
            }
            case GFamily::g2:
                out.values[k] = std::pow(id.alpha_bar[k], 1.0 / q) * deleted_norm(a, k, id.p, Axis::row);
                break;
            case GFamily::g3:
                out.values[k] = deleted_norm(a, k, id.p, Axis::row) / id.alpha_bar[k];
                break;
            default: break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

void validate(const PairFunctionSpec& spec) {
    if (spec.kind < 1 || spec.kind > 13) throw Error(ErrorCode::invalid_argument, "pair function kind must be 1..13");
    require_unit(spec.alpha, "alpha");
    require_unit(spec.beta, "beta");
}

double pair_function(const PairFunctionSpec& s, double xi, double xj, double yi, double yj) {
    const double a = s.alpha, b = s.beta, a1 = 1.0 - a, b1 = 1.0 - b;
    switch (s.kind) {
        case 1: return wgm(xi, yj, a);
        case 2: return wgm(xi * xj, yi * yj, a);
        case 3: return wgm(xi * yj, xj * yi, a);
        case 4: return a * xi * xj + a1 * yi * yj;
        case 5: return a * xi * yj + a1 * xj * yi;
        case 6: return (a * xi + a1 * yi) * (a * xj + a1 * yj);
        case 7: return (a * xi + a1 * yi) * (a * yj + a1 * xj);
        case 8: return wgm(wgm(xi, yi, b), wgm(xj, yj, b), a);
        case 9: return wgm(wgm(xi, yi, b), wgm(yj, xj, b), a);
        case 10: return b * wgm(xi, xj, a) + b1 * wgm(yi, yj, a);
        case 11: return b * wgm(xi, yj, a) + b1 * wgm(yi, xj, a);
        case 12: return wgm(b * xi + b1 * yi, b * xj + b1 * yj, a);
        case 13: return wgm(b * xi + b1 * yi, b * yj + b1 * xj, a);
        default: throw Error(ErrorCode::invalid_argument, "pair function kind must be 1..13");
    }
}

PairValueGrid eval_pair_function(const PairFunctionSpec& spec, const std::vector<double>& x,
                                 const std::vector<double>& y) {
    validate(spec);
    if (x.size() != y.size()) throw Error(ErrorCode::dimension_mismatch, "pair function arguments differ in length");
    PairValueGrid g;
    g.n = x.size();
    g.values.assign(g.n * g.n, 0.0);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
            if (i != j) g.values[i * g.n + j] = pair_function(spec, x[i], x[j], y[i], y[j]);
    return g;
}

PairValueGrid eval_pair_function(const PairFunctionSpec& spec, const SumVector& x, const SumVector& y) {
    return eval_pair_function(spec, x.values, y.values);
}

bool check_pair_condition(const PairFunctionSpec& spec, const ComplexMatrix& a, const SumVector& g,
                          const SumVector& h, double tau) {
    const std::size_t n = a.order();
    if (g.size() != n || h.size() != n) throw Error(ErrorCode::dimension_mismatch, "G-function length differs from matrix order");
    const auto d = diag_abs(a);
    const PairValueGrid lhs = eval_pair_function(spec, d, d);
    const PairValueGrid rhs = eval_pair_function(spec, g, h);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !(lhs.at(i, j) - rhs.at(i, j) > tau)) return false;
    return true;
}

// ---------------------------------------------------------------------------

FormShape form_shape(int form) {
    if (form < 1 || form > form_count) throw Error(ErrorCode::invalid_argument, "form must be 1..27");
    if (form <= 3) return FormShape::point;
    if (form <= 13) return FormShape::product;
    return FormShape::powermean;
}

bool form_uses_alpha(int form) { return form != 1 && form != 4 && form != 5; }
bool form_uses_beta(int form) { return form >= 18; }
bool form_uses_h(int form) { return form != 1 && form != 4 && form != 14 && form != 16; }

double form_radius(int form, double gi, double gj, double hi, double hj, double a, double b) {
    const double a1 = 1.0 - a, b1 = 1.0 - b;
    switch (form) {
        case 1: return gi;
        case 2: return wgm(gi, hi, a);
        case 3: return a * gi + a1 * hi;
        case 4: return gi * gj;
        case 5: return gi * hj;
        case 6: return wgm(gi * gj, hi * hj, a);
        case 7: return wgm(gi * hj, gj * hi, a);
        case 8: return a * gi * gj + a1 * hi * hj;
        case 9: return a * gi * hj + a1 * gj * hi;
        case 10: return (a * gi + a1 * hi) * (a * gj + a1 * hj);
        case 11: return (a * gi + a1 * hi) * (a * hj + a1 * gj);
        case 12: return (a * gi + a1 * hj) * (a * gj + a1 * hi);
        case 13: return (a * gi + a1 * gj) * (a * hj + a1 * hi);
        case 14: return wgm(gi, gj, a);
        case 15: return wgm(gi, hj, a);
        case 16: return a * gi + a1 * gj;
        case 17: return a * gi + a1 * hj;
        case 18: return wgm(wgm(gi, hi, b), wgm(gj, hj, b), a);
        case 19: return wgm(wgm(gi, hi, b), wgm(hj, gj, b), a);
        case 20: return b * wgm(gi, gj, a) + b1 * wgm(hi, hj, a);
        case 21: return b * wgm(gi, hj, a) + b1 * wgm(hi, gj, a);
        case 22: return a * wgm(gi, hi, b) + a1 * wgm(gj, hj, b);
        case 23: return a * wgm(gi, hi, b) + a1 * wgm(hj, gj, b);
        case 24: return wgm(b * gi + b1 * hi, b * gj + b1 * hj, a);
        case 25: return wgm(b * gi + b1 * hi, b * hj + b1 * gj, a);
        case 26: return wgm(a * gi + a1 * gj, a * hi + a1 * hj, b);
        case 27: return wgm(a * gi + a1 * hj, a * hi + a1 * gj, b);
        default: throw Error(ErrorCode::invalid_argument, "form must be 1..27");
    }
}

double form_lhs(FormShape shape, double di, double dj, double alpha) {
    switch (shape) {
        case FormShape::point: return di;
        case FormShape::product: return di * dj;
        default: return wgm(di, dj, alpha);
    }
}

std::optional<PairFunctionSpec> form_pair_function(int form, double alpha, double beta) {
    switch (form) {
        case 1: return PairFunctionSpec{1, 1.0, 1.0};
        case 2: return PairFunctionSpec{8, 1.0, alpha};
        case 3: return PairFunctionSpec{12, 1.0, alpha};
        case 4: return PairFunctionSpec{2, 1.0, 1.0};
        case 5: return PairFunctionSpec{3, 1.0, 1.0};
        case 6: case 7: case 8: case 9: case 10: case 11:
            return PairFunctionSpec{form - 4, alpha, 1.0};
        case 14: return PairFunctionSpec{10, alpha, 1.0};
        case 15: return PairFunctionSpec{1, alpha, 1.0};
        case 18: return PairFunctionSpec{8, alpha, beta};
        case 19: return PairFunctionSpec{9, alpha, beta};
        case 20: return PairFunctionSpec{10, alpha, beta};
        case 21: return PairFunctionSpec{11, alpha, beta};
        case 24: return PairFunctionSpec{12, alpha, beta};
        case 25: return PairFunctionSpec{13, alpha, beta};
        default: return std::nullopt;
    }
}

KindForm kind_form(int kind) {
    if (kind < 1 || kind > kind_count) throw Error(ErrorCode::invalid_argument, "kind must be 1..31");
    switch (kind) {
        case 1: return {1, false, false};
        case 2: return {1, true, true};
        case 3: return {2, false, true};
        case 4: return {3, false, true};
        case 5: return {4, false, false};
        case 6: return {4, true, true};
        case 7: return {5, false, true};
        case 16: return {14, false, false};
        case 17: return {14, true, true};
        case 18: return {15, false, true};
        case 19: return {16, false, false};
        case 20: return {16, true, true};
        case 21: return {17, false, true};
        default: break;
    }
    if (kind >= 8 && kind <= 15) return {kind - 2, false, true};  // forms 6..13
    return {kind - 4, false, true};                                 // 22..31 -> forms 18..27
}

}  // namespace gddkit
