#include "gddkit/regions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gddkit/classify.hpp"
#include "gddkit/random.hpp"
#include "gddkit/structure.hpp"

namespace gddkit {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

BBox gershgorin_box(const ComplexMatrix& a) {
    const auto r = deleted_sums(a, Axis::row);
    BBox b{a(0, 0), a(0, 0)};
    double lx = HUGE_VAL, ly = HUGE_VAL, hx = -HUGE_VAL, hy = -HUGE_VAL;
    for (std::size_t i = 0; i < a.order(); ++i) {
        const cplx c = a(i, i);
        lx = std::min(lx, c.real() - r[i]);
        hx = std::max(hx, c.real() + r[i]);
        ly = std::min(ly, c.imag() - r[i]);
        hy = std::max(hy, c.imag() + r[i]);
    }
    b.lo = {lx, ly};
    b.hi = {hx, hy};
    return b;
}

}  // namespace

const char* to_string(RegionKind k) noexcept {
    switch (k) {
        case RegionKind::disk: return "disk";
        case RegionKind::cassini: return "cassini";
        default: return "powermean";
    }
}

double Region::lhs(cplx z) const {
    switch (kind) {
        case RegionKind::disk: return std::abs(z - a);
        case RegionKind::cassini: return std::abs(z - a) * std::abs(z - b);
        default: return std::pow(std::abs(z - a), alpha) * std::pow(std::abs(z - b), 1.0 - alpha);
    }
}

// The slack is a distance: z passes when some point within `slack` of z is in
// the region, tested through the lower bound obtained by shrinking both focal
// distances.
bool Region::contains(cplx z, double tol) const {
    if (tol == 0.0) return lhs(z) <= rho;
    const double slack = tol * (1.0 + std::abs(z) + std::max(std::abs(a), std::abs(b)));
    const double da = std::max(std::abs(z - a) - slack, 0.0), db = std::max(std::abs(z - b) - slack, 0.0);
    switch (kind) {
        case RegionKind::disk: return da <= rho;
        case RegionKind::cassini: return da * db <= rho;
        default: return std::pow(da, alpha) * std::pow(db, 1.0 - alpha) <= rho;
    }
}

double Region::outer_radius() const {
    switch (kind) {
        case RegionKind::cassini: return std::sqrt(rho);
        default: return rho;
    }
}

std::string to_string(Definition d) {
    switch (d) {
        case Definition::d5_1: return "5.1";
        case Definition::d5_2: return "5.2";
        case Definition::d5_3: return "5.3";
        case Definition::d5_4: return "5.4";
        default: return "5.5";
    }
}

Definition parse_definition(std::string_view s) {
    if (s == "5.1") return Definition::d5_1;
    if (s == "5.2") return Definition::d5_2;
    if (s == "5.3") return Definition::d5_3;
    if (s == "5.4") return Definition::d5_4;
    if (s == "5.5") return Definition::d5_5;
    throw Error(ErrorCode::invalid_argument, "definition must be one of 5.1 .. 5.5, got '" + std::string(s) + "'");
}

int max_k(Definition d) { return d == Definition::d5_1 ? form_count : kind_count; }

bool RegionSet::contains(cplx z, double tol) const { return witness(z, tol).has_value(); }

std::optional<std::size_t> RegionSet::witness(cplx z, double tol) const {
    for (std::size_t t = 0; t < regions.size(); ++t)
        if (regions[t].contains(z, tol)) return t;
    return std::nullopt;
}

RegionSet build_form_region_set(const ComplexMatrix& a, int form, const std::vector<double>& g,
                                const std::vector<double>& h, double alpha, double beta) {
    const std::size_t n = a.order();
    if (g.size() != n || h.size() != n) throw Error(ErrorCode::dimension_mismatch, "region vectors differ from matrix order");
    if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0))
        throw Error(ErrorCode::invalid_argument, "alpha and beta must lie in [0,1]");
    const FormShape shape = form_shape(form);
    RegionSet s;
    s.gershgorin = gershgorin_box(a);
    s.provenance.form = form;
    if (form_uses_alpha(form)) s.provenance.alpha = alpha;
    if (form_uses_beta(form)) s.provenance.beta = beta;
    if (shape == FormShape::point) {
        for (std::size_t i = 0; i < n; ++i) {
            Region r;
            r.kind = RegionKind::disk;
            r.a = r.b = a(i, i);
            r.rho = form_radius(form, g[i], g[i], h[i], h[i], alpha, beta);
            r.i = r.j = i;
            s.regions.push_back(r);
        }
        return s;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            Region r;
            r.kind = shape == FormShape::product ? RegionKind::cassini : RegionKind::powermean;
            r.a = a(i, i);
            r.b = a(j, j);
            r.alpha = shape == FormShape::product ? 1.0 : alpha;
            r.rho = form_radius(form, g[i], g[j], h[i], h[j], alpha, beta);
            r.i = i;
            r.j = j;
            s.regions.push_back(r);
        }
    return s;
}

RegionSet build_region_set(const ComplexMatrix& a, Definition def, int k, const SumVector& g, const SumVector& h,
                           double alpha, double beta) {
    if (k < 1 || k > max_k(def))
        throw Error(ErrorCode::invalid_argument,
                    "k=" + std::to_string(k) + " out of range 1.." + std::to_string(max_k(def)) + " for definition " + to_string(def));
    RegionSet s;
    if (def == Definition::d5_1) {
        s = build_form_region_set(a, k, g.values, h.values, alpha, beta);
    } else {
        const KindForm kf = kind_form(k);
        const auto& first = kf.first_is_h ? h.values : g.values;
        const auto& second = kf.second_is_h ? h.values : g.values;
        s = build_form_region_set(a, kf.form, first, second, alpha, beta);
    }
    s.provenance.definition = def;
    s.provenance.k = k;
    return s;
}

std::pair<SumVector, SumVector> definition_vectors(const ComplexMatrix& a, Definition def, const DefinitionInputs& in) {
    const std::size_t n = a.order();
    const PositiveScaling x = in.x ? *in.x : PositiveScaling::ones(n);
    const PositiveScaling y = in.y ? *in.y : PositiveScaling::ones(n);
    switch (def) {
        case Definition::d5_1:
            return {in.g ? eval_gfunction(*in.g, a) : deleted_sums(a, Axis::row),
                    in.h ? eval_gfunction(*in.h, a) : deleted_sums(a, Axis::column)};
        case Definition::d5_2:
            return {tilde_sums(a, Axis::row, x), tilde_sums(a, Axis::column, y)};
        case Definition::d5_3:
            return {weighted_deleted_sums(a, x, Axis::row), weighted_deleted_sums(a, y, Axis::column)};
        case Definition::d5_4:
            return {tilde_sums(a, Axis::row), tilde_sums(a, Axis::column)};
        default:
            return {deleted_sums(a, Axis::row), deleted_sums(a, Axis::column)};
    }
}

RegionSet build_catalog_set(const ComplexMatrix& a, Definition def, int k, double alpha, double beta,
                            const DefinitionInputs& in) {
    const auto [g, h] = definition_vectors(a, def, in);
    RegionSet s = build_region_set(a, def, k, g, h, alpha, beta);
    switch (def) {
        case Definition::d5_1:
            s.provenance.g_label = in.g ? in.g->label() : "r";
            s.provenance.h_label = in.h ? in.h->label() : "c";
            break;
        case Definition::d5_2: s.provenance.g_label = "r_tilde_x"; s.provenance.h_label = "c_tilde_y"; break;
        case Definition::d5_3: s.provenance.g_label = "r_x"; s.provenance.h_label = "c_y"; break;
        case Definition::d5_4: s.provenance.g_label = "r_tilde"; s.provenance.h_label = "c_tilde"; break;
        default: s.provenance.g_label = "r"; s.provenance.h_label = "c"; break;
    }
    return s;
}

// ---------------------------------------------------------------------------

cplx GridMask::cell_center(std::size_t col, std::size_t row) const {
    const double dx = bbox.width() / static_cast<double>(nx), dy = bbox.height() / static_cast<double>(ny);
    return {bbox.lo.real() + (static_cast<double>(col) + 0.5) * dx, bbox.lo.imag() + (static_cast<double>(row) + 0.5) * dy};
}

std::optional<std::pair<std::size_t, std::size_t>> GridMask::cell_of(cplx z) const {
    const double fx = (z.real() - bbox.lo.real()) / bbox.width() * static_cast<double>(nx);
    const double fy = (z.imag() - bbox.lo.imag()) / bbox.height() * static_cast<double>(ny);
    if (!(fx >= 0.0 && fy >= 0.0 && fx <= static_cast<double>(nx) && fy <= static_cast<double>(ny))) return std::nullopt;
    const auto c = std::min(static_cast<std::size_t>(fx), nx - 1);
    const auto r = std::min(static_cast<std::size_t>(fy), ny - 1);
    return std::make_pair(c, r);
}

std::size_t GridMask::count() const { return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1)); }

double GridMask::fill_fraction() const {
    return bits.empty() ? 0.0 : static_cast<double>(count()) / static_cast<double>(bits.size());
}

BBox normalize_bbox(BBox b) {
    const cplx mid = 0.5 * (b.lo + b.hi);
    double w = b.width(), h = b.height();
    if (!(w > 0.0) && !(h > 0.0)) w = h = 1.0;
    else if (!(w > 0.0)) w = h;
    else if (!(h > 0.0)) h = w;
    b.lo = mid - cplx(0.5 * w, 0.5 * h);
    b.hi = mid + cplx(0.5 * w, 0.5 * h);
    return b;
}

BBox default_bbox(const std::vector<const RegionSet*>& sets) {
    double lx = HUGE_VAL, ly = HUGE_VAL, hx = -HUGE_VAL, hy = -HUGE_VAL;
    auto add = [&](cplx c, double rad) {
        lx = std::min(lx, c.real() - rad);
        hx = std::max(hx, c.real() + rad);
        ly = std::min(ly, c.imag() - rad);
        hy = std::max(hy, c.imag() + rad);
    };
    for (const RegionSet* s : sets) {
        if (!s) continue;
        if (s->gershgorin.hi.real() >= s->gershgorin.lo.real()) {
            add(s->gershgorin.lo, 0.0);
            add(s->gershgorin.hi, 0.0);
        }
        for (const Region& r : s->regions) {
            const double rad = r.outer_radius();
            if (!std::isfinite(rad)) continue;
            add(r.a, rad);
            if (r.kind != RegionKind::disk) add(r.b, rad);
        }
    }
    if (!(hx >= lx)) return normalize_bbox(BBox{{0.0, 0.0}, {0.0, 0.0}});
    BBox b{{lx, ly}, {hx, hy}};
    const double px = 0.05 * b.width(), py = 0.05 * b.height();
    b.lo -= cplx(px, py);
    b.hi += cplx(px, py);
    return normalize_bbox(b);
}

namespace {

template <class Pred>
GridMask raster_with(const BBox& box, std::size_t nx, std::size_t ny, Pred&& member,
                     const std::vector<cplx>& centers) {
    if (nx < 2 || ny < 2) throw Error(ErrorCode::invalid_argument, "resolution must be at least 2x2");
    GridMask m;
    m.bbox = normalize_bbox(box);
    m.nx = nx;
    m.ny = ny;
    m.bits.assign(nx * ny, 0);
    for (std::size_t row = 0; row < ny; ++row)
        for (std::size_t col = 0; col < nx; ++col)
            if (member(m.cell_center(col, row))) m.bits[row * nx + col] = 1;
    for (cplx c : centers)
        if (member(c))
            if (const auto cell = m.cell_of(c)) m.bits[cell->second * nx + cell->first] = 1;
    return m;
}

std::vector<cplx> centers_of(const RegionSet& s) {
    std::vector<cplx> c;
    for (const Region& r : s.regions) {
        c.push_back(r.a);
        if (r.kind != RegionKind::disk) c.push_back(r.b);
    }
    std::sort(c.begin(), c.end(), [](cplx p, cplx q) {
        return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag());
    });
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

}  // namespace

// Every point of a region lies within this distance of one of its foci.
double focal_reach(const Region& r) {
    return r.kind == RegionKind::cassini ? std::sqrt(r.rho) : r.rho;
}

GridMask rasterize(const RegionSet& s, std::optional<BBox> bbox, std::size_t nx, std::size_t ny) {
    if (nx < 2 || ny < 2) throw Error(ErrorCode::invalid_argument, "resolution must be at least 2x2");
    GridMask m;
    m.bbox = normalize_bbox(bbox ? *bbox : default_bbox({&s}));
    m.nx = nx;
    m.ny = ny;
    m.bits.assign(nx * ny, 0);
    const double dx = m.bbox.width() / static_cast<double>(nx), dy = m.bbox.height() / static_cast<double>(ny);
    auto span = [](double lo, double hi, double origin, double step, std::size_t count) {
        const double a = std::floor((lo - origin) / step) - 1.0, b = std::ceil((hi - origin) / step) + 1.0;
        const double top = static_cast<double>(count);
        return std::make_pair(static_cast<std::size_t>(std::clamp(a, 0.0, top)), static_cast<std::size_t>(std::clamp(b, 0.0, top)));
    };
    for (const Region& r : s.regions) {
        const double reach = focal_reach(r) * (1.0 + 1e-9) + 1e-300;
        if (!std::isfinite(reach)) {
            for (std::size_t t = 0; t < m.bits.size(); ++t)
                if (!m.bits[t] && r.contains(m.cell_center(t % nx, t / nx), 0.0)) m.bits[t] = 1;
            continue;
        }
        for (cplx f : {r.a, r.b}) {
            const auto [c0, c1] = span(f.real() - reach, f.real() + reach, m.bbox.lo.real(), dx, nx);
            const auto [r0, r1] = span(f.imag() - reach, f.imag() + reach, m.bbox.lo.imag(), dy, ny);
            for (std::size_t row = r0; row < r1; ++row)
                for (std::size_t col = c0; col < c1; ++col) {
                    auto& bit = m.bits[row * nx + col];
                    if (!bit && r.contains(m.cell_center(col, row), 0.0)) bit = 1;
                }
            if (r.kind == RegionKind::disk) break;
        }
    }
    for (cplx c : centers_of(s))
        if (s.contains(c, 0.0))
            if (const auto cell = m.cell_of(c)) m.bits[cell->second * nx + cell->first] = 1;
    return m;
}

bool Intersection::contains(cplx z, double tol) const {
    if (sets.empty()) return false;
    for (const auto& s : sets)
        if (!s.contains(z, tol)) return false;
    return true;
}

GridMask Intersection::rasterize(std::optional<BBox> bbox, std::size_t nx, std::size_t ny) const {
    std::vector<const RegionSet*> ptrs;
    std::vector<cplx> centers;
    for (const auto& s : sets) {
        ptrs.push_back(&s);
        const auto c = centers_of(s);
        centers.insert(centers.end(), c.begin(), c.end());
    }
    const BBox box = bbox ? *bbox : default_bbox(ptrs);
    return raster_with(box, nx, ny, [&](cplx z) { return contains(z, 0.0); }, centers);
}

Intersection approx_intersection(std::vector<RegionSet> sets) {
    if (sets.empty()) throw Error(ErrorCode::invalid_argument, "intersection needs at least one set");
    Intersection x;
    x.sets = std::move(sets);
    return x;
}

std::vector<double> uniform_grid(std::size_t points) {
    if (points < 2) return {1.0};
    std::vector<double> g(points);
    for (std::size_t t = 0; t < points; ++t) g[t] = static_cast<double>(t) / static_cast<double>(points - 1);
    return g;
}

SamplingPlan default_sampling_plan(const ComplexMatrix& a, std::uint64_t seed, std::size_t random_count) {
    const std::size_t n = a.order();
    SamplingPlan p;
    p.alphas = uniform_grid(33);
    p.betas = uniform_grid(33);
    p.xs.push_back(PositiveScaling::ones(n));
    p.ys.push_back(PositiveScaling::ones(n));
    const auto rep = classify_h(a);
    if (rep.certificate) p.xs.push_back(*rep.certificate);
    const auto rep_t = classify_h(transpose(a));
    if (rep_t.certificate) p.ys.push_back(rep_t.certificate->inverse());
    Rng rng(seed);
    for (std::size_t t = 0; t < random_count; ++t) {
        p.xs.push_back(log_uniform_scaling(rng, n));
        p.ys.push_back(log_uniform_scaling(rng, n));
    }
    return p;
}

Intersection sampled_intersection(const ComplexMatrix& a, Definition def, int k, const SamplingPlan& plan,
                                  const DefinitionInputs& in) {
    const int form = def == Definition::d5_1 ? k : kind_form(k).form;
    const bool weighted = def == Definition::d5_2 || def == Definition::d5_3;
    const std::vector<double> one{1.0};
    const auto& as = form_uses_alpha(form) && !plan.alphas.empty() ? plan.alphas : one;
    const auto& bs = form_uses_beta(form) && !plan.betas.empty() ? plan.betas : one;
    std::vector<PositiveScaling> xs{in.x ? *in.x : PositiveScaling::ones(a.order())};
    std::vector<PositiveScaling> ys{in.y ? *in.y : PositiveScaling::ones(a.order())};
    if (weighted && !plan.xs.empty()) xs = plan.xs;
    if (weighted && !plan.ys.empty()) ys = plan.ys;

    std::vector<RegionSet> sets;
    for (std::size_t t = 0; t < std::max(xs.size(), ys.size()); ++t) {
        DefinitionInputs di = in;
        di.x = xs[std::min(t, xs.size() - 1)];
        di.y = ys[std::min(t, ys.size() - 1)];
        const auto [g, h] = definition_vectors(a, def, di);
        for (double al : as)
            for (double be : bs) sets.push_back(build_region_set(a, def, k, g, h, al, be));
    }
    return approx_intersection(std::move(sets));
}

ContainmentResult check_containment(const RegionSet& sa, const RegionSet& sb, const BBox& bbox, std::size_t nx,
                                    std::size_t ny) {
    const GridMask ma = rasterize(sa, bbox, nx, ny);
    const GridMask mb = rasterize(sb, bbox, nx, ny);
    ContainmentResult res;
    res.sampled = ma.bits.size();
    for (std::size_t t = 0; t < ma.bits.size(); ++t)
        if (ma.bits[t] && !mb.bits[t]) ++res.offending;
    for (cplx c : centers_of(sa)) {
        ++res.sampled;
        if (sa.contains(c) && !sb.contains(c)) ++res.offending;
    }
    res.holds = res.offending == 0;
    return res;
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& os, const GridMask& m) {
    for (std::size_t row = m.ny; row-- > 0;) {
        for (std::size_t col = 0; col < m.nx; ++col) {
            if (col) os << ',';
            os << (m.at(col, row) ? '1' : '0');
        }
        os << '\n';
    }
}

void write_svg(std::ostream& os, const std::vector<SvgLayer>& layers, const std::vector<cplx>& points) {
    BBox box{{0.0, 0.0}, {1.0, 1.0}};
    if (!layers.empty()) box = layers.front().mask.bbox;
    const double w = box.width(), h = box.height();
    const double stroke = 0.002 * std::max(w, h);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(box.lo.real()) << ' ' << num(-box.hi.imag())
       << ' ' << num(w) << ' ' << num(h) << "\" width=\"800\" height=\"" << num(std::round(800.0 * h / w)) << "\">\n";
    os << "<rect x=\"" << num(box.lo.real()) << "\" y=\"" << num(-box.hi.imag()) << "\" width=\"" << num(w)
       << "\" height=\"" << num(h) << "\" fill=\"white\"/>\n";
    for (std::size_t li = 0; li < layers.size(); ++li) {
        const SvgLayer& L = layers[li];
        const GridMask& m = L.mask;
        const std::string color = L.color.empty() ? "#1f77b4" : L.color;
        os << "<g id=\"set-" << li << "\" data-label=\"" << xml_escape(L.label) << '"';
        if (L.set) {
            const RegionProvenance& p = L.set->provenance;
            os << " data-definition=\"" << to_string(p.definition) << "\" data-k=\"" << p.k << "\" data-form=\"" << p.form
               << '"';
            if (p.alpha) os << " data-alpha=\"" << num(*p.alpha) << '"';
            if (p.beta) os << " data-beta=\"" << num(*p.beta) << '"';
            if (!p.g_label.empty()) os << " data-g=\"" << xml_escape(p.g_label) << '"';
            if (!p.h_label.empty()) os << " data-h=\"" << xml_escape(p.h_label) << '"';
        } else {
            os << " data-approximation=\"outer approximation\"";
        }
        os << " fill=\"" << color << "\">\n";
        const double dx = m.bbox.width() / static_cast<double>(m.nx), dy = m.bbox.height() / static_cast<double>(m.ny);
        for (std::size_t row = 0; row < m.ny; ++row)
            for (std::size_t col = 0; col < m.nx; ++col) {
                if (!m.at(col, row)) continue;
                const bool edge = col == 0 || row == 0 || col + 1 == m.nx || row + 1 == m.ny || !m.at(col - 1, row) ||
                                  !m.at(col + 1, row) || !m.at(col, row - 1) || !m.at(col, row + 1);
                if (!edge) continue;
                const double x = m.bbox.lo.real() + static_cast<double>(col) * dx;
                const double y = m.bbox.lo.imag() + static_cast<double>(row + 1) * dy;
                os << "<rect x=\"" << num(x) << "\" y=\"" << num(-y) << "\" width=\"" << num(dx) << "\" height=\""
                   << num(dy) << "\"/>\n";
            }
        if (L.set)
            for (const Region& r : L.set->regions)
                if (r.kind == RegionKind::disk)
                    os << "<circle cx=\"" << num(r.a.real()) << "\" cy=\"" << num(-r.a.imag()) << "\" r=\"" << num(r.rho)
                       << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << num(stroke) << "\"/>\n";
        os << "</g>\n";
    }
    if (!points.empty()) {
        os << "<g id=\"eigenvalues\" fill=\"black\">\n";
        for (cplx z : points)
            os << "<circle cx=\"" << num(z.real()) << "\" cy=\"" << num(-z.imag()) << "\" r=\"" << num(3.0 * stroke)
               << "\"/>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
}

}  // namespace gddkit
