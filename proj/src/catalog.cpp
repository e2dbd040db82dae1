#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "gddkit/classify.hpp"
#include "gddkit/gfun.hpp"
#include "gddkit/structure.hpp"

namespace gddkit {

namespace {

const char* const form_templates[form_count] = {
    "G_i",
    "G_i^a H_i^(1-a)",
    "a G_i + (1-a) H_i",
    "G_i G_j",
    "G_i H_j",
    "(G_i G_j)^a (H_i H_j)^(1-a)",
    "(G_i H_j)^a (G_j H_i)^(1-a)",
    "a G_i G_j + (1-a) H_i H_j",
    "a G_i H_j + (1-a) G_j H_i",
    "(a G_i + (1-a) H_i)(a G_j + (1-a) H_j)",
    "(a G_i + (1-a) H_i)(a H_j + (1-a) G_j)",
    "(a G_i + (1-a) H_j)(a G_j + (1-a) H_i)",
    "(a G_i + (1-a) G_j)(a H_j + (1-a) H_i)",
    "G_i^a G_j^(1-a)",
    "G_i^a H_j^(1-a)",
    "a G_i + (1-a) G_j",
    "a G_i + (1-a) H_j",
    "(G_i^b H_i^(1-b))^a (G_j^b H_j^(1-b))^(1-a)",
    "(G_i^b H_i^(1-b))^a (H_j^b G_j^(1-b))^(1-a)",
    "b G_i^a G_j^(1-a) + (1-b) H_i^a H_j^(1-a)",
    "b G_i^a H_j^(1-a) + (1-b) H_i^a G_j^(1-a)",
    "a G_i^b H_i^(1-b) + (1-a) G_j^b H_j^(1-b)",
    "a G_i^b H_i^(1-b) + (1-a) H_j^b G_j^(1-b)",
    "(b G_i + (1-b) H_i)^a (b G_j + (1-b) H_j)^(1-a)",
    "(b G_i + (1-b) H_i)^a (b H_j + (1-b) G_j)^(1-a)",
    "(a G_i + (1-a) G_j)^b (a H_i + (1-a) H_j)^(1-b)",
    "(a G_i + (1-a) H_j)^b (a H_i + (1-a) G_j)^(1-b)",
};

const char* slot_symbol(Slot s) {
    switch (s) {
        case Slot::g: return "g";
        case Slot::h: return "h";
        case Slot::r: return "r";
        case Slot::c: return "c";
        case Slot::r_tilde: return "r~";
        case Slot::c_tilde: return "c~";
        case Slot::r_x: return "rX";
        case Slot::c_y: return "cY";
        case Slot::r_y: return "rY";
        case Slot::c_x: return "cX";
        case Slot::r_tilde_x: return "r~X";
        case Slot::c_tilde_y: return "c~Y";
        default: return "?";
    }
}

CatalogEntry make(const std::string& group, const std::string& item, int form, Slot g, Slot h,
                  std::string note = {}) {
    CatalogEntry e;
    e.group = group;
    e.item = item;
    e.id = group + "-" + item;
    e.form = form;
    e.g_slot = g;
    e.h_slot = form_uses_h(form) ? h : Slot::none;
    e.note = std::move(note);
    return e;
}

CatalogEntry make_kind(const std::string& group, const std::string& item, int kind, Slot g, Slot h) {
    const KindForm kf = kind_form(kind);
    const Slot first = kf.first_is_h ? h : g;
    const Slot second = kf.second_is_h ? h : g;
    return make(group, item, kf.form, first, second);
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> cat;

    const int t41[19] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 14, 15, 18, 19, 20, 21, 24, 25};
    for (int i = 0; i < 19; ++i) cat.push_back(make("T4.1", std::to_string(i + 1), t41[i], Slot::g, Slot::h));

    const int k42[22] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 16, 17, 18, 22, 23, 24, 25, 28, 29};
    for (int i = 0; i < 22; ++i)
        cat.push_back(make_kind("T4.2", std::to_string(i + 1), k42[i], Slot::r_tilde_x, Slot::c_tilde_y));

    for (int i = 0; i < 22; ++i) {
        const std::string item = std::to_string(i + 1);
        if (i == 13) {
            cat.push_back(make("T4.3", item, 15, Slot::r_x, Slot::r_y,
                               "mixed scalings as printed; same-scaling reading is T4.3-14alt"));
        } else if (i == 14) {
            cat.push_back(make("T4.3", item, 15, Slot::c_x, Slot::c_y,
                               "mixed scalings as printed; same-scaling reading is T4.3-15alt"));
        } else {
            cat.push_back(make_kind("T4.3", item, k42[i], Slot::r_x, Slot::c_y));
        }
    }
    {
        CatalogEntry a = make_kind("T4.3", "14alt", 16, Slot::r_x, Slot::c_y);
        a.note = "reading of T4.3-14 with the pattern of T4.2-14";
        cat.push_back(a);
        CatalogEntry b = make_kind("T4.3", "15alt", 17, Slot::r_x, Slot::c_y);
        b.note = "reading of T4.3-15 with the pattern of T4.2-15";
        cat.push_back(b);
    }

    const int t44[8] = {12, 13, 16, 17, 22, 23, 27, 26};
    for (int i = 0; i < 8; ++i) cat.push_back(make("T4.4", std::to_string(i + 1), t44[i], Slot::g, Slot::h));

    const int k45[9] = {14, 15, 19, 20, 21, 26, 27, 31, 30};
    for (int i = 0; i < 9; ++i)
        cat.push_back(make_kind("T4.5", std::to_string(i + 1), k45[i], Slot::r_tilde_x, Slot::c_tilde_y));
    for (int i = 0; i < 9; ++i)
        cat.push_back(make_kind("T4.5", std::to_string(i + 1) + "'", k45[i], Slot::r_x, Slot::c_y));

    for (int i = 0; i < 31; ++i) {
        const int kind = i < 29 ? i + 1 : (i == 29 ? 31 : 30);
        cat.push_back(make_kind("T4.6", std::to_string(i + 1), kind, Slot::r_tilde, Slot::c_tilde));
    }
    for (int i = 0; i < 31; ++i) {
        const int kind = i < 29 ? i + 1 : (i == 29 ? 31 : 30);
        cat.push_back(make_kind("T4.7", std::to_string(i + 1), kind, Slot::r, Slot::c));
    }
    return cat;
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
        s.replace(pos, from.size(), to);
}

void require_grid_value(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::invalid_argument, std::string(name) + " must lie in [0,1]");
}

}  // namespace

const char* to_string(Slot s) noexcept {
    switch (s) {
        case Slot::none: return "none";
        case Slot::g: return "g";
        case Slot::h: return "h";
        case Slot::r: return "r";
        case Slot::c: return "c";
        case Slot::r_tilde: return "r_tilde";
        case Slot::c_tilde: return "c_tilde";
        case Slot::r_x: return "r_x";
        case Slot::c_y: return "c_y";
        case Slot::r_y: return "r_y";
        case Slot::c_x: return "c_x";
        case Slot::r_tilde_x: return "r_tilde_x";
        case Slot::c_tilde_y: return "c_tilde_y";
    }
    return "?";
}

bool CatalogEntry::needs_x() const {
    auto isx = [](Slot s) { return s == Slot::r_x || s == Slot::c_x || s == Slot::r_tilde_x; };
    return isx(g_slot) || isx(h_slot);
}

bool CatalogEntry::needs_y() const {
    auto isy = [](Slot s) { return s == Slot::c_y || s == Slot::r_y || s == Slot::c_tilde_y; };
    return isy(g_slot) || isy(h_slot);
}

bool CatalogEntry::needs_generic() const { return g_slot == Slot::g || h_slot == Slot::h; }

std::string CatalogEntry::statement() const {
    std::string lhs;
    switch (form_shape(form)) {
        case FormShape::point: lhs = "|a_ii|"; break;
        case FormShape::product: lhs = "|a_ii||a_jj|"; break;
        default: lhs = "|a_ii|^a |a_jj|^(1-a)"; break;
    }
    std::string rhs = form_templates[form - 1];
    replace_all(rhs, "G_", std::string(slot_symbol(g_slot)) + "_");
    if (h_slot != Slot::none) replace_all(rhs, "H_", std::string(slot_symbol(h_slot)) + "_");
    return lhs + " > " + rhs;
}

const std::vector<CatalogEntry>& criterion_catalog() {
    static const std::vector<CatalogEntry> cat = build_catalog();
    return cat;
}

const CatalogEntry& find_criterion(std::string_view id) {
    for (const auto& e : criterion_catalog())
        if (e.id == id) return e;
    throw Error(ErrorCode::unknown_criterion, "unknown criterion id '" + std::string(id) + "'");
}

SumVector slot_vector(Slot slot, const ComplexMatrix& a, const CriterionSpec& spec) {
    auto need = [&](const std::optional<PositiveScaling>& s, const char* what) -> const PositiveScaling& {
        if (!s) throw Error(ErrorCode::invalid_argument, std::string("criterion ") + spec.catalog_id + " needs scaling " + what);
        return *s;
    };
    switch (slot) {
        case Slot::g:
            if (!spec.g_id) throw Error(ErrorCode::invalid_argument, "criterion " + spec.catalog_id + " needs a G-function g");
            return eval_gfunction(*spec.g_id, a);
        case Slot::h:
            if (!spec.h_id) throw Error(ErrorCode::invalid_argument, "criterion " + spec.catalog_id + " needs a G-function h");
            return eval_gfunction(*spec.h_id, a);
        case Slot::r: return deleted_sums(a, Axis::row);
        case Slot::c: return deleted_sums(a, Axis::column);
        case Slot::r_tilde: return tilde_sums(a, Axis::row);
        case Slot::c_tilde: return tilde_sums(a, Axis::column);
        case Slot::r_x: return weighted_deleted_sums(a, need(spec.x, "x"), Axis::row);
        case Slot::c_x: return weighted_deleted_sums(a, need(spec.x, "x"), Axis::column);
        case Slot::r_y: return weighted_deleted_sums(a, need(spec.y, "y"), Axis::row);
        case Slot::c_y: return weighted_deleted_sums(a, need(spec.y, "y"), Axis::column);
        case Slot::r_tilde_x: return tilde_sums(a, Axis::row, need(spec.x, "x"));
        case Slot::c_tilde_y: return tilde_sums(a, Axis::column, need(spec.y, "y"));
        default: throw Error(ErrorCode::invalid_argument, "empty slot");
    }
}

CriterionOutcome evaluate_entry(const CatalogEntry& e, const std::vector<double>& d, const std::vector<double>& g,
                                const std::vector<double>& h, double alpha, double beta, double tau) {
    const std::size_t n = d.size();
    if (g.size() != n || h.size() != n) throw Error(ErrorCode::dimension_mismatch, "slot vector length differs from matrix order");
    require_grid_value(alpha, "alpha");
    require_grid_value(beta, "beta");
    const FormShape shape = form_shape(e.form);
    CriterionOutcome out;
    out.margin = std::numeric_limits<double>::infinity();
    out.fired = true;

    auto record = [&](double lhs, double rhs, std::size_t i, std::size_t j) {
        const double m = lhs - rhs;
        if (!(m > tau)) out.fired = false;
        if (m < out.margin || std::isnan(m)) {
            out.margin = m;
            out.i = i;
            out.j = j;
        }
    };

    if (shape == FormShape::point && n == 1) {
        record(d[0], form_radius(e.form, g[0], g[0], h[0], h[0], alpha, beta), 0, 0);
        return out;
    }
    if (n < 2) return out;  // pair conditions hold vacuously

    if (const auto spec = form_pair_function(e.form, alpha, beta)) {
        out.via_pair_function = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    record(pair_function(*spec, d[i], d[j], d[i], d[j]), pair_function(*spec, g[i], g[j], h[i], h[j]), i, j);
        return out;
    }
    if (shape == FormShape::point) {
        for (std::size_t i = 0; i < n; ++i) record(d[i], form_radius(e.form, g[i], g[i], h[i], h[i], alpha, beta), i, i);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                record(form_lhs(shape, d[i], d[j], alpha), form_radius(e.form, g[i], g[j], h[i], h[j], alpha, beta), i, j);
    return out;
}

CriterionOutcome evaluate_criterion(const CriterionSpec& spec, const ComplexMatrix& a, double tau) {
    const CatalogEntry& e = find_criterion(spec.catalog_id);
    const auto d = diag_abs(a);
    const SumVector g = slot_vector(e.g_slot, a, spec);
    const SumVector h = e.h_slot == Slot::none ? g : slot_vector(e.h_slot, a, spec);
    return evaluate_entry(e, d, g.values, h.values, spec.alpha, spec.beta, tau);
}

bool check_criterion(const CriterionSpec& spec, const ComplexMatrix& a, double tau) {
    return evaluate_criterion(spec, a, tau).fired;
}

// ---------------------------------------------------------------------------

SweepPlan default_sweep_plan(const ComplexMatrix& a) {
    SweepPlan plan;
    const std::size_t n = a.order();
    plan.xs.push_back({"ones", PositiveScaling::ones(n)});
    plan.ys.push_back({"ones", PositiveScaling::ones(n)});
    const ClassificationReport rep = classify_h(a);
    if (rep.certificate) plan.xs.push_back({"certificate", *rep.certificate});
    const ClassificationReport rep_t = classify_h(transpose(a));
    if (rep_t.certificate) plan.ys.push_back({"transpose_certificate_inverse", rep_t.certificate->inverse()});

    plan.generic.push_back({"r", GFunctionId::plain(GFamily::r)});
    plan.generic.push_back({"c", GFunctionId::plain(GFamily::c)});
    plan.generic.push_back({"r_tilde", GFunctionId::plain(GFamily::r_tilde)});
    plan.generic.push_back({"c_tilde", GFunctionId::plain(GFamily::c_tilde)});
    if (rep.certificate)
        plan.generic.push_back({"r_weighted[certificate]", GFunctionId::weighted(GFamily::r_weighted, *rep.certificate)});
    if (rep_t.certificate)
        plan.generic.push_back({"c_weighted[transpose_certificate_inverse]",
                                GFunctionId::weighted(GFamily::c_weighted, rep_t.certificate->inverse())});
    return plan;
}

SweepResult sweep_criteria(const ComplexMatrix& a, const SweepPlan& plan) {
    const std::size_t n = a.order();
    for (double v : plan.alphas) require_grid_value(v, "alpha");
    for (double v : plan.betas) require_grid_value(v, "beta");
    for (const auto& s : plan.xs)
        if (s.scaling.size() != n) throw Error(ErrorCode::dimension_mismatch, "scaling '" + s.label + "' has wrong length");
    for (const auto& s : plan.ys)
        if (s.scaling.size() != n) throw Error(ErrorCode::dimension_mismatch, "scaling '" + s.label + "' has wrong length");

    std::vector<const CatalogEntry*> entries;
    if (plan.ids.empty()) {
        for (const auto& e : criterion_catalog()) entries.push_back(&e);
    } else {
        for (const auto& id : plan.ids) find_criterion(id);
        for (const auto& e : criterion_catalog())
            if (std::find(plan.ids.begin(), plan.ids.end(), e.id) != plan.ids.end()) entries.push_back(&e);
    }

    const FrobeniusForm f = frobenius_normal_form(a);
    const auto d = diag_abs(a);
    const auto r = deleted_sums(a, Axis::row).values;
    const auto c = deleted_sums(a, Axis::column).values;
    const auto rt = tilde_sums(a, f, Axis::row, std::nullopt).values;
    const auto ct = tilde_sums(a, f, Axis::column, std::nullopt).values;
    std::vector<std::vector<double>> rx, cx, rtx, cy, ry, cty;
    for (const auto& s : plan.xs) {
        rx.push_back(weighted_deleted_sums(a, s.scaling, Axis::row).values);
        cx.push_back(weighted_deleted_sums(a, s.scaling, Axis::column).values);
        rtx.push_back(tilde_sums(a, f, Axis::row, s.scaling).values);
    }
    for (const auto& s : plan.ys) {
        cy.push_back(weighted_deleted_sums(a, s.scaling, Axis::column).values);
        ry.push_back(weighted_deleted_sums(a, s.scaling, Axis::row).values);
        cty.push_back(tilde_sums(a, f, Axis::column, s.scaling).values);
    }
    std::vector<std::vector<double>> gen;
    for (const auto& g : plan.generic) gen.push_back(eval_gfunction(g.id, a).values);

    auto vec = [&](Slot s, std::size_t xi, std::size_t yi, std::size_t gi, std::size_t hi) -> const std::vector<double>& {
        switch (s) {
            case Slot::g: return gen[gi];
            case Slot::h: return gen[hi];
            case Slot::r: return r;
            case Slot::c: return c;
            case Slot::r_tilde: return rt;
            case Slot::c_tilde: return ct;
            case Slot::r_x: return rx[xi];
            case Slot::c_x: return cx[xi];
            case Slot::r_tilde_x: return rtx[xi];
            case Slot::c_y: return cy[yi];
            case Slot::r_y: return ry[yi];
            case Slot::c_tilde_y: return cty[yi];
            default: throw Error(ErrorCode::invalid_argument, "empty slot");
        }
    };

    const std::vector<double> one{1.0};
    SweepResult res;
    for (const CatalogEntry* e : entries) {
        const bool uses_g = e->g_slot == Slot::g;
        const bool uses_h = e->h_slot == Slot::h;
        if ((uses_g || uses_h) && gen.empty()) continue;
        const std::size_t ng = uses_g ? gen.size() : 1, nh = uses_h ? gen.size() : 1;
        const std::size_t nx = e->needs_x() ? plan.xs.size() : 1, ny = e->needs_y() ? plan.ys.size() : 1;
        if (nx == 0 || ny == 0) continue;
        const auto& as = e->uses_alpha() ? plan.alphas : one;
        const auto& bs = e->uses_beta() ? plan.betas : one;
        bool any = false;
        for (std::size_t gi = 0; gi < ng; ++gi)
            for (std::size_t hi = 0; hi < nh; ++hi)
                for (std::size_t xi = 0; xi < nx; ++xi)
                    for (std::size_t yi = 0; yi < ny; ++yi) {
                        const auto& gv = vec(e->g_slot, xi, yi, gi, hi);
                        const auto& hv = e->h_slot == Slot::none ? gv : vec(e->h_slot, xi, yi, gi, hi);
                        for (double al : as)
                            for (double be : bs) {
                                const CriterionOutcome o = evaluate_entry(*e, d, gv, hv, al, be, plan.tau);
                                SweepRow row;
                                row.id = e->id;
                                row.g_label = uses_g ? plan.generic[gi].label : to_string(e->g_slot);
                                if (e->h_slot != Slot::none)
                                    row.h_label = uses_h ? plan.generic[hi].label : to_string(e->h_slot);
                                if (e->needs_x()) row.x_label = plan.xs[xi].label;
                                if (e->needs_y()) row.y_label = plan.ys[yi].label;
                                if (e->uses_alpha()) row.alpha = al;
                                if (e->uses_beta()) row.beta = be;
                                row.fired = o.fired;
                                row.margin = o.margin;
                                if (o.fired) {
                                    any = true;
                                    if (!res.best_margin || o.margin > *res.best_margin) res.best_margin = o.margin;
                                    if (!res.min_margin || o.margin < *res.min_margin) res.min_margin = o.margin;
                                }
                                res.rows.push_back(std::move(row));
                            }
                    }
        if (any) res.fired_ids.push_back(e->id);
    }
    res.certifies_gdd = !res.fired_ids.empty();
    return res;
}

}  // namespace gddkit
