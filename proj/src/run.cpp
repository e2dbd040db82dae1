#include "run.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <tuple>
#include <sstream>

#include "gddkit/eigen.hpp"
#include "gddkit/random.hpp"
#include "gddkit/regions.hpp"
#include "gddkit/structure.hpp"

namespace gddkit::run {

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json complex_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

json vector_json(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::invalid_argument, what); }

std::vector<double> grid(const json& cfg, const char* key, std::vector<double> fallback) {
    if (!cfg.contains(key)) return fallback;
    std::vector<double> g = cfg.at(key).get<std::vector<double>>();
    if (g.empty()) bad(std::string(key) + " is empty");
    for (double v : g)
        if (!(v >= 0.0 && v <= 1.0)) bad(std::string(key) + " values must lie in [0,1]");
    return g;
}

std::vector<double> read_numbers(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open scaling file '" + path + "'");
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        if (tok.front() == '#') {
            std::getline(in, tok);
            continue;
        }
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(ErrorCode::parse_error, "scaling file '" + path + "': bad number '" + tok + "'");
        }
    }
    return v;
}

struct Scalings {
    std::vector<NamedScaling> xs, ys;
};

Scalings resolve_scalings(const ComplexMatrix& a, const json& cfg, std::uint64_t seed) {
    const std::size_t n = a.order();
    std::vector<std::string> specs{"ones", "certificate"};
    if (cfg.contains("scalings")) specs = cfg.at("scalings").get<std::vector<std::string>>();
    Scalings s;
    Rng rng(seed);
    for (const auto& spec : specs) {
        if (spec == "ones") {
            s.xs.push_back({"ones", PositiveScaling::ones(n)});
            s.ys.push_back({"ones", PositiveScaling::ones(n)});
        } else if (spec == "certificate") {
            const auto rep = classify_h(a);
            if (rep.certificate) s.xs.push_back({"certificate", *rep.certificate});
            const auto rep_t = classify_h(transpose(a));
            if (rep_t.certificate) s.ys.push_back({"transpose_certificate_inverse", rep_t.certificate->inverse()});
        } else if (spec.rfind("random:", 0) == 0) {
            std::size_t count = 0;
            try {
                count = std::stoul(spec.substr(7));
            } catch (const std::exception&) {
                bad("bad scaling source '" + spec + "'");
            }
            for (std::size_t t = 0; t < count; ++t) {
                s.xs.push_back({"random" + std::to_string(t + 1), log_uniform_scaling(rng, n)});
                s.ys.push_back({"random" + std::to_string(t + 1), log_uniform_scaling(rng, n)});
            }
        } else if (spec.rfind("file:", 0) == 0) {
            const std::string path = spec.substr(5);
            std::vector<double> v = read_numbers(path);
            if (v.size() != n)
                throw Error(ErrorCode::dimension_mismatch, "scaling file '" + path + "' has " + std::to_string(v.size()) +
                                                               " values, matrix order is " + std::to_string(n));
            PositiveScaling x(std::move(v));
            s.xs.push_back({spec, x});
            s.ys.push_back({spec, x});
        } else {
            bad("unknown scaling source '" + spec + "' (ones, certificate, random:k, file:path)");
        }
    }
    return s;
}

std::vector<int> k_list(const json& cfg, Definition def) {
    std::vector<int> ks;
    if (cfg.contains("k")) ks = cfg.at("k").get<std::vector<int>>();
    if (ks.empty())
        for (int k = 1; k <= max_k(def); ++k) ks.push_back(k);
    for (int k : ks)
        if (k < 1 || k > max_k(def))
            bad("k=" + std::to_string(k) + " out of range 1.." + std::to_string(max_k(def)) + " for definition " + to_string(def));
    return ks;
}

std::pair<std::string, std::string> slot_labels(Definition def, const DefinitionInputs& in) {
    switch (def) {
        case Definition::d5_1: return {in.g ? in.g->label() : "r", in.h ? in.h->label() : "c"};
        case Definition::d5_2: return {"r_tilde_x", "c_tilde_y"};
        case Definition::d5_3: return {"r_x", "c_y"};
        case Definition::d5_4: return {"r_tilde", "c_tilde"};
        default: return {"r", "c"};
    }
}

std::vector<RegionSet> enumerate_sets(const ComplexMatrix& a, const json& cfg, Definition def,
                                      const std::vector<double>& alphas, const std::vector<double>& betas,
                                      const Scalings& sc) {
    const std::vector<int> ks = k_list(cfg, def);
    const bool weighted = def == Definition::d5_2 || def == Definition::d5_3;
    DefinitionInputs base;
    if (def == Definition::d5_1) {
        if (cfg.contains("g")) base.g = parse_gfunction(cfg.at("g"), a);
        if (cfg.contains("h")) base.h = parse_gfunction(cfg.at("h"), a);
    }
    const std::vector<NamedScaling> ones{{"ones", PositiveScaling::ones(a.order())}};
    const auto& xs = weighted && !sc.xs.empty() ? sc.xs : ones;
    const auto& ys = weighted && !sc.ys.empty() ? sc.ys : ones;
    const std::vector<double> one{1.0};

    std::vector<RegionSet> sets;
    for (int k : ks) {
        int form = k;
        bool uses_g = true, uses_h = form_uses_h(k);
        if (def != Definition::d5_1) {
            const KindForm kf = kind_form(k);
            form = kf.form;
            uses_g = !kf.first_is_h || (form_uses_h(form) && !kf.second_is_h);
            uses_h = kf.first_is_h || (form_uses_h(form) && kf.second_is_h);
        }
        const auto& as = form_uses_alpha(form) ? alphas : one;
        const auto& bs = form_uses_beta(form) ? betas : one;
        const std::size_t nx = weighted && uses_g ? xs.size() : 1, ny = weighted && uses_h ? ys.size() : 1;
        for (std::size_t xi = 0; xi < nx; ++xi)
            for (std::size_t yi = 0; yi < ny; ++yi) {
                DefinitionInputs in = base;
                in.x = xs[xi].scaling;
                in.y = ys[yi].scaling;
                const auto [g, h] = definition_vectors(a, def, in);
                for (double al : as)
                    for (double be : bs) {
                        RegionSet s = build_region_set(a, def, k, g, h, al, be);
                        std::tie(s.provenance.g_label, s.provenance.h_label) = slot_labels(def, in);
                        if (weighted && uses_g) s.provenance.x_label = xs[xi].label;
                        if (weighted && uses_h) s.provenance.y_label = ys[yi].label;
                        sets.push_back(std::move(s));
                    }
            }
    }
    return sets;
}

json provenance_json(const RegionProvenance& p) {
    json j;
    j["definition"] = to_string(p.definition);
    j["k"] = p.k;
    j["form"] = p.form;
    j["alpha"] = p.alpha ? json(*p.alpha) : json(nullptr);
    j["beta"] = p.beta ? json(*p.beta) : json(nullptr);
    j["g"] = p.g_label;
    j["h"] = p.h_label;
    j["x"] = p.x_label.empty() ? json(nullptr) : json(p.x_label);
    j["y"] = p.y_label.empty() ? json(nullptr) : json(p.y_label);
    return j;
}

json region_json(const Region& r) {
    json j;
    j["kind"] = to_string(r.kind);
    j["i"] = r.i + 1;
    j["centers"] = r.kind == RegionKind::disk ? json::array({complex_json(r.a)}) : json::array({complex_json(r.a), complex_json(r.b)});
    j["rho"] = number(r.rho);
    if (r.kind != RegionKind::disk) j["j"] = r.j + 1;
    if (r.kind == RegionKind::powermean) j["alpha"] = r.alpha;
    return j;
}

std::pair<std::size_t, std::size_t> resolution(const json& cfg) {
    if (!cfg.contains("resolution")) return {256, 256};
    const auto r = cfg.at("resolution").get<std::vector<std::size_t>>();
    if (r.size() != 2 || r[0] < 2 || r[1] < 2) bad("resolution must be two integers >= 2");
    return {r[0], r[1]};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io_error, "cannot write '" + path + "'");
    out << content;
    if (!out) throw Error(ErrorCode::io_error, "write to '" + path + "' failed");
}

const char* const palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

json regions_section(const ComplexMatrix& a, const json& cfg, Definition def, const std::vector<RegionSet>& sets,
                     const std::vector<cplx>* spectrum) {
    json out;
    out["definition"] = to_string(def);
    out["set_count"] = sets.size();
    json arr = json::array();
    for (const auto& s : sets) {
        json j = provenance_json(s.provenance);
        json regs = json::array();
        for (const auto& r : s.regions) regs.push_back(region_json(r));
        j["regions"] = std::move(regs);
        arr.push_back(std::move(j));
    }
    const bool want_svg = cfg.contains("svg"), want_csv = cfg.contains("csv");
    const bool intersect = cfg.value("intersect", false);
    if (!(want_svg || want_csv || intersect)) {
        out["sets"] = std::move(arr);
        return out;
    }
    const auto [nx, ny] = resolution(cfg);
    std::vector<const RegionSet*> ptrs;
    for (const auto& s : sets) ptrs.push_back(&s);
    const BBox box = default_bbox(ptrs);
    out["bbox"] = json::array({complex_json(box.lo), complex_json(box.hi)});
    out["resolution"] = json::array({nx, ny});
    std::vector<SvgLayer> layers;
    std::ostringstream csv;
    for (std::size_t t = 0; t < sets.size(); ++t) {
        GridMask m = rasterize(sets[t], box, nx, ny);
        arr[t]["fill_fraction"] = m.fill_fraction();
        if (want_csv) {
            const auto& p = sets[t].provenance;
            csv << "# set " << t + 1 << " definition " << to_string(p.definition) << " k " << p.k;
            if (p.alpha) csv << " alpha " << *p.alpha;
            if (p.beta) csv << " beta " << *p.beta;
            if (!p.x_label.empty()) csv << " x " << p.x_label;
            if (!p.y_label.empty()) csv << " y " << p.y_label;
            csv << '\n';
            write_csv(csv, m);
        }
        if (want_svg) {
            std::ostringstream label;
            label << "definition " << to_string(sets[t].provenance.definition) << " k=" << sets[t].provenance.k;
            layers.push_back({&sets[t], std::move(m), label.str(), palette[t % 8]});
        }
    }
    out["sets"] = std::move(arr);
    if (intersect && !sets.empty()) {
        const Intersection x = approx_intersection(sets);
        GridMask m = x.rasterize(box, nx, ny);
        json ij;
        ij["label"] = Intersection::label;
        ij["set_count"] = sets.size();
        ij["fill_fraction"] = m.fill_fraction();
        out["intersection"] = std::move(ij);
        if (want_csv) {
            csv << "# intersection (" << Intersection::label << ")\n";
            write_csv(csv, m);
        }
        if (want_svg) layers.push_back({nullptr, std::move(m), Intersection::label, "#000000"});
    }
    if (want_csv) write_file(cfg.at("csv").get<std::string>(), csv.str());
    if (want_svg) {
        std::ostringstream svg;
        write_svg(svg, layers, spectrum ? *spectrum : std::vector<cplx>{});
        write_file(cfg.at("svg").get<std::string>(), svg.str());
    }
    (void)a;
    return out;
}

Spectrum obtain_spectrum(const ComplexMatrix& a, const json& cfg) {
    if (cfg.contains("spectrum")) {
        Spectrum s = load_spectrum(cfg.at("spectrum").get<std::string>());
        if (s.eigenvalues.size() != a.order())
            throw Error(ErrorCode::dimension_mismatch, "spectrum file holds " + std::to_string(s.eigenvalues.size()) +
                                                           " values, matrix order is " + std::to_string(a.order()));
        return s;
    }
    Spectrum s = eigenvalues(a);
    if (!s.converged) throw Error(ErrorCode::not_converged, s.message);
    return s;
}

json spectrum_json(const Spectrum& s, bool pinned) {
    json j;
    j["source"] = pinned ? "file" : "oracle";
    json ev = json::array();
    for (cplx z : s.eigenvalues) ev.push_back(complex_json(z));
    j["eigenvalues"] = std::move(ev);
    if (!pinned) {
        j["residual"] = number(s.residual);
        j["iterations"] = s.iterations;
    }
    return j;
}

json verify_section(const std::vector<RegionSet>& sets, const std::vector<cplx>& spectrum, double tol,
                    std::size_t& violations) {
    json arr = json::array();
    violations = 0;
    for (const auto& s : sets) {
        const InclusionReport rep = verify_inclusion(spectrum, s, tol);
        json j = provenance_json(s.provenance);
        json recs = json::array();
        for (const auto& r : rep.records) {
            json rj;
            rj["lambda"] = complex_json(r.lambda);
            rj["contained"] = r.contained;
            rj["margin"] = number(r.margin);
            if (r.region) {
                const Region& reg = s.regions[*r.region];
                rj["witness"] = reg.kind == RegionKind::disk ? json::array({reg.i + 1}) : json::array({reg.i + 1, reg.j + 1});
            } else {
                rj["witness"] = nullptr;
            }
            recs.push_back(std::move(rj));
        }
        j["records"] = std::move(recs);
        j["violations"] = rep.violations;
        violations += rep.violations;
        arr.push_back(std::move(j));
    }
    return arr;
}

json sweep_section(const ComplexMatrix& a, const json& cfg, const Scalings& sc, double tau) {
    SweepPlan plan;
    plan.alphas = grid(cfg, "alpha_grid", plan.alphas);
    plan.betas = grid(cfg, "beta_grid", plan.betas);
    if (cfg.contains("ids")) plan.ids = cfg.at("ids").get<std::vector<std::string>>();
    plan.xs = sc.xs;
    plan.ys = sc.ys;
    plan.tau = tau;
    plan.generic.push_back({"r", GFunctionId::plain(GFamily::r)});
    plan.generic.push_back({"c", GFunctionId::plain(GFamily::c)});
    plan.generic.push_back({"r_tilde", GFunctionId::plain(GFamily::r_tilde)});
    plan.generic.push_back({"c_tilde", GFunctionId::plain(GFamily::c_tilde)});
    for (const auto& x : sc.xs)
        if (x.label != "ones")
            plan.generic.push_back({"r_weighted[" + x.label + "]", GFunctionId::weighted(GFamily::r_weighted, x.scaling)});
    for (const auto& y : sc.ys)
        if (y.label != "ones")
            plan.generic.push_back({"c_weighted[" + y.label + "]", GFunctionId::weighted(GFamily::c_weighted, y.scaling)});

    const SweepResult res = sweep_criteria(a, plan);
    json out;
    json p;
    p["alpha_grid"] = plan.alphas;
    p["beta_grid"] = plan.betas;
    json xl = json::array(), yl = json::array(), gl = json::array();
    for (const auto& x : plan.xs) xl.push_back(x.label);
    for (const auto& y : plan.ys) yl.push_back(y.label);
    for (const auto& g : plan.generic) gl.push_back(g.label);
    p["x"] = xl;
    p["y"] = yl;
    p["generic"] = gl;
    p["tau"] = tau;
    out["plan"] = std::move(p);
    json rows = json::array();
    std::ostringstream csv;
    csv << "id,g,h,x,y,alpha,beta,fired,margin\n";
    for (const auto& r : res.rows) {
        json j;
        j["id"] = r.id;
        j["g"] = r.g_label;
        j["h"] = r.h_label.empty() ? json(nullptr) : json(r.h_label);
        j["x"] = r.x_label.empty() ? json(nullptr) : json(r.x_label);
        j["y"] = r.y_label.empty() ? json(nullptr) : json(r.y_label);
        j["alpha"] = r.alpha ? json(*r.alpha) : json(nullptr);
        j["beta"] = r.beta ? json(*r.beta) : json(nullptr);
        j["fired"] = r.fired;
        j["margin"] = number(r.margin);
        rows.push_back(std::move(j));
        csv << r.id << ',' << r.g_label << ',' << r.h_label << ',' << r.x_label << ',' << r.y_label << ','
            << (r.alpha ? json(*r.alpha).dump() : "") << ',' << (r.beta ? json(*r.beta).dump() : "") << ','
            << (r.fired ? 1 : 0) << ',' << json(r.margin).dump() << '\n';
    }
    out["rows"] = std::move(rows);
    out["fired_ids"] = res.fired_ids;
    out["certifies_gdd"] = res.certifies_gdd;
    out["best_margin"] = res.best_margin ? number(*res.best_margin) : json(nullptr);
    out["min_margin"] = res.min_margin ? number(*res.min_margin) : json(nullptr);
    if (cfg.contains("criteria_csv")) write_file(cfg.at("criteria_csv").get<std::string>(), csv.str());
    return out;
}

}  // namespace

json classification_json(const ComplexMatrix& a, const ClassificationReport& rep) {
    json j;
    j["n"] = rep.n;
    j["is_sdd"] = rep.is_sdd;
    j["is_z"] = rep.is_z;
    j["is_m"] = rep.is_m ? json(*rep.is_m) : json(nullptr);
    j["m_verdict"] = rep.is_z ? json(to_string(rep.m_verdict)) : json(nullptr);
    j["h_verdict"] = to_string(rep.h_verdict);
    j["is_h_gdd"] = rep.is_h_gdd;
    j["certificate"] = rep.certificate ? vector_json(rep.certificate->values()) : json(nullptr);
    j["witness"] = rep.witness.empty() ? json(nullptr) : json(rep.witness);
    j["jacobi_radius"] = rep.jacobi_radius ? number(*rep.jacobi_radius) : json(nullptr);
    j["jacobi_bracket"] = rep.jacobi_radius ? json::array({number(rep.jacobi_lower), number(rep.jacobi_upper)}) : json(nullptr);
    j["iterations"] = rep.iterations;
    const FrobeniusForm f = frobenius_normal_form(a);
    json blocks = json::array();
    for (std::size_t b = 0; b < f.block_count(); ++b) {
        json idx = json::array();
        for (std::size_t i : f.block_indices(b)) idx.push_back(i + 1);
        blocks.push_back(std::move(idx));
    }
    j["blocks"] = std::move(blocks);
    j["irreducible"] = is_irreducible(a);
    return j;
}

json catalog_json() {
    json arr = json::array();
    for (const auto& e : criterion_catalog()) {
        json j;
        j["id"] = e.id;
        j["theorem"] = e.group.substr(1);
        j["item"] = e.item;
        j["statement"] = e.statement();
        j["form"] = e.form;
        j["arity"] = form_shape(e.form) == FormShape::point ? "index" : "pair";
        j["g"] = to_string(e.g_slot);
        j["h"] = e.h_slot == Slot::none ? json(nullptr) : json(to_string(e.h_slot));
        json params = json::array();
        if (e.uses_alpha()) params.push_back("alpha");
        if (e.uses_beta()) params.push_back("beta");
        if (e.needs_x()) params.push_back("x");
        if (e.needs_y()) params.push_back("y");
        if (e.g_slot == Slot::g) params.push_back("g");
        if (e.h_slot == Slot::h) params.push_back("h");
        j["parameters"] = std::move(params);
        if (!e.note.empty()) j["note"] = e.note;
        arr.push_back(std::move(j));
    }
    return arr;
}

GFunctionId parse_gfunction(const json& v, const ComplexMatrix& a) {
    const std::size_t n = a.order();
    std::string fam;
    json obj = json::object();
    if (v.is_string()) {
        fam = v.get<std::string>();
    } else if (v.is_object()) {
        fam = v.at("family").get<std::string>();
        obj = v;
    } else {
        bad("G-function must be a family name or an object");
    }
    const double p = obj.value("p", 2.0);
    if (fam == "r") return GFunctionId::plain(GFamily::r);
    if (fam == "c") return GFunctionId::plain(GFamily::c);
    if (fam == "r_tilde") return GFunctionId::plain(GFamily::r_tilde);
    if (fam == "c_tilde") return GFunctionId::plain(GFamily::c_tilde);
    auto scaling = [&] {
        if (!obj.contains("scaling")) bad("G-function '" + fam + "' needs a scaling");
        return PositiveScaling(obj.at("scaling").get<std::vector<double>>());
    };
    if (fam == "r_weighted") return GFunctionId::weighted(GFamily::r_weighted, scaling());
    if (fam == "c_weighted") return GFunctionId::weighted(GFamily::c_weighted, scaling());
    if (fam == "r_tilde_weighted") return GFunctionId::weighted(GFamily::r_tilde_weighted, scaling());
    if (fam == "c_tilde_weighted") return GFunctionId::weighted(GFamily::c_tilde_weighted, scaling());
    if (fam == "g1") return GFunctionId::g1(obj.value("alpha", 0.5), p);
    if (fam == "g2" || fam == "g3") {
        std::vector<double> ab;
        if (obj.contains("alpha_bar")) {
            ab = obj.at("alpha_bar").get<std::vector<double>>();
        } else {
            const double q = p / (p - 1.0);
            const double dflt = fam == "g2" ? static_cast<double>(n) - 1.0 : std::pow(static_cast<double>(n), -1.0 / q);
            ab.assign(n, fam == "g2" && n == 1 ? 1.0 : dflt);
        }
        return fam == "g2" ? GFunctionId::g2(std::move(ab), p) : GFunctionId::g3(std::move(ab), p);
    }
    if (fam == "g4") return GFunctionId::g4(obj.contains("alpha") ? obj.at("alpha").get<double>() : g4_min_alpha(a));
    bad("unknown G-function family '" + fam + "'");
}

CriterionOutcome check_from_json(const ComplexMatrix& a, const json& spec) {
    try {
        CriterionSpec cs;
        cs.catalog_id = spec.at("id").get<std::string>();
        cs.alpha = spec.value("alpha", 1.0);
        cs.beta = spec.value("beta", 1.0);
        if (spec.contains("x")) cs.x = PositiveScaling(spec.at("x").get<std::vector<double>>());
        if (spec.contains("y")) cs.y = PositiveScaling(spec.at("y").get<std::vector<double>>());
        if (spec.contains("g")) cs.g_id = parse_gfunction(spec.at("g"), a);
        if (spec.contains("h")) cs.h_id = parse_gfunction(spec.at("h"), a);
        return evaluate_criterion(cs, a, spec.value("tau", 0.0));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("criterion spec: ") + e.what());
    }
}

Output execute(const ComplexMatrix& a, const json& cfg) {
    try {
        Output out;
        const std::string command = cfg.at("command").get<std::string>();
        static const std::set<std::string> known{"classify", "criteria", "regions", "verify", "report"};
        if (!known.count(command)) bad("unknown command '" + command + "'");
        const std::uint64_t seed = cfg.value("seed", std::uint64_t{0});
        json& r = out.report;
        r["schema"] = schema;
        r["command"] = command;
        r["seed"] = seed;
        r["n"] = a.order();
        if (cfg.contains("input")) r["input"] = cfg.at("input");
        const bool all = command == "report";

        if (command == "classify" || all) r["classification"] = classification_json(a, classify_h(a));

        Scalings sc;
        const bool need_scalings = command == "criteria" || all || command == "regions" || command == "verify";
        if (need_scalings) {
            sc = resolve_scalings(a, cfg, seed);
            json sj = json::array();
            for (const auto& x : sc.xs) sj.push_back(json{{"role", "x"}, {"label", x.label}, {"values", vector_json(x.scaling.values())}});
            for (const auto& y : sc.ys) sj.push_back(json{{"role", "y"}, {"label", y.label}, {"values", vector_json(y.scaling.values())}});
            r["scalings"] = std::move(sj);
        }

        if (command == "criteria" || all) r["criteria"] = sweep_section(a, cfg, sc, cfg.value("tau", 0.0));

        if (command == "regions" || command == "verify" || all) {
            const Definition def = parse_definition(cfg.value("def", std::string("5.5")));
            const std::vector<double> five{0.0, 0.25, 0.5, 0.75, 1.0};
            const bool only_regions = command == "regions";
            const auto alphas = grid(cfg, "alpha_grid", only_regions ? std::vector<double>{0.5} : five);
            const auto betas = grid(cfg, "beta_grid", only_regions ? std::vector<double>{0.5} : five);
            const auto sets = enumerate_sets(a, cfg, def, alphas, betas, sc);
            std::optional<Spectrum> spec;
            if (command != "regions") spec = obtain_spectrum(a, cfg);
            if (command == "regions" || all)
                r["regions"] = regions_section(a, cfg, def, sets, spec ? &spec->eigenvalues : nullptr);
            if (spec) {
                const double tol = cfg.value("tol", 1e-12);
                if (!(tol >= 0.0)) bad("tol must be nonnegative");
                std::size_t violations = 0;
                json v;
                v["definition"] = to_string(def);
                v["tol"] = tol;
                v["spectrum"] = spectrum_json(*spec, cfg.contains("spectrum"));
                v["sets"] = verify_section(sets, spec->eigenvalues, tol, violations);
                v["violations"] = violations;
                r["verification"] = std::move(v);
                out.violation = violations > 0;
            }
        }
        return out;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("config: ") + e.what());
    }
}

}  // namespace gddkit::run
