#include <doctest.h>

#include <regex>
#include <sstream>

#include "gddkit/regions.hpp"
#include "gddkit/structure.hpp"
#include "lemmas.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gddkit;
using namespace testing;

namespace {

RegionSet plain_set(const ComplexMatrix& a, int k, double alpha = 1.0, double beta = 1.0) {
    return build_catalog_set(a, Definition::d5_5, k, alpha, beta);
}

/// Masks of both sets on a shared box and the cells where they differ.
std::size_t mask_difference(const RegionSet& p, const RegionSet& q, std::size_t res) {
    const BBox box = default_bbox({&p, &q});
    const GridMask mp = rasterize(p, box, res, res), mq = rasterize(q, box, res, res);
    std::size_t diff = 0;
    for (std::size_t t = 0; t < mp.bits.size(); ++t) diff += mp.bits[t] != mq.bits[t];
    return diff;
}

}  // namespace

TEST_CASE("region set examples") {
    const auto g = plain_set(sym2(), 1);
    REQUIRE(g.regions.size() == 2);
    for (const auto& r : g.regions) {
        CHECK(r.kind == RegionKind::disk);
        CHECK(r.a == cplx(3));
        CHECK(r.rho == 1.0);
    }
    const auto c = plain_set(sym2(), 5);
    REQUIRE(c.regions.size() == 2);
    for (const auto& r : c.regions) {
        CHECK(r.kind == RegionKind::cassini);
        CHECK(r.rho == 1.0);
    }
    const auto o = plain_set(cassini2(), 7);
    REQUIRE(o.regions.size() == 2);
    CHECK(o.regions[0].i == 0);
    CHECK(o.regions[0].j == 1);
    CHECK(o.regions[0].rho == 16.0);
    CHECK(o.regions[1].rho == 0.25);

    CHECK_THROWS_AS(plain_set(sym2(), 32), Error);
    CHECK_THROWS_AS(build_catalog_set(sym2(), Definition::d5_1, 28, 1, 1), Error);
    CHECK_THROWS_AS(build_region_set(sym2(), Definition::d5_5, 1, SumVector{{1, 2, 3}}, SumVector{{1, 2}}), Error);
    CHECK(build_catalog_set(ComplexMatrix{{cplx(2)}}, Definition::d5_5, 7, 1, 1).regions.empty());
}

TEST_CASE("membership examples") {
    const auto g = plain_set(sym2(), 1);
    CHECK(g.contains(2.0));
    CHECK_FALSE(g.contains(0.0));
    CHECK(plain_set(singular3(), 1).contains(0.0));
    CHECK(plain_set(sym2(), 5).contains(cplx(3, 1)));
    CHECK_FALSE(plain_set(sym2(), 5).contains(cplx(3, 1.001)));
    // tolerance slack is relative
    CHECK_FALSE(g.contains(cplx(1.9999999), 0.0));
    CHECK(g.contains(cplx(1.99999999999), 1e-12 * 10));

    Region p;
    p.kind = RegionKind::powermean;
    p.a = 0.0;
    p.b = 4.0;
    p.alpha = 0.5;
    p.rho = 0.0;
    CHECK(p.contains(0.0));
    CHECK(p.contains(4.0));
    CHECK_FALSE(p.contains(1.0));
}

TEST_CASE("degenerate power means reduce to disks") {
    Rng rng(41);
    for (int t = 0; t < 2000; ++t) {
        Region p;
        p.kind = RegionKind::powermean;
        p.a = cplx(uniform(rng, -2, 2), uniform(rng, -2, 2));
        p.b = cplx(uniform(rng, -2, 2), uniform(rng, -2, 2));
        p.rho = uniform(rng, 0, 2);
        Region d;
        d.kind = RegionKind::disk;
        d.rho = p.rho;
        const cplx z(uniform(rng, -4, 4), uniform(rng, -4, 4));
        p.alpha = 1.0;
        d.a = p.a;
        CHECK(p.contains(z) == d.contains(z));
        p.alpha = 0.0;
        d.a = p.b;
        CHECK(p.contains(z) == d.contains(z));
    }
}

TEST_CASE("rasterization") {
    const BBox box{{1.8, -1.2}, {4.2, 1.2}};
    const GridMask m = rasterize(plain_set(sym2(), 1), box, 512, 512);
    CHECK(m.fill_fraction() == doctest::Approx(M_PI / 5.76).epsilon(0.01));
    CHECK(m.at(256, 256));
    CHECK_FALSE(m.at(0, 0));

    const auto diag = plain_set(ComplexMatrix::diagonal({cplx(0), cplx(1, 1)}), 1);
    const GridMask d = rasterize(diag, std::nullopt, 64, 64);
    CHECK(d.count() == 2);
    CHECK(d.at(d.cell_of(0.0)->first, d.cell_of(0.0)->second));
    CHECK(d.at(d.cell_of(cplx(1, 1))->first, d.cell_of(cplx(1, 1))->second));

    RegionSet empty;
    CHECK(rasterize(empty, box, 16, 16).count() == 0);
    CHECK_THROWS_AS(rasterize(empty, box, 1, 16), Error);

    // row 0 is the bottom row
    const auto low = plain_set(ComplexMatrix::diagonal({cplx(0, -1), cplx(0, 1)}), 1);
    const GridMask l = rasterize(low, BBox{{-2, -2}, {2, 2}}, 8, 8);
    CHECK(l.cell_of(cplx(0, -1))->second < l.cell_of(cplx(0, 1))->second);

    // degenerate box becomes a square
    const BBox sq = normalize_bbox(BBox{{1, 1}, {1, 1}});
    CHECK(sq.width() > 0);
    CHECK(sq.width() == sq.height());

    // default box covers the Gershgorin disks
    const BBox db = default_bbox({&low});
    CHECK(db.lo.real() < -1.0);
    CHECK(db.hi.imag() > 1.0);

    // deterministic
    CHECK(rasterize(plain_set(cassini2(), 7), std::nullopt, 40, 30).bits ==
          rasterize(plain_set(cassini2(), 7), std::nullopt, 40, 30).bits);
}

TEST_CASE("intersections") {
    const auto one = plain_set(cassini2(), 1);
    const auto x = approx_intersection({one});
    Rng rng(42);
    for (int t = 0; t < 500; ++t) {
        const cplx z(uniform(rng, -4, 8), uniform(rng, -5, 5));
        CHECK(x.contains(z) == one.contains(z));
    }
    DefinitionInputs in;
    in.x = PositiveScaling({3.0, 1.0});
    const auto scaled = build_catalog_set(cassini2(), Definition::d5_3, 1, 1, 1, in);
    CHECK(one.contains(6.0));
    CHECK_FALSE(scaled.contains(6.0));
    CHECK_FALSE(approx_intersection({one, scaled}).contains(6.0));
    CHECK(std::string(Intersection::label) == "outer approximation");
    CHECK_THROWS_AS(approx_intersection({}), Error);

    // alpha endpoints of kind 21 are the row and column disks
    const ComplexMatrix a{{1, 2, 0.5}, {0.3, cplx(0, 3), 1}, {1, 1, -2}};
    const auto k21 = approx_intersection({plain_set(a, 21, 0.0), plain_set(a, 21, 1.0)});
    const auto k12 = approx_intersection({plain_set(a, 1), plain_set(a, 2)});
    const BBox box = default_bbox({&k21.sets[0], &k21.sets[1], &k12.sets[0], &k12.sets[1]});
    CHECK(k21.rasterize(box, 128, 128).bits == k12.rasterize(box, 128, 128).bits);

    const auto plan = default_sampling_plan(a, 7, 4);
    CHECK(plan.alphas.size() == 33);
    CHECK(plan.xs.size() == 6);
    const auto s = sampled_intersection(a, Definition::d5_3, 1, plan);
    CHECK(s.sets.size() == 6);
    const auto t = sampled_intersection(a, Definition::d5_5, 22, plan);
    CHECK(t.sets.size() == 33 * 33);
}

TEST_CASE("containment examples") {
    const auto g = plain_set(cassini2(), 1);
    const BBox box = default_bbox({&g});
    CHECK(check_containment(g, g, box, 64, 64).holds);
    Region big{RegionKind::disk, 0.0, 0.0, 2.0};
    Region small{RegionKind::disk, 0.0, 0.0, 1.0};
    RegionSet sb, ss;
    sb.regions = {big};
    ss.regions = {small};
    const BBox b2{{-3, -3}, {3, 3}};
    CHECK_FALSE(check_containment(sb, ss, b2, 64, 64).holds);
    CHECK(check_containment(ss, sb, b2, 64, 64).holds);

    Rng rng(43);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix a = random_disk_matrix(rng, 2 + rng() % 4);
        const auto gv = eval_gfunction(GFunctionId::g1(uniform(rng, 0.1, 0.9), 2.0), a);
        const auto s4 = build_region_set(a, Definition::d5_1, 4, gv, gv);
        const auto s1 = build_region_set(a, Definition::d5_1, 1, gv, gv);
        CHECK(check_containment(s4, s1, default_bbox({&s4, &s1}), 128, 128).holds);
    }
}

TEST_CASE("radius table fidelity") {
    Rng rng(44);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng() % 4;
        const ComplexMatrix a = random_disk_matrix(rng, n, 0.3);
        const double al = uniform01(rng), be = uniform01(rng);
        const PositiveScaling x = log_uniform_scaling(rng, n, 0.1, 10.0), y = log_uniform_scaling(rng, n, 0.1, 10.0);
        DefinitionInputs in;
        in.x = x;
        in.y = y;
        in.g = GFunctionId::g1(0.3, 3.0);
        in.h = GFunctionId::plain(GFamily::c_tilde);

        const auto gv = eval_gfunction(*in.g, a).values, hv = eval_gfunction(*in.h, a).values;
        for (int k = 1; k <= form_count; ++k) {
            const auto s = build_catalog_set(a, Definition::d5_1, k, al, be, in);
            const int shape = oracle_form_shape(k);
            CHECK(s.regions.size() == (shape == 0 ? n : n * (n - 1)));
            for (const auto& r : s.regions) {
                CHECK(r.a == a(r.i, r.i));
                const double want = oracle_form_rho(k, gv[r.i], gv[r.j], hv[r.i], hv[r.j], al, be);
                CHECK(close(r.rho, want, 1e-14));
                CHECK(r.kind == (shape == 0 ? RegionKind::disk : shape == 1 ? RegionKind::cassini : RegionKind::powermean));
            }
        }

        const std::vector<std::pair<Definition, std::pair<std::vector<double>, std::vector<double>>>> defs{
            {Definition::d5_2, {tilde_sums(scale(a, x), Axis::row).values, tilde_sums(scale(a, y), Axis::column).values}},
            {Definition::d5_3, {oracle_row_sums(explicit_scale(a, x.values())), oracle_col_sums(explicit_scale(a, y.values()))}},
            {Definition::d5_4, {tilde_sums(a, Axis::row).values, tilde_sums(a, Axis::column).values}},
            {Definition::d5_5, {oracle_row_sums(a), oracle_col_sums(a)}},
        };
        for (const auto& [def, rc] : defs) {
            const auto& [rv, cv] = rc;
            for (int k = 1; k <= kind_count; ++k) {
                const auto s = build_catalog_set(a, def, k, al, be, in);
                const int shape = oracle_kind_shape(k);
                CHECK(s.regions.size() == (shape == 0 ? n : n * (n - 1)));
                for (const auto& r : s.regions) {
                    const double want = oracle_kind_rho(k, rv[r.i], rv[r.j], cv[r.i], cv[r.j], al, be);
                    CHECK_MESSAGE(close(r.rho, want, 1e-13), "def " << to_string(def) << " k=" << k);
                    if (shape == 2) CHECK(r.alpha == al);
                }
            }
        }
    }
}

TEST_CASE("radius ordering implies containment and membership is monotone") {
    Rng rng(45);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix a = random_disk_matrix(rng, 3);
        for (int k : {1, 8, 22}) {
            RegionSet small = plain_set(a, k, 0.4, 0.6);
            RegionSet big = small;
            for (auto& r : big.regions) r.rho *= uniform(rng, 1.0, 1.5);
            CHECK(check_containment(small, big, default_bbox({&big}), 96, 96).holds);
            for (int s = 0; s < 200; ++s) {
                const cplx z(uniform(rng, -15, 15), uniform(rng, -15, 15));
                if (small.contains(z)) CHECK(big.contains(z));
            }
        }
    }
}

TEST_CASE("lemma identities on small grids") {
    Rng rng(46);
    const auto generic = generic_claims();
    const auto kinds = kind_claims();
    CHECK(generic.size() > 80);
    CHECK(kinds.size() > 100);
    for (int t = 0; t < 3; ++t) {
        const std::size_t n = 2 + rng() % 3;
        const ComplexMatrix a = random_disk_matrix(rng, n, 0.2);
        const double al = uniform01(rng), be = uniform01(rng);
        const SumVector g = eval_gfunction(GFunctionId::g1(0.5, 2.0), a);
        const SumVector h = eval_gfunction(GFunctionId::plain(GFamily::c), a);
        for (const auto& c : generic) {
            const auto p = build_ref(a, Definition::d5_1, c.lhs, g, h, al, be);
            const auto q = build_ref(a, Definition::d5_1, c.rhs, g, h, al, be);
            const BBox box = default_bbox({&p, &q});
            CHECK_MESSAGE(check_containment(p, q, box, 48, 48).holds, "generic item " << c.item << " k=" << c.lhs.k << "/" << c.rhs.k);
            if (c.rel == Relation::equal) CHECK_MESSAGE(mask_difference(p, q, 48) == 0, "generic item " << c.item);
        }
        const PositiveScaling x = log_uniform_scaling(rng, n, 0.1, 10.0), y = log_uniform_scaling(rng, n, 0.1, 10.0);
        DefinitionInputs in;
        in.x = x;
        in.y = y;
        for (Definition def : {Definition::d5_2, Definition::d5_3}) {
            const auto [row, col] = definition_vectors(a, def, in);
            for (const auto& c : kinds) {
                const auto p = build_ref(a, def, c.lhs, row, col, al, be);
                const auto q = build_ref(a, def, c.rhs, row, col, al, be);
                CHECK_MESSAGE(check_containment(p, q, default_bbox({&p, &q}), 48, 48).holds,
                              "def " << to_string(def) << " item " << c.item << " k=" << c.lhs.k << "/" << c.rhs.k);
                if (c.rel == Relation::equal) CHECK_MESSAGE(mask_difference(p, q, 48) == 0, "item " << c.item);
            }
        }
    }
}

TEST_CASE("CSV and SVG export") {
    const auto s = plain_set(sym2(), 1);
    const GridMask m = rasterize(s, BBox{{1.8, -1.2}, {4.2, 1.2}}, 6, 4);
    std::ostringstream csv;
    write_csv(csv, m);
    const std::string text = csv.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    const std::string first = text.substr(0, text.find('\n'));
    CHECK(std::count(first.begin(), first.end(), ',') == 5);
    CHECK(std::regex_match(first, std::regex("[01](,[01])*")));

    std::ostringstream svg;
    const auto x = approx_intersection({s});
    write_svg(svg, {SvgLayer{&s, m, "gershgorin", ""}, SvgLayer{nullptr, x.rasterize(m.bbox, 6, 4), "meet", "#f00"}}, {2.0, 4.0});
    const std::string doc = svg.str();
    CHECK(doc.rfind("<svg", 0) == 0);
    CHECK(doc.find("data-definition=\"5.5\"") != std::string::npos);
    CHECK(doc.find("data-k=\"1\"") != std::string::npos);
    CHECK(doc.find("data-approximation=\"outer approximation\"") != std::string::npos);
    CHECK(doc.find("<circle cx=\"3\" cy=\"-0\" r=\"1\"") != std::string::npos);
    CHECK(doc.find("id=\"eigenvalues\"") != std::string::npos);
    CHECK(doc.find("</svg>") != std::string::npos);
}
