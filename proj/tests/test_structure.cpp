#include <doctest.h>

#include <map>
#include <set>

#include "gddkit/classify.hpp"
#include "gddkit/structure.hpp"
#include "support.hpp"

using namespace gddkit;
using namespace testing;

namespace {

// Strongly connected classes from the transitive closure.
std::vector<std::set<std::size_t>> oracle_sccs(const ComplexMatrix& a) {
    const std::size_t n = a.order();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        reach[i][i] = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && a(i, j) != cplx(0)) reach[i][j] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
    std::vector<std::set<std::size_t>> out;
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::set<std::size_t> c;
        for (std::size_t j = 0; j < n; ++j)
            if (reach[i][j] && reach[j][i]) {
                c.insert(j);
                seen[j] = 1;
            }
        out.push_back(c);
    }
    return out;
}

ComplexMatrix permuted(const ComplexMatrix& a, const std::vector<std::size_t>& p) {
    ComplexMatrix b(a.order());
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j) b.set(i, j, a(p[i], p[j]));
    return b;
}

ComplexMatrix random_reducible(Rng& rng, std::size_t n) {
    ComplexMatrix a = random_disk_matrix(rng, n, 0.75);
    return a;
}

}  // namespace

TEST_CASE("normal form examples") {
    const auto f1 = frobenius_normal_form(ComplexMatrix{{1, 5}, {0, 2}});
    CHECK(f1.block_count() == 2);
    CHECK(f1.permutation == std::vector<std::size_t>{0, 1});
    CHECK(frobenius_normal_form(singular3()).block_count() == 1);
    const auto f3 = frobenius_normal_form(ComplexMatrix::diagonal({1, 2, 3}));
    CHECK(f3.block_count() == 3);
    CHECK(f3.permutation == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(ComplexMatrix{{0, 1}, {1, 0}}));
    CHECK_FALSE(is_irreducible(ComplexMatrix{{1, 5}, {0, 2}}));
    CHECK(is_irreducible(singular3()));
    CHECK(is_irreducible(ComplexMatrix{{cplx(3)}}));
    CHECK_FALSE(is_irreducible(ComplexMatrix{{cplx(0)}}));
}

TEST_CASE("tilde sums") {
    const ComplexMatrix a{{1, 5}, {0, 2}};
    CHECK(tilde_sums(a, Axis::row).values == std::vector<double>{0, 0});
    CHECK(deleted_sums(a, Axis::row).values == std::vector<double>{5, 0});
    const ComplexMatrix b{{2, 1, 9}, {1, 2, 9}, {0, 0, 5}};
    CHECK(tilde_sums(b, Axis::row).values == std::vector<double>{1, 1, 0});
    CHECK(tilde_sums(singular3(), Axis::row).values == deleted_sums(singular3(), Axis::row).values);
}

TEST_CASE("normal form properties on random matrices") {
    Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng() % 10;
        const ComplexMatrix a = random_reducible(rng, n);
        const FrobeniusForm f = frobenius_normal_form(a);

        // permutation is a bijection and block_of agrees with bounds
        std::vector<std::size_t> sorted = f.permutation;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n; ++i) REQUIRE(sorted[i] == i);
        for (std::size_t b = 0; b < f.block_count(); ++b)
            for (std::size_t i : f.block_indices(b)) CHECK(f.block_of[i] == b);

        // block upper triangular
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (a(i, j) != cplx(0) && i != j) CHECK(f.block_of[i] <= f.block_of[j]);

        // blocks are exactly the strongly connected classes
        std::set<std::set<std::size_t>> ours, theirs;
        for (std::size_t b = 0; b < f.block_count(); ++b) {
            const auto idx = f.block_indices(b);
            ours.insert(std::set<std::size_t>(idx.begin(), idx.end()));
        }
        for (const auto& c : oracle_sccs(a)) theirs.insert(c);
        CHECK(ours == theirs);

        // block size multiset invariant under relabeling
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        const FrobeniusForm g = frobenius_normal_form(permuted(a, p));
        std::multiset<std::size_t> s1, s2;
        for (std::size_t b = 0; b < f.block_count(); ++b) s1.insert(f.block_size(b));
        for (std::size_t b = 0; b < g.block_count(); ++b) s2.insert(g.block_size(b));
        CHECK(s1 == s2);

        // tilde sums bounded by plain sums, equal when irreducible
        const auto rt = tilde_sums(a, Axis::row), r = deleted_sums(a, Axis::row);
        const auto ct = tilde_sums(a, Axis::column), c = deleted_sums(a, Axis::column);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(rt[i] <= r[i]);
            CHECK(ct[i] <= c[i]);
        }
        if (f.block_count() == 1) {
            CHECK(rt.values == r.values);
            CHECK(ct.values == c.values);
        }
        // weighted tilde sums equal tilde sums of the scaled matrix
        const PositiveScaling x = log_uniform_scaling(rng, n, 0.1, 10.0);
        const auto rtx = tilde_sums(a, Axis::row, x);
        const auto rts = tilde_sums(scale(a, x), Axis::row);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(rtx[i], rts[i], 1e-14));
    }
}

TEST_CASE("blockwise GDD agrees with the whole matrix") {
    Rng rng(12);
    int checked = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng() % 7;
        ComplexMatrix a = random_reducible(rng, n);
        for (std::size_t i = 0; i < n; ++i) a.set(i, i, a(i, i) * gddkit::uniform(rng, 1.0, 4.0) + 0.3);
        const auto whole = classify_h(a);
        if (whole.h_verdict == Verdict::inconclusive) continue;
        const FrobeniusForm f = frobenius_normal_form(a);
        bool all = true;
        for (std::size_t b = 0; b < f.block_count(); ++b) {
            const auto idx = f.block_indices(b);
            ComplexMatrix blk(idx.size());
            for (std::size_t p = 0; p < idx.size(); ++p)
                for (std::size_t q = 0; q < idx.size(); ++q) blk.set(p, q, a(idx[p], idx[q]));
            const bool ok = idx.size() == 1 ? blk(0, 0) != cplx(0) : classify_h(blk).is_h_gdd;
            all = all && ok;
        }
        CHECK(whole.is_h_gdd == all);
        ++checked;
    }
    CHECK(checked > 150);
}
