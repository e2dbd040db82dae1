#include "gddkit/structure.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

namespace gddkit {

namespace {

constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();

// Iterative Tarjan. Returns component id per vertex and the component count.
std::size_t tarjan(const std::vector<std::vector<std::size_t>>& adj, std::vector<std::size_t>& comp) {
    const std::size_t n = adj.size();
    std::vector<std::size_t> index(n, unvisited), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next edge)
    comp.assign(n, unvisited);
    std::size_t counter = 0, ncomp = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < adj[v].size()) {
                const std::size_t w = adj[v][e++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty()) {
                const std::size_t parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = ncomp;
                } while (w != done);
                ++ncomp;
            }
        }
    }
    return ncomp;
}

}  // namespace

std::vector<std::size_t> FrobeniusForm::block_indices(std::size_t b) const {
    return {permutation.begin() + static_cast<std::ptrdiff_t>(block_bounds[b]),
            permutation.begin() + static_cast<std::ptrdiff_t>(block_bounds[b + 1])};
}

FrobeniusForm frobenius_normal_form(const ComplexMatrix& a) {
    const std::size_t n = a.order();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && a(i, j) != cplx(0.0)) adj[i].push_back(j);

    std::vector<std::size_t> comp;
    const std::size_t ncomp = tarjan(adj, comp);

    std::vector<std::vector<std::size_t>> members(ncomp);
    for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(i);  // ascending

    // Condensation DAG, then Kahn's order keyed on each component's least index.
    std::vector<std::vector<std::size_t>> succ(ncomp);
    std::vector<std::size_t> indeg(ncomp, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : adj[i])
            if (comp[i] != comp[j]) succ[comp[i]].push_back(comp[j]);
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (std::size_t t : s) ++indeg[t];
    }
    using Key = std::pair<std::size_t, std::size_t>;  // (least index, component)
    std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
    for (std::size_t c = 0; c < ncomp; ++c)
        if (indeg[c] == 0) ready.emplace(members[c].front(), c);

    FrobeniusForm f;
    f.block_of.assign(n, 0);
    f.block_bounds.push_back(0);
    while (!ready.empty()) {
        const std::size_t c = ready.top().second;
        ready.pop();
        const std::size_t b = f.block_bounds.size() - 1;
        for (std::size_t i : members[c]) {
            f.permutation.push_back(i);
            f.block_of[i] = b;
        }
        f.block_bounds.push_back(f.permutation.size());
        for (std::size_t t : succ[c])
            if (--indeg[t] == 0) ready.emplace(members[t].front(), t);
    }
    return f;
}

bool is_irreducible(const ComplexMatrix& a) {
    if (a.order() == 1) return a(0, 0) != cplx(0.0);
    return frobenius_normal_form(a).block_count() == 1;
}

SumVector tilde_sums(const ComplexMatrix& a, const FrobeniusForm& f, Axis axis,
                     const std::optional<PositiveScaling>& s) {
    if (f.block_of.size() != a.order())
        throw Error(ErrorCode::dimension_mismatch, "normal form does not match matrix order");
    return SumVector{detail::off_diagonal_sums(a, axis, s ? &*s : nullptr, &f.block_of), axis, s, true};
}

SumVector tilde_sums(const ComplexMatrix& a, Axis axis, const std::optional<PositiveScaling>& s) {
    return tilde_sums(a, frobenius_normal_form(a), axis, s);
}

}  // namespace gddkit
