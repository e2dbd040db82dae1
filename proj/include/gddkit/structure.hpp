#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gddkit/matrix.hpp"

namespace gddkit {

/// Block upper triangular normal form P^T A P. Position k of the permuted
/// matrix holds original index permutation[k]; block b spans positions
/// [block_bounds[b], block_bounds[b+1]).
struct FrobeniusForm {
    std::vector<std::size_t> permutation;
    std::vector<std::size_t> block_bounds;
    std::vector<std::size_t> block_of;  // original index -> block number

    std::size_t block_count() const noexcept { return block_bounds.size() - 1; }
    std::size_t block_size(std::size_t b) const { return block_bounds[b + 1] - block_bounds[b]; }
    std::vector<std::size_t> block_indices(std::size_t b) const;
};

/// Strongly connected components of {i -> j : i != j, a_ij != 0}, ordered so
/// that every edge runs from an earlier block to a later one. Ties between
/// unrelated blocks go to the block with the smaller least index.
FrobeniusForm frobenius_normal_form(const ComplexMatrix& a);

/// n = 1: irreducible iff the single entry is nonzero.
bool is_irreducible(const ComplexMatrix& a);

/// Deleted sums restricted to the diagonal blocks of the normal form, with
/// optional diagonal similarity applied first.
SumVector tilde_sums(const ComplexMatrix& a, Axis axis,
                     const std::optional<PositiveScaling>& s = std::nullopt);
SumVector tilde_sums(const ComplexMatrix& a, const FrobeniusForm& f, Axis axis,
                     const std::optional<PositiveScaling>& s = std::nullopt);

}  // namespace gddkit
