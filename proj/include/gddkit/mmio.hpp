#pragma once

#include <string>
#include <string_view>

#include "gddkit/matrix.hpp"

namespace gddkit {

/// Dense matrix from Matrix Market text. Accepts coordinate and array layouts,
/// real/integer/complex fields and general/symmetric/hermitian/skew-symmetric
/// storage (expanded on read). Duplicate coordinate entries are summed.
/// Errors carry "line N:".
ComplexMatrix parse_matrix_market(std::string_view text);
ComplexMatrix load_matrix_market(const std::string& path);

/// Array layout, column-major, 17 significant digits; field real when every
/// entry is real, complex otherwise.
std::string to_matrix_market(const ComplexMatrix& a);

}  // namespace gddkit
