#pragma once

#include <vector>

#include "cbc/exactlin.hpp"

namespace cbc::detail {

// Brings a into canonical echelon form in place (zero rows last). Row
// operations are mirrored on t; their inverses are applied to tinv from the
// right, so t * tinv is preserved.
std::vector<std::size_t> echelonize(Matrix& a, Matrix* t, Matrix* tinv);

}  // namespace cbc::detail
