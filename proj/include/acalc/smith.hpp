// SPDX-License-Identifier: MIT
// Integer matrices: determinant and Smith normal form.
#pragma once

#include <vector>

#include <gmpxx.h>

namespace acalc {

using IntMatrix = std::vector<std::vector<mpz_class>>;  // row-major

mpz_class determinant(IntMatrix a);
// Nonzero invariant factors d_1 | d_2 | ... (positive), followed by zeros for the rank deficit.
std::vector<mpz_class> smith_invariants(IntMatrix a);

}  // namespace acalc
