#pragma once

#include <vector>

#include "torsionkit/groupring.hpp"

namespace torsionkit {

using IntVec = std::vector<BigInt>;
using IntMat = std::vector<IntVec>;  // row-major, rectangular

// Exact determinant of a square integer matrix (fraction-free Bareiss;
// valid over Z, which is a domain).
BigInt int_det(IntMat m);

// Solve M x = b exactly over the integers via Cramer's rule.  Returns
// nullopt when det(M) == 0 or when the solution is not integral.
std::optional<IntVec> int_solve(const IntMat& m, const IntVec& b);

// Row-style Hermite normal form of the lattice spanned by the rows.
// Returns the nonzero rows: pivots positive, pivot columns strictly
// increasing, entries above each pivot reduced into [0, pivot).
IntMat hermite_normal_form(IntMat rows);

}  // namespace torsionkit
