#pragma once

#include "latkit/lattice.hpp"

namespace latkit {

// All nonzero v with |v^2| <= |bound|, one representative per ±pair,
// lexicographically sorted. Exact rational Cholesky bounds throughout.
// Fails NotDefinite unless L is positive or negative definite.
std::vector<IVec> shortVectors(const Lattice& l, const Int& bound);

// Vectors of M (primitive in L) of the exact type (square, gamma) w.r.t.
// the ambient of M, in ambient coordinates. M must be definite.
std::vector<IVec> primitiveVectorsOfType(const Sublattice& m, const Int& square,
                                         const Int& gamma);

// Integer points x with (x+offset) P (x+offset)^T <= bound, P positive
// definite (exact). Used for affine root shells; includes x = -offset.
std::vector<IVec> enumerateShifted(const RatMat& p, const QVec& offset, const Rat& bound);

// Definite-lattice isometry by backtracking on short-vector images:
// returns integer T with T^t * gram2 * T = gram1, acting v -> T v.
std::optional<IntMat> isIsometricDefinite(const Lattice& l1, const Lattice& l2);

} // namespace latkit
