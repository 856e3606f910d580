#pragma once

#include "latkit/arith.hpp"

namespace latkit {

// Integer representation of d by the binary form a x^2 + b xy + c y^2.
// For negative or square discriminant the full (finite) solution set is
// returned; for positive nonsquare discriminant only solvability is
// decided (Gauss reduction cycles), since solutions then come in infinite
// automorph orbits.
struct BinarySolve {
    bool solvable = false;
    bool finite = false;
    std::vector<std::pair<Int, Int>> all; // valid when finite
};

BinarySolve binaryRepresents(const Int& a, const Int& b, const Int& c, const Int& d);

} // namespace latkit
