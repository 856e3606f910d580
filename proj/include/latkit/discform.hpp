#pragma once

#include <cstdint>
#include <map>

#include "latkit/lattice.hpp"

namespace latkit {

// Element of D_L in generator coordinates: residues a_i mod d_i.
using DiscElem = std::vector<Int>;

// Finite quadratic form D_L = L^dual / L of an even lattice, generators in
// Smith normal form. q takes values in Q/2Z (stored in [0,2)), the pairing
// in Q/Z (stored in [0,1)).
class DiscriminantForm {
public:
    DiscriminantForm() = default; // trivial group
    explicit DiscriminantForm(const Lattice& l);

    const std::vector<Int>& invariantFactors() const { return ds_; }
    int ngens() const { return static_cast<int>(ds_.size()); }
    Int order() const;
    const Lattice& lattice() const { return lattice_; }

    // Lift to L^dual in lattice coordinates.
    QVec lift(const DiscElem& e) const;
    // Class of an arbitrary element of L^dual (lattice coordinates).
    DiscElem classOf(const QVec& x) const;

    DiscElem zero() const { return DiscElem(ds_.size(), Int(0)); }
    DiscElem add(const DiscElem& a, const DiscElem& b) const;
    DiscElem neg(const DiscElem& a) const;
    DiscElem smul(const Int& k, const DiscElem& a) const;
    bool isZero(const DiscElem& a) const;
    Int elemOrder(const DiscElem& a) const;

    Rat q(const DiscElem& a) const;              // in [0, 2)
    Rat bil(const DiscElem& a, const DiscElem& b) const; // in [0, 1)

    std::vector<DiscElem> elements() const;      // all |D| elements

private:
    Lattice lattice_;
    std::vector<Int> ds_;      // invariant factors > 1
    RatMat gens_;              // rows: generator lifts in L-coordinates
    IntMat u_;                 // SNF left transform, used by classOf
    int skip_ = 0;             // number of leading trivial factors in the SNF
};

// Matrix action on generator coordinates modulo the invariant factors.
struct DiscIsometry {
    IntMat action; // column convention on generator coordinate vectors
};

DiscIsometry discriminantAction(const IntMat& g, const DiscriminantForm& d);
bool isStable(const IntMat& g, const Lattice& l);

// Subgroup given by its element list (sorted) plus a cyclic decomposition.
struct DiscSubgroup {
    std::vector<DiscElem> elems;                  // sorted, canonical
    std::vector<DiscElem> cyclicGens;             // independent generators
    std::vector<Int> cyclicOrders;                // orders of those generators
    Int order() const { return Int(elems.size()); }
};

std::vector<DiscSubgroup> allSubgroups(const DiscriminantForm& d, const Int& capElems,
                                       std::int64_t capSubgroups = 100000);
DiscSubgroup subgroupGenerated(const DiscriminantForm& d, const std::vector<DiscElem>& gens);

// Group isomorphisms f: H1 -> H2 with q2(f x) = sign * q1(x) mod 2Z
// (sign = -1: anti-isometries; +1: isometries). Bil is matched as well.
std::vector<std::vector<DiscElem>> glueMaps(const DiscriminantForm& d1, const DiscSubgroup& h1,
                                            const DiscriminantForm& d2, const DiscSubgroup& h2,
                                            int sign);

// Full orthogonal group of the finite quadratic form, enumerated; fails
// TooLarge beyond the cap.
struct DiscAutGroup {
    std::vector<IntMat> elements; // actions on generator coordinates
    Int order() const { return Int(elements.size()); }
};
DiscAutGroup orthogonalGroupOfDiscForm(const DiscriminantForm& d, const Int& capElems = 10000);

} // namespace latkit
