#pragma once

#include <string>
#include <vector>

#include "latkit/matrix.hpp"

namespace latkit {

// Integral lattice given by a nondegenerate symmetric Gram matrix.
// Vectors are integer coordinate columns in the implicit basis.
class Lattice {
public:
    Lattice() = default; // rank 0
    explicit Lattice(IntMat gram, std::string label = "");

    int rank() const { return gram_.rows(); }
    const IntMat& gram() const { return gram_; }
    const std::string& label() const { return label_; }
    bool even() const { return even_; }
    std::pair<int, int> signature() const { return sig_; }
    const Int& det() const { return det_; }

    bool isDefinite() const { return sig_.first == 0 || sig_.second == 0; }
    bool isPositiveDefinite() const { return sig_.second == 0; }
    bool isNegativeDefinite() const { return sig_.first == 0; }

    Int inner(const IVec& u, const IVec& v) const;
    Int norm(const IVec& v) const { return inner(v, v); }
    Rat innerQ(const QVec& u, const QVec& v) const;

    // gram^{-1}; rows are the dual basis vectors in lattice coordinates.
    RatMat dualBasis() const;

private:
    IntMat gram_;
    std::string label_;
    bool even_ = true;
    std::pair<int, int> sig_{0, 0};
    Int det_ = 1;
};

// Sublattice of `ambient` spanned by the rows of basisRows (coordinates in
// the ambient basis). Operations never re-embed silently; divisibility and
// vector types stay relative to the ambient.
struct Sublattice {
    Lattice ambient;
    IntMat basisRows;

    int rank() const { return basisRows.rows(); }
    IntMat inducedGram() const;
    Lattice asLattice() const; // fails Degenerate if the induced form is
    // Ambient coordinates of a vector given in sublattice coordinates.
    IVec toAmbient(const IVec& coords) const;
};

Lattice makeLattice(const IntMat& gram, const std::string& label = "");

// U, U(k), [n], A<i>, D<i>, E6/E7/E8 (ADE negative definite), rescalings
// "E8(2)", and nothing else. Unknown names fail UnknownName.
Lattice standardLattice(const std::string& name);
Lattice rescale(const Lattice& l, const Int& k);
Lattice directSum(const std::vector<Lattice>& parts);

Sublattice fullSublattice(const Lattice& l);
Sublattice spanOf(const Lattice& ambient, const IntMat& rows);

struct VectorType {
    Int square;
    Int divisibility;
    bool operator==(const VectorType& o) const {
        return square == o.square && divisibility == o.divisibility;
    }
};

Int divisibility(const IVec& v, const Lattice& l);       // gcd of gram*v
VectorType vectorType(const IVec& v, const Lattice& l);  // v primitive
bool isPrimitiveVector(const IVec& v);

Sublattice orthogonalComplement(const Sublattice& s);
Sublattice primitiveClosure(const Sublattice& s);
bool isPrimitiveSublattice(const Sublattice& s);

// M ∩ γL^∨ as a finite-index subgroup of M (basis rows in ambient coords).
Sublattice intersectScaledDual(const Sublattice& m, const Int& gamma);

// Index [B : A] for A ⊆ B of equal rank (bases as rows in one coord system).
Int subgroupIndex(const IntMat& sub, const IntMat& super);

// Canonical form: of ±v keep the lexicographically larger; sort ascending.
IVec canonicalSign(const IVec& v);
void canonicalizeVectorList(std::vector<IVec>& vs);
bool lexLess(const IVec& a, const IVec& b);

} // namespace latkit
