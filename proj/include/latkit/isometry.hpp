#pragma once

#include <cstdint>
#include <optional>

#include "latkit/discform.hpp"
#include "latkit/lattice.hpp"

namespace latkit {

inline constexpr std::int64_t kGroupEnumerationCap = 1000000;
inline constexpr int kDefiniteAutRankCap = 12;

bool isIsometry(const IntMat& m, const Lattice& l);

// x -> x - 2 b(x,v)/v^2 * v; requires the reflection to be integral on L.
IntMat reflection(const IVec& v, const Lattice& l);

// Sign of prod(-v_i^2/2) over a rational reflection decomposition of g.
int realSpinorNorm(const IntMat& g, const Lattice& l);
// Independent route: sign of det of g projected to a maximal positive
// definite subspace. Used as a cross-check of the decomposition route.
int realSpinorNormByProjection(const IntMat& g, const Lattice& l);

struct MembershipFlags {
    bool inOPlus;
    bool inOSharp;
    bool inOTilde;
};
MembershipFlags membership(const IntMat& g, const Lattice& l);

// Finite matrix group on a lattice, given by generators; elements are
// enumerated on demand under kGroupEnumerationCap.
class MatrixGroup {
public:
    MatrixGroup(Lattice l, std::vector<IntMat> generators);
    // Full element list already known (must be closed under products).
    MatrixGroup(Lattice l, std::vector<IntMat> generators, std::vector<IntMat> allElements);

    const Lattice& lattice() const { return lattice_; }
    const std::vector<IntMat>& generators() const { return gens_; }
    const std::vector<IntMat>& elements() const; // enumerates lazily
    Int order() const { return Int(elements().size()); }
    bool contains(const IntMat& m) const;

private:
    Lattice lattice_;
    std::vector<IntMat> gens_;
    mutable std::vector<IntMat> elems_;
};

Sublattice invariantSublattice(const MatrixGroup& g);
Sublattice coinvariantSublattice(const MatrixGroup& g);

// Full O(L) of a definite lattice by backtracking on short vectors.
MatrixGroup automorphismGroupDefinite(const Lattice& l);
// Kernel of O(L) -> O(D_L).
MatrixGroup stableAutomorphismGroup(const Lattice& l);

// Lemma-based test: image of G in O(L_G) equals O^#(L_G). The optional
// `coinvariant` overrides L_G (used to test a subgroup against the
// coinvariant lattice of a larger group).
bool isStablySaturated(const MatrixGroup& g,
                       const std::optional<Sublattice>& coinvariant = std::nullopt);

// Saturation of H in G: elements of G fixing L^H pointwise.
MatrixGroup pointwiseStabilizer(const MatrixGroup& h, const MatrixGroup& g);

// Restriction of g to an invariant primitive sublattice, in its basis.
IntMat restrictTo(const IntMat& g, const Sublattice& s);

} // namespace latkit
