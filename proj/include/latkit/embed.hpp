#pragma once

#include "latkit/discform.hpp"
#include "latkit/genus.hpp"
#include "latkit/shortvec.hpp"

namespace latkit {

inline constexpr std::int64_t kDiscSubgroupCap = 10000;

std::vector<DiscSubgroup> isotropicSubgroups(const DiscriminantForm& d,
                                             const Int& capElems = kDiscSubgroupCap);

struct Overlattice {
    Lattice lattice;
    RatMat basisInAmbient; // rows: overlattice basis in L-coordinates
    Int index;             // [overlattice : L]
};
std::vector<Overlattice> evenOverlattices(const Lattice& l,
                                          const Int& capElems = kDiscSubgroupCap);

struct Gluing {
    DiscSubgroup source;            // subgroup of D_{L1}
    DiscSubgroup target;            // subgroup of D_{L2}
    std::vector<DiscElem> images;   // anti-isometry on source.cyclicGens
};

struct PrimitiveExtension {
    Lattice overlattice;
    RatMat basisInSum; // rows in (L1 + L2)-coordinates
    IntMat image1;     // rows: basis of the L1-image in overlattice coords
    IntMat image2;
    Gluing glue;
    Int glueIndex;
};
std::vector<PrimitiveExtension> primitiveExtensions(const Lattice& l1, const Lattice& l2,
                                                    const Int& capElems = kDiscSubgroupCap);

// True when the genus of an even lattice contains a single class by the
// standard criteria (indefinite with rank >= l(D)+2; U; rank <= 1).
bool uniqueInGenus(const Lattice& l);
int discMinGenerators(const DiscriminantForm& d); // l(D)

enum class Guarantee { Exact, GenusLevel };

struct EmbeddingResult {
    Lattice ambient;          // == l (up to the certification below)
    bool ambientIsOriginal;   // image coordinates live in l itself
    IntMat image;             // rows: image of the M-basis, primitive
    IntMat complementRows;    // rows: complement basis in ambient coords
    Lattice complement;       // abstract complement used in the glue
    Gluing glue;              // anti-isometry D_M -> D_K data
    Int glueIndex;
    Guarantee guarantee;
};

// Representatives of O(L)-orbits of primitive sublattices isometric to M,
// via discriminant gluing with realized complements. Dedup is exact in the
// definite-complement capped-rank regime; other results carry the
// GenusLevel label.
std::vector<EmbeddingResult> primitiveEmbeddings(const Lattice& m, const Lattice& l,
                                                 const Int& capElems = kDiscSubgroupCap);

// Even lattices of the given signature and determinant from the standard
// table (U, ADE, rescalings, rank <= 2 reduction, bounded definite search,
// U^p + negative definite block sums for the indefinite case).
std::vector<Lattice> realizeEvenLattices(std::pair<int, int> sig, const Int& det);

struct VectorOrbit {
    IVec representative;       // ambient coordinates, canonical sign
    std::vector<IVec> members; // one per +-pair
    IntMat complementGram;     // gram of v^perp inside the fixed sublattice
};
// Primitive vectors of Lfix with the given square and ambient divisibility,
// grouped into O(Lfix)-orbits (Lfix definite within the rank cap). For an
// indefinite Lfix a caller-supplied coordinate box bound is required and the
// "orbits" degenerate to ±pairs.
std::vector<VectorOrbit> invariantVectorOrbits(const Sublattice& lfix, const Int& square,
                                               const Int& gamma,
                                               const std::optional<Int>& coordBound = std::nullopt);

} // namespace latkit
