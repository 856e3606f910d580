#pragma once

#include <optional>

#include "latkit/embed.hpp"
#include "latkit/isometry.hpp"

namespace latkit {

// (square, divisibility) screening data for K3^[n]-type walls. Only n = 3
// ships with built-in values; other specs can be supplied as data.
struct WallSpec {
    std::vector<VectorType> pexTypes;
    std::vector<VectorType> wallTypes; // superset of pexTypes

    static WallSpec k3cube(); // n = 3
};

Lattice k3nLattice(const Int& n); // U^3 + E8 + E8 + [-2(n-1)], n >= 2
Lattice mukaiLattice();           // U^4 + E8 + E8

struct ScreenReport {
    bool free = true;
    std::optional<IVec> witness; // ambient coordinates
    std::optional<VectorType> witnessType;
};

// Witnessed screening of a negative definite primitive sublattice against a
// type list, via M ∩ γL^dual short-vector enumeration.
ScreenReport screenSublattice(const Sublattice& c, const std::vector<VectorType>& types);
ScreenReport isPexFree(const Sublattice& c, const WallSpec& spec = WallSpec::k3cube());
ScreenReport isWallFree(const Sublattice& c, const WallSpec& spec = WallSpec::k3cube());

// Number of ±pairs of vectors of the exact given type in C.
Int countClassesOfType(const Sublattice& c, const VectorType& t);

struct SymplecticReport {
    bool stable = false;
    bool negDefCoinv = false;
    bool pexFree = false;
    bool wallFree = false;
    bool symplectic = false; // negDefCoinv && pexFree
    ScreenReport pex;
    ScreenReport wall;
};
SymplecticReport symplecticCheck(const MatrixGroup& g, const WallSpec& spec = WallSpec::k3cube());

struct LeechPairInput {
    IntMat coinvariantGram;
    std::vector<IntMat> generators;
    std::string label;
};

struct ClassifiedEmbedding {
    EmbeddingResult embedding;
    Int generatorDivisibility = 0; // rank-1 inputs: ambient div of the generator
    ScreenReport pex;
    ScreenReport wall;
    bool pexFree = false;
    bool wallFree = false;
    Int wallCountMinus12Div2 = 0; // ±pairs of type (-12, 2), pex-free orbits
    Int wallCountMinus36Div4 = 0;
    // step-4 data (pex-free orbits): the group acting as O^#(C) on the image
    // and as the identity on its complement, with its certificate
    std::vector<IntMat> extendedGenerators;
    Int extendedOrder = 0;
    bool extendedStable = false;        // all generators stable on the ambient
    bool extendedFixesComplement = false;
};

struct LeechPairReport {
    std::string label;
    std::vector<ClassifiedEmbedding> orbits;
};

LeechPairReport classifyLeechPair(const LeechPairInput& input,
                                  const Lattice& ambient = k3nLattice(3),
                                  const WallSpec& spec = WallSpec::k3cube());

struct PolarizedEntry {
    IVec vector;            // ambient coordinates
    IntMat transcendental;  // gram of v^perp inside the invariant part
};
// Invariant vectors of the given polarization type inside the invariant
// (complement) side of a classified embedding, with their orthogonal
// complements. Fails CapExceeded beyond the definite rank cap.
std::vector<PolarizedEntry> polarizedReport(const ClassifiedEmbedding& ce,
                                            const VectorType& polType = VectorType{4, 2});

// True when N is obstructed from containing any U(k): some place p | 2 det
// (or the real place) has no isotropic vector.
bool twistedModuliObstruction(const Lattice& n);

} // namespace latkit
