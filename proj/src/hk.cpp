#include "latkit/hk.hpp"

#include <algorithm>

namespace latkit {

WallSpec WallSpec::k3cube() {
    WallSpec s;
    s.pexTypes = {VectorType{-2, 1}, VectorType{-4, 2}, VectorType{-4, 4}};
    s.wallTypes = s.pexTypes;
    s.wallTypes.push_back(VectorType{-12, 2});
    s.wallTypes.push_back(VectorType{-36, 4});
    return s;
}

Lattice k3nLattice(const Int& n) {
    require(n >= 2, "BadN", "K3^[n] lattices need n >= 2");
    Lattice u = standardLattice("U");
    Lattice e8 = standardLattice("E8");
    Lattice last = standardLattice("[" + Int(-2 * (n - 1)).get_str() + "]");
    return directSum({u, u, u, e8, e8, last});
}

Lattice mukaiLattice() {
    Lattice u = standardLattice("U");
    Lattice e8 = standardLattice("E8");
    return directSum({u, u, u, u, e8, e8});
}

ScreenReport screenSublattice(const Sublattice& c, const std::vector<VectorType>& types) {
    if (c.rank() > 0)
        require(c.asLattice().isNegativeDefinite(), "NotNegativeDefinite",
                "wall screening expects a negative definite sublattice");
    ScreenReport rep;
    for (const VectorType& t : types) {
        std::vector<IVec> found = primitiveVectorsOfType(c, t.square, t.divisibility);
        if (!found.empty()) {
            rep.free = false;
            rep.witness = found.front();
            rep.witnessType = t;
            return rep;
        }
    }
    return rep;
}

ScreenReport isPexFree(const Sublattice& c, const WallSpec& spec) {
    return screenSublattice(c, spec.pexTypes);
}

ScreenReport isWallFree(const Sublattice& c, const WallSpec& spec) {
    return screenSublattice(c, spec.wallTypes);
}

Int countClassesOfType(const Sublattice& c, const VectorType& t) {
    return Int(primitiveVectorsOfType(c, t.square, t.divisibility).size());
}

SymplecticReport symplecticCheck(const MatrixGroup& g, const WallSpec& spec) {
    SymplecticReport rep;
    rep.stable = true;
    for (const IntMat& m : g.generators())
        if (!isStable(m, g.lattice())) rep.stable = false;
    Sublattice coinv = coinvariantSublattice(g);
    rep.negDefCoinv = coinv.rank() == 0 || coinv.asLattice().isNegativeDefinite();
    if (rep.negDefCoinv) {
        rep.pex = isPexFree(coinv, spec);
        rep.wall = isWallFree(coinv, spec);
        rep.pexFree = rep.pex.free;
        rep.wallFree = rep.wall.free;
    }
    rep.symplectic = rep.negDefCoinv && rep.pexFree;
    return rep;
}

namespace {

// Extend s in O(image lattice) to the glued ambient: s on the image block,
// identity on the complement block.
IntMat extendThroughGlue(const IntMat& s, const EmbeddingResult& e) {
    int n = e.ambient.rank();
    int k = e.image.rows();
    int kc = e.complementRows.rows();
    RatMat p(k + kc, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) p(i, j) = Rat(e.image(i, j));
    for (int i = 0; i < kc; ++i)
        for (int j = 0; j < n; ++j) p(k + i, j) = Rat(e.complementRows(i, j));
    // row i of image transforms by s^T on the block index
    RatMat d(k + kc, k + kc);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) d(i, j) = Rat(s(j, i));
    for (int i = 0; i < kc; ++i) d(k + i, k + i) = 1;
    RatMat pinv = inverseRat(p);
    RatMat rowAction = mul(mul(pinv, d), p);
    // integral because s is stable on the image; column action is the transpose
    return toInt(transpose(rowAction));
}

} // namespace

LeechPairReport classifyLeechPair(const LeechPairInput& input, const Lattice& ambient,
                                  const WallSpec& spec) {
    Lattice c(input.coinvariantGram, input.label);
    require(c.rank() == 0 || c.isNegativeDefinite(), "NotNegativeDefinite",
            "a Leech pair coinvariant lattice must be negative definite");
    MatrixGroup g(c, input.generators);
    if (!input.generators.empty()) {
        Sublattice fixed = invariantSublattice(g);
        require(fixed.rank() == 0, "InvalidLeechPair",
                "the group fixes a nonzero vector of the coinvariant lattice");
    }

    LeechPairReport rep;
    rep.label = input.label;
    if (c.rank() == 0) {
        ClassifiedEmbedding ce;
        ce.pexFree = ce.wallFree = true;
        ce.extendedOrder = 1;
        ce.extendedStable = true;
        ce.extendedFixesComplement = true;
        EmbeddingResult e;
        e.ambient = ambient;
        e.ambientIsOriginal = true;
        e.image = IntMat(0, ambient.rank());
        e.complementRows = IntMat::identity(ambient.rank());
        e.complement = ambient;
        e.glueIndex = 1;
        e.guarantee = Guarantee::Exact;
        ce.embedding = e;
        rep.orbits.push_back(std::move(ce));
        return rep;
    }

    MatrixGroup sharp = stableAutomorphismGroup(c);

    for (EmbeddingResult& e : primitiveEmbeddings(c, ambient)) {
        ClassifiedEmbedding ce;
        Sublattice image{e.ambient, e.image};
        if (c.rank() == 1)
            ce.generatorDivisibility = divisibility(image.basisRows.row(0), e.ambient);
        ce.pex = isPexFree(image, spec);
        ce.wall = isWallFree(image, spec);
        ce.pexFree = ce.pex.free;
        ce.wallFree = ce.wall.free;
        if (ce.pexFree) {
            ce.wallCountMinus12Div2 = countClassesOfType(image, VectorType{-12, 2});
            ce.wallCountMinus36Div4 = countClassesOfType(image, VectorType{-36, 4});
            // step 4: the stabilizer acting as O^#(C) on the image and as the
            // identity on the orthogonal complement
            ce.extendedStable = true;
            ce.extendedFixesComplement = true;
            for (const IntMat& s : sharp.generators()) {
                IntMat ext = extendThroughGlue(s, e);
                require(isIsometry(ext, e.ambient), "InternalError",
                        "glue extension is not an isometry");
                if (!isStable(ext, e.ambient)) ce.extendedStable = false;
                IntMat fixed = mul(e.complementRows, transpose(ext));
                if (fixed != e.complementRows) ce.extendedFixesComplement = false;
                ce.extendedGenerators.push_back(ext);
            }
            ce.extendedOrder = sharp.order();
        }
        ce.embedding = std::move(e);
        rep.orbits.push_back(std::move(ce));
    }
    std::sort(rep.orbits.begin(), rep.orbits.end(),
              [](const ClassifiedEmbedding& a, const ClassifiedEmbedding& b) {
                  if (a.embedding.glueIndex != b.embedding.glueIndex)
                      return a.embedding.glueIndex < b.embedding.glueIndex;
                  return matString(a.embedding.complement.gram()) <
                         matString(b.embedding.complement.gram());
              });
    return rep;
}

std::vector<PolarizedEntry> polarizedReport(const ClassifiedEmbedding& ce,
                                            const VectorType& polType) {
    const EmbeddingResult& e = ce.embedding;
    Sublattice invariantSide{e.ambient, e.complementRows};
    std::vector<PolarizedEntry> out;
    for (const VectorOrbit& orbit :
         invariantVectorOrbits(invariantSide, polType.square, polType.divisibility)) {
        // v^perp inside the invariant side
        const IVec& v = orbit.representative;
        IntMat vg(1, e.ambient.rank());
        for (int j = 0; j < e.ambient.rank(); ++j) vg(0, j) = v[j];
        // kernel of b(., v) restricted to the invariant side
        IntMat pairing(invariantSide.rank(), 1);
        for (int i = 0; i < invariantSide.rank(); ++i)
            pairing(i, 0) = e.ambient.inner(invariantSide.basisRows.row(i), v);
        IntMat ker = kernelRows(transpose(pairing));
        IntMat rows = mul(ker, invariantSide.basisRows);
        Sublattice comp{e.ambient, hnfRows(rows)};
        out.push_back(PolarizedEntry{v, comp.inducedGram()});
    }
    return out;
}

bool twistedModuliObstruction(const Lattice& n) {
    return !containsRescaledUNecessaryCondition(n);
}

} // namespace latkit
