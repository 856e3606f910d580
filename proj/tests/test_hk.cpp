#include <doctest.h>

#include <algorithm>

#include "latkit/hk.hpp"
#include "latkit/shortvec.hpp"

using namespace latkit;

TEST_CASE("k3n and mukai lattices") {
    Lattice k3 = k3nLattice(3);
    CHECK(k3.rank() == 23);
    CHECK(k3.signature() == std::pair<int, int>{3, 20});
    CHECK(k3.det() == 4);
    CHECK(k3.gram()(22, 22) == -4);
    CHECK(k3nLattice(2).gram()(22, 22) == -2);
    CHECK(k3nLattice(4).signature() == std::pair<int, int>{3, 20});
    CHECK_THROWS_WITH_AS(k3nLattice(1), doctest::Contains("BadN"), Error);

    Lattice mukai = mukaiLattice();
    CHECK(mukai.rank() == 24);
    CHECK(mukai.det() == 1);
    CHECK(mukai.even());
    CHECK(mukai.signature() == std::pair<int, int>{4, 20});
}

TEST_CASE("wall spec data") {
    WallSpec s = WallSpec::k3cube();
    CHECK(s.pexTypes.size() == 3);
    CHECK(s.wallTypes.size() == 5);
    for (const VectorType& t : s.wallTypes) {
        CHECK(t.square < 0);
        CHECK(t.square % 2 == 0);
        CHECK(t.square % t.divisibility == 0);
    }
}

TEST_CASE("pex screening with witnesses") {
    Lattice l = k3nLattice(3);
    IntMat wrow(1, 23);
    wrow(0, 22) = 1;
    ScreenReport r = isPexFree(spanOf(l, wrow));
    CHECK(!r.free);
    REQUIRE(r.witnessType.has_value());
    CHECK(r.witnessType->square == -4);
    CHECK(r.witnessType->divisibility == 4);

    IntMat root(1, 23);
    root(0, 0) = 1;
    root(0, 1) = -1;
    ScreenReport r2 = isPexFree(spanOf(l, root));
    CHECK(!r2.free);
    CHECK(r2.witnessType->square == -2);
    CHECK(r2.witnessType->divisibility == 1);

    Sublattice empty{l, IntMat(0, 23)};
    CHECK(isPexFree(empty).free);
    CHECK(isWallFree(empty).free);
}

TEST_CASE("a (-12,2) vector is a wall but not prime exceptional") {
    Lattice l = k3nLattice(3);
    IntMat row(1, 23);
    row(0, 0) = 2;
    row(0, 1) = -2;
    row(0, 22) = 1;
    Sublattice c = spanOf(l, row);
    CHECK(vectorType(c.basisRows.row(0), l) == VectorType{-12, 2});
    CHECK(isPexFree(c).free);
    ScreenReport w = isWallFree(c);
    CHECK(!w.free);
    CHECK(w.witnessType->square == -12);
    CHECK(w.witnessType->divisibility == 2);
    CHECK(countClassesOfType(c, VectorType{-12, 2}) == 1);
}

TEST_CASE("screening agrees with direct ambient enumeration on a toy ambient") {
    Lattice amb = directSum({standardLattice("U"), standardLattice("[-4]"),
                             standardLattice("[-2]")});
    Sublattice c = spanOf(amb, IntMat{{0, 0, 1, 0}, {0, 0, 0, 1}});
    Lattice cl = c.asLattice();
    for (const VectorType& t : WallSpec::k3cube().wallTypes) {
        std::vector<IVec> direct;
        for (const IVec& y : shortVectors(cl, Int(36))) {
            if (cl.norm(y) != t.square) continue;
            IVec v = c.toAmbient(y);
            if (!isPrimitiveVector(v)) continue;
            if (divisibility(v, amb) != t.divisibility) continue;
            direct.push_back(v);
        }
        canonicalizeVectorList(direct);
        CHECK(Int(direct.size()) == countClassesOfType(c, t));
    }
}

TEST_CASE("symplectic check") {
    Lattice l = k3nLattice(3);
    MatrixGroup trivial(l, {});
    SymplecticReport r = symplecticCheck(trivial);
    CHECK(r.stable);
    CHECK(r.negDefCoinv);
    CHECK(r.pexFree);
    CHECK(r.symplectic);

    IVec root(23, Int(0));
    root[0] = 1;
    root[1] = -1;
    MatrixGroup refl(l, {reflection(root, l)});
    SymplecticReport r2 = symplecticCheck(refl);
    CHECK(r2.negDefCoinv);
    CHECK(!r2.pexFree);
    CHECK(!r2.symplectic);

    IntMat g = IntMat::identity(23);
    g(22, 22) = -1;
    MatrixGroup m4(l, {g});
    SymplecticReport r3 = symplecticCheck(m4);
    CHECK(!r3.stable);
    CHECK(!r3.pexFree);
}

TEST_CASE("Leech pair pipeline on [-4] with {+-1}") {
    LeechPairInput input;
    input.coinvariantGram = IntMat{{-4}};
    input.generators = {IntMat{{-1}}};
    input.label = "minus-four";
    LeechPairReport rep = classifyLeechPair(input);
    REQUIRE(rep.orbits.size() == 3);
    std::vector<Int> divs;
    int pexFreeCount = 0;
    for (const ClassifiedEmbedding& ce : rep.orbits) {
        divs.push_back(ce.generatorDivisibility);
        if (ce.pexFree) {
            ++pexFreeCount;
            CHECK(ce.generatorDivisibility == 1);
            CHECK(ce.wallFree);
            CHECK(ce.extendedStable);
            CHECK(ce.extendedFixesComplement);
            CHECK(ce.extendedOrder == 1); // O^#([-4]) is trivial
        } else {
            REQUIRE(ce.pex.witnessType.has_value());
            CHECK(ce.pex.witnessType->square == -4);
            CHECK((ce.pex.witnessType->divisibility == 2 ||
                   ce.pex.witnessType->divisibility == 4));
        }
    }
    std::sort(divs.begin(), divs.end());
    CHECK(divs == std::vector<Int>{Int(1), Int(2), Int(4)});
    CHECK(pexFreeCount == 1);
}

TEST_CASE("Leech pair pipeline on A2 with its stable automorphism group") {
    MatrixGroup sharp = stableAutomorphismGroup(standardLattice("A2"));
    LeechPairInput input;
    input.coinvariantGram = standardLattice("A2").gram();
    input.generators = sharp.generators();
    input.label = "A2";
    LeechPairReport rep = classifyLeechPair(input);
    REQUIRE(rep.orbits.size() == 1);
    const ClassifiedEmbedding& ce = rep.orbits[0];
    CHECK(!ce.pexFree);
    REQUIRE(ce.pex.witnessType.has_value());
    CHECK(ce.pex.witnessType->square == -2);
    CHECK(ce.pex.witnessType->divisibility == 1);
}

TEST_CASE("rank-0 Leech pair is trivially symplectic") {
    LeechPairInput input;
    input.coinvariantGram = IntMat(0, 0);
    LeechPairReport rep = classifyLeechPair(input);
    REQUIRE(rep.orbits.size() == 1);
    CHECK(rep.orbits[0].pexFree);
    CHECK(rep.orbits[0].wallFree);
}

TEST_CASE("polarized report on the [-4] pipeline") {
    LeechPairInput input;
    input.coinvariantGram = IntMat{{-4}};
    input.generators = {IntMat{{-1}}};
    LeechPairReport rep = classifyLeechPair(input);
    for (const ClassifiedEmbedding& ce : rep.orbits) {
        // rank-22 invariant side exceeds the definite cap
        CHECK_THROWS_WITH_AS(polarizedReport(ce), doctest::Contains("CapExceeded"), Error);
    }
}

TEST_CASE("twisted moduli obstruction") {
    Lattice n = makeLattice(IntMat{{4, 2, -2}, {2, -2, -1}, {-2, -1, 2}});
    CHECK(twistedModuliObstruction(n));
    CHECK(!twistedModuliObstruction(
        directSum({standardLattice("U"), standardLattice("[-2]")})));
    CHECK(!twistedModuliObstruction(
        makeLattice(IntMat{{2, 0, 0}, {0, -2, 0}, {0, 0, 6}})));
}
