#include <doctest.h>

#include "latkit/shortvec.hpp"
#include "oracles.hpp"

using namespace latkit;

TEST_CASE("root counts") {
    CHECK(shortVectors(standardLattice("A2"), 2).size() == 3);
    CHECK(shortVectors(standardLattice("E8"), 2).size() == 120);
    CHECK(shortVectors(standardLattice("[-4]"), 2).empty());
}

TEST_CASE("short vectors match the box oracle on small lattices") {
    std::vector<Lattice> fixtures = {
        standardLattice("A2"),
        standardLattice("A3"),
        standardLattice("D4"),
        directSum({standardLattice("[-2]"), standardLattice("[-6]")}),
        makeLattice(IntMat{{2, 1}, {1, 4}}),
        makeLattice(IntMat{{4, 1, 0}, {1, 4, 1}, {0, 1, 6}}),
    };
    for (const Lattice& l : fixtures) {
        for (Int bound : {Int(2), Int(6), Int(12)}) {
            std::vector<IVec> mine = shortVectors(l, bound);
            std::vector<IVec> oracle = oracles::boxShortVectors(l, bound);
            CHECK(mine == oracle);
        }
    }
}

TEST_CASE("primitive vectors of a type") {
    Lattice l = directSum({standardLattice("U"), standardLattice("[-4]")});
    Sublattice w = spanOf(l, IntMat{{0, 0, 1}});
    CHECK(primitiveVectorsOfType(w, -4, 4).size() == 1);
    CHECK(primitiveVectorsOfType(w, -2, 1).empty());
    // a divisibility constraint that fails even though the square exists
    CHECK(primitiveVectorsOfType(w, -4, 2).empty());

    Lattice u = standardLattice("U");
    Sublattice a1 = spanOf(u, IntMat{{1, -1}});
    CHECK(primitiveVectorsOfType(a1, -2, 1).size() == 1);
}

TEST_CASE("type search agrees with a direct scan") {
    Lattice amb = directSum({standardLattice("U"), standardLattice("[-4]"),
                             standardLattice("[-2]")});
    Sublattice m = spanOf(amb, IntMat{{0, 0, 1, 0}, {0, 0, 0, 1}});
    Lattice ml = m.asLattice();
    for (Int d : {Int(-2), Int(-4), Int(-6), Int(-8), Int(-12)}) {
        for (Int g : {Int(1), Int(2), Int(4)}) {
            std::vector<IVec> direct;
            for (const IVec& y : shortVectors(ml, d)) {
                if (ml.norm(y) != d) continue;
                IVec v = m.toAmbient(y);
                if (!isPrimitiveVector(v)) continue;
                if (divisibility(v, amb) != g) continue;
                direct.push_back(v);
            }
            canonicalizeVectorList(direct);
            CHECK(primitiveVectorsOfType(m, d, g) == direct);
        }
    }
}

TEST_CASE("definite isometry testing") {
    Lattice a2 = standardLattice("A2");
    Lattice a2p = makeLattice(IntMat{{-2, -1}, {-1, -2}}); // basis (e1, -e2)
    auto t = isIsometricDefinite(a2p, a2);
    REQUIRE(t.has_value());
    CHECK(mul(mul(transpose(*t), a2.gram()), *t) == a2p.gram());

    CHECK(!isIsometricDefinite(makeLattice(IntMat{{2, 0}, {0, 2}}),
                               makeLattice(IntMat{{2, 1}, {1, 2}}))
               .has_value());

    // recover a random unimodular change of basis of diag(4,30)
    std::mt19937_64 rng(7);
    Lattice d = makeLattice(IntMat{{4, 0}, {0, 30}});
    for (int trial = 0; trial < 5; ++trial) {
        IntMat u = oracles::randomUnimodular(2, rng);
        Lattice d2 = oracles::transformed(d, u);
        auto iso = isIsometricDefinite(d, d2);
        REQUIRE(iso.has_value());
        CHECK(mul(mul(transpose(*iso), d2.gram()), *iso) == d.gram());
    }
}
