#include <doctest.h>

#include "latkit/isometry.hpp"
#include "latkit/binform.hpp"
#include "latkit/vinberg.hpp"

using namespace latkit;

namespace {
Lattice nsFixture() { return makeLattice(IntMat{{4, 2}, {2, -2}}); }
} // namespace

TEST_CASE("the NS chamber of the general singular cube") {
    Lattice ns = nsFixture();
    ChamberData cd = fundamentalChamber(ns, IVec{1, 0}, {Int(-2)});
    CHECK(cd.complete);
    CHECK(!cd.perturbed);
    REQUIRE(cd.walls.size() == 2);
    CHECK(cd.walls[0] == IVec{0, 1});
    CHECK(cd.walls[1] == IVec{1, -1});
    for (const IVec& w : cd.walls) {
        CHECK(ns.norm(w) == -2);
        CHECK(ns.inner(IVec{1, 0}, w) > 0);
    }
    // chamber walls pair non-negatively in the inward orientation
    CHECK(ns.inner(cd.walls[0], cd.walls[1]) >= 0);

    // wall orthogonal generators (3H±D)/2 of square 6
    IntMat row(1, 2);
    for (const IVec& w : cd.walls) {
        row(0, 0) = w[0];
        row(0, 1) = w[1];
        Sublattice perp = orthogonalComplement(spanOf(ns, row));
        CHECK(perp.inducedGram() == IntMat{{6}});
    }
}

TEST_CASE("chamber membership") {
    Lattice ns = nsFixture();
    ChamberData cd = fundamentalChamber(ns, IVec{1, 0}, {Int(-2)});
    CHECK(inChamber(IVec{1, 0}, cd));
    // reflecting the controller in a wall leaves the chamber strictly
    IntMat tau = reflection(cd.walls[0], ns);
    IVec img = mulVec(tau, IVec{1, 0});
    CHECK(!inChamber(img, cd));
    // exact pairings of (0,1) against the two walls: 4 and -2
    CHECK(ns.inner(IVec{0, 1}, cd.walls[1]) == 4);
    CHECK(ns.inner(IVec{0, 1}, cd.walls[0]) == -2);
    CHECK(!inChamber(IVec{0, 1}, cd));
}

TEST_CASE("reflection relation and word scan") {
    Lattice ns = nsFixture();
    ChamberData cd = fundamentalChamber(ns, IVec{1, 0}, {Int(-2)});
    IVec d{-1, 2}; // D, of type (-12, 2)
    CHECK(ns.norm(d) == -12);
    CHECK(ns.inner(IVec{1, 0}, d) == 0);

    // tau_{(H+D)/2} tau_D == tau_D tau_{(H-D)/2} as exact matrices
    IntMat tauD = reflection(d, ns);
    IntMat tauPlus = reflection(IVec{0, 1}, ns);
    IntMat tauMinus = reflection(IVec{1, -1}, ns);
    CHECK(mul(tauPlus, tauD) == mul(tauD, tauMinus));

    WordScanReport rep = reflectionWordScan(cd, {d}, 6);
    REQUIRE(rep.extras.size() == 1);
    CHECK(rep.extras[0].fixesController);
    CHECK(rep.extras[0].preservesChamber);
    // the conjugacy relation connects the two walls through tau_D
    bool found01 = false;
    for (auto [i, j] : rep.extras[0].conjugacyRelations)
        if (i != j) found01 = true;
    CHECK(found01);

    CHECK(rep.wordsChecked == 2 + 2 + 2 + 2 + 2 + 2);
    CHECK(rep.allNonemptyWordsMoveControllerOut);
    CHECK(rep.wordsMovingControllerOut == rep.wordsChecked);
}

TEST_CASE("controller on a mirror") {
    Lattice u = standardLattice("U");
    CHECK_THROWS_WITH_AS(fundamentalChamber(u, IVec{1, 1}, {Int(-2)}),
                         doctest::Contains("ControllerOnWall"), Error);
    ChamberData cd = fundamentalChamber(u, IVec{1, 1}, {Int(-2)}, true);
    CHECK(cd.perturbed);
    CHECK(cd.complete);
    REQUIRE(cd.walls.size() == 1);
    CHECK(cd.walls[0] == IVec{1, -1});
}

TEST_CASE("one-sided chambers") {
    // U with controller (2,1): the only mirror lies on one side
    Lattice u = standardLattice("U");
    ChamberData cd = fundamentalChamber(u, IVec{2, 1}, {Int(-2)});
    CHECK(cd.complete);
    REQUIRE(cd.walls.size() == 1);
    CHECK(cd.walls[0] == IVec{-1, 1});
    CHECK(u.inner(IVec{2, 1}, cd.walls[0]) > 0);
}

TEST_CASE("rank-2 chamber with no admissible roots at all") {
    // U(3) has no vectors of square -2 (all squares are multiples of 6)
    Lattice u3 = standardLattice("U(3)");
    ChamberData cd = fundamentalChamber(u3, IVec{1, 1}, {Int(-2)});
    CHECK(cd.complete);
    CHECK(cd.walls.empty());
}

TEST_CASE("capped chamber in rank 3") {
    Lattice l = directSum({standardLattice("U"), standardLattice("[-2]")});
    ChamberData cd = fundamentalChamber(l, IVec{2, 3, 1}, {Int(-2)}, true, Rat(25));
    CHECK(!cd.complete);
    CHECK(!cd.walls.empty());
    for (size_t i = 0; i < cd.walls.size(); ++i) {
        CHECK(l.norm(cd.walls[i]) == -2);
        CHECK(l.inner(IVec{2, 3, 1}, cd.walls[i]) >= 0);
        for (size_t j = 0; j < cd.walls.size(); ++j)
            if (i != j) CHECK(l.inner(cd.walls[i], cd.walls[j]) >= 0);
    }
}

TEST_CASE("binary form representability") {
    // definite: x^2 + y^2 = 5
    BinarySolve s = binaryRepresents(1, 0, 1, 5);
    CHECK(s.finite);
    CHECK(s.all.size() == 8);
    // square discriminant: 2xy = 4
    BinarySolve sq = binaryRepresents(0, 2, 0, 4);
    CHECK(sq.finite);
    CHECK(sq.all.size() == 4);
    // Pell type: x^2 - 2y^2 = -1 solvable, = 3 not (squares mod 8)
    BinarySolve p1 = binaryRepresents(1, 0, -2, -1);
    CHECK(!p1.finite);
    CHECK(p1.solvable);
    BinarySolve p2 = binaryRepresents(1, 0, -2, 3);
    CHECK(!p2.finite);
    CHECK(!p2.solvable);
}

TEST_CASE("hyperbolicity is enforced") {
    CHECK_THROWS_WITH_AS(fundamentalChamber(standardLattice("A2"), IVec{1, 0}, {Int(-2)}),
                         doctest::Contains("NotHyperbolic"), Error);
    CHECK_THROWS_WITH_AS(
        fundamentalChamber(standardLattice("U"), IVec{1, 0}, {Int(-2)}),
        doctest::Contains("NotHyperbolic"), Error); // isotropic controller
}
