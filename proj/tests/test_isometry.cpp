#include <doctest.h>

#include "latkit/hk.hpp"
#include "latkit/isometry.hpp"

using namespace latkit;

TEST_CASE("isometry predicate") {
    Lattice u = standardLattice("U");
    CHECK(isIsometry(IntMat::identity(2), u));
    CHECK(isIsometry(IntMat{{0, 1}, {1, 0}}, u));
    CHECK(!isIsometry(IntMat{{2}}, standardLattice("[-2]")));
    CHECK_THROWS_WITH_AS(isIsometry(IntMat{{1}}, u), doctest::Contains("SizeMismatch"), Error);
}

TEST_CASE("reflections") {
    Lattice ns = makeLattice(IntMat{{4, 2}, {2, -2}});
    IntMat tauD = reflection(IVec{-1, 2}, ns); // D^2 = -12
    CHECK(mulVec(tauD, IVec{1, 0}) == IVec{1, 0});
    CHECK(mulVec(tauD, IVec{0, 1}) == IVec{1, -1});
    CHECK(mul(tauD, tauD) == IntMat::identity(2));

    Lattice u = standardLattice("U");
    IntMat r = reflection(IVec{1, -1}, u);
    CHECK(mulVec(r, IVec{1, 0}) == IVec{0, 1});
    CHECK(mulVec(r, IVec{0, 1}) == IVec{1, 0});

    CHECK_THROWS_WITH_AS(reflection(IVec{1, 0}, u), doctest::Contains("IsotropicVector"),
                         Error);
    // v^2 = -4 with b(e2, v) = 1 is not integral
    Lattice l = directSum({u, standardLattice("[-4]")});
    CHECK_THROWS_WITH_AS(reflection(IVec{1, 0, 1}, l), doctest::Contains("NotIntegral"),
                         Error);
}

TEST_CASE("real spinor norms") {
    Lattice u = standardLattice("U");
    CHECK(realSpinorNorm(reflection(IVec{1, -1}, u), u) == 1);
    IntMat negU{{-1, 0}, {0, -1}};
    CHECK(realSpinorNorm(negU, u) == -1); // (-1)^p with p = 1

    Lattice e8 = standardLattice("E8");
    IntMat negE8(8, 8);
    for (int i = 0; i < 8; ++i) negE8(i, i) = -1;
    CHECK(realSpinorNorm(negE8, e8) == 1); // p = 0
}

TEST_CASE("membership flags") {
    Lattice l = directSum({standardLattice("U"), standardLattice("[-2]")});
    IntMat id = IntMat::identity(3);
    MembershipFlags f = membership(id, l);
    CHECK(f.inOPlus);
    CHECK(f.inOSharp);
    CHECK(f.inOTilde);

    IntMat neg(3, 3);
    for (int i = 0; i < 3; ++i) neg(i, i) = -1;
    f = membership(neg, l);
    CHECK(!f.inOPlus);
    CHECK(f.inOSharp);
    CHECK(!f.inOTilde);

    Lattice k3 = k3nLattice(3);
    IntMat negK(23, 23);
    for (int i = 0; i < 23; ++i) negK(i, i) = -1;
    CHECK(realSpinorNorm(negK, k3) == -1); // signature (3,20): (-1)^3
}

TEST_CASE("invariant and coinvariant sublattices") {
    Lattice two = directSum({standardLattice("[-2]"), standardLattice("[-2]")});
    MatrixGroup swap(two, {IntMat{{0, 1}, {1, 0}}});
    Sublattice inv = invariantSublattice(swap);
    CHECK(inv.basisRows == IntMat{{1, 1}});
    CHECK(inv.inducedGram() == IntMat{{-4}});
    Sublattice coinv = coinvariantSublattice(swap);
    CHECK(coinv.basisRows == IntMat{{1, -1}});
    CHECK(coinv.inducedGram() == IntMat{{-4}});

    MatrixGroup trivial(two, {});
    CHECK(invariantSublattice(trivial).rank() == 2);
    CHECK(coinvariantSublattice(trivial).rank() == 0);

    IntMat neg(2, 2);
    neg(0, 0) = neg(1, 1) = -1;
    MatrixGroup pm(two, {neg});
    CHECK(invariantSublattice(pm).rank() == 0);
    CHECK(coinvariantSublattice(pm).rank() == 2);
}

TEST_CASE("definite automorphism groups") {
    CHECK(automorphismGroupDefinite(standardLattice("[-2]")).order() == 2);
    CHECK(automorphismGroupDefinite(standardLattice("A2")).order() == 12);
    Lattice mix = directSum({standardLattice("[-2]"), standardLattice("[-4]")});
    CHECK(automorphismGroupDefinite(mix).order() == 4);
    // the order is invariant under a unimodular change of basis:
    // A2 in the basis (2e1+e2, e1+e2)
    Lattice a2t = makeLattice(IntMat{{-6, -3}, {-3, -2}});
    CHECK(automorphismGroupDefinite(a2t).order() == 12);
}

TEST_CASE("stable automorphism groups") {
    CHECK(stableAutomorphismGroup(standardLattice("[-2]")).order() == 2);
    CHECK(stableAutomorphismGroup(standardLattice("[-4]")).order() == 1);
    CHECK(stableAutomorphismGroup(standardLattice("A2")).order() == 6);
}

TEST_CASE("stable saturation") {
    Lattice l = directSum({standardLattice("U"), standardLattice("[-2]")});
    IntMat g = IntMat::identity(3);
    g(2, 2) = -1;
    MatrixGroup order2(l, {g});
    CHECK(isStablySaturated(order2));

    MatrixGroup trivial(l, {});
    Sublattice coinv = coinvariantSublattice(order2);
    CHECK(coinv.inducedGram() == IntMat{{-2}});
    CHECK(!isStablySaturated(trivial, coinv));
    CHECK(isStablySaturated(trivial)); // rank-0 coinvariant

    IntMat notStable = IntMat::identity(3);
    // swapping e and f is stable; -1 on the [-4]... use a genuinely
    // non-stable generator: -1 on a [-4] summand
    Lattice l4 = directSum({standardLattice("U"), standardLattice("[-4]")});
    IntMat h = IntMat::identity(3);
    h(2, 2) = -1;
    MatrixGroup bad(l4, {h});
    CHECK_THROWS_WITH_AS(isStablySaturated(bad), doctest::Contains("NotStable"), Error);
    (void)notStable;
}

TEST_CASE("pointwise stabilizer") {
    Lattice a2 = standardLattice("A2");
    MatrixGroup full = automorphismGroupDefinite(a2);
    MatrixGroup rot(a2, {IntMat{{0, -1}, {1, -1}}});
    CHECK(rot.order() == 3);
    // L^H = 0, so the saturation inside O(A2) is everything
    MatrixGroup sat = pointwiseStabilizer(rot, full);
    CHECK(sat.order() == 12);
    MatrixGroup satFull = pointwiseStabilizer(full, full);
    CHECK(satFull.order() == 12);

    // H = {id}: the stabilizer of all of L is trivial for a faithful group
    MatrixGroup triv(a2, {});
    CHECK(pointwiseStabilizer(triv, full).order() == 1);
}
