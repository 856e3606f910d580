// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its expected values and tolerances (all
// checks here are exact).

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <vector>

#include "latkit/binform.hpp"
#include "latkit/embed.hpp"
#include "latkit/genus.hpp"
#include "latkit/hk.hpp"
#include "latkit/io.hpp"
#include "latkit/vinberg.hpp"
#include "oracles.hpp"

using namespace latkit;

namespace {

struct Criterion {
    std::string name;
    long budgetMs; // pinned runtime budget
    std::function<void()> run;
};

void expect(bool ok, const std::string& what) {
    if (!ok) fail("AcceptanceFailure", what);
}

void crit1_overlattices() {
    Lattice l = makeLattice(IntMat{{4, 0}, {0, -12}});
    auto os = evenOverlattices(l);
    expect(os.size() == 2, "diag(4,-12) must have exactly one proper even overlattice");
    expect(os[1].index == 2, "the proper overlattice has index 2");
    Lattice ns = makeLattice(IntMat{{4, 2}, {2, -2}});
    expect(sameGenus(os[1].lattice, ns), "overlattice genus mismatch");
    IntMat t{{2, 1}, {-1, 0}};
    expect(mul(mul(transpose(t), os[1].lattice.gram()), t) == ns.gram(),
           "explicit congruence onto [[4,2],[2,-2]] failed");
    expect(evenOverlattices(ns).size() == 1, "[[4,2],[2,-2]] must have no proper even overlattice");
}

void crit2_vinberg() {
    Lattice ns = makeLattice(IntMat{{4, 2}, {2, -2}});
    ChamberData cd = fundamentalChamber(ns, IVec{1, 0}, {Int(-2)});
    expect(cd.complete, "rank-2 chamber must be decided exactly");
    expect(cd.walls.size() == 2, "expected two walls");
    bool haveA = false, haveB = false;
    for (const IVec& w : cd.walls) {
        if (w == IVec{1, -1}) haveA = true;
        if (w == IVec{0, 1}) haveB = true;
    }
    expect(haveA && haveB, "walls must be (1,-1) and (0,1)");
    for (const IVec& w : cd.walls) {
        IntMat row(1, 2);
        row(0, 0) = w[0];
        row(0, 1) = w[1];
        Sublattice perp = orthogonalComplement(spanOf(ns, row));
        expect(perp.inducedGram() == IntMat{{6}}, "wall orthogonal generator must have square 6");
        IVec gen = perp.basisRows.row(0);
        bool isPlus = (gen == IVec{1, 1} || gen == IVec{-1, -1});
        bool isMinus = (gen == IVec{2, -1} || gen == IVec{-2, 1});
        expect(isPlus || isMinus, "wall orthogonal generators must be (2,-1) or (1,1) up to sign");
    }
}

void crit3_reflection_relation() {
    Lattice ns = makeLattice(IntMat{{4, 2}, {2, -2}});
    IntMat tauD = reflection(IVec{-1, 2}, ns);
    IntMat tauPlus = reflection(IVec{0, 1}, ns);
    IntMat tauMinus = reflection(IVec{1, -1}, ns);
    expect(mul(tauPlus, tauD) == mul(tauD, tauMinus),
           "tau_{(H+D)/2} tau_D != tau_D tau_{(H-D)/2}");
    expect(mulVec(tauD, IVec{1, 0}) == IVec{1, 0}, "tau_D must fix H");
    ChamberData cd = fundamentalChamber(ns, IVec{1, 0}, {Int(-2)});
    WordScanReport rep = reflectionWordScan(cd, {IVec{-1, 2}}, 6);
    expect(rep.wordsChecked == 12, "expected 12 reduced words of length <= 6");
    expect(rep.allNonemptyWordsMoveControllerOut,
           "every nonempty reduced word must move H strictly outside");
    expect(rep.extras.at(0).fixesController && rep.extras.at(0).preservesChamber,
           "tau_D must fix H and preserve the chamber");
}

void crit4_q2_anisotropy() {
    Lattice n = makeLattice(IntMat{{4, 2, -2}, {2, -2, -1}, {-2, -1, 2}});
    expect(!isIsotropicOverQp(n, 2), "N must be anisotropic over Q_2");
    auto oracle = oracles::isotropicModP6(n, 2);
    expect(oracle.has_value(), "mod-2^6 oracle must be conclusive");
    expect(*oracle == false, "mod-2^6 oracle must agree: anisotropic");
}

void crit5_wall_screening() {
    Lattice l = k3nLattice(3);
    IntMat wrow(1, 23);
    wrow(0, 22) = 1;
    ScreenReport r = isPexFree(spanOf(l, wrow));
    expect(!r.free && r.witnessType.has_value(), "the [-4] generator must be screened out");
    expect(r.witnessType->square == -4 && r.witnessType->divisibility == 4,
           "the [-4] generator has type (-4,4)");
    IVec h(23, Int(0));
    h[0] = 2;
    h[1] = 2;
    h[22] = 1;
    VectorType t = vectorType(h, l);
    expect(t.square == 4 && t.divisibility == 2, "H = 2e+2f+w must have type (4,2)");
    IntMat root(1, 23);
    root(0, 0) = 1;
    root(0, 1) = -1;
    ScreenReport r2 = isPexFree(spanOf(l, root));
    expect(!r2.free && r2.witnessType->square == -2 && r2.witnessType->divisibility == 1,
           "a (-2,1) root must be detected");
}

void crit6_discriminant_fixtures() {
    DiscriminantForm d3(k3nLattice(3));
    expect(d3.invariantFactors() == std::vector<Int>{Int(4)}, "D(K3^[3]) must be Z/4");
    int orderTwo = 0;
    for (const DiscElem& e : d3.elements())
        if (!d3.isZero(e) && d3.elemOrder(e) == 2) ++orderTwo;
    expect(orderTwo == 1, "D(K3^[3]) must have exactly one element of order 2");

    Lattice u = standardLattice("U");
    Lattice e8 = standardLattice("E8");
    Lattice m2 = standardLattice("[-2]");
    DiscriminantForm dl(directSum({u, u, e8, e8, m2, m2}));
    expect(dl.invariantFactors() == std::vector<Int>{Int(2), Int(2)},
           "D(Lambda) must be (Z/2)^2");
    expect(orthogonalGroupOfDiscForm(dl).order() == 2, "O(D_Lambda) must have order 2");

    expect(DiscriminantForm(e8).order() == 1, "D(E8) must be trivial");
}

void crit7_short_vectors() {
    Lattice a2 = standardLattice("A2");
    auto mine = shortVectors(a2, 2);
    expect(mine.size() == 3, "A2 must have 3 root pairs");
    expect(mine == oracles::boxShortVectors(a2, 2), "A2 roots must match the box oracle");
    Lattice e8 = standardLattice("E8");
    auto roots = shortVectors(e8, 2);
    expect(roots.size() == 120, "E8 must have 120 root pairs");
    expect(roots == oracles::boxShortVectors(e8, 2), "E8 roots must match the box oracle");
}

void crit8_genus_engine() {
    expect(genusSymbolToString(genusSymbol(standardLattice("E8"))) == "II_(0,8)",
           "genus of E8 must print as II_(0,8)");
    std::mt19937_64 rng(101);
    for (const Lattice& l : {standardLattice("E8"), k3nLattice(3),
                             makeLattice(IntMat{{4, 2}, {2, -2}}),
                             makeLattice(IntMat{{6, 0}, {0, 70}})}) {
        GenusSymbol base = genusSymbol(l);
        for (int t = 0; t < 100; ++t) {
            Lattice l2 = oracles::transformed(l, oracles::randomUnimodular(l.rank(), rng, 12));
            expect(genusSymbol(l2) == base, "genus symbol must be basis independent");
        }
    }
    std::vector<std::string> table = {
        "II_(1,21)4^-1_5 3^-1 7^-1",  "II_(1,21)2^1_7 4^-1_3 16^-1_3",
        "II_(1,21)2^2 8^-1_3 3^1",    "II_(1,21)4^-1_5 8^-2_4",
        "II_(1,21)4^1_1 3^1 5^1 7^1", "II_(1,21)2^-3_4 4^-1_5 9^-1",
        "II_(1,21)2^-1_3 4^2_0 3^-1 5^1", "II_(1,21)2^3_7 3^-1 5^1",
        "II_(1,21)2^-2_2 4^1_1 3^1 5^-1", "II_(1,21)4^1_1 11^2",
        "II_(1,21)2^-2_2 4^1_7 5^2",  "II_(0,20)4^2_2 7^1",
    };
    for (const std::string& s : table)
        expect(genusSymbolToString(parseGenusSymbol(s)) == s,
               "table string must round-trip: " + s);
}

void crit9_embeddings() {
    auto intoU = primitiveEmbeddings(standardLattice("[-2]"), standardLattice("U"));
    expect(intoU.size() == 1, "[-2] must embed into U in exactly one orbit");
    auto intoE8 = primitiveEmbeddings(standardLattice("[-2]"), standardLattice("E8"));
    expect(intoE8.size() == 1, "[-2] must embed into E8 in exactly one orbit");
    for (const auto& results : {intoU, intoE8})
        for (const EmbeddingResult& e : results) {
            Sublattice img{e.ambient, e.image};
            expect(isPrimitiveSublattice(img), "image must be primitive");
            Int detM = detInt(img.inducedGram());
            expect(detM * e.complement.det() ==
                       e.ambient.det() * e.glueIndex * e.glueIndex,
                   "det(M) det(K) = det(L) glue^2 must hold");
        }
    expect(sameGenus(intoE8[0].complement, standardLattice("E7")),
           "the complement of [-2] in E8 must be E7");
}

void crit10_saturation() {
    Lattice l = directSum({standardLattice("U"), standardLattice("[-2]")});
    IntMat g = IntMat::identity(3);
    g(2, 2) = -1;
    MatrixGroup order2(l, {g});
    expect(isStablySaturated(order2), "the order-2 group must be stably saturated");
    Sublattice coinv = coinvariantSublattice(order2);
    MatrixGroup trivial(l, {});
    expect(!isStablySaturated(trivial, coinv),
           "the trivial group with coinvariant [-2] must not be stably saturated");
}

void crit11_property_suites() {
    std::mt19937_64 rng(4242);
    // Hilbert product formula, 50 pairs
    std::uniform_int_distribution<int> num(-60, 60);
    std::uniform_int_distribution<int> den(1, 30);
    for (int t = 0; t < 50; ++t) {
        int a0 = 0, b0 = 0;
        while (a0 == 0) a0 = num(rng);
        while (b0 == 0) b0 = num(rng);
        Rat a(a0, den(rng)), b(b0, den(rng));
        std::vector<Int> ps{0, 2};
        for (const Rat& x : {a, b}) {
            for (const Int& p : primeFactors(x.get_num() * x.get_den()))
                if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
        }
        int prod = 1;
        for (const Int& p : ps) prod *= hilbertSymbol(a, b, p);
        expect(prod == 1, "Hilbert product formula failed");
    }
    // spinor multiplicativity, 50 pairs
    Lattice fix = directSum({standardLattice("U"), standardLattice("[-2]")});
    std::vector<IntMat> moves;
    for (const IVec& v :
         {IVec{0, 0, 1}, IVec{1, -1, 0}, IVec{2, 1, 1}, IVec{1, 2, -1}}) {
        Int nv = fix.norm(v);
        if (nv == 0) continue;
        bool integral = true;
        for (int j = 0; j < 3 && integral; ++j) {
            IVec e(3, Int(0));
            e[j] = 1;
            if ((2 * fix.inner(e, v)) % nv != 0) integral = false;
        }
        if (integral) moves.push_back(reflection(v, fix));
    }
    IntMat neg(3, 3);
    for (int i = 0; i < 3; ++i) neg(i, i) = -1;
    moves.push_back(neg);
    std::uniform_int_distribution<size_t> pick(0, moves.size() - 1);
    auto randomIso = [&] {
        IntMat m = IntMat::identity(3);
        for (int s = 0; s < 6; ++s) m = mul(m, moves[pick(rng)]);
        return m;
    };
    for (int t = 0; t < 50; ++t) {
        IntMat g1 = randomIso(), g2 = randomIso();
        expect(realSpinorNorm(mul(g1, g2), fix) ==
                   realSpinorNorm(g1, fix) * realSpinorNorm(g2, fix),
               "spinor norm must be multiplicative");
    }
    // invariant/coinvariant ranks, 20 random groups
    Lattice a22 = directSum({standardLattice("A2"), standardLattice("A2")});
    std::vector<IntMat> roots;
    for (const IVec& v : shortVectors(a22, 2)) roots.push_back(reflection(v, a22));
    std::uniform_int_distribution<size_t> pickr(0, roots.size() - 1);
    for (int t = 0; t < 20; ++t) {
        MatrixGroup g(a22, {roots[pickr(rng)], roots[pickr(rng)]});
        Sublattice inv = invariantSublattice(g);
        Sublattice co = coinvariantSublattice(g);
        expect(inv.rank() + co.rank() == 4, "rank additivity failed");
        for (int i = 0; i < inv.rank(); ++i)
            for (int j = 0; j < co.rank(); ++j)
                expect(a22.inner(inv.basisRows.row(i), co.basisRows.row(j)) == 0,
                       "invariant and coinvariant parts must be orthogonal");
    }
    // divisibility | square on 200 random vectors
    Lattice l4 = directSum({standardLattice("U"), standardLattice("[-4]")});
    std::uniform_int_distribution<int> coord(-6, 6);
    int done = 0;
    while (done < 200) {
        IVec v(3);
        bool zero = true;
        for (int i = 0; i < 3; ++i) {
            v[i] = coord(rng);
            if (v[i] != 0) zero = false;
        }
        if (zero) continue;
        expect(l4.norm(v) % divisibility(v, l4) == 0, "divisibility must divide the square");
        ++done;
    }
}

void crit12_pipeline() {
    // A2 with its stable automorphism group: one orbit, pex witness emitted
    MatrixGroup sharp = stableAutomorphismGroup(standardLattice("A2"));
    LeechPairInput a2input{standardLattice("A2").gram(), sharp.generators(), "A2"};
    LeechPairReport a2rep = classifyLeechPair(a2input);
    expect(a2rep.orbits.size() == 1, "A2 pipeline must produce one orbit");
    expect(!a2rep.orbits[0].pexFree && a2rep.orbits[0].pex.witnessType.has_value(),
           "A2 orbit must carry a pex witness");
    expect(a2rep.orbits[0].pex.witnessType->square == -2 &&
               a2rep.orbits[0].pex.witnessType->divisibility == 1,
           "A2 pex witness must have type (-2,1)");

    // [-4] with {+-1}: three orbits by generator divisibility, one pex-free,
    // and every emitted step-4 group passes the stability certificate
    LeechPairInput m4input{IntMat{{-4}}, {IntMat{{-1}}}, "[-4]"};
    LeechPairReport m4rep = classifyLeechPair(m4input);
    expect(m4rep.orbits.size() == 3, "[-4] pipeline must produce three orbits");
    int pexFree = 0;
    for (const ClassifiedEmbedding& ce : m4rep.orbits) {
        if (ce.pexFree) {
            ++pexFree;
            expect(ce.generatorDivisibility == 1, "the pex-free orbit has divisibility 1");
            expect(ce.extendedStable && ce.extendedFixesComplement,
                   "step-4 group must be stable and fix the complement");
        } else {
            expect(ce.pex.witnessType.has_value(), "rejected orbits must carry witnesses");
        }
    }
    expect(pexFree == 1, "[-4] pipeline must have exactly one pex-free orbit");
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"1 overlattice fixture (diag(4,-12) vs [[4,2],[2,-2]])", 1000, crit1_overlattices},
        {"2 Vinberg walls (1,-1), (0,1) with square-6 orthogonals", 1000, crit2_vinberg},
        {"3 reflection relation and word scan", 1000, crit3_reflection_relation},
        {"4 Q_2 anisotropy of the twisted-moduli lattice", 5000, crit4_q2_anisotropy},
        {"5 wall screening of the K3^[3] fixtures", 1000, crit5_wall_screening},
        {"6 discriminant fixtures", 1000, crit6_discriminant_fixtures},
        {"7 short vector counts vs the box oracle", 10000, crit7_short_vectors},
        {"8 genus engine", 30000, crit8_genus_engine},
        {"9 embedding engine", 60000, crit9_embeddings},
        {"10 stable saturation", 1000, crit10_saturation},
        {"11 randomized property suites", 60000, crit11_property_suites},
        {"12 Leech-pair pipeline smoke test", 60000, crit12_pipeline},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string status = "PASS";
        std::string detail;
        try {
            c.run();
        } catch (const std::exception& e) {
            status = "FAIL";
            detail = e.what();
            ++failures;
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        if (status == "PASS" && ms > c.budgetMs) {
            status = "FAIL";
            detail = "runtime budget exceeded (" + std::to_string(ms) + " ms > " +
                     std::to_string(c.budgetMs) + " ms)";
            ++failures;
        }
        std::cout << status << " criterion " << c.name << " (" << ms << " ms, budget "
                  << c.budgetMs << " ms)";
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << "\n";
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    else std::cout << "all criteria passed\n";
    return failures == 0 ? 0 : 1;
}
