#include "latkit/embed.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "latkit/isometry.hpp"

namespace latkit {

std::vector<DiscSubgroup> isotropicSubgroups(const DiscriminantForm& d, const Int& capElems) {
    std::vector<DiscSubgroup> out;
    for (auto& h : allSubgroups(d, capElems)) {
        bool iso = std::all_of(h.elems.begin(), h.elems.end(),
                               [&](const DiscElem& x) { return d.q(x) == 0; });
        if (iso) out.push_back(std::move(h));
    }
    return out;
}

namespace {

RatMat overlatticeBasis(const Lattice& l, const DiscriminantForm& d, const DiscSubgroup& h) {
    int n = l.rank();
    RatMat stack(n + static_cast<int>(h.cyclicGens.size()), n);
    for (int i = 0; i < n; ++i) stack(i, i) = 1;
    for (size_t t = 0; t < h.cyclicGens.size(); ++t) {
        QVec lift = d.lift(h.cyclicGens[t]);
        for (int j = 0; j < n; ++j) stack(n + static_cast<int>(t), j) = lift[j];
    }
    return hnfRowsRat(stack);
}

IntMat gramOfRatBasis(const Lattice& l, const RatMat& basis) {
    RatMat g = mul(mul(basis, toRat(l.gram())), transpose(basis));
    return toInt(g);
}

} // namespace

std::vector<Overlattice> evenOverlattices(const Lattice& l, const Int& capElems) {
    DiscriminantForm d(l);
    std::vector<Overlattice> out;
    for (const auto& h : isotropicSubgroups(d, capElems)) {
        RatMat basis = overlatticeBasis(l, d, h);
        IntMat gram = gramOfRatBasis(l, basis);
        Lattice ol(gram);
        require(ol.even(), "InternalError", "isotropic glue produced an odd overlattice");
        out.push_back(Overlattice{ol, basis, h.order()});
    }
    std::sort(out.begin(), out.end(), [](const Overlattice& a, const Overlattice& b) {
        if (a.index != b.index) return a.index < b.index;
        return matString(a.lattice.gram()) < matString(b.lattice.gram());
    });
    return out;
}

namespace {

struct GlueBuild {
    Lattice overlattice;
    RatMat basisInSum;
    IntMat image1;
    IntMat image2;
};

GlueBuild buildGlue(const Lattice& l1, const Lattice& l2, const DiscriminantForm& d1,
                    const DiscriminantForm& d2, const DiscSubgroup& h1,
                    const std::vector<DiscElem>& images) {
    int n1 = l1.rank(), n2 = l2.rank();
    int n = n1 + n2;
    Lattice sum = directSum({l1, l2});
    RatMat stack(n + static_cast<int>(h1.cyclicGens.size()), n);
    for (int i = 0; i < n; ++i) stack(i, i) = 1;
    for (size_t t = 0; t < h1.cyclicGens.size(); ++t) {
        QVec a = d1.lift(h1.cyclicGens[t]);
        QVec b = d2.lift(images[t]);
        for (int j = 0; j < n1; ++j) stack(n + static_cast<int>(t), j) = a[j];
        for (int j = 0; j < n2; ++j) stack(n + static_cast<int>(t), n1 + j) = b[j];
    }
    RatMat basis = hnfRowsRat(stack);
    IntMat gram = gramOfRatBasis(sum, basis);
    GlueBuild out{Lattice(gram), basis, IntMat(), IntMat()};
    require(out.overlattice.even(), "InternalError", "glue produced an odd overlattice");
    // coordinates of the two factors in the overlattice basis
    RatMat f1(n1, n), f2(n2, n);
    for (int i = 0; i < n1; ++i) f1(i, i) = 1;
    for (int i = 0; i < n2; ++i) f2(i, n1 + i) = 1;
    auto c1 = solveLeft(basis, f1);
    auto c2 = solveLeft(basis, f2);
    require(c1 && isIntegral(*c1) && c2 && isIntegral(*c2), "InternalError",
            "factors do not embed in the glued overlattice");
    out.image1 = toInt(*c1);
    out.image2 = toInt(*c2);
    return out;
}

} // namespace

std::vector<PrimitiveExtension> primitiveExtensions(const Lattice& l1, const Lattice& l2,
                                                    const Int& capElems) {
    DiscriminantForm d1(l1), d2(l2);
    std::vector<PrimitiveExtension> out;
    auto subs1 = allSubgroups(d1, capElems);
    auto subs2 = allSubgroups(d2, capElems);
    for (const auto& h1 : subs1)
        for (const auto& h2 : subs2) {
            if (h1.order() != h2.order()) continue;
            for (const auto& images : glueMaps(d1, h1, d2, h2, -1)) {
                GlueBuild b = buildGlue(l1, l2, d1, d2, h1, images);
                PrimitiveExtension pe{b.overlattice, b.basisInSum, b.image1, b.image2,
                                      Gluing{h1, h2, images}, h1.order()};
                out.push_back(std::move(pe));
            }
        }
    std::sort(out.begin(), out.end(), [](const PrimitiveExtension& a, const PrimitiveExtension& b) {
        if (a.glueIndex != b.glueIndex) return a.glueIndex < b.glueIndex;
        return matString(a.overlattice.gram()) < matString(b.overlattice.gram());
    });
    return out;
}

int discMinGenerators(const DiscriminantForm& d) {
    int best = 0;
    std::vector<Int> primes;
    for (const Int& f : d.invariantFactors())
        for (const Int& p : primeFactors(f))
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    for (const Int& p : primes) {
        int lp = 0;
        for (const Int& f : d.invariantFactors())
            if (modPos(f, p) == 0) ++lp;
        best = std::max(best, lp);
    }
    return best;
}

bool uniqueInGenus(const Lattice& l) {
    if (l.rank() <= 1) return true;
    if (!l.even()) return false;
    auto [p, q] = l.signature();
    if (p == 0 || q == 0) return false; // definite: no general criterion here
    if (l.rank() == 2 && l.det() == -1) return true; // U
    DiscriminantForm d(l);
    return l.rank() >= discMinGenerators(d) + 2;
}

namespace {

// --- complement realization -------------------------------------------

void definiteSearch(int rank, const Int& targetDet, std::vector<Lattice>& out) {
    // even positive definite grams with bounded reduced diagonal
    // d1*...*dk <= (4/3)^(k(k-1)/2) * det   (Hermite)
    Int det = targetDet;
    std::vector<IntMat> found;
    IntMat g(rank, rank);
    Rat hermite(1);
    for (int i = 0; i < rank * (rank - 1) / 2; ++i) hermite *= Rat(4, 3);
    Rat diagBudget = hermite * Rat(det);

    std::function<void(int)> fillDiag;
    std::function<void(int, int)> fillOff;
    auto record = [&]() {
        Lattice cand(g);
        if (cand.det() != det || !cand.isPositiveDefinite() || !cand.even()) return;
        for (const auto& f : found)
            if (isIsometricDefinite(Lattice(f), cand)) return;
        found.push_back(g);
    };
    fillOff = [&](int i, int j) {
        if (i == rank) {
            record();
            return;
        }
        int ni = (j + 1 == i) ? i + 1 : i;
        int nj = (j + 1 == i) ? 0 : j + 1;
        Int bound = g(i, i) < g(j, j) ? g(i, i) : g(j, j);
        bound = bound / 2;
        for (Int v = -bound; v <= bound; ++v) {
            g(i, j) = v;
            g(j, i) = v;
            fillOff(ni, nj);
        }
    };
    fillDiag = [&](int i) {
        if (i == rank) {
            if (rank <= 1) record();
            else fillOff(1, 0);
            return;
        }
        Rat prod(1);
        for (int t = 0; t < i; ++t) prod *= Rat(g(t, t));
        for (Int v = (i ? g(i - 1, i - 1) : Int(2));; v += 2) {
            if (prod * Rat(v) > diagBudget) break;
            g(i, i) = v;
            fillDiag(i + 1);
        }
    };
    if (rank == 0) return;
    fillDiag(0);
    for (const auto& f : found) out.emplace_back(f);
}

// Rank-2 even indefinite lattices of the given (negative) determinant:
// grams [[A,B],[B,C]] with AC - B^2 = det, enumerated over the reduced
// range B <= sqrt(-det) (+1 for the boundary), divisor pairs for AC.
void indefiniteBinarySearch(const Int& det, std::vector<Lattice>& out) {
    if (det >= 0) return;
    Int bmax = isqrtFloor(-det) + 1;
    std::set<std::string> seen;
    auto push = [&](const Int& a, const Int& b, const Int& c) {
        IntMat g(2, 2);
        g(0, 0) = a;
        g(0, 1) = b;
        g(1, 0) = b;
        g(1, 1) = c;
        if (a * c - b * b != det) return;
        Lattice cand(g);
        if (!cand.even() || cand.isDefinite()) return;
        if (seen.insert(matString(g)).second) out.push_back(std::move(cand));
    };
    for (Int b = 0; b <= bmax; ++b) {
        Int prod = det + b * b; // = AC
        if (prod == 0) {
            // [[0,b],[b,C]]: classes are finite, C modulo 2b
            for (Int c = 0; c < 2 * b; c += 2) push(0, b, c);
            continue;
        }
        Int ap = abs(prod);
        for (Int a = 1; a * a <= ap; ++a) {
            if (ap % a != 0) continue;
            Int divs[2] = {a, Int(ap / a)};
            for (const Int& a0 : divs) {
                for (int sgn = 0; sgn < 2; ++sgn) {
                    Int av = sgn ? -a0 : a0;
                    if (prod % av != 0) continue;
                    Int cv = prod / av;
                    if (modPos(av, 2) != 0 || modPos(cv, 2) != 0) continue;
                    push(av, b, cv);
                }
            }
        }
    }
}

void negdefBlockSums(int rank, const Int& targetDet, std::vector<Lattice>& out, size_t cap) {
    // multisets of negative definite blocks: E8, E7, E6, D_n, A_n, [-2k]
    struct Block {
        std::string name;
        int rank;
        Int absDet;
    };
    std::vector<Block> blocks;
    blocks.push_back({"E8", 8, Int(1)});
    blocks.push_back({"E7", 7, Int(2)});
    blocks.push_back({"E6", 6, Int(3)});
    for (int n = std::min(rank, 20); n >= 4; --n)
        blocks.push_back({"D" + std::to_string(n), n, Int(4)});
    for (int n = std::min(rank, 20); n >= 1; --n)
        blocks.push_back({"A" + std::to_string(n), n, Int(n + 1)});
    for (int k = 2; k <= 16; ++k)
        blocks.push_back({"[-" + std::to_string(2 * k) + "]", 1, Int(2 * k)});

    Int absTarget = abs(targetDet);
    std::vector<std::string> chosen;
    std::vector<std::vector<std::string>> results;
    std::function<void(size_t, int, Int)> rec = [&](size_t from, int remRank, Int remDet) {
        if (results.size() >= cap) return;
        if (remRank == 0) {
            if (remDet == 1) results.push_back(chosen);
            return;
        }
        for (size_t i = from; i < blocks.size(); ++i) {
            if (blocks[i].rank > remRank) continue;
            if (modPos(remDet, blocks[i].absDet) != 0) continue;
            // leftover determinant must stay reachable: cheap prune only
            chosen.push_back(blocks[i].name);
            rec(i, remRank - blocks[i].rank, remDet / blocks[i].absDet);
            chosen.pop_back();
            if (results.size() >= cap) return;
        }
    };
    rec(0, rank, absTarget);
    for (const auto& names : results) {
        std::vector<Lattice> parts;
        for (const auto& nm : names) parts.push_back(standardLattice(nm));
        Lattice sum = directSum(parts);
        if (sum.det() == targetDet && sum.even()) out.push_back(sum);
    }
}

} // namespace

std::vector<Lattice> realizeEvenLattices(std::pair<int, int> sig, const Int& det) {
    auto [p, q] = sig;
    std::vector<Lattice> out;
    int rank = p + q;
    // determinant sign must match the signature
    Int expectSign = (q % 2 == 0) ? 1 : -1;
    if ((det > 0 ? 1 : -1) != (expectSign > 0 ? 1 : -1)) return out;
    if (rank == 0) {
        if (det == 1) out.emplace_back();
        return out;
    }
    if (rank == 1) {
        Int d = det;
        if (modPos(d, 2) == 0) {
            IntMat g(1, 1);
            g(0, 0) = d;
            out.emplace_back(g);
        }
        return out;
    }
    if (q == 0 || p == 0) {
        bool neg = (p == 0);
        Int posDet = neg ? (rank % 2 == 0 ? det : -det) : det;
        if (posDet < 0) posDet = -posDet; // |det| of the positive form
        if (rank <= 4) {
            std::vector<Lattice> pos;
            definiteSearch(rank, posDet, pos);
            for (const Lattice& c : pos) out.push_back(neg ? rescale(c, -1) : c);
        } else if (neg) {
            negdefBlockSums(rank, det, out, 50);
        }
        return out;
    }
    // indefinite: hyperbolic blocks + negative definite rest (q >= p; mirror else)
    if (p > q) {
        std::vector<Lattice> flipped = realizeEvenLattices({q, p}, (rank % 2 == 0) ? det : -det);
        for (const Lattice& c : flipped) out.push_back(rescale(c, -1));
        return out;
    }
    std::vector<Lattice> parts(static_cast<size_t>(p > 0 ? p - 1 : 0), standardLattice("U"));
    Int partsDet = (p % 2 == 0) ? -1 : 1; // det of U^(p-1)
    if (q == p) {
        // U^(p-1) + a rank-2 even indefinite block of matching determinant
        std::vector<Lattice> blocks;
        Int blockDet = det / partsDet;
        indefiniteBinarySearch(blockDet, blocks);
        for (const Lattice& b : blocks) {
            std::vector<Lattice> all = parts;
            all.push_back(b);
            out.push_back(directSum(all));
        }
        return out;
    }
    // hyperbolic part: U^p, or U^(p-1) + U(k) for small k
    struct HypVariant {
        std::vector<Lattice> blocks;
        Int det;
    };
    std::vector<HypVariant> hyps;
    {
        HypVariant plain;
        plain.blocks.assign(static_cast<size_t>(p), standardLattice("U"));
        plain.det = (p % 2 == 0) ? 1 : -1;
        hyps.push_back(plain);
        for (int k = 2; k <= 4 && p >= 1; ++k) {
            HypVariant v;
            v.blocks = parts;
            v.blocks.push_back(standardLattice("U(" + std::to_string(k) + ")"));
            v.det = partsDet * Int(-k * k);
            hyps.push_back(v);
        }
    }
    std::set<std::string> seen;
    for (const HypVariant& hyp : hyps) {
        if (det % hyp.det != 0) continue;
        Int restDet = det / hyp.det;
        std::vector<Lattice> rests;
        if (q - p <= 4) {
            std::vector<Lattice> pos;
            Int posDet = ((q - p) % 2 == 0) ? restDet : -restDet;
            definiteSearch(q - p, posDet, pos);
            for (const Lattice& c : pos) rests.push_back(rescale(c, -1));
        } else {
            negdefBlockSums(q - p, restDet, rests, 50);
        }
        for (const Lattice& r : rests) {
            std::vector<Lattice> all = hyp.blocks;
            all.push_back(r);
            Lattice sum = directSum(all);
            if (seen.insert(matString(sum.gram())).second) out.push_back(std::move(sum));
        }
    }
    return out;
}

namespace {

// Subgroup of O(q_X) known to come from O(X), with a completeness flag.
struct DiscAutImage {
    std::vector<IntMat> actions;
    bool complete = false;
};

DiscAutImage discAutImage(const Lattice& x, const DiscriminantForm& d) {
    DiscAutImage out;
    int k = d.ngens();
    if (k == 0) {
        out.actions.push_back(IntMat(0, 0));
        out.complete = true;
        return out;
    }
    auto [p, q] = x.signature();
    bool indef = p > 0 && q > 0;
    if (indef && x.even() && x.rank() >= discMinGenerators(d) + 2) {
        // O(X) -> O(q_X) is onto in this range
        out.actions = orthogonalGroupOfDiscForm(d).elements;
        out.complete = true;
        return out;
    }
    if (!indef && x.rank() <= kDefiniteAutRankCap && x.rank() > 0) {
        std::set<std::string> seen;
        try {
            MatrixGroup aut = automorphismGroupDefinite(x);
            for (const IntMat& g : aut.elements()) {
                IntMat a = discriminantAction(g, d).action;
                std::string key = matString(a);
                if (seen.insert(key).second) out.actions.push_back(a);
            }
            out.complete = true;
            return out;
        } catch (const Error&) {
            out.actions.clear();
        }
    }
    // fall back to {+-1}
    IntMat id = IntMat::identity(k);
    IntMat neg(k, k);
    for (int i = 0; i < k; ++i) neg(i, i) = modPos(Int(-1), d.invariantFactors()[i]);
    out.actions.push_back(id);
    std::string kid = matString(id), kneg = matString(neg);
    if (kneg != kid) out.actions.push_back(neg);
    out.complete = false;
    return out;
}

std::string elemKey(const DiscElem& e) {
    std::string s;
    for (const Int& x : e) {
        s += x.get_str();
        s += ',';
    }
    return s;
}

} // namespace

std::vector<EmbeddingResult> primitiveEmbeddings(const Lattice& m, const Lattice& l,
                                                 const Int& capElems) {
    require(m.even() && l.even(), "NotEven", "primitive embeddings need even lattices");
    require(m.rank() < l.rank(), "SignatureObstruction", "rank(M) must be below rank(L)");
    auto [mp, mq] = m.signature();
    auto [lp, lq] = l.signature();
    require(mp <= lp && mq <= lq, "SignatureObstruction",
            "signature of M does not fit into L");
    std::pair<int, int> sigK{lp - mp, lq - mq};

    DiscriminantForm dm(m);
    DiscAutImage amAut = discAutImage(m, dm);

    struct Candidate {
        EmbeddingResult res;
        std::string complementGenus;
        bool deduped = false;
    };
    std::vector<Candidate> cands;

    for (const auto& hm : allSubgroups(dm, capElems)) {
        Int g = hm.order();
        Int num = l.det() * g * g;
        if (m.rank() > 0) {
            if (modPos(num, m.det()) != 0) continue;
        }
        Int detK = (m.rank() > 0) ? Int(num / m.det()) : l.det();
        for (const Lattice& k : realizeEvenLattices(sigK, detK)) {
            DiscriminantForm dk(k);
            for (const auto& hk : allSubgroups(dk, capElems)) {
                if (hk.order() != g) continue;
                for (const auto& images : glueMaps(dm, hm, dk, hk, -1)) {
                    GlueBuild b = buildGlue(m, k, dm, dk, hm, images);
                    if (!sameGenus(b.overlattice, l)) continue;
                    EmbeddingResult res;
                    res.ambient = b.overlattice;
                    res.ambientIsOriginal = false;
                    res.image = b.image1;
                    res.complementRows = b.image2;
                    res.complement = k;
                    res.glue = Gluing{hm, hk, images};
                    res.glueIndex = g;
                    bool ambientCertified = uniqueInGenus(l);
                    if (l.isDefinite() && l.rank() <= kDefiniteAutRankCap) {
                        auto iso = isIsometricDefinite(b.overlattice, l);
                        if (!iso) continue; // right genus, wrong class
                        // move coordinates into l itself: rows r -> r * iso^T
                        res.image = mul(res.image, transpose(*iso));
                        res.complementRows = mul(res.complementRows, transpose(*iso));
                        res.ambient = l;
                        res.ambientIsOriginal = true;
                        ambientCertified = true;
                    }
                    bool dedupExact =
                        k.rank() == 0 || (k.isDefinite() && k.rank() <= kDefiniteAutRankCap);
                    res.guarantee = (ambientCertified && dedupExact) ? Guarantee::Exact
                                                                     : Guarantee::GenusLevel;
                    Candidate c;
                    c.res = std::move(res);
                    c.complementGenus =
                        k.rank() == 0 ? "0" : genusSymbolToString(genusSymbol(k));
                    cands.push_back(std::move(c));
                }
            }
        }
    }

    // orbit dedup: complement class + glue graph transported through finite
    // quadratic form isometries of the complement discriminants
    DiscriminantForm dmAgain(m);
    auto fullSubgroupOf = [](const DiscriminantForm& d) {
        DiscSubgroup full;
        full.elems = d.elements();
        std::sort(full.elems.begin(), full.elems.end(),
                  [](const DiscElem& a, const DiscElem& b) { return lexLess(a, b); });
        for (int i = 0; i < d.ngens(); ++i) {
            DiscElem e = d.zero();
            e[i] = 1;
            full.cyclicGens.push_back(e);
            full.cyclicOrders.push_back(d.invariantFactors()[i]);
        }
        return full;
    };
    // q-isometries D_{K1} -> D_{K2} known to come from actual isometries
    auto chiBetween = [&](const Lattice& k1, const Lattice& k2)
        -> std::vector<std::vector<DiscElem>> {
        DiscriminantForm d1(k1), d2(k2);
        if (d1.order() != d2.order()) return {};
        if (d1.ngens() == 0) return {std::vector<DiscElem>{}};
        auto [p1, q1] = k1.signature();
        bool indefFull =
            p1 > 0 && q1 > 0 && k1.even() && k1.rank() >= discMinGenerators(d1) + 2;
        if (indefFull) {
            // O(K) -> O(q_K) is onto here, so every finite-form isometry is
            // realized by a lattice isometry
            return glueMaps(d1, fullSubgroupOf(d1), d2, fullSubgroupOf(d2), +1);
        }
        if (k1.isDefinite() && k1.rank() <= kDefiniteAutRankCap) {
            auto iso = isIsometricDefinite(k1, k2);
            if (!iso) return {};
            // generator images under the concrete isometry K1 -> K2 ...
            std::vector<DiscElem> delta;
            RatMat t = toRat(*iso);
            for (int i = 0; i < d1.ngens(); ++i) {
                DiscElem e = d1.zero();
                e[i] = 1;
                delta.push_back(d2.classOf(mulVec(t, d1.lift(e))));
            }
            // ... composed with the image of O(K2) on D_{K2}
            std::vector<std::vector<DiscElem>> out;
            std::set<std::string> seen;
            MatrixGroup autK2 = automorphismGroupDefinite(k2);
            for (const IntMat& g : autK2.elements()) {
                RatMat gr = toRat(g);
                std::vector<DiscElem> comp;
                std::string key;
                for (const DiscElem& y : delta) {
                    DiscElem img = d2.classOf(mulVec(gr, d2.lift(y)));
                    key += elemKey(img) + ";";
                    comp.push_back(img);
                }
                if (seen.insert(key).second) out.push_back(comp);
            }
            return out;
        }
        // conservative fallback: signed-permutation isometries K1 -> K2
        // (composed with -id), enumerable for small ranks
        if (k1.rank() <= 6) {
            std::vector<std::vector<DiscElem>> out;
            std::set<std::string> seen;
            int n = k1.rank();
            std::vector<int> perm(n);
            for (int i = 0; i < n; ++i) perm[i] = i;
            do {
                for (int mask = 0; mask < (1 << n); ++mask) {
                    IntMat t(n, n); // columns: e_i -> ± e_{perm[i]}
                    for (int i = 0; i < n; ++i)
                        t(perm[i], i) = (mask >> i & 1) ? -1 : 1;
                    if (mul(mul(transpose(t), k2.gram()), t) != k1.gram()) continue;
                    RatMat tr = toRat(t);
                    for (int sgn = 0; sgn < 2; ++sgn) {
                        std::vector<DiscElem> images;
                        std::string key;
                        for (int i = 0; i < d1.ngens(); ++i) {
                            DiscElem e = d1.zero();
                            e[i] = 1;
                            DiscElem img = d2.classOf(mulVec(tr, d1.lift(e)));
                            if (sgn) img = d2.neg(img);
                            key += elemKey(img) + ";";
                            images.push_back(img);
                        }
                        if (seen.insert(key).second) out.push_back(images);
                    }
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            return out;
        }
        if (k1.gram() == k2.gram()) {
            // identity and the action of -id only
            std::vector<std::vector<DiscElem>> out;
            for (int sgn = 0; sgn < 2; ++sgn) {
                std::vector<DiscElem> images;
                for (int i = 0; i < d1.ngens(); ++i) {
                    DiscElem e = d1.zero();
                    e[i] = sgn == 0 ? Int(1) : modPos(Int(-1), d1.invariantFactors()[i]);
                    images.push_back(e);
                }
                out.push_back(images);
            }
            return out;
        }
        return {};
    };
    // graph of the glue map, with alpha on the D_M side and chi into D_{K2}
    auto graphSet = [&](const Candidate& c, const IntMat* alpha,
                        const std::vector<DiscElem>* chi, const DiscriminantForm& dkTarget) {
        std::set<std::string> s;
        const DiscSubgroup& hm1 = c.res.glue.source;
        size_t kg = hm1.cyclicGens.size();
        std::vector<Int> counter(kg, 0);
        DiscriminantForm dk(c.res.complement);
        while (true) {
            DiscElem x = dmAgain.zero();
            DiscElem y = dk.zero();
            for (size_t t2 = 0; t2 < kg; ++t2) {
                x = dmAgain.add(x, dmAgain.smul(counter[t2], hm1.cyclicGens[t2]));
                y = dk.add(y, dk.smul(counter[t2], c.res.glue.images[t2]));
            }
            if (alpha) {
                DiscElem nx(dmAgain.ngens());
                for (int r = 0; r < dmAgain.ngens(); ++r) {
                    Int acc = 0;
                    for (int cc = 0; cc < dmAgain.ngens(); ++cc)
                        acc += (*alpha)(r, cc) * x[cc];
                    nx[r] = modPos(acc, dmAgain.invariantFactors()[r]);
                }
                x = nx;
            }
            if (chi) {
                DiscElem ny = dkTarget.zero();
                for (int r = 0; r < dk.ngens(); ++r)
                    ny = dkTarget.add(ny, dkTarget.smul(y[r], (*chi)[r]));
                y = ny;
            }
            s.insert(elemKey(x) + "|" + elemKey(y));
            size_t t3 = 0;
            for (; t3 < kg; ++t3) {
                counter[t3] += 1;
                if (counter[t3] < hm1.cyclicOrders[t3]) break;
                counter[t3] = 0;
            }
            if (t3 == kg) break;
        }
        if (kg == 0) s.insert("|");
        return s;
    };

    std::vector<EmbeddingResult> out;
    for (size_t i = 0; i < cands.size(); ++i) {
        if (cands[i].deduped) continue;
        out.push_back(cands[i].res);
        for (size_t j = i + 1; j < cands.size(); ++j) {
            if (cands[j].deduped) continue;
            const auto& a = cands[i];
            const auto& bnd = cands[j];
            if (a.res.glueIndex != bnd.res.glueIndex) continue;
            const Lattice& k1 = a.res.complement;
            const Lattice& k2 = bnd.res.complement;
            if (k1.rank() != k2.rank()) continue;
            if (k1.rank() == 0) {
                cands[j].deduped = true;
                continue;
            }
            if (a.complementGenus != bnd.complementGenus) continue;
            DiscriminantForm dk2(k2);
            bool equivalent = false;
            std::set<std::string> target = graphSet(bnd, nullptr, nullptr, dk2);
            for (const auto& chi : chiBetween(k1, k2)) {
                for (const IntMat& alpha : amAut.actions) {
                    if (graphSet(a, &alpha, &chi, dk2) == target) {
                        equivalent = true;
                        break;
                    }
                }
                if (equivalent) break;
            }
            if (equivalent) cands[j].deduped = true;
        }
    }
    return out;
}

std::vector<VectorOrbit> invariantVectorOrbits(const Sublattice& lfix, const Int& square,
                                               const Int& gamma,
                                               const std::optional<Int>& coordBound) {
    Lattice fl = lfix.asLattice();
    require(fl.rank() <= kDefiniteAutRankCap, "CapExceeded",
            "fixed sublattice exceeds the definite rank cap");
    std::vector<VectorOrbit> out;
    if (fl.rank() == 0) return out;
    if (!fl.isDefinite()) {
        // indefinite: box search bounded by the caller, ±pairs as orbits
        require(coordBound.has_value(), "NotDefiniteBound",
                "indefinite fixed sublattice needs an explicit coordinate bound");
        std::vector<IVec> hits;
        IVec y(fl.rank(), Int(0));
        std::function<void(int)> rec = [&](int i) {
            if (i == fl.rank()) {
                if (fl.norm(y) != square) return;
                IVec v = lfix.toAmbient(y);
                if (std::all_of(v.begin(), v.end(), [](const Int& t) { return t == 0; }))
                    return;
                if (!isPrimitiveVector(v)) return;
                if (divisibility(v, lfix.ambient) != gamma) return;
                hits.push_back(y);
                return;
            }
            for (Int t = -*coordBound; t <= *coordBound; ++t) {
                y[i] = t;
                rec(i + 1);
            }
        };
        rec(0);
        std::set<std::string> seenPairs;
        for (const IVec& y2 : hits) {
            IVec rep = canonicalSign(y2);
            std::string k;
            for (const Int& x : rep) k += x.get_str() + ",";
            if (!seenPairs.insert(k).second) continue;
            VectorOrbit orbit;
            IntMat row(1, fl.rank());
            for (int j = 0; j < fl.rank(); ++j) row(0, j) = rep[j];
            Sublattice comp = orthogonalComplement(spanOf(fl, row));
            orbit.complementGram = comp.inducedGram();
            orbit.members = {canonicalSign(lfix.toAmbient(rep))};
            orbit.representative = orbit.members.front();
            out.push_back(std::move(orbit));
        }
        std::sort(out.begin(), out.end(), [](const VectorOrbit& a, const VectorOrbit& b) {
            return lexLess(a.representative, b.representative);
        });
        return out;
    }
    if ((square > 0 && !fl.isPositiveDefinite()) || (square < 0 && !fl.isNegativeDefinite()))
        return out;
    // candidates in internal coordinates
    std::vector<IVec> inFix;
    for (const IVec& y : shortVectors(fl, square)) {
        if (fl.norm(y) != square) continue;
        IVec v = lfix.toAmbient(y);
        if (!isPrimitiveVector(v)) continue;
        if (divisibility(v, lfix.ambient) != gamma) continue;
        inFix.push_back(y);
    }
    if (inFix.empty()) return out;
    MatrixGroup aut = automorphismGroupDefinite(fl);
    std::set<std::string> seen;
    auto key = [](const IVec& v) {
        std::string s;
        for (const Int& x : v) {
            s += x.get_str();
            s += ',';
        }
        return s;
    };
    for (const IVec& y : inFix) {
        IVec cy = canonicalSign(y);
        if (seen.count(key(cy))) continue;
        VectorOrbit orbit;
        for (const IntMat& t : aut.elements()) {
            IVec img = canonicalSign(mulVec(t, cy));
            std::string ik = key(img);
            if (!seen.count(ik)) {
                // keep only images that are candidates themselves
                bool inSet = std::any_of(inFix.begin(), inFix.end(), [&](const IVec& z) {
                    return canonicalSign(z) == img;
                });
                if (inSet) {
                    seen.insert(ik);
                    orbit.members.push_back(img);
                }
            }
        }
        canonicalizeVectorList(orbit.members);
        orbit.representative = orbit.members.front();
        // complement of the representative inside the fixed sublattice
        IntMat row(1, fl.rank());
        for (int j = 0; j < fl.rank(); ++j) row(0, j) = orbit.representative[j];
        Sublattice comp = orthogonalComplement(spanOf(fl, row));
        orbit.complementGram = comp.inducedGram();
        // report members and representative in ambient coordinates
        std::vector<IVec> amb;
        for (const IVec& y2 : orbit.members) amb.push_back(canonicalSign(lfix.toAmbient(y2)));
        canonicalizeVectorList(amb);
        orbit.members = amb;
        orbit.representative = canonicalSign(lfix.toAmbient(orbit.representative));
        out.push_back(std::move(orbit));
    }
    std::sort(out.begin(), out.end(), [](const VectorOrbit& a, const VectorOrbit& b) {
        return lexLess(a.representative, b.representative);
    });
    return out;
}

} // namespace latkit
