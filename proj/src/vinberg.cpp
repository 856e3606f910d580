#include "latkit/vinberg.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "latkit/binform.hpp"
#include "latkit/isometry.hpp"
#include "latkit/shortvec.hpp"

namespace latkit {

namespace {

bool lexPositive(const IVec& v) {
    for (const Int& x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;
}

IVec primitiveCore(const IVec& v) {
    Int g = gcdVec(v);
    IVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
    return w;
}

struct Candidate {
    IVec root;   // oriented toward the controller
    Rat distance;
    IVec mirrorKey;
};

// Orientation toward the controller; ties broken by a lexicographic
// infinitesimal perturbation of the controller.
struct Orienter {
    const Lattice* l;
    const IVec* h;
    bool perturb;
    bool* sawOnWall;

    // returns the oriented representative of ±r
    IVec orient(const IVec& r) const {
        Int s = l->inner(*h, r);
        if (s > 0) return r;
        IVec neg(r.size());
        for (size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
        if (s < 0) return neg;
        *sawOnWall = true;
        require(perturb, "ControllerOnWall",
                "controller lies on a mirror; rerun with perturbation enabled");
        return lexPositive(r) ? r : neg;
    }
};

// Admissibility sublattice for square d: {x in L : 2 b(x, ·)/d integral}.
Sublattice admissibleSublattice(const Lattice& l, const Int& d) {
    Int g = abs(d) / gcdInt(abs(d), Int(2));
    return intersectScaledDual(fullSublattice(l), g);
}

struct Rank2Engine {
    const Lattice& l;
    const IVec& h;
    bool perturb;
    bool sawOnWall = false;

    IVec side; // generator of h^perp, fixes the two half-line directions

    explicit Rank2Engine(const Lattice& l0, const IVec& h0, bool p0)
        : l(l0), h(h0), perturb(p0) {
        IntMat hrow(1, 2);
        hrow(0, 0) = h[0];
        hrow(0, 1) = h[1];
        Sublattice perp = orthogonalComplement(spanOf(l, hrow));
        side = perp.basisRows.row(0);
    }

    int sideOf(const IVec& r) const {
        Int s = l.inner(side, r);
        require(s != 0, "InternalError", "root parallel to the controller");
        return s > 0 ? 1 : -1;
    }
};

std::vector<IVec> solutionsOnLine(const Lattice& l, const Sublattice& sub, const IVec& hvec,
                                  const Int& beta, const Int& d) {
    // roots x in sub with b(x, hvec) = beta and x^2 = d
    std::vector<IVec> out;
    IntMat b = sub.basisRows;
    int k = b.rows();
    IVec hcoef(k); // y * hcoef = beta
    for (int i = 0; i < k; ++i) hcoef[i] = l.inner(b.row(i), hvec);
    // solve y . hcoef = beta over Z
    Int g = gcdVec(hcoef);
    if (g == 0) return out; // hvec orthogonal to sub entirely
    if (modPos(beta, g) != 0) return out;
    // particular solution by extended gcd over the coefficients
    IVec y0(k, Int(0));
    {
        Int acc = 0;
        std::vector<Int> partial(k);
        IVec coefs(k, Int(0));
        for (int i = 0; i < k; ++i) {
            Int s, t;
            Int g2 = gcdExt(acc, hcoef[i], s, t);
            for (int j = 0; j < i; ++j) coefs[j] *= s;
            coefs[i] = t;
            acc = g2;
        }
        for (int i = 0; i < k; ++i) y0[i] = coefs[i] * (beta / g);
    }
    // kernel of y . hcoef = 0
    IntMat hmat(1, k);
    for (int i = 0; i < k; ++i) hmat(0, i) = hcoef[i];
    IntMat ker = kernelRows(hmat); // rows y with hmat y^T = y . hcoef = 0
    int kk = ker.rows();
    // quadratic on y0 + t*ker
    IntMat gramSub = sub.inducedGram();
    if (kk == 1) {
        IVec kv = ker.row(0);
        Int a2 = 0, b1 = 0, c0 = 0;
        auto qform = [&](const IVec& u, const IVec& v) {
            Int s = 0;
            for (int i = 0; i < static_cast<int>(u.size()); ++i)
                for (int j = 0; j < static_cast<int>(v.size()); ++j)
                    s += u[i] * gramSub(i, j) * v[j];
            return s;
        };
        a2 = qform(kv, kv);
        b1 = 2 * qform(y0, kv);
        c0 = qform(y0, y0) - d;
        // a2 t^2 + b1 t + c0 = 0
        Int disc = b1 * b1 - 4 * a2 * c0;
        if (disc < 0 || !isPerfectSquare(disc)) return out;
        Int r = isqrtFloor(disc);
        for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
            Int num = -b1 + (sgn == 0 ? r : -r);
            if (modPos(num, 2 * a2) != 0) continue;
            Int t = num / (2 * a2);
            IVec y(k);
            for (int i = 0; i < k; ++i) y[i] = y0[i] + t * kv[i];
            out.push_back(sub.toAmbient(y));
        }
        return out;
    }
    // higher-rank slice: negative definite coordinates via shifted FP
    RatMat kerQ = toRat(ker);
    RatMat p(kk, kk);
    QVec m(kk, Rat(0));
    auto qformQ = [&](const QVec& u, const QVec& v) {
        Rat s(0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) s += u[i] * Rat(gramSub(i, j)) * v[j];
        return s;
    };
    std::vector<QVec> kerRowsQ(kk, QVec(k, Rat(0)));
    for (int i = 0; i < kk; ++i)
        for (int j = 0; j < k; ++j) kerRowsQ[i][j] = Rat(ker(i, j));
    QVec y0q(k, Rat(0));
    for (int i = 0; i < k; ++i) y0q[i] = Rat(y0[i]);
    for (int i = 0; i < kk; ++i) {
        for (int j = 0; j < kk; ++j) p(i, j) = -qformQ(kerRowsQ[i], kerRowsQ[j]);
        m[i] = qformQ(kerRowsQ[i], y0q);
    }
    // -q(y0 + tK) = (t - mu) P (t - mu)^T - mu P mu^T - q(y0), mu = P^{-1} m
    RatMat pinv = inverseRat(p);
    QVec mu = mulVec(pinv, m);
    Rat shiftNorm(0);
    for (int i = 0; i < kk; ++i)
        for (int j = 0; j < kk; ++j) shiftNorm += mu[i] * p(i, j) * mu[j];
    Rat bound = Rat(-d) + qformQ(y0q, y0q) + shiftNorm;
    if (bound < 0) return out;
    QVec negMu(kk);
    for (int i = 0; i < kk; ++i) negMu[i] = -mu[i];
    for (const IVec& t : enumerateShifted(p, negMu, bound)) {
        IVec y(k);
        for (int i = 0; i < k; ++i) {
            Int acc = y0[i];
            for (int j = 0; j < kk; ++j) acc += t[j] * ker(j, i);
            y[i] = acc;
        }
        IVec x = sub.toAmbient(y);
        if (l.norm(x) == d) out.push_back(x);
    }
    return out;
}

} // namespace

ChamberData fundamentalChamber(const Lattice& l, const IVec& controller,
                               const std::vector<Int>& rootSquares, bool perturb,
                               const Rat& distanceCap) {
    auto [sp, sq] = l.signature();
    require(sp == 1 && sq >= 1, "NotHyperbolic", "chamber computation needs signature (1,k)");
    require(l.norm(controller) > 0, "NotHyperbolic",
            "controller must have positive square");
    for (const Int& d : rootSquares)
        require(d < 0 && d % 2 == 0, "ShapeError", "root squares must be negative and even");

    ChamberData cd;
    cd.lattice = l;
    cd.controller = controller;
    cd.rootSquares = rootSquares;

    bool sawOnWall = false;
    Orienter orient{&l, &controller, perturb, &sawOnWall};

    std::map<std::string, Candidate> mirrors; // key: primitive core of oriented root
    auto keyOf = [](const IVec& v) {
        std::string s;
        for (const Int& x : v) {
            s += x.get_str();
            s += ',';
        }
        return s;
    };
    auto consider = [&](const IVec& raw, const Int& d, std::vector<Candidate>& sink) {
        IVec r = orient.orient(raw);
        Int bh = abs(l.inner(controller, r));
        Rat dist = Rat(bh * bh) / Rat(abs(d));
        Candidate cand{r, dist, primitiveCore(r)};
        std::string key = keyOf(cand.mirrorKey);
        auto it = mirrors.find(key);
        if (it == mirrors.end() || cand.distance < it->second.distance) {
            mirrors[key] = cand;
            sink.push_back(cand);
        }
    };

    if (l.rank() == 2) {
        Rank2Engine eng(l, controller, perturb);
        struct Best {
            bool have = false;
            Candidate c;
        };
        Best best[2]; // index 0: side -1, index 1: side +1
        auto update = [&](const Candidate& c) {
            int s = eng.sideOf(c.root);
            Best& b = best[s > 0 ? 1 : 0];
            if (!b.have || c.distance < b.c.distance ||
                (c.distance == b.c.distance && lexLess(c.root, b.c.root))) {
                b.have = true;
                b.c = c;
            }
        };

        std::vector<Int> pellSquares;
        Int maxAbsD = 0;
        for (const Int& d : rootSquares) {
            if (abs(d) > maxAbsD) maxAbsD = abs(d);
            Sublattice sub = admissibleSublattice(l, d);
            IntMat g = sub.inducedGram();
            Int fa = g(0, 0), fb = 2 * g(0, 1), fc = g(1, 1);
            BinarySolve sol = binaryRepresents(fa, fb, fc, d);
            if (sol.finite) {
                for (const auto& [x, y] : sol.all) {
                    IVec v = sub.toAmbient(IVec{x, y});
                    std::vector<Candidate> sink;
                    consider(v, d, sink);
                    for (const auto& c : sink) update(c);
                }
            } else if (sol.solvable) {
                pellSquares.push_back(d);
            }
        }
        if (!pellSquares.empty()) {
            for (Int beta = 0;; beta += 1) {
                Rat minNext = Rat(beta * beta) / Rat(maxAbsD);
                bool done = best[0].have && best[1].have && minNext > best[0].c.distance &&
                            minNext > best[1].c.distance;
                if (done) break;
                require(beta < 1000000, "InternalError", "rank-2 shell loop runaway");
                for (const Int& d : pellSquares) {
                    Sublattice sub = admissibleSublattice(l, d);
                    for (const IVec& v : solutionsOnLine(l, sub, controller, beta, d)) {
                        std::vector<Candidate> sink;
                        consider(v, d, sink);
                        for (const auto& c : sink) update(c);
                    }
                }
            }
        }
        for (int s = 0; s < 2; ++s)
            if (best[s].have) cd.walls.push_back(best[s].c.root);
        cd.complete = true;
    } else {
        // capped shell enumeration in Vinberg distance order
        struct PerD {
            Int d;
            Int beta = 0;
            Sublattice sub;
        };
        std::vector<PerD> state;
        for (const Int& d : rootSquares) state.push_back({d, Int(0), admissibleSublattice(l, d)});
        std::vector<IVec> accepted;
        std::vector<Candidate> batchAll;
        while (true) {
            int bestI = -1;
            Rat bestDist(0);
            for (size_t i = 0; i < state.size(); ++i) {
                Rat dist = Rat(state[i].beta * state[i].beta) / Rat(abs(state[i].d));
                if (bestI < 0 || dist < bestDist) {
                    bestI = static_cast<int>(i);
                    bestDist = dist;
                }
            }
            if (bestDist > distanceCap) break;
            PerD& st = state[bestI];
            std::vector<Candidate> batch;
            for (const IVec& v : solutionsOnLine(l, st.sub, controller, st.beta, st.d))
                consider(v, st.d, batch);
            std::sort(batch.begin(), batch.end(), [](const Candidate& a, const Candidate& b) {
                if (a.distance != b.distance) return a.distance < b.distance;
                return lexLess(a.root, b.root);
            });
            for (const auto& c : batch) {
                bool ok = true;
                for (const IVec& w : accepted)
                    if (l.inner(c.root, w) < 0) { ok = false; break; }
                if (ok) accepted.push_back(c.root);
            }
            st.beta += 1;
        }
        cd.walls = accepted;
        cd.complete = false;
    }
    cd.perturbed = sawOnWall;

    // canonical order: (distance, lex)
    std::sort(cd.walls.begin(), cd.walls.end(), [&](const IVec& a, const IVec& b) {
        Rat da = Rat(l.inner(controller, a) * l.inner(controller, a)) / Rat(abs(l.norm(a)));
        Rat db = Rat(l.inner(controller, b) * l.inner(controller, b)) / Rat(abs(l.norm(b)));
        if (da != db) return da < db;
        return lexLess(a, b);
    });
    return cd;
}

bool inChamber(const IVec& x, const ChamberData& c) {
    for (const IVec& w : c.walls)
        if (c.lattice.inner(x, w) < 0) return false;
    return true;
}

WordScanReport reflectionWordScan(const ChamberData& c, const std::vector<IVec>& extraRoots,
                                  int maxLen) {
    WordScanReport rep;
    const Lattice& l = c.lattice;
    std::vector<IntMat> wallRefl;
    for (const IVec& w : c.walls) wallRefl.push_back(reflection(w, l));

    for (const IVec& e : extraRoots) {
        WordScanReport::ExtraInfo info;
        IntMat t = reflection(e, l);
        info.fixesController = mulVec(t, c.controller) == c.controller;
        // preserves the chamber iff it permutes the wall mirror set
        {
            std::vector<IVec> imgs;
            for (const IVec& w : c.walls) {
                IVec img = mulVec(t, w);
                // mirrors are unoriented: normalize sign
                imgs.push_back(canonicalSign(primitiveCore(img)));
            }
            std::vector<IVec> orig;
            for (const IVec& w : c.walls) orig.push_back(canonicalSign(primitiveCore(w)));
            std::sort(imgs.begin(), imgs.end(), lexLess);
            std::sort(orig.begin(), orig.end(), lexLess);
            info.preservesChamber = imgs == orig;
        }
        for (size_t i = 0; i < wallRefl.size(); ++i)
            for (size_t j = 0; j < wallRefl.size(); ++j)
                if (mul(wallRefl[i], t) == mul(t, wallRefl[j]))
                    info.conjugacyRelations.emplace_back(static_cast<int>(i),
                                                         static_cast<int>(j));
        rep.extras.push_back(info);
    }

    // reduced words in the wall reflections
    std::function<void(IntMat, int, int)> rec = [&](IntMat acc, int last, int len) {
        if (len > 0) {
            rep.wordsChecked += 1;
            IVec img = mulVec(acc, c.controller);
            bool strictlyOutside = false;
            for (const IVec& w : c.walls)
                if (l.inner(img, w) < 0) strictlyOutside = true;
            if (strictlyOutside) rep.wordsMovingControllerOut += 1;
            else rep.allNonemptyWordsMoveControllerOut = false;
        }
        if (len == maxLen) return;
        for (size_t i = 0; i < wallRefl.size(); ++i) {
            if (static_cast<int>(i) == last) continue; // reflections are involutions
            rec(mul(wallRefl[i], acc), static_cast<int>(i), len + 1);
        }
    };
    rec(IntMat::identity(l.rank()), -1, 0);
    return rep;
}

} // namespace latkit
