#include "latkit/isometry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "latkit/shortvec.hpp"

namespace latkit {

bool isIsometry(const IntMat& m, const Lattice& l) {
    require(m.rows() == l.rank() && m.cols() == l.rank(), "SizeMismatch",
            "matrix size does not match lattice rank");
    return mul(mul(transpose(m), l.gram()), m) == l.gram();
}

IntMat reflection(const IVec& v, const Lattice& l) {
    Int vv = l.norm(v);
    require(vv != 0, "IsotropicVector", "cannot reflect in an isotropic vector");
    int n = l.rank();
    IntMat m(n, n);
    for (int j = 0; j < n; ++j) {
        IVec e(n, Int(0));
        e[j] = 1;
        Int be = l.inner(e, v);
        Int num = 2 * be;
        require(num % vv == 0, "NotIntegral", "reflection is not integral on the lattice");
        Int f = num / vv;
        for (int i = 0; i < n; ++i) m(i, j) = (i == j ? Int(1) : Int(0)) - f * v[i];
    }
    return m;
}

namespace {

// rational reflection x -> x - 2 b(x,w)/w^2 * w applied to a column vector
QVec applyReflQ(const Lattice& l, const QVec& w, const QVec& x) {
    Rat ww = l.innerQ(w, w);
    Rat f = 2 * l.innerQ(x, w) / ww;
    QVec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - f * w[i];
    return r;
}

int signClassOfReflection(const Lattice& l, const QVec& w) {
    Rat ww = l.innerQ(w, w);
    Rat s = -ww / 2;
    return s > 0 ? 1 : -1;
}

// Pairwise orthogonal non-isotropic rational basis (rows), by symmetric
// Gaussian elimination of the gram form.
std::vector<QVec> orthogonalBasisQ(const Lattice& l) {
    int n = l.rank();
    RatMat a = toRat(l.gram());
    RatMat basis = RatMat::identity(n);
    std::vector<QVec> out;
    for (int k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            int di = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, i) != 0) { di = i; break; }
            if (di >= 0) {
                a.swapRows(k, di);
                a.swapCols(k, di);
                basis.swapRows(k, di);
            } else {
                int oj = -1;
                for (int j = k + 1; j < n; ++j)
                    if (a(k, j) != 0) { oj = j; break; }
                require(oj >= 0, "Degenerate", "degenerate form");
                for (int j = 0; j < n; ++j) a(k, j) += a(oj, j);
                for (int i = 0; i < n; ++i) a(i, k) += a(i, oj);
                for (int j = 0; j < n; ++j) basis(k, j) += basis(oj, j);
            }
        }
        Rat d = a(k, k);
        out.push_back(basis.row(k));
        for (int i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / d;
            for (int j = 0; j < n; ++j) a(i, j) -= f * a(k, j);
            for (int j = 0; j < n; ++j) a(j, i) = a(i, j);
            for (int j = 0; j < n; ++j) basis(i, j) -= f * basis(k, j);
        }
    }
    return out;
}

} // namespace

int realSpinorNorm(const IntMat& g, const Lattice& l) {
    require(isIsometry(g, l), "NotAnIsometry", "spinor norm of a non-isometry");
    int n = l.rank();
    if (n == 0) return 1;
    // Cartan-Dieudonne along a pairwise orthogonal non-isotropic basis:
    // with v from such a basis, gv - v isotropic forces (gv + v)^2 = 4v^2,
    // so the two-reflection fallback never gets stuck.
    std::vector<QVec> basis = orthogonalBasisQ(l);
    RatMat gr = toRat(g);
    std::vector<QVec> img(n);
    for (int k = 0; k < n; ++k) img[k] = mulVec(gr, basis[k]);
    int sigma = 1;
    auto applyAll = [&](const QVec& w, int from) {
        for (int k = from; k < n; ++k) img[k] = applyReflQ(l, w, img[k]);
        sigma *= signClassOfReflection(l, w);
    };
    for (int k = 0; k < n; ++k) {
        const QVec& v = basis[k];
        if (img[k] == v) continue;
        QVec diff(n), sum(n);
        for (int i = 0; i < n; ++i) {
            diff[i] = img[k][i] - v[i];
            sum[i] = img[k][i] + v[i];
        }
        if (l.innerQ(diff, diff) != 0) {
            applyAll(diff, k);
        } else {
            applyAll(sum, k); // img[k] -> -v
            applyAll(v, k);   // -v -> v
        }
        require(img[k] == v, "InternalError", "reflection decomposition failed");
    }
    return sigma;
}

int realSpinorNormByProjection(const IntMat& g, const Lattice& l) {
    require(isIsometry(g, l), "NotAnIsometry", "spinor norm of a non-isometry");
    auto [p, q] = l.signature();
    (void)q;
    if (p == 0) return 1;
    std::vector<QVec> pos;
    for (const QVec& b : orthogonalBasisQ(l))
        if (l.innerQ(b, b) > 0) pos.push_back(b);
    // sigma = sign det[ b(p_i, g p_j) ] on a maximal positive subspace
    RatMat gr = toRat(g);
    RatMat m(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) m(i, j) = l.innerQ(pos[i], mulVec(gr, pos[j]));
    Rat d = detRat(m);
    require(d != 0, "InternalError", "projection determinant vanished");
    return d > 0 ? 1 : -1;
}

MembershipFlags membership(const IntMat& g, const Lattice& l) {
    MembershipFlags f{};
    f.inOPlus = realSpinorNorm(g, l) == 1;
    f.inOSharp = isStable(g, l);
    f.inOTilde = f.inOPlus && f.inOSharp;
    return f;
}

namespace {
std::string matKey(const IntMat& m) {
    std::string s;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            s += m(i, j).get_str();
            s += ',';
        }
    return s;
}
} // namespace

MatrixGroup::MatrixGroup(Lattice l, std::vector<IntMat> generators)
    : lattice_(std::move(l)), gens_(std::move(generators)) {
    for (const auto& g : gens_)
        require(isIsometry(g, lattice_), "NotAnIsometry", "group generator is not an isometry");
}

MatrixGroup::MatrixGroup(Lattice l, std::vector<IntMat> generators,
                         std::vector<IntMat> allElements)
    : lattice_(std::move(l)), gens_(std::move(generators)), elems_(std::move(allElements)) {
    for (const auto& g : gens_)
        require(isIsometry(g, lattice_), "NotAnIsometry", "group generator is not an isometry");
    std::sort(elems_.begin(), elems_.end(),
              [](const IntMat& a, const IntMat& b) { return matKey(a) < matKey(b); });
}

const std::vector<IntMat>& MatrixGroup::elements() const {
    if (!elems_.empty()) return elems_;
    int n = lattice_.rank();
    IntMat id = IntMat::identity(n);
    std::set<std::string> seen{matKey(id)};
    elems_.push_back(id);
    std::vector<IntMat> frontier{id};
    while (!frontier.empty()) {
        std::vector<IntMat> next;
        for (const auto& e : frontier)
            for (const auto& g : gens_) {
                IntMat p = mul(g, e);
                if (seen.insert(matKey(p)).second) {
                    elems_.push_back(p);
                    next.push_back(p);
                    require(static_cast<std::int64_t>(elems_.size()) <= kGroupEnumerationCap,
                            "EnumerationCapExceeded", "group enumeration exceeded the cap");
                }
            }
        frontier = std::move(next);
    }
    std::sort(elems_.begin(), elems_.end(), [](const IntMat& a, const IntMat& b) {
        return matKey(a) < matKey(b);
    });
    return elems_;
}

bool MatrixGroup::contains(const IntMat& m) const {
    const auto& es = elements();
    std::string k = matKey(m);
    return std::any_of(es.begin(), es.end(), [&](const IntMat& e) { return matKey(e) == k; });
}

Sublattice invariantSublattice(const MatrixGroup& g) {
    int n = g.lattice().rank();
    // kernel of the stacked (g - id), acting on columns; vectors here are
    // columns, so we solve (g - id) x = 0 for all generators at once
    IntMat stacked(static_cast<int>(g.generators().size()) * n, n);
    int off = 0;
    for (const auto& m : g.generators()) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) stacked(off + i, j) = m(i, j) - (i == j ? 1 : 0);
        off += n;
    }
    if (g.generators().empty()) return fullSublattice(g.lattice());
    IntMat k = kernelRows(stacked); // rows x with stacked x^T = 0
    return Sublattice{g.lattice(), hnfRows(k)};
}

Sublattice coinvariantSublattice(const MatrixGroup& g) {
    return orthogonalComplement(invariantSublattice(g));
}

namespace {

struct AutSearch {
    const Lattice* l;
    std::vector<IVec> candidates;
    std::vector<IVec> chosen;
    std::vector<IntMat> found;

    void rec(int i, int n) {
        if (i == n) {
            IntMat t(n, n);
            for (int c = 0; c < n; ++c)
                for (int r = 0; r < n; ++r) t(r, c) = chosen[c][r];
            found.push_back(t);
            require(static_cast<std::int64_t>(found.size()) <= kGroupEnumerationCap,
                    "EnumerationCapExceeded", "automorphism enumeration exceeded the cap");
            return;
        }
        const IntMat& g = l->gram();
        for (const IVec& v : candidates) {
            if (l->norm(v) != g(i, i)) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (l->inner(chosen[j], v) != g(j, i)) ok = false;
            if (!ok) continue;
            chosen.push_back(v);
            rec(i + 1, n);
            chosen.pop_back();
        }
    }
};

} // namespace

MatrixGroup automorphismGroupDefinite(const Lattice& l) {
    require(l.isDefinite() || l.rank() == 0, "NotDefinite",
            "automorphism enumeration needs a definite lattice");
    require(l.rank() <= kDefiniteAutRankCap, "RankCapExceeded",
            "definite automorphism groups are capped at rank 12");
    if (l.rank() == 0) return MatrixGroup(l, {});
    Int maxNorm = 0;
    for (int i = 0; i < l.rank(); ++i) {
        Int a = abs(l.gram()(i, i));
        if (a > maxNorm) maxNorm = a;
    }
    AutSearch s;
    s.l = &l;
    for (const IVec& v : shortVectors(l, maxNorm)) {
        s.candidates.push_back(v);
        IVec neg(v.size());
        for (size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
        s.candidates.push_back(neg);
    }
    s.rec(0, l.rank());
    // the search enumerates the whole group, so seed the element cache
    return MatrixGroup(l, s.found, s.found);
}

MatrixGroup stableAutomorphismGroup(const Lattice& l) {
    MatrixGroup full = automorphismGroupDefinite(l);
    DiscriminantForm d(l);
    std::vector<IntMat> stable;
    for (const auto& m : full.elements()) {
        DiscIsometry a = discriminantAction(m, d);
        bool id = true;
        for (int i = 0; i < d.ngens() && id; ++i)
            for (int r = 0; r < d.ngens() && id; ++r) {
                Int want = (r == i) ? 1 : 0;
                if (modPos(a.action(r, i) - want, d.invariantFactors()[r]) != 0) id = false;
            }
        if (id) stable.push_back(m);
    }
    // the kernel of the discriminant action is closed; keep the full list
    return MatrixGroup(l, stable, stable);
}

IntMat restrictTo(const IntMat& g, const Sublattice& s) {
    // rows of s.basisRows mapped through g, re-expressed in the basis
    RatMat img = mul(toRat(s.basisRows), transpose(toRat(g)));
    auto coords = solveLeft(toRat(s.basisRows), img);
    require(coords.has_value() && isIntegral(*coords), "NotInvariant",
            "sublattice is not invariant under the isometry");
    // coords rows: image of basis vector i in basis coords; column action
    return transpose(toInt(*coords));
}

bool isStablySaturated(const MatrixGroup& g, const std::optional<Sublattice>& coinvariant) {
    const Lattice& l = g.lattice();
    for (const auto& m : g.generators())
        require(isStable(m, l), "NotStable", "a generator is not stable");
    Sublattice c = coinvariant ? *coinvariant : coinvariantSublattice(g);
    if (c.rank() == 0) return true;
    Lattice cl = c.asLattice();
    require(cl.isDefinite(), "NotDefinite", "coinvariant lattice must be definite");
    // image of G in O(L_G)
    std::vector<IntMat> restricted;
    for (const auto& m : g.generators()) restricted.push_back(restrictTo(m, c));
    MatrixGroup image(cl, restricted);
    MatrixGroup sharp = stableAutomorphismGroup(cl);
    // containment (restrictions of stable isometries are stable) + order
    for (const auto& m : image.generators())
        require(isStable(m, cl), "NotStable", "restriction is not stable on the coinvariant part");
    return image.order() == sharp.order();
}

MatrixGroup pointwiseStabilizer(const MatrixGroup& h, const MatrixGroup& g) {
    Sublattice fix = invariantSublattice(h);
    std::vector<IntMat> stab;
    for (const auto& m : g.elements()) {
        IntMat prod = mul(m, transpose(fix.basisRows));
        if (prod == transpose(fix.basisRows)) stab.push_back(m);
    }
    return MatrixGroup(g.lattice(), stab);
}

} // namespace latkit
