#include "latkit/shortvec.hpp"

#include <algorithm>

namespace latkit {

namespace {

struct Ldl {
    std::vector<Rat> d;  // pivots
    RatMat u;            // unit upper-triangular factors
};

// q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 for positive definite input.
Ldl ldlDecompose(const RatMat& g0) {
    int n = g0.rows();
    RatMat a = g0;
    Ldl f{std::vector<Rat>(n), RatMat::identity(n)};
    for (int i = 0; i < n; ++i) {
        f.d[i] = a(i, i);
        require(f.d[i] > 0, "NotDefinite", "form is not definite");
        for (int j = i + 1; j < n; ++j) f.u(i, j) = a(i, j) / f.d[i];
        for (int r = i + 1; r < n; ++r)
            for (int s = i + 1; s < n; ++s) a(r, s) -= a(r, i) * a(i, s) / f.d[i];
    }
    return f;
}

// Largest integer x with x <= c + sqrt(r), r >= 0 exact rational.
Int floorCenterPlusSqrt(const Rat& c, const Rat& r) {
    Int base = fdivQ(c.get_num(), c.get_den());
    Int hi = base + isqrtFloor(fdivQ(r.get_num(), r.get_den())) + 2;
    while (true) {
        Rat diff = Rat(hi) - c;
        if (diff <= 0 || diff * diff <= r) return hi;
        --hi;
    }
}

Int ceilCenterMinusSqrt(const Rat& c, const Rat& r) {
    return -floorCenterPlusSqrt(-c, r);
}

void fpRecurse(const Ldl& f, const QVec& offset, const Rat& bound, int i,
               QVec& z, IVec& x, std::vector<IVec>& out, Rat used) {
    if (i < 0) {
        out.push_back(x);
        return;
    }
    Rat rem = bound - used;
    if (rem < 0) return;
    Rat s = offset[i];
    for (int j = i + 1; j < static_cast<int>(z.size()); ++j) s += f.u(i, j) * z[j];
    Rat radius = rem / f.d[i];
    Int lo = ceilCenterMinusSqrt(-s, radius);
    Int hi = floorCenterPlusSqrt(-s, radius);
    for (Int t = lo; t <= hi; ++t) {
        x[i] = t;
        z[i] = Rat(t) + offset[i];
        Rat zi = Rat(t) + s;
        fpRecurse(f, offset, bound, i - 1, z, x, out, used + f.d[i] * zi * zi);
    }
}

} // namespace

std::vector<IVec> enumerateShifted(const RatMat& p, const QVec& offset, const Rat& bound) {
    int n = p.rows();
    std::vector<IVec> out;
    if (n == 0) return out;
    Ldl f = ldlDecompose(p);
    QVec z(n, Rat(0));
    IVec x(n, Int(0));
    fpRecurse(f, offset, bound, n - 1, z, x, out, Rat(0));
    return out;
}

std::vector<IVec> shortVectors(const Lattice& l, const Int& bound) {
    require(l.isDefinite() || l.rank() == 0, "NotDefinite",
            "short vector enumeration needs a definite lattice");
    std::vector<IVec> out;
    if (l.rank() == 0 || bound == 0) return out;
    Int b = bound < 0 ? Int(-bound) : bound;
    RatMat g = toRat(l.gram());
    if (l.isNegativeDefinite())
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j) g(i, j) = -g(i, j);
    QVec zero(l.rank(), Rat(0));
    std::vector<IVec> all = enumerateShifted(g, zero, Rat(b));
    for (auto& v : all) {
        bool isZero = std::all_of(v.begin(), v.end(), [](const Int& t) { return t == 0; });
        if (!isZero) out.push_back(v);
    }
    canonicalizeVectorList(out);
    return out;
}

std::vector<IVec> primitiveVectorsOfType(const Sublattice& m, const Int& square,
                                         const Int& gamma) {
    Lattice ml = m.asLattice();
    require(ml.isDefinite() || ml.rank() == 0, "NotDefinite",
            "type enumeration needs a definite sublattice");
    std::vector<IVec> out;
    if (ml.rank() == 0) return out;
    if ((square > 0 && !ml.isPositiveDefinite()) || (square < 0 && !ml.isNegativeDefinite()))
        return out;
    Sublattice n = intersectScaledDual(m, gamma);
    if (n.rank() == 0) return out;
    Lattice nl = n.asLattice();
    for (const IVec& y : shortVectors(nl, square)) {
        if (nl.norm(y) != square) continue;
        IVec v = n.toAmbient(y);
        if (!isPrimitiveVector(v)) continue; // primitive in M (M primitive in L)
        if (divisibility(v, m.ambient) != gamma) continue;
        out.push_back(v);
    }
    canonicalizeVectorList(out);
    return out;
}

namespace {

struct IsoSearch {
    const IntMat* g1;
    const IntMat* g2;
    const Lattice* l2;
    std::vector<IVec> candidates; // short vectors of l2 (both signs)
    std::vector<IVec> chosen;
    std::optional<IntMat> result;

    void rec(int i, int n) {
        if (result) return;
        if (i == n) {
            IntMat t(n, n);
            for (int c = 0; c < n; ++c)
                for (int r = 0; r < n; ++r) t(r, c) = chosen[c][r];
            result = t;
            return;
        }
        for (const IVec& v : candidates) {
            if (l2->norm(v) != (*g1)(i, i)) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                if (l2->inner(chosen[j], v) != (*g1)(j, i)) ok = false;
            if (!ok) continue;
            chosen.push_back(v);
            rec(i + 1, n);
            chosen.pop_back();
            if (result) return;
        }
    }
};

} // namespace

std::optional<IntMat> isIsometricDefinite(const Lattice& l1, const Lattice& l2) {
    require((l1.isDefinite() || l1.rank() == 0) && (l2.isDefinite() || l2.rank() == 0),
            "NotDefinite", "isometry test needs definite lattices");
    if (l1.rank() != l2.rank()) return std::nullopt;
    if (l1.rank() == 0) return IntMat(0, 0);
    if (l1.det() != l2.det()) return std::nullopt;
    if (l1.signature() != l2.signature()) return std::nullopt;
    Int maxNorm = 0;
    for (int i = 0; i < l1.rank(); ++i) {
        Int a = abs(l1.gram()(i, i));
        if (a > maxNorm) maxNorm = a;
    }
    IsoSearch s;
    s.g1 = &l1.gram();
    s.g2 = &l2.gram();
    s.l2 = &l2;
    for (const IVec& v : shortVectors(l2, maxNorm)) {
        s.candidates.push_back(v);
        IVec neg(v.size());
        for (size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
        s.candidates.push_back(neg);
    }
    s.rec(0, l1.rank());
    return s.result;
}

} // namespace latkit
