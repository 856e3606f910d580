#include "latkit/lattice.hpp"

#include <algorithm>
#include <cctype>

namespace latkit {

Lattice::Lattice(IntMat gram, std::string label)
    : gram_(std::move(gram)), label_(std::move(label)) {
    require(gram_.rows() == gram_.cols(), "NonSymmetric", "gram matrix must be square");
    int n = gram_.rows();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            require(gram_(i, j) == gram_(j, i), "NonSymmetric", "gram matrix must be symmetric");
    if (n == 0) return;
    det_ = detInt(gram_);
    require(det_ != 0, "Degenerate", "gram matrix must be nondegenerate");
    sig_ = signatureOf(gram_);
    for (int i = 0; i < n; ++i)
        if (gram_(i, i) % 2 != 0) { even_ = false; break; }
}

Int Lattice::inner(const IVec& u, const IVec& v) const {
    require(static_cast<int>(u.size()) == rank() && static_cast<int>(v.size()) == rank(),
            "ShapeError", "vector size does not match lattice rank");
    Int s = 0;
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) s += u[i] * gram_(i, j) * v[j];
    return s;
}

Rat Lattice::innerQ(const QVec& u, const QVec& v) const {
    Rat s(0);
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) s += u[i] * Rat(gram_(i, j)) * v[j];
    return s;
}

RatMat Lattice::dualBasis() const { return inverseRat(toRat(gram_)); }

IntMat Sublattice::inducedGram() const {
    return mul(mul(basisRows, ambient.gram()), transpose(basisRows));
}

Lattice Sublattice::asLattice() const { return Lattice(inducedGram()); }

IVec Sublattice::toAmbient(const IVec& coords) const {
    return vecMul(coords, basisRows);
}

Lattice makeLattice(const IntMat& gram, const std::string& label) {
    return Lattice(gram, label);
}

namespace {

IntMat negCartanA(int n) {
    IntMat g(n, n);
    for (int i = 0; i < n; ++i) {
        g(i, i) = -2;
        if (i + 1 < n) { g(i, i + 1) = 1; g(i + 1, i) = 1; }
    }
    return g;
}

IntMat negCartanD(int n) {
    // chain 0-1-...-(n-2), fork: (n-1) attached to (n-3)
    IntMat g(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = -2;
    for (int i = 0; i + 1 < n - 1; ++i) { g(i, i + 1) = 1; g(i + 1, i) = 1; }
    g(n - 3, n - 1) = 1;
    g(n - 1, n - 3) = 1;
    return g;
}

IntMat negCartanE(int n) {
    // Bourbaki: chain 0-1-2-3-4(-5-6), node (n-1) attached to chain node 2
    IntMat g(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = -2;
    for (int i = 0; i + 1 < n - 1; ++i) { g(i, i + 1) = 1; g(i + 1, i) = 1; }
    g(2, n - 1) = 1;
    g(n - 1, 2) = 1;
    return g;
}

} // namespace

Lattice standardLattice(const std::string& name0) {
    std::string name = name0;
    name.erase(std::remove_if(name.begin(), name.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               name.end());
    require(!name.empty(), "UnknownName", "empty lattice name");

    Int scale = 1;
    auto popScale = [&](std::string& s) {
        auto l = s.find('(');
        if (l == std::string::npos) return;
        require(s.back() == ')', "UnknownName", "bad rescaling syntax: " + name0);
        scale = Int(s.substr(l + 1, s.size() - l - 2));
        require(scale != 0, "UnknownName", "zero rescaling");
        s = s.substr(0, l);
    };

    if (name[0] == '[') {
        require(name.back() == ']', "UnknownName", "bad rank-1 lattice syntax: " + name0);
        Int n(name.substr(1, name.size() - 2));
        require(n != 0, "UnknownName", "rank-1 lattice must be nondegenerate");
        IntMat g(1, 1);
        g(0, 0) = n;
        return Lattice(g, name0);
    }

    std::string base = name;
    popScale(base);
    Lattice l;
    if (base == "U") {
        l = Lattice(IntMat{{0, 1}, {1, 0}}, "U");
    } else if (base[0] == 'A' || base[0] == 'D' || base[0] == 'E') {
        int n = 0;
        try {
            n = std::stoi(base.substr(1));
        } catch (...) {
            fail("UnknownName", "unknown lattice name: " + name0);
        }
        if (base[0] == 'A') {
            require(n >= 1, "UnknownName", "A_n needs n >= 1");
            l = Lattice(negCartanA(n), base);
        } else if (base[0] == 'D') {
            require(n >= 4, "UnknownName", "D_n needs n >= 4");
            l = Lattice(negCartanD(n), base);
        } else {
            require(n >= 6 && n <= 8, "UnknownName", "E_n needs n in {6,7,8}");
            l = Lattice(negCartanE(n), base);
        }
    } else {
        fail("UnknownName", "unknown lattice name: " + name0);
    }
    if (scale != 1) return rescale(l, scale);
    return l;
}

Lattice rescale(const Lattice& l, const Int& k) {
    IntMat g = l.gram();
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) g(i, j) *= k;
    std::string lbl = l.label().empty() ? "" : l.label() + "(" + k.get_str() + ")";
    return Lattice(g, lbl);
}

Lattice directSum(const std::vector<Lattice>& parts) {
    int n = 0;
    for (const auto& p : parts) n += p.rank();
    IntMat g(n, n);
    int off = 0;
    for (const auto& p : parts) {
        for (int i = 0; i < p.rank(); ++i)
            for (int j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
        off += p.rank();
    }
    return Lattice(g);
}

Sublattice fullSublattice(const Lattice& l) {
    return Sublattice{l, IntMat::identity(l.rank())};
}

Sublattice spanOf(const Lattice& ambient, const IntMat& rows) {
    require(rows.cols() == ambient.rank(), "ShapeError", "sublattice rows must match ambient rank");
    require(rankOf(rows) == rows.rows(), "Degenerate", "sublattice basis rows must be independent");
    return Sublattice{ambient, rows};
}

Int divisibility(const IVec& v, const Lattice& l) {
    bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
    require(!zero, "ZeroVector", "divisibility of the zero vector");
    IVec gv = mulVec(l.gram(), v);
    return gcdVec(gv);
}

bool isPrimitiveVector(const IVec& v) { return gcdVec(v) == 1; }

VectorType vectorType(const IVec& v, const Lattice& l) {
    bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
    require(!zero, "ZeroVector", "type of the zero vector");
    require(isPrimitiveVector(v), "NotPrimitive", "type is defined for primitive vectors");
    return VectorType{l.norm(v), divisibility(v, l)};
}

Sublattice orthogonalComplement(const Sublattice& s) {
    // kernel of x -> B G x^T
    IntMat bg = mul(s.basisRows, s.ambient.gram());
    IntMat k = kernelRows(bg);
    return Sublattice{s.ambient, hnfRows(k)};
}

Sublattice primitiveClosure(const Sublattice& s) {
    return Sublattice{s.ambient, saturationRows(s.basisRows)};
}

bool isPrimitiveSublattice(const Sublattice& s) {
    return saturationRows(s.basisRows) == hnfRows(s.basisRows);
}

Int subgroupIndex(const IntMat& sub, const IntMat& super) {
    // rows of sub must lie in rowspace_Z(super); index = |det of coords|
    auto coords = solveLeft(toRat(super), toRat(sub));
    require(coords.has_value(), "ShapeError", "subgroupIndex: not a subgroup");
    require(isIntegral(*coords), "ShapeError", "subgroupIndex: not an integral subgroup");
    Rat d = detRat(*coords);
    Rat ad = d < 0 ? -d : d;
    require(ad != 0, "Degenerate", "subgroupIndex: rank drop");
    ad.canonicalize();
    return ad.get_num();
}

Sublattice intersectScaledDual(const Sublattice& m, const Int& gamma) {
    require(gamma > 0, "ShapeError", "gamma must be positive");
    const Lattice& l = m.ambient;
    int k = m.rank(), n = l.rank();
    // y in Z^k with y * (B G) = 0 mod gamma  <=>  (y,z) * [[BG],[gamma I]] = 0
    IntMat bg = mul(m.basisRows, l.gram());
    IntMat stacked(k + n, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) stacked(i, j) = bg(i, j);
    for (int i = 0; i < n; ++i) stacked(k + i, i) = gamma;
    IntMat ker = kernelRows(transpose(stacked)); // rows (y,z) with (y,z)*stacked=0
    // collect the y-parts and form the sublattice of M they span
    IntMat ys(ker.rows(), k);
    for (int i = 0; i < ker.rows(); ++i)
        for (int j = 0; j < k; ++j) ys(i, j) = ker(i, j);
    IntMat inM = hnfRows(mul(ys, m.basisRows));
    return Sublattice{l, inM};
}

bool lexLess(const IVec& a, const IVec& b) {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

IVec canonicalSign(const IVec& v) {
    IVec neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    return lexLess(v, neg) ? neg : v;
}

void canonicalizeVectorList(std::vector<IVec>& vs) {
    for (auto& v : vs) v = canonicalSign(v);
    std::sort(vs.begin(), vs.end(), lexLess);
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

} // namespace latkit
