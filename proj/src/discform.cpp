#include "latkit/discform.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace latkit {

DiscriminantForm::DiscriminantForm(const Lattice& l) : lattice_(l) {
    require(l.even(), "NotEven", "discriminant forms are defined for even lattices");
    int n = l.rank();
    if (n == 0) return;
    SnfResult snf = smithNormalForm(l.gram());
    u_ = snf.u;
    for (int i = 0; i < n; ++i) {
        if (snf.s(i, i) == 1) ++skip_;
        else ds_.push_back(snf.s(i, i));
    }
    // generator lifts: columns of G^{-1} U^{-1}, nontrivial part
    RatMat p = mul(l.dualBasis(), inverseRat(toRat(snf.u)));
    gens_ = RatMat(static_cast<int>(ds_.size()), n);
    for (int t = 0; t < static_cast<int>(ds_.size()); ++t)
        for (int j = 0; j < n; ++j) gens_(t, j) = p(j, skip_ + t);
}

Int DiscriminantForm::order() const {
    Int o = 1;
    for (const Int& d : ds_) o *= d;
    return o;
}

QVec DiscriminantForm::lift(const DiscElem& e) const {
    int n = lattice_.rank();
    QVec x(n, Rat(0));
    for (int t = 0; t < ngens(); ++t)
        for (int j = 0; j < n; ++j) x[j] += Rat(e[t]) * gens_(t, j);
    return x;
}

DiscElem DiscriminantForm::classOf(const QVec& x) const {
    int n = lattice_.rank();
    QVec gx(n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gx[i] += Rat(lattice_.gram()(i, j)) * x[j];
    IVec z(n);
    for (int i = 0; i < n; ++i) {
        Rat q = gx[i];
        q.canonicalize();
        require(q.get_den() == 1, "ShapeError", "vector is not in the dual lattice");
        z[i] = q.get_num();
    }
    IVec uz = mulVec(u_, z);
    DiscElem e(ngens());
    for (int t = 0; t < ngens(); ++t) e[t] = modPos(uz[skip_ + t], ds_[t]);
    return e;
}

DiscElem DiscriminantForm::add(const DiscElem& a, const DiscElem& b) const {
    DiscElem c(ngens());
    for (int t = 0; t < ngens(); ++t) c[t] = modPos(a[t] + b[t], ds_[t]);
    return c;
}

DiscElem DiscriminantForm::neg(const DiscElem& a) const {
    DiscElem c(ngens());
    for (int t = 0; t < ngens(); ++t) c[t] = modPos(-a[t], ds_[t]);
    return c;
}

DiscElem DiscriminantForm::smul(const Int& k, const DiscElem& a) const {
    DiscElem c(ngens());
    for (int t = 0; t < ngens(); ++t) c[t] = modPos(k * a[t], ds_[t]);
    return c;
}

bool DiscriminantForm::isZero(const DiscElem& a) const {
    return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

Int DiscriminantForm::elemOrder(const DiscElem& a) const {
    Int o = 1;
    for (int t = 0; t < ngens(); ++t) o = lcmInt(o, ds_[t] / gcdInt(ds_[t], a[t]));
    return o;
}

Rat DiscriminantForm::q(const DiscElem& a) const {
    QVec x = lift(a);
    return modRat(lattice_.innerQ(x, x), 2);
}

Rat DiscriminantForm::bil(const DiscElem& a, const DiscElem& b) const {
    return modRat(lattice_.innerQ(lift(a), lift(b)), 1);
}

std::vector<DiscElem> DiscriminantForm::elements() const {
    std::vector<DiscElem> out;
    Int total = order();
    require(total.fits_slong_p(), "TooLarge", "discriminant group too large to enumerate");
    out.reserve(total.get_si());
    DiscElem cur = zero();
    while (true) {
        out.push_back(cur);
        int t = 0;
        for (; t < ngens(); ++t) {
            cur[t] += 1;
            if (cur[t] < ds_[t]) break;
            cur[t] = 0;
        }
        if (t == ngens()) break;
    }
    if (ngens() == 0) out = {DiscElem{}};
    return out;
}

DiscIsometry discriminantAction(const IntMat& g, const DiscriminantForm& d) {
    const Lattice& l = d.lattice();
    require(mul(mul(transpose(g), l.gram()), g) == l.gram(), "NotAnIsometry",
            "matrix does not preserve the gram form");
    int k = d.ngens();
    IntMat a(k, k);
    RatMat gr = toRat(g);
    for (int i = 0; i < k; ++i) {
        QVec img = mulVec(gr, d.lift(DiscElem([&] {
            DiscElem e(k, Int(0));
            e[i] = 1;
            return e;
        }())));
        DiscElem c = d.classOf(img);
        for (int r = 0; r < k; ++r) a(r, i) = c[r];
    }
    return DiscIsometry{a};
}

bool isStable(const IntMat& g, const Lattice& l) {
    DiscriminantForm d(l);
    DiscIsometry a = discriminantAction(g, d);
    for (int i = 0; i < d.ngens(); ++i)
        for (int r = 0; r < d.ngens(); ++r) {
            Int want = (r == i) ? 1 : 0;
            if (modPos(a.action(r, i) - want, d.invariantFactors()[r]) != 0) return false;
        }
    return true;
}

namespace {

std::string keyOf(const std::vector<DiscElem>& elems) {
    std::string s;
    for (const auto& e : elems) {
        for (const auto& x : e) {
            s += x.get_str();
            s += ',';
        }
        s += ';';
    }
    return s;
}

std::vector<DiscElem> closure(const DiscriminantForm& d, const std::vector<DiscElem>& gens) {
    std::set<std::string> seen;
    std::vector<DiscElem> elems{d.zero()};
    seen.insert(keyOf({d.zero()}));
    std::vector<DiscElem> frontier = elems;
    while (!frontier.empty()) {
        std::vector<DiscElem> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                DiscElem s = d.add(e, g);
                std::string k = keyOf({s});
                if (seen.insert(k).second) {
                    elems.push_back(s);
                    next.push_back(s);
                }
            }
        frontier = std::move(next);
    }
    std::sort(elems.begin(), elems.end(),
              [](const DiscElem& a, const DiscElem& b) { return lexLess(a, b); });
    return elems;
}

// Cyclic decomposition of the subgroup generated by `gens` inside D.
void cyclicDecomposition(const DiscriminantForm& d, const std::vector<DiscElem>& gens,
                         std::vector<DiscElem>& outGens, std::vector<Int>& outOrders) {
    outGens.clear();
    outOrders.clear();
    int k = d.ngens();
    if (k == 0 || gens.empty()) return;
    // Lambda = Z-span of generator residue rows and diag(d); H = Lambda/diag(d)
    IntMat stacked(static_cast<int>(gens.size()) + k, k);
    for (size_t i = 0; i < gens.size(); ++i)
        for (int j = 0; j < k; ++j) stacked(static_cast<int>(i), j) = gens[i][j];
    for (int j = 0; j < k; ++j) stacked(static_cast<int>(gens.size()) + j, j) = d.invariantFactors()[j];
    IntMat b = hnfRows(stacked); // k x k basis of Lambda
    IntMat diag(k, k);
    for (int j = 0; j < k; ++j) diag(j, j) = d.invariantFactors()[j];
    auto coords = solveLeft(toRat(b), toRat(diag));
    IntMat c = toInt(*coords); // diag rows in Lambda coordinates
    SnfResult snf = smithNormalForm(transpose(c));
    RatMat uin = inverseRat(toRat(snf.u));
    for (int i = 0; i < k; ++i) {
        Int s = snf.s(i, i);
        if (s == 1) continue;
        // Lambda-coordinate column U^{-1} e_i -> element of D
        DiscElem e = d.zero();
        for (int r = 0; r < k; ++r) {
            Rat q = uin(r, i);
            q.canonicalize();
            Int coef = q.get_num();
            for (int j = 0; j < k; ++j)
                e[j] = modPos(e[j] + coef * b(r, j), d.invariantFactors()[j]);
        }
        outGens.push_back(e);
        outOrders.push_back(s);
    }
}

} // namespace

DiscSubgroup subgroupGenerated(const DiscriminantForm& d, const std::vector<DiscElem>& gens) {
    DiscSubgroup h;
    h.elems = closure(d, gens);
    cyclicDecomposition(d, gens, h.cyclicGens, h.cyclicOrders);
    return h;
}

std::vector<DiscSubgroup> allSubgroups(const DiscriminantForm& d, const Int& capElems,
                                       std::int64_t capSubgroups) {
    require(d.order() <= capElems, "TooLarge", "discriminant group exceeds enumeration cap");
    std::vector<DiscElem> all = d.elements();
    std::set<std::string> seen;
    std::vector<std::vector<DiscElem>> found;
    std::vector<std::vector<DiscElem>> genSets;

    std::vector<DiscElem> trivial{d.zero()};
    seen.insert(keyOf(trivial));
    found.push_back(trivial);
    genSets.push_back({});
    for (size_t at = 0; at < found.size(); ++at) {
        std::vector<DiscElem> base = found[at];
        std::vector<DiscElem> gens = genSets[at];
        std::set<std::string> inBase;
        for (const auto& e : base) inBase.insert(keyOf({e}));
        for (const auto& x : all) {
            if (inBase.count(keyOf({x}))) continue;
            std::vector<DiscElem> g2 = gens;
            g2.push_back(x);
            std::vector<DiscElem> cl = closure(d, g2);
            if (seen.insert(keyOf(cl)).second) {
                found.push_back(cl);
                genSets.push_back(g2);
                require(static_cast<std::int64_t>(found.size()) <= capSubgroups, "TooLarge",
                        "too many subgroups to enumerate");
            }
        }
    }
    std::vector<DiscSubgroup> out;
    out.reserve(found.size());
    for (size_t i = 0; i < found.size(); ++i) {
        DiscSubgroup h;
        h.elems = found[i];
        cyclicDecomposition(d, genSets[i], h.cyclicGens, h.cyclicOrders);
        out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(), [](const DiscSubgroup& a, const DiscSubgroup& b) {
        if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
        return keyOf(a.elems) < keyOf(b.elems);
    });
    return out;
}

std::vector<std::vector<DiscElem>> glueMaps(const DiscriminantForm& d1, const DiscSubgroup& h1,
                                            const DiscriminantForm& d2, const DiscSubgroup& h2,
                                            int sign) {
    std::vector<std::vector<DiscElem>> out;
    if (h1.order() != h2.order()) return out;
    size_t k = h1.cyclicGens.size();
    if (k == 0) {
        out.push_back({});
        return out;
    }
    std::vector<DiscElem> images(k);
    std::vector<DiscElem> chosen;

    auto check = [&](size_t i, const DiscElem& y) {
        const DiscElem& g = h1.cyclicGens[i];
        // order condition: o_i * y = 0
        if (!d2.isZero(d2.smul(h1.cyclicOrders[i], y))) return false;
        Rat lhs = modRat(Rat(sign) * d1.q(g), 2);
        if (d2.q(y) != lhs) return false;
        for (size_t j = 0; j < i; ++j) {
            Rat l2 = modRat(Rat(sign) * d1.bil(h1.cyclicGens[j], g), 1);
            if (d2.bil(chosen[j], y) != l2) return false;
        }
        return true;
    };

    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == k) {
            // bijectivity: the image generates a subgroup of size |h1|
            DiscSubgroup img = subgroupGenerated(d2, chosen);
            if (img.order() == h1.order() && keyOf(img.elems) == keyOf(h2.elems))
                out.push_back(chosen);
            return;
        }
        for (const DiscElem& y : h2.elems) {
            if (!check(i, y)) continue;
            chosen.push_back(y);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return out;
}

DiscAutGroup orthogonalGroupOfDiscForm(const DiscriminantForm& d, const Int& capElems) {
    require(d.order() <= capElems, "TooLarge", "discriminant group exceeds enumeration cap");
    DiscAutGroup g;
    int k = d.ngens();
    if (k == 0) {
        g.elements.push_back(IntMat(0, 0));
        return g;
    }
    // the SNF generators are already a cyclic decomposition of D
    DiscSubgroup full;
    full.elems = d.elements();
    std::sort(full.elems.begin(), full.elems.end(),
              [](const DiscElem& a, const DiscElem& b) { return lexLess(a, b); });
    for (int i = 0; i < k; ++i) {
        DiscElem e = d.zero();
        e[i] = 1;
        full.cyclicGens.push_back(e);
        full.cyclicOrders.push_back(d.invariantFactors()[i]);
    }
    auto maps = glueMaps(d, full, d, full, +1);
    for (const auto& m : maps) {
        IntMat a(k, k);
        for (int i = 0; i < k; ++i)
            for (int r = 0; r < k; ++r) a(r, i) = m[i][r];
        g.elements.push_back(a);
    }
    return g;
}

} // namespace latkit
