#include "latkit/genus.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace latkit {

namespace {

long valRat(const Rat& q0, const Int& p) {
    Rat q = q0;
    q.canonicalize();
    if (q.get_num() == 0) return LONG_MAX / 2;
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

// For a rational u with p-free numerator and denominator, the residue class
// tricks below use den^{-1} = den (mod 8) and the multiplicativity of the
// Legendre symbol.
int legendreRatUnit(const Rat& q0, const Int& p) {
    Rat q = q0;
    q.canonicalize();
    return legendre(q.get_num() * q.get_den(), p);
}

Int mod8RatUnit(const Rat& q0) {
    Rat q = q0;
    q.canonicalize();
    return modPos(q.get_num() * q.get_den(), 8);
}

void swapRowCol(RatMat& a, int i, int j) {
    if (i == j) return;
    a.swapRows(i, j);
    a.swapCols(i, j);
}

// Jordan decomposition over Z_p, p odd: diagonal entries with valuations.
std::vector<GenusConstituent> jordanOdd(const IntMat& gram, const Int& p) {
    int n = gram.rows();
    RatMat a = toRat(gram);
    std::vector<std::pair<long, Rat>> diag;
    for (int t = 0; t < n; ++t) {
        long best = LONG_MAX / 2;
        int bi = -1, bj = -1;
        for (int i = t; i < n; ++i)
            for (int j = t; j < n; ++j) {
                long v = valRat(a(i, j), p);
                if (v < best) { best = v; bi = i; bj = j; }
            }
        require(bi >= 0, "Degenerate", "degenerate form in Jordan decomposition");
        bool haveDiag = false;
        for (int i = t; i < n; ++i)
            if (valRat(a(i, i), p) == best) {
                swapRowCol(a, t, i);
                haveDiag = true;
                break;
            }
        if (!haveDiag) {
            swapRowCol(a, t, bi);
            int j2 = (bj == t) ? bi : bj;
            // p odd: adding row/col j2 puts valuation `best` on the diagonal
            for (int j = 0; j < n; ++j) a(t, j) += a(j2, j);
            for (int i = 0; i < n; ++i) a(i, t) += a(i, j2);
        }
        Rat d = a(t, t);
        for (int r = t + 1; r < n; ++r) {
            if (a(r, t) == 0) continue;
            Rat f = a(r, t) / d;
            for (int j = t; j < n; ++j) a(r, j) -= f * a(t, j);
            for (int j = t; j < n; ++j) a(j, r) = a(r, j);
        }
        diag.emplace_back(valRat(d, p), d);
    }
    std::vector<GenusConstituent> out;
    std::sort(diag.begin(), diag.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (size_t i = 0; i < diag.size();) {
        size_t j = i;
        Rat units(1);
        while (j < diag.size() && diag[j].first == diag[i].first) {
            Rat u = diag[j].second;
            for (long k = 0; k < diag[j].first; ++k) u /= Rat(p);
            units *= u;
            ++j;
        }
        GenusConstituent c;
        c.valuation = static_cast<int>(diag[i].first);
        c.rank = static_cast<int>(j - i);
        c.eps = legendreRatUnit(units, p);
        out.push_back(c);
        i = j;
    }
    return out;
}

// Jordan decomposition over Z_2 into odd 1x1 and even 2x2 blocks.
std::vector<GenusConstituent> jordanTwo(const IntMat& gram) {
    int n = gram.rows();
    RatMat a = toRat(gram);
    const Int two = 2;
    struct Piece {
        long v;
        bool odd;   // odd 1x1 vs even 2x2
        Rat unit;   // diagonal unit or block determinant unit
    };
    std::vector<Piece> pieces;
    int t = 0;
    while (t < n) {
        long best = LONG_MAX / 2;
        int bi = -1, bj = -1;
        for (int i = t; i < n; ++i)
            for (int j = t; j < n; ++j) {
                long v = valRat(a(i, j), two);
                if (v < best) { best = v; bi = i; bj = j; }
            }
        require(bi >= 0, "Degenerate", "degenerate form in Jordan decomposition");
        int di = -1;
        for (int i = t; i < n; ++i)
            if (valRat(a(i, i), two) == best) { di = i; break; }
        if (di >= 0) {
            swapRowCol(a, t, di);
            Rat d = a(t, t);
            for (int r = t + 1; r < n; ++r) {
                if (a(r, t) == 0) continue;
                Rat f = a(r, t) / d; // 2-integral: val(a(r,t)) >= best
                for (int j = t; j < n; ++j) a(r, j) -= f * a(t, j);
                for (int j = t; j < n; ++j) a(j, r) = a(r, j);
            }
            Rat u = d;
            for (long k = 0; k < best; ++k) u /= 2;
            pieces.push_back({best, true, u});
            t += 1;
        } else {
            // all diagonal valuations exceed `best`: split a 2x2 even block
            swapRowCol(a, t, bi);
            int j2 = (bj == t) ? bi : bj;
            swapRowCol(a, t + 1, j2);
            Rat p00 = a(t, t), p01 = a(t, t + 1), p11 = a(t + 1, t + 1);
            Rat det = p00 * p11 - p01 * p01; // valuation exactly 2*best
            for (int r = t + 2; r < n; ++r) {
                Rat b0 = a(r, t), b1 = a(r, t + 1);
                if (b0 == 0 && b1 == 0) continue;
                // solve [p00 p01; p01 p11] [x y]^T = [b0 b1]^T; 2-integral
                Rat x = (p11 * b0 - p01 * b1) / det;
                Rat y = (p00 * b1 - p01 * b0) / det;
                for (int j = t; j < n; ++j) a(r, j) -= x * a(t, j) + y * a(t + 1, j);
                for (int j = t; j < n; ++j) a(j, r) = a(r, j);
            }
            Rat u = det;
            for (long k = 0; k < 2 * best; ++k) u /= 2;
            pieces.push_back({best, false, u});
            t += 2;
        }
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
        return x.v < y.v;
    });
    std::vector<GenusConstituent> out;
    for (size_t i = 0; i < pieces.size();) {
        size_t j = i;
        Rat units(1);
        int rank = 0;
        int oddity = 0;
        bool anyOdd = false;
        while (j < pieces.size() && pieces[j].v == pieces[i].v) {
            units *= pieces[j].unit;
            if (pieces[j].odd) {
                anyOdd = true;
                rank += 1;
                oddity += static_cast<int>(mod8RatUnit(pieces[j].unit).get_si());
            } else {
                rank += 2;
            }
            ++j;
        }
        GenusConstituent c;
        c.valuation = static_cast<int>(pieces[i].v);
        c.rank = rank;
        c.eps = (mod8RatUnit(units) == 1 || mod8RatUnit(units) == 7) ? 1 : -1;
        c.typeII = !anyOdd;
        c.oddity = ((oddity % 8) + 8) % 8;
        out.push_back(c);
        i = j;
    }
    return out;
}

std::vector<std::vector<int>> compartmentsOf(const std::vector<GenusConstituent>& sym) {
    std::vector<std::vector<int>> comps;
    size_t i = 0;
    while (i < sym.size()) {
        if (!sym[i].typeII) {
            int v = sym[i].valuation;
            std::vector<int> c{static_cast<int>(i)};
            ++i;
            while (i < sym.size() && !sym[i].typeII && sym[i].valuation == v + 1) {
                v = sym[i].valuation;
                c.push_back(static_cast<int>(i));
                ++i;
            }
            comps.push_back(c);
        } else {
            ++i;
        }
    }
    return comps;
}

std::vector<std::vector<int>> trainsOf(const std::vector<GenusConstituent>& sym) {
    std::vector<std::vector<int>> trains;
    if (sym.empty()) return trains;
    std::vector<int> cur{0};
    for (size_t i = 1; i < sym.size(); ++i) {
        const GenusConstituent& prev = sym[i - 1];
        const GenusConstituent& now = sym[i];
        int gap = now.valuation - prev.valuation;
        bool startNew;
        if (gap > 2) startNew = true;
        else if (gap == 2) startNew = prev.typeII || now.typeII; // middle scale is even
        else startNew = prev.typeII && now.typeII;
        if (startNew) {
            trains.push_back(cur);
            cur = {static_cast<int>(i)};
        } else {
            cur.push_back(static_cast<int>(i));
        }
    }
    trains.push_back(cur);
    return trains;
}

} // namespace

std::vector<GenusConstituent> canonicalize2adic(std::vector<GenusConstituent> sym) {
    // oddity fusion: only compartment totals matter; park them at the head
    auto comps = compartmentsOf(sym);
    for (const auto& comp : comps) {
        int total = 0;
        for (int i : comp) {
            total += sym[i].oddity;
            sym[i].oddity = 0;
        }
        sym[comp[0]].oddity = ((total % 8) + 8) % 8;
    }
    // sign walking: push -1 signs toward the head of each train, bumping the
    // oddity of every compartment touched by a step by 4
    auto trains = trainsOf(sym);
    for (const auto& train : trains) {
        for (int idx = static_cast<int>(train.size()) - 1; idx >= 1; --idx) {
            int t1 = train[idx];
            if (sym[t1].eps != -1) continue;
            sym[t1].eps = 1;
            sym[t1 - 1].eps *= -1;
            for (const auto& comp : comps) {
                bool touched = std::find(comp.begin(), comp.end(), t1) != comp.end() ||
                               std::find(comp.begin(), comp.end(), t1 - 1) != comp.end();
                if (touched) sym[comp[0]].oddity = (sym[comp[0]].oddity + 4) % 8;
            }
        }
    }
    return sym;
}

GenusSymbol genusSymbol(const Lattice& l) {
    require(l.even(), "NotEven", "genus symbols are computed for even lattices");
    GenusSymbol s;
    s.signaturePair = l.signature();
    if (l.rank() == 0) return s;
    Int adet = abs(l.det());
    std::vector<Int> primes = primeFactors(2 * adet);
    std::sort(primes.begin(), primes.end());
    for (const Int& p : primes) {
        std::vector<GenusConstituent> cs =
            (p == 2) ? canonicalize2adic(jordanTwo(l.gram())) : jordanOdd(l.gram(), p);
        s.localSymbols.emplace_back(p, cs);
    }
    return s;
}

GenusSymbol canonicalizeGenusSymbol(GenusSymbol s) {
    for (auto& [p, cs] : s.localSymbols)
        if (p == 2) cs = canonicalize2adic(cs);
    return s;
}

bool sameGenus(const Lattice& l1, const Lattice& l2) {
    if (!l1.even() || !l2.even()) return l1.even() == l2.even() && l1.rank() == 0 && l2.rank() == 0;
    if (l1.rank() != l2.rank() || l1.signature() != l2.signature()) return false;
    if (l1.det() != l2.det()) return false;
    return genusSymbol(l1) == genusSymbol(l2);
}

bool oddityFormulaHolds(const GenusSymbol& s) {
    int sig = s.signaturePair.first - s.signaturePair.second;
    int oddity = 0;
    Int excess = 0;
    for (const auto& [p, cs] : s.localSymbols) {
        if (p == 2) {
            for (const auto& c : cs) {
                oddity += c.oddity;
                if (c.valuation % 2 == 1 && c.eps == -1) oddity += 4;
            }
        } else {
            for (const auto& c : cs) {
                Int q = 1;
                for (int k = 0; k < c.valuation; ++k) q *= p;
                excess += Int(c.rank) * (q - 1);
                if (c.valuation % 2 == 1 && c.eps == -1) excess += 4;
            }
        }
    }
    Int lhs = modPos(Int(sig) + excess - oddity, 8);
    return lhs == 0;
}

std::string genusSymbolToString(const GenusSymbol& s) {
    std::ostringstream os;
    os << "II_(" << s.signaturePair.first << "," << s.signaturePair.second << ")";
    bool first = true;
    for (const auto& [p, cs] : s.localSymbols) {
        for (const auto& c : cs) {
            if (c.valuation == 0) continue;
            if (!first) os << " ";
            first = false;
            Int q = 1;
            for (int k = 0; k < c.valuation; ++k) q *= p;
            os << q.get_str() << "^" << (c.eps < 0 ? "-" : "") << c.rank;
            if (p == 2 && !c.typeII) os << "_" << c.oddity;
        }
    }
    return os.str();
}

namespace {

[[noreturn]] void parseFail(const std::string& text, size_t pos, const std::string& what) {
    fail("ParseError", what + " at position " + std::to_string(pos) + " in \"" + text + "\"");
}

} // namespace

GenusSymbol parseGenusSymbol(const std::string& raw) {
    // LaTeX-ish braces act as token boundaries
    std::string text;
    for (char ch : raw) text += (ch == '{' || ch == '}') ? ' ' : ch;

    size_t pos = 0;
    auto skipSpace = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
    auto expect = [&](const std::string& tok) {
        for (char ch : tok) {
            skipSpace();
            if (pos >= text.size() || text[pos] != ch)
                parseFail(text, pos, "expected '" + tok + "'");
            ++pos;
        }
    };
    auto parseInt = [&]() -> long {
        skipSpace();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) parseFail(text, pos, "expected integer");
        return std::stol(text.substr(start, pos - start));
    };

    GenusSymbol s;
    skipSpace();
    expect("II_(");
    long sp = parseInt();
    skipSpace();
    expect(",");
    long sq = parseInt();
    skipSpace();
    expect(")");
    if (sp < 0 || sq < 0) parseFail(text, pos, "negative signature entry");
    s.signaturePair = {static_cast<int>(sp), static_cast<int>(sq)};
    int totalRank = static_cast<int>(sp + sq);

    struct RawC {
        Int scale;
        int rank;
        int eps;
        bool hasOddity;
        int oddity;
    };
    std::vector<RawC> cs;
    skipSpace();
    while (pos < text.size()) {
        RawC c;
        long scale = parseInt();
        if (scale <= 1) parseFail(text, pos, "constituent scale must be > 1");
        c.scale = scale;
        skipSpace();
        expect("^");
        long r = parseInt();
        c.eps = r < 0 ? -1 : 1;
        c.rank = static_cast<int>(r < 0 ? -r : r);
        if (c.rank == 0) parseFail(text, pos, "constituent rank must be nonzero");
        c.hasOddity = false;
        c.oddity = 0;
        skipSpace();
        if (pos < text.size() && text[pos] == '_') {
            ++pos;
            long t = parseInt();
            if (t < 0 || t > 7) parseFail(text, pos, "oddity out of range");
            c.hasOddity = true;
            c.oddity = static_cast<int>(t);
        }
        cs.push_back(c);
        skipSpace();
    }

    // group by prime; reconstruct the elided unit-scale constituents
    std::vector<Int> primes{2};
    for (const auto& c : cs) {
        std::vector<Int> pf = primeFactors(c.scale);
        if (pf.size() != 1) parseFail(text, 0, "constituent scale is not a prime power");
        if (std::find(primes.begin(), primes.end(), pf[0]) == primes.end())
            primes.push_back(pf[0]);
    }
    std::sort(primes.begin(), primes.end());

    Int absDet = 1;
    for (const auto& c : cs)
        for (int k = 0; k < c.rank; ++k) absDet *= c.scale;
    Int det = (sq % 2 == 1) ? -absDet : absDet;

    for (const Int& p : primes) {
        std::vector<GenusConstituent> list;
        int usedRank = 0;
        int epsProd = 1;
        for (const auto& c : cs) {
            if (unitPart(c.scale, p) != 1) continue; // other prime
            GenusConstituent g;
            g.valuation = static_cast<int>(valuation(c.scale, p));
            g.rank = c.rank;
            g.eps = c.eps;
            if (p == 2) {
                g.typeII = !c.hasOddity;
                g.oddity = c.oddity;
            }
            usedRank += c.rank;
            epsProd *= c.eps;
            list.push_back(g);
        }
        std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            return a.valuation < b.valuation;
        });
        for (size_t i = 1; i < list.size(); ++i)
            if (list[i].valuation == list[i - 1].valuation)
                parseFail(text, 0, "duplicate scale for prime " + p.get_str());
        int unitRank = totalRank - usedRank;
        if (unitRank < 0) parseFail(text, 0, "constituent ranks exceed the signature rank");
        if (unitRank > 0) {
            GenusConstituent g;
            g.valuation = 0;
            g.rank = unitRank;
            Int u = unitPart(det, p);
            int totalEps = (p == 2) ? mod8Class(u) : legendre(u, p);
            g.eps = totalEps * epsProd;
            g.typeII = true; // even lattices only
            g.oddity = 0;
            list.insert(list.begin(), g);
        }
        if (!list.empty()) s.localSymbols.emplace_back(p, list);
    }
    return s;
}

int hilbertSymbol(const Rat& a0, const Rat& b0, const Int& p) {
    require(a0 != 0 && b0 != 0, "ZeroVector", "Hilbert symbol needs nonzero arguments");
    Rat a = a0, b = b0;
    a.canonicalize();
    b.canonicalize();
    if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
    require(p >= 2 && isProbablePrime(p), "ParseError", "place must be a prime or 0 (infinity)");
    auto split = [&](const Rat& x, long& v, Int& unitNumDen) {
        v = valuation(x.get_num(), p) - valuation(x.get_den(), p);
        unitNumDen = unitPart(x.get_num(), p) * unitPart(x.get_den(), p);
    };
    long alpha, beta;
    Int u, w;
    split(a, alpha, u);
    split(b, beta, w);
    if (p != 2) {
        int resA = legendre(u, p);
        int resB = legendre(w, p);
        int epsP = static_cast<int>(modPos((p - 1) / 2, 2).get_si());
        long exp = (alpha % 2) * (beta % 2) * epsP;
        int sign = (exp % 2 != 0) ? -1 : 1;
        if (beta % 2 != 0 && resA < 0) sign = -sign;
        if (alpha % 2 != 0 && resB < 0) sign = -sign;
        return sign;
    }
    auto epsOf = [](const Int& x) { return (modPos(x, 4) == 1) ? 0 : 1; };
    auto omegaOf = [](const Int& x) {
        Int r = modPos(x, 8);
        return (r == 1 || r == 7) ? 0 : 1;
    };
    long e = epsOf(u) * epsOf(w) + (alpha % 2 != 0 ? omegaOf(w) : 0) +
             (beta % 2 != 0 ? omegaOf(u) : 0);
    return (e % 2 != 0) ? -1 : 1;
}

bool isSquareQp(const Rat& a0, const Int& p) {
    Rat a = a0;
    a.canonicalize();
    if (a == 0) return true;
    if (p == 0) return a > 0;
    long v = valuation(a.get_num(), p) - valuation(a.get_den(), p);
    if (v % 2 != 0) return false;
    Int u = unitPart(a.get_num(), p) * unitPart(a.get_den(), p);
    if (p == 2) return modPos(u, 8) == 1;
    return legendre(u, p) == 1;
}

namespace {

QVec diagonalizeOverQ(const Lattice& l) {
    int n = l.rank();
    RatMat a = toRat(l.gram());
    QVec out;
    for (int k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            int di = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, i) != 0) { di = i; break; }
            if (di >= 0) {
                swapRowCol(a, k, di);
            } else {
                int oj = -1;
                for (int j = k + 1; j < n; ++j)
                    if (a(k, j) != 0) { oj = j; break; }
                require(oj >= 0, "Degenerate", "degenerate form");
                for (int j = 0; j < n; ++j) a(k, j) += a(oj, j);
                for (int i = 0; i < n; ++i) a(i, k) += a(i, oj);
            }
        }
        Rat d = a(k, k);
        out.push_back(d);
        for (int i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / d;
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (int j = k; j < n; ++j) a(j, i) = a(i, j);
        }
    }
    return out;
}

} // namespace

bool isIsotropicOverQp(const Lattice& l, const Int& p) {
    int n = l.rank();
    if (n == 0) return false;
    QVec d = diagonalizeOverQ(l);
    if (p == 0) {
        bool hasPos = false, hasNeg = false;
        for (const Rat& x : d) (x > 0 ? hasPos : hasNeg) = true;
        return hasPos && hasNeg;
    }
    if (n == 1) return false;
    if (n >= 5) return true;
    Rat det(1);
    for (const Rat& x : d) det *= x;
    int hasse = 1;
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) hasse *= hilbertSymbol(d[i], d[j], p);
    if (n == 2) return isSquareQp(-det, p);
    if (n == 3) return hasse == hilbertSymbol(Rat(-1), -det, p);
    // n == 4
    if (!isSquareQp(det, p)) return true;
    return hasse == hilbertSymbol(Rat(-1), Rat(-1), p);
}

bool containsRescaledUNecessaryCondition(const Lattice& l) {
    if (!isIsotropicOverQp(l, 0)) return false;
    for (const Int& p : primeFactors(2 * abs(l.det())))
        if (!isIsotropicOverQp(l, p)) return false;
    return true;
}

} // namespace latkit
