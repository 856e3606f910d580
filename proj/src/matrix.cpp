#include "latkit/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace latkit {

IntMat transpose(const IntMat& m) {
    IntMat t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

RatMat transpose(const RatMat& m) {
    RatMat t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

IntMat mul(const IntMat& a, const IntMat& b) {
    require(a.cols() == b.rows(), "ShapeError", "matrix product shape mismatch");
    IntMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RatMat mul(const RatMat& a, const RatMat& b) {
    require(a.cols() == b.rows(), "ShapeError", "matrix product shape mismatch");
    RatMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RatMat toRat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

IntMat toInt(const RatMat& m) {
    IntMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Rat q = m(i, j);
            q.canonicalize();
            require(q.get_den() == 1, "NotIntegral", "rational entry where integer expected");
            r(i, j) = q.get_num();
        }
    return r;
}

bool isIntegral(const RatMat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Rat q = m(i, j);
            q.canonicalize();
            if (q.get_den() != 1) return false;
        }
    return true;
}

IVec mulVec(const IntMat& m, const IVec& v) {
    require(static_cast<int>(v.size()) == m.cols(), "ShapeError", "matrix-vector shape mismatch");
    IVec r(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

QVec mulVec(const RatMat& m, const QVec& v) {
    require(static_cast<int>(v.size()) == m.cols(), "ShapeError", "matrix-vector shape mismatch");
    QVec r(m.rows(), Rat(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

IVec vecMul(const IVec& v, const IntMat& m) {
    require(static_cast<int>(v.size()) == m.rows(), "ShapeError", "vector-matrix shape mismatch");
    IVec r(m.cols());
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) r[j] += v[i] * m(i, j);
    return r;
}

Int detInt(const IntMat& m) {
    require(m.rows() == m.cols(), "ShapeError", "determinant of non-square matrix");
    int n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            a.swapRows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                a(i, j) = num / prev; // exact by Bareiss
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

Rat detRat(const RatMat& m) {
    require(m.rows() == m.cols(), "ShapeError", "determinant of non-square matrix");
    int n = m.rows();
    if (n == 0) return Rat(1);
    RatMat a = m;
    Rat det(1);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a(i, k) != 0) { piv = i; break; }
        if (piv < 0) return Rat(0);
        if (piv != k) {
            a.swapRows(k, piv);
            det = -det;
        }
        det *= a(k, k);
        Rat inv = 1 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            Rat f = a(i, k) * inv;
            if (f == 0) continue;
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

int rankOf(const IntMat& m) {
    RatMat a = toRat(m);
    int rank = 0;
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int piv = -1;
        for (int i = row; i < a.rows(); ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        a.swapRows(row, piv);
        Rat inv = 1 / a(row, col);
        for (int i = row + 1; i < a.rows(); ++i) {
            Rat f = a(i, col) * inv;
            if (f == 0) continue;
            for (int j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

RatMat inverseRat(const RatMat& m) {
    require(m.rows() == m.cols(), "ShapeError", "inverse of non-square matrix");
    int n = m.rows();
    RatMat a = m;
    RatMat inv = RatMat::identity(n);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a(i, k) != 0) { piv = i; break; }
        require(piv >= 0, "Degenerate", "singular matrix");
        if (piv != k) {
            a.swapRows(k, piv);
            inv.swapRows(k, piv);
        }
        Rat d = a(k, k);
        for (int j = 0; j < n; ++j) {
            a(k, j) /= d;
            inv(k, j) /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat f = a(i, k);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

IntMat hnfRows(const IntMat& m) {
    IntMat a = m;
    int rows = a.rows(), cols = a.cols();
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        // gcd the column below `row` into the pivot slot
        int piv = -1;
        for (int i = row; i < rows; ++i)
            if (a(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        a.swapRows(row, piv);
        for (int i = row + 1; i < rows; ++i) {
            while (a(i, col) != 0) {
                Int q = fdivQ(a(row, col), a(i, col));
                for (int j = 0; j < cols; ++j) a(row, j) -= q * a(i, j);
                a.swapRows(row, i);
            }
        }
        if (a(row, col) < 0)
            for (int j = 0; j < cols; ++j) a(row, j) = -a(row, j);
        for (int i = 0; i < row; ++i) {
            Int q = fdivQ(a(i, col), a(row, col));
            if (q == 0) continue;
            for (int j = 0; j < cols; ++j) a(i, j) -= q * a(row, j);
        }
        ++row;
    }
    IntMat h(row, cols);
    for (int i = 0; i < row; ++i)
        for (int j = 0; j < cols; ++j) h(i, j) = a(i, j);
    return h;
}

RatMat hnfRowsRat(const RatMat& m) {
    Int den = 1;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Rat q = m(i, j);
            q.canonicalize();
            den = lcmInt(den, q.get_den());
        }
    IntMat scaled(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Rat q = m(i, j) * Rat(den);
            q.canonicalize();
            scaled(i, j) = q.get_num();
        }
    IntMat h = hnfRows(scaled);
    RatMat out(h.rows(), h.cols());
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j) out(i, j) = ratOf(h(i, j), den);
    return out;
}

SnfResult smithNormalForm(const IntMat& a0) {
    int m = a0.rows(), n = a0.cols();
    SnfResult r{a0, IntMat::identity(m), IntMat::identity(n)};
    IntMat& a = r.s;
    IntMat& u = r.u;
    IntMat& v = r.v;

    auto addRow = [&](int dst, int src, const Int& f) { // row dst += f * row src
        for (int j = 0; j < n; ++j) a(dst, j) += f * a(src, j);
        for (int j = 0; j < m; ++j) u(dst, j) += f * u(src, j);
    };
    auto addCol = [&](int dst, int src, const Int& f) {
        for (int i = 0; i < m; ++i) a(i, dst) += f * a(i, src);
        for (int i = 0; i < n; ++i) v(i, dst) += f * v(i, src);
    };
    auto swapRow = [&](int i, int j) { a.swapRows(i, j); u.swapRows(i, j); };
    auto swapCol = [&](int i, int j) { a.swapCols(i, j); v.swapCols(i, j); };

    int t = 0;
    int lim = std::min(m, n);
    while (t < lim) {
        // locate a minimal nonzero entry in the trailing block
        int bi = -1, bj = -1;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j)
                if (a(i, j) != 0 &&
                    (bi < 0 || cmp(abs(a(i, j)), abs(a(bi, bj))) < 0)) {
                    bi = i; bj = j;
                }
        if (bi < 0) break;
        swapRow(t, bi);
        swapCol(t, bj);
        bool dirty = false;
        for (int i = t + 1; i < m; ++i) {
            if (a(i, t) == 0) continue;
            Int q = fdivQ(a(i, t), a(t, t));
            addRow(i, t, -q);
            if (a(i, t) != 0) dirty = true;
        }
        for (int j = t + 1; j < n; ++j) {
            if (a(t, j) == 0) continue;
            Int q = fdivQ(a(t, j), a(t, t));
            addCol(j, t, -q);
            if (a(t, j) != 0) dirty = true;
        }
        if (dirty) continue; // smaller remainder appeared; redo pivot choice
        // divisibility sweep
        bool ok = true;
        for (int i = t + 1; i < m && ok; ++i)
            for (int j = t + 1; j < n && ok; ++j)
                if (a(i, j) % a(t, t) != 0) {
                    addRow(t, i, 1);
                    ok = false;
                }
        if (!ok) continue;
        ++t;
    }
    for (int i = 0; i < lim; ++i) {
        if (a(i, i) < 0) {
            for (int j = 0; j < n; ++j) a(i, j) = -a(i, j);
            for (int j = 0; j < m; ++j) u(i, j) = -u(i, j);
        }
    }
    return r;
}

IntMat kernelRows(const IntMat& a) {
    SnfResult s = smithNormalForm(a);
    int n = a.cols();
    int rank = 0;
    for (int i = 0; i < std::min(s.s.rows(), s.s.cols()); ++i)
        if (s.s(i, i) != 0) ++rank;
    IntMat k(n - rank, n);
    for (int t = 0; t < n - rank; ++t)
        for (int i = 0; i < n; ++i) k(t, i) = s.v(i, rank + t);
    return k;
}

IntMat saturationRows(const IntMat& b) {
    SnfResult s = smithNormalForm(b);
    int rank = 0;
    for (int i = 0; i < std::min(s.s.rows(), s.s.cols()); ++i)
        if (s.s(i, i) != 0) ++rank;
    RatMat vinv = inverseRat(toRat(s.v));
    IntMat out(rank, b.cols());
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < b.cols(); ++j) {
            Rat q = vinv(i, j);
            q.canonicalize();
            out(i, j) = q.get_num(); // V unimodular, so integral
        }
    return hnfRows(out);
}

std::optional<RatMat> solveLeft(const RatMat& a, const RatMat& b) {
    // solve x * a = b row by row: transpose to a^T * x^T = b^T
    RatMat at = transpose(a);
    int n = at.rows(), m = at.cols();
    RatMat rhs = transpose(b);
    // gaussian elimination on [at | rhs]
    RatMat aug(n, m + rhs.cols());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) aug(i, j) = at(i, j);
        for (int j = 0; j < rhs.cols(); ++j) aug(i, m + j) = rhs(i, j);
    }
    std::vector<int> pivCol;
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (aug(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        aug.swapRows(row, piv);
        Rat d = aug(row, col);
        for (int j = 0; j < aug.cols(); ++j) aug(row, j) /= d;
        for (int i = 0; i < n; ++i) {
            if (i == row || aug(i, col) == 0) continue;
            Rat f = aug(i, col);
            for (int j = 0; j < aug.cols(); ++j) aug(i, j) -= f * aug(row, j);
        }
        pivCol.push_back(col);
        ++row;
    }
    for (int i = row; i < n; ++i)
        for (int j = 0; j < rhs.cols(); ++j)
            if (aug(i, m + j) != 0) return std::nullopt;
    RatMat xt(m, rhs.cols());
    for (int r2 = 0; r2 < row; ++r2)
        for (int j = 0; j < rhs.cols(); ++j) xt(pivCol[r2], j) = aug(r2, m + j);
    return transpose(xt);
}

std::pair<int, int> signatureOf(const IntMat& gram) {
    int n = gram.rows();
    RatMat a = toRat(gram);
    int pos = 0, neg = 0;
    for (int k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            int di = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, i) != 0) { di = i; break; }
            if (di >= 0) {
                a.swapRows(k, di);
                a.swapCols(k, di);
            } else {
                int oj = -1;
                for (int j = k + 1; j < n; ++j)
                    if (a(k, j) != 0) { oj = j; break; }
                require(oj >= 0, "Degenerate", "degenerate form in signature computation");
                // row/col k += row/col oj turns the pivot into 2*a(k,oj)
                for (int j = 0; j < n; ++j) a(k, j) += a(oj, j);
                for (int i = 0; i < n; ++i) a(i, k) += a(i, oj);
            }
        }
        Rat d = a(k, k);
        if (d > 0) ++pos; else ++neg;
        for (int i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / d;
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (int j = k; j < n; ++j) a(j, i) = a(i, j);
        }
    }
    return {pos, neg};
}

std::string matString(const IntMat& m) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

} // namespace latkit
