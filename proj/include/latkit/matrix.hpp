#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "latkit/arith.hpp"

namespace latkit {

// Dense exact matrices. Small ranks only (<= ~24), so no cleverness.
template <class T>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c) {}
    Mat(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = static_cast<int>(rows.size());
        c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
        a_.reserve(static_cast<size_t>(r_) * c_);
        for (const auto& row : rows) {
            require(static_cast<int>(row.size()) == c_, "ShapeError", "ragged initializer");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    std::vector<T> row(int i) const {
        std::vector<T> v(c_);
        for (int j = 0; j < c_; ++j) v[j] = (*this)(i, j);
        return v;
    }
    std::vector<T> col(int j) const {
        std::vector<T> v(r_);
        for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void setRow(int i, const std::vector<T>& v) {
        for (int j = 0; j < c_; ++j) (*this)(i, j) = v[j];
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    void swapRows(int i, int j) {
        for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swapCols(int i, int j) {
        for (int k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

private:
    int r_, c_;
    std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

IntMat transpose(const IntMat& m);
RatMat transpose(const RatMat& m);
IntMat mul(const IntMat& a, const IntMat& b);
RatMat mul(const RatMat& a, const RatMat& b);
RatMat toRat(const IntMat& m);
// Cast to Int, failing if any entry has a denominator.
IntMat toInt(const RatMat& m);
bool isIntegral(const RatMat& m);

IVec mulVec(const IntMat& m, const IVec& v);      // m * v (column conv.)
QVec mulVec(const RatMat& m, const QVec& v);
IVec vecMul(const IVec& v, const IntMat& m);      // v * m (row conv.)

Int detInt(const IntMat& m);                      // Bareiss, exact
Rat detRat(const RatMat& m);
int rankOf(const IntMat& m);
RatMat inverseRat(const RatMat& m);               // fails Degenerate if singular

// Hermite normal form of the row span; rows are a canonical basis of the
// row lattice (zero rows dropped). Pivots positive, entries above reduced.
IntMat hnfRows(const IntMat& m);

struct SnfResult {
    IntMat s; // = u * a * v, diagonal, d1 | d2 | ...
    IntMat u;
    IntMat v;
};
SnfResult smithNormalForm(const IntMat& a);

// Rows form a basis of {x : a * x^T = 0} (saturated by construction).
IntMat kernelRows(const IntMat& a);

// Rows form a basis of the saturation of rowspace(b) in Z^n.
IntMat saturationRows(const IntMat& b);

// Solve x * a = b over Q for each row of b; nullopt if inconsistent.
std::optional<RatMat> solveLeft(const RatMat& a, const RatMat& b);

// Exact signature (p, q) of a nondegenerate symmetric integer matrix.
std::pair<int, int> signatureOf(const IntMat& gram);

// Canonical integral basis of the subgroup of Q^n generated by the rows.
RatMat hnfRowsRat(const RatMat& m);

std::string matString(const IntMat& m);

} // namespace latkit
