#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "latkit/errors.hpp"

namespace latkit {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int gcdInt(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcmInt(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// g = gcd(a,b) = s*a + t*b
inline Int gcdExt(const Int& a, const Int& b, Int& s, Int& t) {
    Int g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int gcdVec(const IVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcdInt(g, x);
    return g;
}

// Floor division / non-negative remainder.
inline Int fdivQ(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int modPos(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int isqrtFloor(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool isPerfectSquare(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline bool isProbablePrime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

// p-adic valuation; v(0) is reported as -1 (callers guard against 0).
inline long valuation(const Int& n, const Int& p) {
    if (n == 0) return -1;
    Int m = n;
    long v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

inline Int unitPart(const Int& n, const Int& p) {
    Int m = n;
    while (m != 0 && mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) m /= p;
    return m;
}

// Legendre symbol (a|p), p an odd prime.
inline int legendre(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

// Class of an odd integer mod 8 in {+1,-1}: +1 for 1,7; -1 for 3,5.
inline int mod8Class(const Int& u) {
    Int r = modPos(u, 8);
    require(r % 2 != 0, "InternalError", "mod8Class of even integer");
    return (r == 1 || r == 7) ? 1 : -1;
}

inline std::vector<Int> primeFactors(Int n) {
    std::vector<Int> ps;
    if (n < 0) n = -n;
    if (n <= 1) return ps;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline Rat ratOf(const Int& n, const Int& d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
}

// Reduce q modulo m (m = 1 or 2) into [0, m).
inline Rat modRat(const Rat& q, int m) {
    Rat qq = q / m;
    Int f = fdivQ(qq.get_num(), qq.get_den());
    Rat r = q - Rat(f * m);
    r.canonicalize();
    return r;
}

inline std::string toString(const Int& n) { return n.get_str(); }

inline std::string toString(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

} // namespace latkit
