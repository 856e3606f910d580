#include "latkit/binform.hpp"

#include <algorithm>
#include <set>

namespace latkit {

namespace {

struct Form {
    Int a, b, c;
    bool operator<(const Form& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
};

Int discOf(const Form& f) { return f.b * f.b - 4 * f.a * f.c; }

// Reduced indefinite form (disc > 0 nonsquare): 0 < b < sqrt(D) and
// sqrt(D) - b < 2|a| < sqrt(D) + b, all checks in integers.
bool isReducedIndef(const Form& f, const Int& disc) {
    if (f.b <= 0) return false;
    if (f.b * f.b >= disc) return false;
    Int ta = 2 * abs(f.a);
    if ((ta + f.b) * (ta + f.b) <= disc) return false;
    if (ta > f.b && (ta - f.b) * (ta - f.b) >= disc) return false;
    return true;
}

// One step of the Gauss reduction / cycle operator.
Form rhoStep(const Form& f, const Int& disc, const Int& s /* floor(sqrt(disc)) */) {
    Int ac = abs(f.c);
    require(ac != 0, "Degenerate", "rho step hit a zero outer coefficient");
    Int hi = (ac > s) ? ac : s;
    // r = -b mod 2|c| shifted into (hi - 2|c|, hi]
    Int r = hi - modPos(hi + f.b, 2 * ac);
    Form g;
    g.a = f.c;
    g.b = r;
    g.c = (r * r - disc) / (4 * f.c);
    return g;
}

Form reduceIndef(Form f, const Int& disc, const Int& s) {
    for (int guard = 0; guard < 100000; ++guard) {
        if (isReducedIndef(f, disc)) return f;
        f = rhoStep(f, disc, s);
    }
    fail("InternalError", "indefinite reduction did not terminate");
}

// Proper (SL2) equivalence via the cycle of reduced forms.
bool properlyEquivalent(Form f, Form g, const Int& disc) {
    Int s = isqrtFloor(disc);
    Form f0 = reduceIndef(f, disc, s);
    Form g0 = reduceIndef(g, disc, s);
    Form cur = f0;
    for (int guard = 0; guard < 1000000; ++guard) {
        if (cur == g0) return true;
        cur = rhoStep(cur, disc, s);
        if (cur == f0) return false;
    }
    fail("InternalError", "reduction cycle did not close");
}

// Proper representations of m (m != 0) by a primitive form of nonsquare
// positive discriminant: exists iff disc is a square mod 4|m| with a root B
// whose derived form [m, B, (B^2-disc)/4m] is properly equivalent to f.
bool properlyRepresentsIndef(const Form& f, const Int& disc, const Int& m) {
    Int m4 = 4 * abs(m);
    for (Int bb = modPos(disc, 2); bb < 2 * abs(m); bb += 2) {
        if (modPos(bb * bb - disc, m4) != 0) continue;
        Form g{m, bb, (bb * bb - disc) / (4 * m)};
        if (properlyEquivalent(g, f, disc)) return true;
    }
    return false;
}

std::vector<std::pair<Int, Int>> divisorsSigned(const Int& n) {
    std::vector<std::pair<Int, Int>> out; // (u, n/u)
    Int an = abs(n);
    for (Int u = 1; u * u <= an; ++u) {
        if (an % u != 0) continue;
        Int v = n / u;
        out.emplace_back(u, v);
        out.emplace_back(-u, -v);
        if (u != abs(v)) {
            out.emplace_back(v, u);
            out.emplace_back(-v, -u);
        }
    }
    return out;
}

void solveSquareDisc(const Form& f, const Int& disc, const Int& d,
                     std::vector<std::pair<Int, Int>>& out) {
    Int k = isqrtFloor(disc);
    if (f.a == 0) {
        // q = y (b x + c y) = d, b != 0
        for (const auto& [y, rest] : divisorsSigned(d)) {
            Int num = rest - f.c * y;
            if (num % f.b != 0) continue;
            out.emplace_back(num / f.b, y);
        }
        return;
    }
    // 4a q = (2ax + (b-k) y)(2ax + (b+k) y) = 4 a d
    Int target = 4 * f.a * d;
    for (const auto& [u, v] : divisorsSigned(target)) {
        Int dy = v - u;
        if (modPos(dy, 2 * k) != 0) continue;
        Int y = dy / (2 * k);
        Int numx = u - (f.b - k) * y;
        if (numx % (2 * f.a) != 0) continue;
        out.emplace_back(numx / (2 * f.a), y);
    }
}

void solveDefinite(const Form& f, const Int& disc, const Int& d,
                   std::vector<std::pair<Int, Int>>& out) {
    // 4a q = (2ax + by)^2 - disc y^2 with disc < 0
    if (f.a * d < 0) return;
    Int target = 4 * f.a * d;
    Int ymax = isqrtFloor(target / (-disc));
    while ((ymax + 1) * (ymax + 1) * (-disc) <= target) ++ymax;
    for (Int y = -ymax; y <= ymax; ++y) {
        Int rhs = target + disc * y * y; // = (2ax + by)^2
        if (rhs < 0) continue;
        if (!isPerfectSquare(rhs)) continue;
        Int r = isqrtFloor(rhs);
        for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
            Int t = sgn == 0 ? r : -r;
            Int numx = t - f.b * y;
            if (modPos(numx, 2 * f.a) != 0) continue;
            out.emplace_back(numx / (2 * f.a), y);
        }
    }
}

} // namespace

BinarySolve binaryRepresents(const Int& a, const Int& b, const Int& c, const Int& d) {
    BinarySolve r;
    Form f{a, b, c};
    Int disc = discOf(f);
    require(disc != 0, "Degenerate", "binary form must be nondegenerate");
    require(d != 0, "ZeroVector", "target value must be nonzero");

    Int content = gcdInt(gcdInt(a, b), c);
    if (modPos(d, content) != 0) {
        r.finite = disc < 0 || isPerfectSquare(disc);
        return r;
    }

    if (disc < 0) {
        r.finite = true;
        solveDefinite(f, disc, d, r.all);
    } else if (isPerfectSquare(disc)) {
        r.finite = true;
        solveSquareDisc(f, disc, d, r.all);
    } else {
        r.finite = false;
        // reduce to the primitive form and scan e^2 | d' for proper reps
        Form fp{a / content, b / content, c / content};
        Int dp = d / content;
        Int discp = discOf(fp);
        for (Int e = 1; e * e <= abs(dp); ++e) {
            if (modPos(dp, e * e) != 0) continue;
            if (properlyRepresentsIndef(fp, discp, dp / (e * e))) {
                r.solvable = true;
                return r;
            }
        }
        return r;
    }
    std::sort(r.all.begin(), r.all.end());
    r.all.erase(std::unique(r.all.begin(), r.all.end()), r.all.end());
    r.solvable = !r.all.empty();
    return r;
}

} // namespace latkit
