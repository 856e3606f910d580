#pragma once

#include <string>

#include "latkit/lattice.hpp"

namespace latkit {

// One Jordan constituent at scale p^valuation: rank, determinant class
// eps (+1/-1), and for p = 2 the parity (type II = even) and oddity.
struct GenusConstituent {
    int valuation = 0;
    int rank = 0;
    int eps = 1;
    bool typeII = true; // always true for odd p
    int oddity = 0;     // 0 for type II and for odd p

    bool operator==(const GenusConstituent& o) const {
        return valuation == o.valuation && rank == o.rank && eps == o.eps &&
               typeII == o.typeII && oddity == o.oddity;
    }
};

struct GenusSymbol {
    std::pair<int, int> signaturePair{0, 0};
    // ascending primes (p = 2 first when present); constituents ascending by
    // valuation, rank > 0 only. Unit-scale constituents are stored but are
    // elided by the printer and reconstructed by the parser.
    std::vector<std::pair<Int, std::vector<GenusConstituent>>> localSymbols;

    bool operator==(const GenusSymbol& o) const {
        return signaturePair == o.signaturePair && localSymbols == o.localSymbols;
    }
};

GenusSymbol genusSymbol(const Lattice& l); // even, nondegenerate; canonical
std::string genusSymbolToString(const GenusSymbol& s);
GenusSymbol parseGenusSymbol(const std::string& text); // fails ParseError
bool sameGenus(const Lattice& l1, const Lattice& l2);

// Internal consistency: signature + sum of p-excesses == oddity (mod 8).
bool oddityFormulaHolds(const GenusSymbol& s);

// Canonicalization of a raw 2-adic constituent list (sign walking and
// oddity fusion); exposed for tests.
std::vector<GenusConstituent> canonicalize2adic(std::vector<GenusConstituent> sym);
// Canonical form of a (possibly parsed, non-canonical) symbol.
GenusSymbol canonicalizeGenusSymbol(GenusSymbol s);

// Hilbert symbol (a,b)_p; p = 0 encodes the real place.
int hilbertSymbol(const Rat& a, const Rat& b, const Int& p);
bool isSquareQp(const Rat& a, const Int& p);

// Isotropy of L tensor Q_p (p = 0: reals) by rank casework on the
// determinant class and Hasse invariant.
bool isIsotropicOverQp(const Lattice& l, const Int& p);

// Necessary condition for containing some U(k): isotropy at the real place
// and at every p | 2 det. False certifies non-containment.
bool containsRescaledUNecessaryCondition(const Lattice& l);

} // namespace latkit
