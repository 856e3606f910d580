#pragma once

#include "latkit/lattice.hpp"

namespace latkit {

// Fundamental chamber data for a hyperbolic (signature (1,k)) lattice.
// Walls are root vectors oriented toward the controller (b(H, w) > 0, or
// lexicographically positive under the perturbation policy when b = 0);
// they are returned in (distance, lex) canonical order.
struct ChamberData {
    Lattice lattice;
    IVec controller;
    std::vector<Int> rootSquares;
    std::vector<IVec> walls;
    bool complete = false;  // rank 2 is decided exactly; higher ranks may cap
    bool perturbed = false; // controller met a mirror and was lex-perturbed
};

// rootSquares: negative even integers; admissibility of a root r includes
// the integrality of its reflection (2 b(x,r)/r^2 integral on L).
// Rank 2 terminates exactly (binary-form solvability decides emptiness);
// rank >= 3 enumerates distance shells up to distanceCap and flags the
// chamber as partial.
ChamberData fundamentalChamber(const Lattice& l, const IVec& controller,
                               const std::vector<Int>& rootSquares, bool perturb = false,
                               const Rat& distanceCap = Rat(64));

bool inChamber(const IVec& x, const ChamberData& c); // closed chamber

struct WordScanReport {
    struct ExtraInfo {
        bool fixesController = false;
        bool preservesChamber = false;
        // wall-index pairs (i, j) with tau_{w_i} * t == t * tau_{w_j}
        std::vector<std::pair<int, int>> conjugacyRelations;
    };
    std::vector<ExtraInfo> extras;
    long wordsChecked = 0;
    long wordsMovingControllerOut = 0; // strictly outside the chamber
    bool allNonemptyWordsMoveControllerOut = true;
};

// Exact matrix checks around the chamber: extra reflections are given by
// their root vectors; words are reduced words in the wall reflections of
// length <= maxLen.
WordScanReport reflectionWordScan(const ChamberData& c, const std::vector<IVec>& extraRoots,
                                  int maxLen);

} // namespace latkit
