#pragma once

#include <optional>
#include <string>

#include "latkit/hk.hpp"
#include "latkit/isometry.hpp"

#include <json.hpp>

namespace latkit::io {

using json = nlohmann::ordered_json;

// LatticeFile: {"gram": [[...]]} or {"ambient": <name|object>, "basis": [[...]]},
// optional "label". GroupFile adds "generators"; LeechPairFile uses
// "coinvariantGram" + "generators".
struct ParsedLattice {
    Lattice lattice;                  // the sublattice's induced lattice if any
    std::optional<Sublattice> sub;    // present when ambient+basis were given
    std::string label;
};

struct ParsedGroup {
    MatrixGroup group;
    std::optional<Sublattice> sub; // group acts on sub.ambient when present
    std::string label;
};

IntMat matFromJson(const json& j, const std::string& what);
json matToJson(const IntMat& m);

ParsedLattice parseLatticeJson(const json& j);
ParsedGroup parseGroupJson(const json& j);
LeechPairInput parseLeechPairJson(const json& j);

ParsedLattice readLatticeFile(const std::string& path);
ParsedGroup readGroupFile(const std::string& path);
LeechPairInput readLeechPairFile(const std::string& path);

json readJsonFile(const std::string& path);

// Canonical printer: stable key order, two-space indent, trailing newline.
std::string canonicalDump(const json& j);
// Canonical re-serialization of a lattice/group document (known keys in
// fixed order, unknown keys dropped).
json canonicalLatticeJson(const json& j);

// exact scalars as strings
json intJson(const Int& x);
json ratJson(const Rat& x);
json vecJson(const IVec& v);

} // namespace latkit::io
