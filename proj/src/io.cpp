#include "latkit/io.hpp"

#include <fstream>
#include <sstream>

namespace latkit::io {

namespace {

[[noreturn]] void parseFail(const std::string& what) { fail("ParseError", what); }

Int intFromJson(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (...) {
            parseFail(what + ": bad integer string");
        }
    }
    parseFail(what + ": expected an integer (number or string)");
}

} // namespace

IntMat matFromJson(const json& j, const std::string& what) {
    if (!j.is_array()) parseFail(what + ": expected an array of rows");
    int rows = static_cast<int>(j.size());
    int cols = rows ? static_cast<int>(j.at(0).size()) : 0;
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            parseFail(what + ": ragged matrix rows");
        for (int k = 0; k < cols; ++k) m(i, k) = intFromJson(row.at(k), what);
    }
    return m;
}

json matToJson(const IntMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            const Int& x = m(i, j);
            if (x.fits_slong_p()) row.push_back(x.get_si());
            else row.push_back(x.get_str());
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

Lattice ambientFromJson(const json& j) {
    if (j.is_string()) {
        std::string name = j.get<std::string>();
        if (name == "K3n2") return k3nLattice(2);
        if (name == "K3n3") return k3nLattice(3);
        if (name == "Mukai") return mukaiLattice();
        try {
            return standardLattice(name);
        } catch (const Error&) {
            parseFail("unknown ambient lattice name: " + name);
        }
    }
    if (j.is_object() && j.contains("gram"))
        return Lattice(matFromJson(j.at("gram"), "ambient.gram"));
    if (j.is_array()) return Lattice(matFromJson(j, "ambient"));
    parseFail("ambient must be a name, a gram array, or an object with 'gram'");
}

} // namespace

ParsedLattice parseLatticeJson(const json& j) {
    if (!j.is_object()) parseFail("lattice document must be a JSON object");
    ParsedLattice out;
    if (j.contains("label")) out.label = j.at("label").get<std::string>();
    if (j.contains("ambient")) {
        if (!j.contains("basis")) parseFail("'ambient' requires 'basis'");
        Lattice amb = ambientFromJson(j.at("ambient"));
        IntMat basis = matFromJson(j.at("basis"), "basis");
        if (basis.cols() != amb.rank()) parseFail("basis rows must match the ambient rank");
        Sublattice sub = spanOf(amb, basis);
        out.sub = sub;
        out.lattice = Lattice(sub.inducedGram(), out.label);
        return out;
    }
    if (!j.contains("gram")) parseFail("lattice document needs 'gram' or 'ambient'+'basis'");
    out.lattice = Lattice(matFromJson(j.at("gram"), "gram"), out.label);
    return out;
}

ParsedGroup parseGroupJson(const json& j) {
    if (!j.is_object()) parseFail("group document must be a JSON object");
    if (!j.contains("lattice")) parseFail("group document needs 'lattice'");
    ParsedLattice pl = j.at("lattice").is_string()
                           ? readLatticeFile(j.at("lattice").get<std::string>())
                           : parseLatticeJson(j.at("lattice"));
    if (!j.contains("generators")) parseFail("group document needs 'generators'");
    std::vector<IntMat> gens;
    for (const json& g : j.at("generators")) gens.push_back(matFromJson(g, "generator"));
    std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";
    const Lattice& acting = pl.sub ? pl.sub->ambient : pl.lattice;
    ParsedGroup out{MatrixGroup(acting, gens), pl.sub, label};
    return out;
}

LeechPairInput parseLeechPairJson(const json& j) {
    if (!j.is_object()) parseFail("Leech pair document must be a JSON object");
    LeechPairInput input;
    if (j.contains("coinvariantGram"))
        input.coinvariantGram = matFromJson(j.at("coinvariantGram"), "coinvariantGram");
    else if (j.contains("lattice") && j.at("lattice").is_object() &&
             j.at("lattice").contains("gram"))
        input.coinvariantGram = matFromJson(j.at("lattice").at("gram"), "lattice.gram");
    else
        parseFail("Leech pair document needs 'coinvariantGram'");
    if (!j.contains("generators")) parseFail("Leech pair document needs 'generators'");
    for (const json& g : j.at("generators"))
        input.generators.push_back(matFromJson(g, "generator"));
    if (j.contains("label")) input.label = j.at("label").get<std::string>();
    return input;
}

json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("ParseError", std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

ParsedLattice readLatticeFile(const std::string& path) {
    return parseLatticeJson(readJsonFile(path));
}

ParsedGroup readGroupFile(const std::string& path) {
    return parseGroupJson(readJsonFile(path));
}

LeechPairInput readLeechPairFile(const std::string& path) {
    return parseLeechPairJson(readJsonFile(path));
}

std::string canonicalDump(const json& j) { return j.dump(2) + "\n"; }

json canonicalLatticeJson(const json& j) {
    json out = json::object();
    if (j.contains("label")) out["label"] = j.at("label");
    if (j.contains("gram")) out["gram"] = matToJson(matFromJson(j.at("gram"), "gram"));
    if (j.contains("ambient")) {
        const json& a = j.at("ambient");
        if (a.is_string()) out["ambient"] = a;
        else out["ambient"] = json{{"gram", matToJson(matFromJson(
                                                a.is_object() ? a.at("gram") : a, "ambient"))}};
        out["basis"] = matToJson(matFromJson(j.at("basis"), "basis"));
    }
    if (j.contains("generators")) {
        json gens = json::array();
        for (const json& g : j.at("generators")) gens.push_back(matToJson(matFromJson(g, "generator")));
        out["generators"] = gens;
    }
    if (j.contains("lattice")) out["lattice"] = canonicalLatticeJson(j.at("lattice"));
    if (j.contains("coinvariantGram"))
        out["coinvariantGram"] = matToJson(matFromJson(j.at("coinvariantGram"), "coinvariantGram"));
    return out;
}

json intJson(const Int& x) { return json(x.get_str()); }

json ratJson(const Rat& x) { return json(toString(x)); }

json vecJson(const IVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(x.get_str());
    return a;
}

} // namespace latkit::io
