#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "latkit/genus.hpp"
#include "latkit/io.hpp"
#include "latkit/vinberg.hpp"

using namespace latkit;
using latkit::io::json;

namespace {

IVec parseVec(const std::string& text, int rank) {
    IVec v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty()) continue;
        try {
            v.push_back(Int(tok));
        } catch (...) {
            fail("ParseError", "bad integer in vector: " + tok);
        }
    }
    require(static_cast<int>(v.size()) == rank, "ParseError",
            "vector has " + std::to_string(v.size()) + " entries, expected " +
                std::to_string(rank));
    return v;
}

std::vector<Int> parseIntList(const std::string& text) {
    std::vector<Int> v;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty()) continue;
        try {
            v.push_back(Int(tok));
        } catch (...) {
            fail("ParseError", "bad integer: " + tok);
        }
    }
    require(!v.empty(), "ParseError", "empty integer list");
    return v;
}

void emit(const json& j) { std::cout << io::canonicalDump(j); }

json signatureJson(const Lattice& l) {
    auto [p, q] = l.signature();
    return json::array({p, q});
}

json screenJson(const ScreenReport& rep) {
    json j;
    j["free"] = rep.free;
    if (rep.witness) {
        j["witness"] = io::vecJson(*rep.witness);
        j["witnessType"] =
            json::array({io::intJson(rep.witnessType->square),
                         io::intJson(rep.witnessType->divisibility)});
    }
    return j;
}

json genusJson(const GenusSymbol& s) {
    json j;
    j["signature"] = json::array({s.signaturePair.first, s.signaturePair.second});
    json locals = json::array();
    for (const auto& [p, cs] : s.localSymbols) {
        json entry;
        entry["prime"] = p.get_str();
        json parts = json::array();
        for (const auto& c : cs) {
            json pc;
            pc["valuation"] = c.valuation;
            pc["rank"] = c.rank;
            pc["eps"] = c.eps;
            if (p == 2) {
                pc["type"] = c.typeII ? "II" : "I";
                if (!c.typeII) pc["oddity"] = c.oddity;
            }
            parts.push_back(pc);
        }
        entry["constituents"] = parts;
        locals.push_back(entry);
    }
    j["local"] = locals;
    j["string"] = genusSymbolToString(s);
    return j;
}

WallSpec wallSpecFromOptions(const Int& n, const std::string& wallsFile) {
    if (!wallsFile.empty()) {
        json j = io::readJsonFile(wallsFile);
        WallSpec spec;
        for (const json& t : j.at("pex"))
            spec.pexTypes.push_back(VectorType{Int(static_cast<long>(t.at(0).get<long long>())),
                                               Int(static_cast<long>(t.at(1).get<long long>()))});
        spec.wallTypes = spec.pexTypes;
        for (const json& t : j.at("walls"))
            spec.wallTypes.push_back(VectorType{Int(static_cast<long>(t.at(0).get<long long>())),
                                                Int(static_cast<long>(t.at(1).get<long long>()))});
        return spec;
    }
    require(n == 3, "BadN", "built-in wall data covers n = 3 only; pass --walls FILE");
    return WallSpec::k3cube();
}

Sublattice sublatticeFromFiles(const std::string& latticeFile, const std::string& subFile) {
    io::ParsedLattice pl = io::readLatticeFile(latticeFile);
    require(!pl.sub.has_value() || subFile.empty(), "ParseError",
            "pass the sublattice either inline or via --sub, not both");
    if (pl.sub) return *pl.sub;
    require(!subFile.empty(), "ParseError", "this command needs a sublattice (--sub)");
    json sj = io::readJsonFile(subFile);
    IntMat basis = io::matFromJson(sj.contains("basis") ? sj.at("basis") : sj, "basis");
    return spanOf(pl.lattice, basis);
}

int runCli(int argc, char** argv) {
    CLI::App app{"exact integral lattice computations"};
    app.require_subcommand(1);

    // --- canon ---
    std::string canonFile;
    auto* cCanon = app.add_subcommand("canon", "reprint a document in canonical form");
    cCanon->add_option("file", canonFile)->required();
    cCanon->callback([&] {
        json j = io::readJsonFile(canonFile);
        // validate through the typed parsers before reprinting
        if (j.contains("coinvariantGram")) io::parseLeechPairJson(j);
        else if (j.contains("generators")) io::parseGroupJson(j);
        else io::parseLatticeJson(j);
        std::cout << io::canonicalDump(io::canonicalLatticeJson(j));
    });

    // --- info ---
    std::string infoFile;
    auto* cInfo = app.add_subcommand("info", "rank, parity, signature, determinant, D_L");
    cInfo->add_option("file", infoFile)->required();
    cInfo->callback([&] {
        io::ParsedLattice pl = io::readLatticeFile(infoFile);
        const Lattice& l = pl.lattice;
        json j;
        if (!pl.label.empty()) j["label"] = pl.label;
        j["rank"] = l.rank();
        j["even"] = l.even();
        j["signature"] = signatureJson(l);
        j["det"] = io::intJson(l.det());
        if (l.even()) {
            DiscriminantForm d(l);
            json inv = json::array();
            for (const Int& f : d.invariantFactors()) inv.push_back(f.get_str());
            j["discriminantGroup"] = json{{"order", io::intJson(d.order())},
                                          {"invariantFactors", inv}};
        }
        emit(j);
    });

    // --- disc ---
    std::string discFile;
    auto* cDisc = app.add_subcommand("disc", "discriminant form generators and q-values");
    cDisc->add_option("file", discFile)->required();
    cDisc->callback([&] {
        io::ParsedLattice pl = io::readLatticeFile(discFile);
        DiscriminantForm d(pl.lattice);
        json j;
        json inv = json::array();
        for (const Int& f : d.invariantFactors()) inv.push_back(f.get_str());
        j["invariantFactors"] = inv;
        json gens = json::array();
        json qs = json::array();
        for (int i = 0; i < d.ngens(); ++i) {
            DiscElem e = d.zero();
            e[i] = 1;
            QVec lift = d.lift(e);
            json row = json::array();
            for (const Rat& x : lift) row.push_back(toString(x));
            gens.push_back(row);
            qs.push_back(toString(d.q(e)));
        }
        j["generators"] = gens;
        j["q"] = qs;
        json bil = json::array();
        for (int i = 0; i < d.ngens(); ++i) {
            json row = json::array();
            for (int k = 0; k < d.ngens(); ++k) {
                DiscElem a = d.zero(), b = d.zero();
                a[i] = 1;
                b[k] = 1;
                row.push_back(toString(d.bil(a, b)));
            }
            bil.push_back(row);
        }
        j["bil"] = bil;
        emit(j);
    });

    // --- genus ---
    std::string genusFile;
    bool genusString = false;
    auto* cGenus = app.add_subcommand("genus", "Conway-Sloane genus symbol");
    cGenus->add_option("file", genusFile)->required();
    cGenus->add_flag("--string", genusString, "print only the symbol string");
    cGenus->callback([&] {
        io::ParsedLattice pl = io::readLatticeFile(genusFile);
        GenusSymbol s = genusSymbol(pl.lattice);
        if (genusString) {
            std::cout << genusSymbolToString(s) << "\n";
            return;
        }
        emit(genusJson(s));
    });

    // --- shorts ---
    std::string shortsFile;
    std::string shortsBound;
    auto* cShorts = app.add_subcommand("shorts", "short vectors up to |bound|");
    cShorts->add_option("file", shortsFile)->required();
    cShorts->add_option("--bound", shortsBound)->required();
    cShorts->callback([&] {
        io::ParsedLattice pl = io::readLatticeFile(shortsFile);
        std::vector<IVec> vs = shortVectors(pl.lattice, Int(shortsBound));
        json j;
        j["count"] = static_cast<long>(vs.size());
        json arr = json::array();
        for (const IVec& v : vs) arr.push_back(io::vecJson(v));
        j["vectors"] = arr;
        emit(j);
    });

    // --- typevecs ---
    std::string tvFile, tvSub, tvSquare, tvDiv;
    auto* cTv = app.add_subcommand("typevecs", "primitive vectors of a given (square, div)");
    cTv->add_option("file", tvFile)->required();
    cTv->add_option("--sub", tvSub);
    cTv->add_option("--square", tvSquare)->required();
    cTv->add_option("--div", tvDiv)->required();
    cTv->callback([&] {
        Sublattice sub = sublatticeFromFiles(tvFile, tvSub);
        std::vector<IVec> vs = primitiveVectorsOfType(sub, Int(tvSquare), Int(tvDiv));
        json j;
        j["referenceLattice"] = "ambient";
        j["count"] = static_cast<long>(vs.size());
        json arr = json::array();
        for (const IVec& v : vs) arr.push_back(io::vecJson(v));
        j["vectors"] = arr;
        emit(j);
    });

    // --- coinv ---
    std::string coinvFile;
    auto* cCoinv = app.add_subcommand("coinv", "invariant and coinvariant sublattices");
    cCoinv->add_option("file", coinvFile)->required();
    cCoinv->callback([&] {
        io::ParsedGroup pg = io::readGroupFile(coinvFile);
        Sublattice inv = invariantSublattice(pg.group);
        Sublattice coinv = coinvariantSublattice(pg.group);
        json j;
        j["invariant"] = json{{"basis", io::matToJson(inv.basisRows)},
                              {"gram", io::matToJson(inv.inducedGram())}};
        j["coinvariant"] = json{{"basis", io::matToJson(coinv.basisRows)},
                                {"gram", io::matToJson(coinv.inducedGram())}};
        emit(j);
    });

    // --- stable ---
    std::string stableFile;
    auto* cStable = app.add_subcommand("stable", "per-generator spinor and stability flags");
    cStable->add_option("file", stableFile)->required();
    cStable->callback([&] {
        io::ParsedGroup pg = io::readGroupFile(stableFile);
        json arr = json::array();
        for (const IntMat& g : pg.group.generators()) {
            MembershipFlags f = membership(g, pg.group.lattice());
            arr.push_back(json{{"spinor", f.inOPlus ? 1 : -1},
                               {"stable", f.inOSharp},
                               {"inOTilde", f.inOTilde}});
        }
        emit(json{{"generators", arr}});
    });

    // --- saturate ---
    std::string satFile, satCoinv;
    auto* cSat = app.add_subcommand("saturate", "stable saturation verdict");
    cSat->add_option("file", satFile)->required();
    cSat->add_option("--coinv", satCoinv, "sublattice file overriding L_G");
    cSat->callback([&] {
        io::ParsedGroup pg = io::readGroupFile(satFile);
        std::optional<Sublattice> over;
        if (!satCoinv.empty()) {
            json sj = io::readJsonFile(satCoinv);
            IntMat basis = io::matFromJson(sj.contains("basis") ? sj.at("basis") : sj, "basis");
            over = spanOf(pg.group.lattice(), basis);
        }
        Sublattice c = over ? *over : coinvariantSublattice(pg.group);
        bool ok = isStablySaturated(pg.group, over);
        json j;
        j["stablySaturated"] = ok;
        j["coinvariantGram"] = io::matToJson(c.inducedGram());
        if (c.rank() > 0) {
            Lattice cl = c.asLattice();
            std::vector<IntMat> restricted;
            for (const IntMat& m : pg.group.generators()) restricted.push_back(restrictTo(m, c));
            MatrixGroup image(cl, restricted);
            j["imageOrder"] = io::intJson(image.order());
            j["sharpOrder"] = io::intJson(stableAutomorphismGroup(cl).order());
        } else {
            j["imageOrder"] = "1";
            j["sharpOrder"] = "1";
        }
        emit(j);
    });

    // --- wallcheck ---
    std::string wcFile, wcSub, wcWalls;
    Int wcN = 3;
    std::string wcNs = "3";
    bool wcPexOnly = false;
    auto* cWc = app.add_subcommand("wallcheck", "pex/wall screening with witnesses");
    cWc->add_option("file", wcFile)->required();
    cWc->add_option("--sub", wcSub);
    cWc->add_option("--n", wcNs);
    cWc->add_option("--walls", wcWalls, "wall spec file overriding --n");
    cWc->add_flag("--pex-only", wcPexOnly);
    cWc->callback([&] {
        wcN = Int(wcNs);
        WallSpec spec = wallSpecFromOptions(wcN, wcWalls);
        json j;
        json fileJson = io::readJsonFile(wcFile);
        if (fileJson.contains("generators")) {
            io::ParsedGroup pg = io::parseGroupJson(fileJson);
            SymplecticReport rep = symplecticCheck(pg.group, spec);
            j["stable"] = rep.stable;
            j["negDefCoinv"] = rep.negDefCoinv;
            j["pex"] = screenJson(rep.pex);
            if (!wcPexOnly) j["wall"] = screenJson(rep.wall);
            j["symplectic"] = rep.symplectic;
        } else {
            Sublattice sub = sublatticeFromFiles(wcFile, wcSub);
            ScreenReport pex = isPexFree(sub, spec);
            j["pex"] = screenJson(pex);
            if (!wcPexOnly) {
                j["wall"] = screenJson(isWallFree(sub, spec));
                json counts;
                for (const VectorType& t : spec.wallTypes) {
                    std::string key = "(" + t.square.get_str() + "," +
                                      t.divisibility.get_str() + ")";
                    counts[key] = io::intJson(countClassesOfType(sub, t));
                }
                j["classCounts"] = counts;
                j["classCountConvention"] = "unordered sign pairs";
            }
        }
        j["referenceLattice"] = "ambient";
        emit(j);
    });

    // --- embed ---
    std::string emM, emL;
    auto* cEmbed = app.add_subcommand("embed", "primitive embedding orbit representatives");
    cEmbed->add_option("mfile", emM)->required();
    cEmbed->add_option("lfile", emL)->required();
    cEmbed->callback([&] {
        io::ParsedLattice m = io::readLatticeFile(emM);
        io::ParsedLattice l = io::readLatticeFile(emL);
        std::vector<EmbeddingResult> results = primitiveEmbeddings(m.lattice, l.lattice);
        json arr = json::array();
        for (const EmbeddingResult& e : results) {
            json r;
            r["guarantee"] = e.guarantee == Guarantee::Exact ? "exact" : "genus-level";
            r["glueIndex"] = io::intJson(e.glueIndex);
            r["ambientIsOriginal"] = e.ambientIsOriginal;
            r["ambientGram"] = io::matToJson(e.ambient.gram());
            r["image"] = io::matToJson(e.image);
            r["complementBasis"] = io::matToJson(e.complementRows);
            r["complementGram"] = io::matToJson(e.complement.gram());
            arr.push_back(r);
        }
        emit(json{{"count", static_cast<long>(results.size())}, {"embeddings", arr}});
    });

    // --- overlat ---
    std::string ovFile;
    auto* cOv = app.add_subcommand("overlat", "even overlattices");
    cOv->add_option("file", ovFile)->required();
    cOv->callback([&] {
        io::ParsedLattice pl = io::readLatticeFile(ovFile);
        std::vector<Overlattice> os = evenOverlattices(pl.lattice);
        json arr = json::array();
        for (const Overlattice& o : os) {
            json r;
            r["index"] = io::intJson(o.index);
            r["gram"] = io::matToJson(o.lattice.gram());
            json basis = json::array();
            for (int i = 0; i < o.basisInAmbient.rows(); ++i) {
                json row = json::array();
                for (int k = 0; k < o.basisInAmbient.cols(); ++k)
                    row.push_back(toString(o.basisInAmbient(i, k)));
                basis.push_back(row);
            }
            r["basisInAmbient"] = basis;
            arr.push_back(r);
        }
        emit(json{{"count", static_cast<long>(os.size())}, {"overlattices", arr}});
    });

    // --- vinberg ---
    std::string vbFile, vbController, vbSquares;
    bool vbPerturb = false;
    int vbScanWords = 0;
    std::string vbCap = "64";
    auto* cVb = app.add_subcommand("vinberg", "fundamental chamber walls");
    cVb->add_option("file", vbFile)->required();
    cVb->add_option("--controller", vbController)->required();
    cVb->add_option("--squares", vbSquares)->required();
    cVb->add_flag("--perturb", vbPerturb);
    cVb->add_option("--scan-words", vbScanWords);
    cVb->add_option("--cap", vbCap, "distance cap for rank >= 3");
    cVb->callback([&] {
        io::ParsedLattice pl = io::readLatticeFile(vbFile);
        IVec h = parseVec(vbController, pl.lattice.rank());
        std::vector<Int> squares = parseIntList(vbSquares);
        ChamberData cd =
            fundamentalChamber(pl.lattice, h, squares, vbPerturb, Rat(Int(vbCap)));
        json j;
        j["complete"] = cd.complete;
        j["perturbed"] = cd.perturbed;
        json walls = json::array();
        for (const IVec& w : cd.walls) walls.push_back(io::vecJson(w));
        j["walls"] = walls;
        json orth = json::array();
        for (const IVec& w : cd.walls) {
            IntMat row(1, pl.lattice.rank());
            for (int k = 0; k < pl.lattice.rank(); ++k) row(0, k) = w[k];
            Sublattice perp = orthogonalComplement(spanOf(pl.lattice, row));
            json o;
            o["generators"] = io::matToJson(perp.basisRows);
            o["gram"] = io::matToJson(perp.inducedGram());
            orth.push_back(o);
        }
        j["wallOrthogonals"] = orth;
        if (vbScanWords > 0) {
            WordScanReport rep = reflectionWordScan(cd, {}, vbScanWords);
            j["wordScan"] = json{
                {"wordsChecked", rep.wordsChecked},
                {"wordsMovingControllerOut", rep.wordsMovingControllerOut},
                {"allNonemptyWordsMoveControllerOut", rep.allNonemptyWordsMoveControllerOut}};
        }
        emit(j);
    });

    // --- isotropy ---
    std::string isoFile, isoP;
    bool isoAll = false;
    auto* cIso = app.add_subcommand("isotropy", "Q_p isotropy verdict");
    cIso->add_option("file", isoFile)->required();
    cIso->add_option("--p", isoP);
    cIso->add_flag("--all", isoAll, "necessary condition for containing U(k)");
    cIso->callback([&] {
        io::ParsedLattice pl = io::readLatticeFile(isoFile);
        json j;
        if (isoAll) {
            bool ok = containsRescaledUNecessaryCondition(pl.lattice);
            j["containsRescaledUNecessary"] = ok;
            j["obstructed"] = !ok;
            json places = json::object();
            places["inf"] = isIsotropicOverQp(pl.lattice, 0) ? "isotropic" : "anisotropic";
            for (const Int& p : primeFactors(2 * abs(pl.lattice.det())))
                places[p.get_str()] =
                    isIsotropicOverQp(pl.lattice, p) ? "isotropic" : "anisotropic";
            j["places"] = places;
        } else {
            require(!isoP.empty(), "ParseError", "pass --p PRIME or --all");
            Int p = (isoP == "inf") ? Int(0) : Int(isoP);
            bool iso = isIsotropicOverQp(pl.lattice, p);
            j["place"] = isoP;
            j["result"] = iso ? "isotropic" : "anisotropic";
        }
        emit(j);
    });

    // --- pipeline ---
    std::string plFile, plPolarize;
    auto* cPl = app.add_subcommand("pipeline", "Leech pair classification pipeline");
    cPl->add_option("file", plFile)->required();
    cPl->add_option("--polarize", plPolarize, "polarization type, e.g. 4,2");
    cPl->callback([&] {
        LeechPairInput input = io::readLeechPairFile(plFile);
        LeechPairReport rep = classifyLeechPair(input);
        json arr = json::array();
        for (const ClassifiedEmbedding& ce : rep.orbits) {
            json r;
            r["guarantee"] =
                ce.embedding.guarantee == Guarantee::Exact ? "exact" : "genus-level";
            r["glueIndex"] = io::intJson(ce.embedding.glueIndex);
            if (ce.generatorDivisibility != 0)
                r["generatorDivisibility"] = io::intJson(ce.generatorDivisibility);
            r["pex"] = screenJson(ce.pex);
            r["wall"] = screenJson(ce.wall);
            r["pexFree"] = ce.pexFree;
            r["wallFree"] = ce.wallFree;
            if (ce.pexFree) {
                r["wallClassCounts"] =
                    json{{"(-12,2)", io::intJson(ce.wallCountMinus12Div2)},
                         {"(-36,4)", io::intJson(ce.wallCountMinus36Div4)}};
                json gens = json::array();
                for (const IntMat& g : ce.extendedGenerators) gens.push_back(io::matToJson(g));
                r["extendedGroup"] = json{{"order", io::intJson(ce.extendedOrder)},
                                          {"generators", gens},
                                          {"stable", ce.extendedStable},
                                          {"fixesComplement", ce.extendedFixesComplement}};
            }
            r["complementGram"] = io::matToJson(ce.embedding.complement.gram());
            if (!plPolarize.empty()) {
                std::vector<Int> pol = parseIntList(plPolarize);
                require(pol.size() == 2, "ParseError", "--polarize expects square,div");
                try {
                    json entries = json::array();
                    for (const PolarizedEntry& pe :
                         polarizedReport(ce, VectorType{pol[0], pol[1]})) {
                        entries.push_back(
                            json{{"vector", io::vecJson(pe.vector)},
                                 {"transcendentalGram", io::matToJson(pe.transcendental)}});
                    }
                    r["polarized"] = entries;
                } catch (const Error& e) {
                    r["polarized"] = json{{"skipped", e.code()}};
                }
            }
            arr.push_back(r);
        }
        emit(json{{"label", rep.label},
                  {"orbitCount", static_cast<long>(rep.orbits.size())},
                  {"orbits", arr}});
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage problems are parse errors
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return runCli(argc, argv);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        std::string code = e.code();
        return (code == "ParseError" || code == "IoError") ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
