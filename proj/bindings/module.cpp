#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latkit/binform.hpp"
#include "latkit/embed.hpp"
#include "latkit/genus.hpp"
#include "latkit/hk.hpp"
#include "latkit/vinberg.hpp"

namespace py = pybind11;
using namespace latkit;

namespace {

// exact integers cross the boundary as python ints via strings
py::int_ pyInt(const Int& z) {
    PyObject* obj = PyLong_FromString(z.get_str().c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

Int intFrom(py::handle h) {
    return Int(py::str(h).cast<std::string>());
}

IVec vecFrom(py::handle seq) {
    IVec v;
    for (py::handle x : py::iter(seq)) v.push_back(intFrom(x));
    return v;
}

py::list vecTo(const IVec& v) {
    py::list out;
    for (const Int& x : v) out.append(pyInt(x));
    return out;
}

IntMat matFrom(py::handle seq) {
    std::vector<IVec> rows;
    for (py::handle r : py::iter(seq)) rows.push_back(vecFrom(r));
    int nr = static_cast<int>(rows.size());
    int nc = nr ? static_cast<int>(rows[0].size()) : 0;
    IntMat m(nr, nc);
    for (int i = 0; i < nr; ++i) {
        if (static_cast<int>(rows[i].size()) != nc)
            throw py::value_error("ragged matrix");
        for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

py::list matTo(const IntMat& m) {
    py::list out;
    for (int i = 0; i < m.rows(); ++i) out.append(vecTo(m.row(i)));
    return out;
}

std::vector<IntMat> matsFrom(py::handle seq) {
    std::vector<IntMat> out;
    for (py::handle x : py::iter(seq)) out.push_back(matFrom(x));
    return out;
}

py::dict screenTo(const ScreenReport& r) {
    py::dict d;
    d["free"] = r.free;
    if (r.witness) {
        d["witness"] = vecTo(*r.witness);
        d["witness_type"] = py::make_tuple(pyInt(r.witnessType->square),
                                           pyInt(r.witnessType->divisibility));
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_latkit, m) {
    m.doc() = "exact integral lattice computations";

    py::register_exception<Error>(m, "LatkitError");

    m.def("standard_lattice",
          [](const std::string& name) { return matTo(standardLattice(name).gram()); });
    m.def("k3n_lattice", [](long n) { return matTo(k3nLattice(Int(n)).gram()); });
    m.def("mukai_lattice", [] { return matTo(mukaiLattice().gram()); });

    m.def("lattice_info", [](py::handle gram) {
        Lattice l(matFrom(gram));
        py::dict d;
        d["rank"] = l.rank();
        d["even"] = l.even();
        auto [p, q] = l.signature();
        d["signature"] = py::make_tuple(p, q);
        d["det"] = pyInt(l.det());
        if (l.even()) {
            DiscriminantForm df(l);
            py::list inv;
            for (const Int& f : df.invariantFactors()) inv.append(pyInt(f));
            d["discriminant_invariants"] = inv;
        }
        return d;
    });

    m.def("smith_normal_form", [](py::handle mat) {
        SnfResult r = smithNormalForm(matFrom(mat));
        return py::make_tuple(matTo(r.s), matTo(r.u), matTo(r.v));
    });

    m.def("dual_basis", [](py::handle gram) {
        Lattice l(matFrom(gram));
        RatMat d = l.dualBasis();
        py::list rows;
        for (int i = 0; i < d.rows(); ++i) {
            py::list row;
            for (int j = 0; j < d.cols(); ++j) row.append(toString(d(i, j)));
            rows.append(row);
        }
        return rows;
    });

    m.def("divisibility", [](py::handle gram, py::handle v) {
        Lattice l(matFrom(gram));
        return pyInt(divisibility(vecFrom(v), l));
    });

    m.def("vector_type", [](py::handle gram, py::handle v) {
        Lattice l(matFrom(gram));
        VectorType t = vectorType(vecFrom(v), l);
        return py::make_tuple(pyInt(t.square), pyInt(t.divisibility));
    });

    m.def("short_vectors", [](py::handle gram, py::handle bound) {
        Lattice l(matFrom(gram));
        py::list out;
        for (const IVec& v : shortVectors(l, intFrom(bound))) out.append(vecTo(v));
        return out;
    });

    m.def("primitive_vectors_of_type",
          [](py::handle ambientGram, py::handle basisRows, py::handle square,
             py::handle div) {
              Lattice l(matFrom(ambientGram));
              Sublattice s = spanOf(l, matFrom(basisRows));
              py::list out;
              for (const IVec& v : primitiveVectorsOfType(s, intFrom(square), intFrom(div)))
                  out.append(vecTo(v));
              return out;
          });

    m.def("orthogonal_complement", [](py::handle ambientGram, py::handle basisRows) {
        Lattice l(matFrom(ambientGram));
        Sublattice c = orthogonalComplement(spanOf(l, matFrom(basisRows)));
        return py::make_tuple(matTo(c.basisRows), matTo(c.inducedGram()));
    });

    m.def("primitive_closure", [](py::handle ambientGram, py::handle basisRows) {
        Lattice l(matFrom(ambientGram));
        return matTo(primitiveClosure(spanOf(l, matFrom(basisRows))).basisRows);
    });

    m.def("is_isometric_definite", [](py::handle g1, py::handle g2) -> py::object {
        auto t = isIsometricDefinite(Lattice(matFrom(g1)), Lattice(matFrom(g2)));
        if (!t) return py::none();
        return matTo(*t);
    });

    m.def("discriminant_form", [](py::handle gram) {
        DiscriminantForm d(Lattice(matFrom(gram)));
        py::dict out;
        py::list inv, qs;
        for (const Int& f : d.invariantFactors()) inv.append(pyInt(f));
        for (int i = 0; i < d.ngens(); ++i) {
            DiscElem e = d.zero();
            e[i] = 1;
            qs.append(toString(d.q(e)));
        }
        out["invariant_factors"] = inv;
        out["q"] = qs;
        out["order"] = pyInt(d.order());
        return out;
    });

    m.def("disc_form_orthogonal_group_order", [](py::handle gram) {
        DiscriminantForm d(Lattice(matFrom(gram)));
        return pyInt(orthogonalGroupOfDiscForm(d).order());
    });

    m.def("genus_symbol", [](py::handle gram) {
        return genusSymbolToString(genusSymbol(Lattice(matFrom(gram))));
    });
    m.def("parse_genus_symbol", [](const std::string& s) {
        return genusSymbolToString(parseGenusSymbol(s));
    });
    m.def("same_genus", [](py::handle g1, py::handle g2) {
        return sameGenus(Lattice(matFrom(g1)), Lattice(matFrom(g2)));
    });

    m.def("hilbert_symbol", [](py::handle a, py::handle b, py::handle p) {
        return hilbertSymbol(Rat(intFrom(a)), Rat(intFrom(b)), intFrom(p));
    });
    m.def("is_isotropic_over_qp", [](py::handle gram, py::handle p) {
        return isIsotropicOverQp(Lattice(matFrom(gram)), intFrom(p));
    });
    m.def("contains_rescaled_u_necessary", [](py::handle gram) {
        return containsRescaledUNecessaryCondition(Lattice(matFrom(gram)));
    });
    m.def("twisted_moduli_obstruction", [](py::handle gram) {
        return twistedModuliObstruction(Lattice(matFrom(gram)));
    });

    m.def("even_overlattices", [](py::handle gram) {
        py::list out;
        for (const Overlattice& o : evenOverlattices(Lattice(matFrom(gram)))) {
            py::dict d;
            d["index"] = pyInt(o.index);
            d["gram"] = matTo(o.lattice.gram());
            out.append(d);
        }
        return out;
    });

    m.def("primitive_embeddings", [](py::handle mGram, py::handle lGram) {
        py::list out;
        for (const EmbeddingResult& e :
             primitiveEmbeddings(Lattice(matFrom(mGram)), Lattice(matFrom(lGram)))) {
            py::dict d;
            d["glue_index"] = pyInt(e.glueIndex);
            d["guarantee"] = e.guarantee == Guarantee::Exact ? "exact" : "genus-level";
            d["ambient_gram"] = matTo(e.ambient.gram());
            d["ambient_is_original"] = e.ambientIsOriginal;
            d["image"] = matTo(e.image);
            d["complement_gram"] = matTo(e.complement.gram());
            out.append(d);
        }
        return out;
    });

    m.def("real_spinor_norm", [](py::handle gram, py::handle g) {
        Lattice l(matFrom(gram));
        return realSpinorNorm(matFrom(g), l);
    });
    m.def("is_stable", [](py::handle gram, py::handle g) {
        Lattice l(matFrom(gram));
        return isStable(matFrom(g), l);
    });
    m.def("membership", [](py::handle gram, py::handle g) {
        Lattice l(matFrom(gram));
        MembershipFlags f = membership(matFrom(g), l);
        py::dict d;
        d["in_o_plus"] = f.inOPlus;
        d["in_o_sharp"] = f.inOSharp;
        d["in_o_tilde"] = f.inOTilde;
        return d;
    });

    m.def("invariant_coinvariant", [](py::handle gram, py::handle gens) {
        MatrixGroup g(Lattice(matFrom(gram)), matsFrom(gens));
        Sublattice inv = invariantSublattice(g);
        Sublattice co = coinvariantSublattice(g);
        py::dict d;
        d["invariant_basis"] = matTo(inv.basisRows);
        d["invariant_gram"] = matTo(inv.inducedGram());
        d["coinvariant_basis"] = matTo(co.basisRows);
        d["coinvariant_gram"] = matTo(co.inducedGram());
        return d;
    });

    m.def("automorphism_group_order", [](py::handle gram) {
        return pyInt(automorphismGroupDefinite(Lattice(matFrom(gram))).order());
    });
    m.def("stable_automorphism_group", [](py::handle gram) {
        MatrixGroup g = stableAutomorphismGroup(Lattice(matFrom(gram)));
        py::dict d;
        d["order"] = pyInt(g.order());
        py::list gens;
        for (const IntMat& x : g.generators()) gens.append(matTo(x));
        d["generators"] = gens;
        return d;
    });
    m.def("is_stably_saturated", [](py::handle gram, py::handle gens) {
        MatrixGroup g(Lattice(matFrom(gram)), matsFrom(gens));
        return isStablySaturated(g);
    });

    m.def("wall_check",
          [](py::handle ambientGram, py::handle basisRows, bool pexOnly) {
              Lattice l(matFrom(ambientGram));
              Sublattice c = spanOf(l, matFrom(basisRows));
              py::dict d;
              d["pex"] = screenTo(isPexFree(c));
              if (!pexOnly) d["wall"] = screenTo(isWallFree(c));
              return d;
          },
          py::arg("ambient_gram"), py::arg("basis_rows"), py::arg("pex_only") = false);

    m.def("classify_leech_pair", [](py::handle coinvGram, py::handle gens) {
        LeechPairInput input;
        input.coinvariantGram = matFrom(coinvGram);
        input.generators = matsFrom(gens);
        LeechPairReport rep = classifyLeechPair(input);
        py::list out;
        for (const ClassifiedEmbedding& ce : rep.orbits) {
            py::dict d;
            d["glue_index"] = pyInt(ce.embedding.glueIndex);
            if (ce.generatorDivisibility != 0)
                d["generator_divisibility"] = pyInt(ce.generatorDivisibility);
            d["pex_free"] = ce.pexFree;
            d["wall_free"] = ce.wallFree;
            d["pex"] = screenTo(ce.pex);
            d["wall"] = screenTo(ce.wall);
            if (ce.pexFree) {
                d["extended_order"] = pyInt(ce.extendedOrder);
                d["extended_stable"] = ce.extendedStable;
                d["wall_class_counts"] = py::make_tuple(pyInt(ce.wallCountMinus12Div2),
                                                        pyInt(ce.wallCountMinus36Div4));
            }
            d["complement_gram"] = matTo(ce.embedding.complement.gram());
            out.append(d);
        }
        return out;
    });

    m.def("fundamental_chamber",
          [](py::handle gram, py::handle controller, py::handle squares, bool perturb) {
              Lattice l(matFrom(gram));
              std::vector<Int> sq;
              for (py::handle x : py::iter(squares)) sq.push_back(intFrom(x));
              ChamberData cd = fundamentalChamber(l, vecFrom(controller), sq, perturb);
              py::dict d;
              d["complete"] = cd.complete;
              d["perturbed"] = cd.perturbed;
              py::list walls;
              for (const IVec& w : cd.walls) walls.append(vecTo(w));
              d["walls"] = walls;
              return d;
          },
          py::arg("gram"), py::arg("controller"), py::arg("squares"),
          py::arg("perturb") = false);
}
