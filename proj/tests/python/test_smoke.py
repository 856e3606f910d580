import pytest

import latkit


def test_lattice_info():
    info = latkit.lattice_info(latkit.standard_lattice("E8"))
    assert info["rank"] == 8
    assert info["even"]
    assert info["signature"] == (0, 8)
    assert info["det"] == 1

    k3 = latkit.lattice_info(latkit.k3n_lattice(3))
    assert k3["signature"] == (3, 20)
    assert k3["det"] == 4
    assert k3["discriminant_invariants"] == [4]


def test_short_vectors_and_types():
    a2 = latkit.standard_lattice("A2")
    assert len(latkit.short_vectors(a2, -2)) == 3
    assert len(latkit.short_vectors(latkit.standard_lattice("E8"), 2)) == 120

    k3 = latkit.k3n_lattice(3)
    h = [0] * 23
    h[0], h[1], h[22] = 2, 2, 1
    assert latkit.vector_type(k3, h) == (4, 2)


def test_genus_and_locals():
    assert latkit.genus_symbol(latkit.standard_lattice("E8")) == "II_(0,8)"
    assert latkit.genus_symbol(latkit.k3n_lattice(3)) == "II_(3,20)4^1_7"
    s = "II_(1,21)4^1_1 3^1 5^1 7^1"
    assert latkit.parse_genus_symbol(s) == s
    n = [[4, 2, -2], [2, -2, -1], [-2, -1, 2]]
    assert not latkit.is_isotropic_over_qp(n, 2)
    assert latkit.twisted_moduli_obstruction(n)
    assert latkit.hilbert_symbol(-1, -1, 0) == -1


def test_embeddings_and_overlattices():
    over = latkit.even_overlattices([[4, 0], [0, -12]])
    assert [o["index"] for o in over] == [1, 2]

    res = latkit.primitive_embeddings([[-2]], latkit.standard_lattice("U"))
    assert len(res) == 1
    assert res[0]["complement_gram"] == [[2]]


def test_wall_screening_and_pipeline():
    k3 = latkit.k3n_lattice(3)
    row = [[0] * 23]
    row[0][22] = 1
    rep = latkit.wall_check(k3, row)
    assert not rep["pex"]["free"]
    assert rep["pex"]["witness_type"] == (-4, 4)

    orbits = latkit.classify_leech_pair([[-4]], [[[-1]]])
    assert len(orbits) == 3
    assert sorted(o["generator_divisibility"] for o in orbits) == [1, 2, 4]
    assert sum(1 for o in orbits if o["pex_free"]) == 1


def test_vinberg():
    cd = latkit.fundamental_chamber([[4, 2], [2, -2]], [1, 0], [-2])
    assert cd["complete"]
    assert sorted(map(tuple, cd["walls"])) == [(0, 1), (1, -1)]


def test_errors_are_typed():
    with pytest.raises(latkit.LatkitError):
        latkit.lattice_info([[1, 2], [2, 4]])  # degenerate
