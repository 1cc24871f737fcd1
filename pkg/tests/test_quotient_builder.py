"""Finite quotients mod m, Davis-style cells, thickening, certificates."""

import pytest

from srcox.complex_core import SimplicialComplex, bits_of, gen_cycle
from srcox.errors import DomainError, ResourceError
from srcox.quotient_builder import (
    ConstructionRejected,
    image_group,
    quotient_complex,
    s_construction,
    thicken,
)
from srcox.racg import build_system, evaluate_word


@pytest.fixture
def free_rep(two_points):
    return build_system(two_points)


def test_image_group_orders(free_rep):
    # D_infty surjects onto D_m for odd m: order 2m
    for m in (3, 5, 7, 9, 11):
        assert image_group(free_rep, m).order == 2 * m
    # mod 2 both generators die
    assert image_group(free_rep, 2).order == 1


def test_image_group_single_vertex():
    rep = build_system(SimplicialComplex.from_facets([], ["a"]))
    g = image_group(rep, 3)
    assert g.order == 2


def test_image_group_ops(free_rep):
    g = image_group(free_rep, 5)
    for i in range(g.order):
        inv = g.inverse(i)
        assert g.product(i, inv) == 0
        assert g.product(inv, i) == 0
    # words compose through the group table
    w = (0, 1, 0)
    assert g.word_image(w) == g.product(
        g.product(g.word_image((0,)), g.word_image((1,))),
        g.word_image((0,)))


def test_image_group_budget(free_rep):
    with pytest.raises(ResourceError):
        image_group(free_rep, 101, budget=10)


def test_quotient_cells_ten_cycle(free_rep):
    g = image_group(free_rep, 5)
    q = quotient_complex(free_rep, g)
    assert q.coset_sizes_ok
    verts = q.cells_of_face(0)
    edges = [es for t, es in q.cells if t != 0]
    assert len(verts) == 10 and len(edges) == 10
    assert all(len(es) == 1 for es in verts)
    assert all(len(es) == 2 for es in edges)
    # empty-face cells come first, one per group element in index order
    assert [min(es) for es in verts] == list(range(10))


def test_quotient_rejects_foreign_rep(free_rep):
    other = build_system(SimplicialComplex.from_facets([], ["x", "y"]))
    g = image_group(free_rep, 5)
    with pytest.raises(DomainError):
        quotient_complex(other, g)


def test_thicken_ten_cycle(free_rep):
    g = image_group(free_rep, 5)
    out = thicken(quotient_complex(free_rep, g))
    assert out.n == 10
    assert out.labels == tuple(f"g{i}" for i in range(10))
    rep = out.largeness()
    assert rep.flag and rep.shortest_induced_cycle == 10


def test_thicken_one_chamber():
    # trivial image group: a single chamber collapses to one vertex
    rep = build_system(SimplicialComplex.from_facets([], ["a"]))
    g = image_group(rep, 2)
    assert g.order == 1
    q = quotient_complex(rep, g)
    out = thicken(q)
    assert out.n == 1 and out.facets == (1,)


def test_s_construction_pilot(two_points):
    out, cert = s_construction(two_points, 4, m=5)
    assert cert.emitted and cert.displacement_status == "CERTIFIED"
    assert cert.torsion_free and cert.link_check and cert.largeness_ok
    assert cert.group_order == 10
    assert out.n == 10
    # every vertex link is the face complex of the input: two points
    for v in range(out.n):
        lk = out.link([v])
        assert sorted(len(bits_of(f)) for f in lk.facets) == [1, 1]
    hashes = set(cert.link_hashes.values())
    assert len(cert.link_hashes) == 10 and len(hashes) == 1


def test_s_construction_default_modulus(two_points):
    out, cert = s_construction(two_points, 4)
    assert cert.m == 27 and cert.emitted
    assert out.n == 54
    assert out.largeness().shortest_induced_cycle == 54


def test_s_construction_rejects_mod2(two_points):
    with pytest.raises(ConstructionRejected) as exc:
        s_construction(two_points, 4, m=2)
    cert = exc.value.certificate
    assert cert.torsion_free is False
    assert cert.displacement_status == "COUNTEREXAMPLE"
    assert exc.value.exit_code == 4


def test_s_construction_rejects_pentagon_mod5(pentagon):
    with pytest.raises(ConstructionRejected) as exc:
        s_construction(pentagon, 5, m=5)
    cert = exc.value.certificate
    assert cert.displacement_status == "COUNTEREXAMPLE"
    assert cert.torsion_free is True  # the girth gate failed, not torsion
    word = cert.counterexample
    rep = build_system(pentagon)
    assert evaluate_word(rep, word, mod=5).is_identity()
    assert not evaluate_word(rep, word).is_identity()


def test_s_construction_rejects_non_large(octahedron, rp2):
    with pytest.raises(DomainError):
        s_construction(octahedron, 5)   # only 4-large
    with pytest.raises(DomainError):
        s_construction(rp2, 4)          # not flag
    with pytest.raises(DomainError):
        s_construction(gen_cycle(5), 4, m=1)


def test_s_construction_undecided_carries_certificate(two_points):
    with pytest.raises(ResourceError) as exc:
        s_construction(two_points, 4, m=5, ball_budget=5)
    cert = exc.value.certificate
    assert cert.displacement_status == "UNDECIDED"
    assert not cert.emitted


def test_certificate_serialization(two_points):
    _, cert = s_construction(two_points, 4, m=5)
    d = cert.to_dict()
    assert d["k"] == 4 and d["m"] == 5
    assert d["displacement_status"] == "CERTIFIED"
    assert set(d["link_hashes"]) == {str(i) for i in range(10)} or \
        set(d["link_hashes"]) == set(range(10))
