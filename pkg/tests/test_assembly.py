import random

import pytest
from hypothesis import given, settings, strategies as st

from smalekit.assembly import (
    ATTRACTOR,
    REPELLER,
    GluingError,
    GluingSpec,
    derive_piece,
    transit_digraph,
    validate_gluing,
)
from smalekit.fatgraph import NotAdmissible, build_fatgraph
from smalekit.io import InputError, gluing_from_dict, load_fatgraph, load_gluing
from smalekit.random_models import random_assembly


def sphere_piece(name="X"):
    return derive_piece(load_fatgraph("sphere8.json"), name=name)


def test_sphere_piece():
    p = sphere_piece()
    assert p.prongs == (4, 4)
    assert len(p.annuli) == 8
    assert [t.polarity for t in p.tori].count("outgoing") == 4
    assert p.torus("T1").polarity == "outgoing"


def test_non_admissible_piece():
    fg = build_fatgraph([["a0", "b0", "c0"], ["c1", "b1", "a1"]], [("a0", "a1"), ("b0", "b1"), ("c0", "c1")])
    with pytest.raises(NotAdmissible):
        derive_piece(fg)


def test_closures_intersect_plugs():
    g = load_gluing("closures_intersect.json")
    p = g.piece("X")
    names = lambda keys: sorted(p.torus(k[1]).name for k in keys)
    assert names(g.attractors) == ["T3", "T7"]
    assert names(g.repellers) == ["T4", "T8"]
    assert g.is_closed


def test_torus_closes_without_plugs():
    g = load_gluing("chainrec_nontransitive.json")
    assert not g.attractors and not g.repellers


def test_polarity_error():
    with pytest.raises(GluingError, match="both outgoing"):
        validate_gluing([sphere_piece()], GluingSpec(((("X", "T1"), ("X", "T3")),)))


def test_double_use_error():
    spec = GluingSpec(((("X", "T1"), ("X", "T2")), (("X", "T3"), ("X", "T2"))))
    with pytest.raises(GluingError, match="already used"):
        validate_gluing([sphere_piece()], spec)


def test_dangling_reference():
    with pytest.raises(GluingError, match="unknown"):
        validate_gluing([sphere_piece()], GluingSpec(((("X", "T1"), ("Y", "T2")),)))
    with pytest.raises(GluingError, match="unknown torus"):
        validate_gluing([sphere_piece()], GluingSpec(((("X", "T1"), ("X", "T9")),)))


def test_reversed_match_is_normalised():
    a = validate_gluing([sphere_piece()], GluingSpec(((("X", "T2"), ("X", "T1")),)))
    b = validate_gluing([sphere_piece()], GluingSpec(((("X", "T1"), ("X", "T2")),)))
    assert a.gluing.matches == b.gluing.matches


def test_bad_gluing_file():
    with pytest.raises(InputError):
        gluing_from_dict({"pieces": ["sphere8.json"], "matches": [["T1", "X.T2"]]})
    with pytest.raises(InputError):
        gluing_from_dict({"pieces": [], "matches": "nope"})


def test_transit_closures_intersect():
    td = transit_digraph(load_gluing("closures_intersect.json"))
    assert len(td) == 8 + 4
    assert td.successors("X.e1") == ["X.e2", "X.e3"]
    assert td.successors("X.e2") == ["X.e2", "X.e3"]
    assert td.successors("X.e3") == ["A[X.T3]"]
    assert td.successors("R[X.T8]") == ["X.e1", "X.e8"]
    assert td.predecessors("X.e1") == ["R[X.T8]"]


def _expected_edges(g):
    """Count transit edges straight from the pieces and the gluing."""
    glue = dict(g.gluing.matches)
    reading = {}
    for p in g.pieces:
        for a in p.annuli:
            reading[(p.name, a.in_loop)] = reading.get((p.name, a.in_loop), 0) + 1
    n = 0
    for p in g.pieces:
        for a in p.annuli:
            out = (p.name, a.out_loop)
            n += reading.get(glue[out], 0) if out in glue else 1
    return n + sum(reading.get(k, 0) for k in g.repellers)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_transit_shape(seed):
    g = random_assembly(random.Random(seed))
    td = transit_digraph(g)
    assert g.is_closed
    assert td.num_edges == _expected_edges(g)
    assert len(td) == sum(len(p.annuli) for p in g.pieces) + len(g.attractors) + len(g.repellers)
    for n in td.nodes:
        if n.kind == ATTRACTOR:
            assert td.succ[n.index] == []
        if n.kind == REPELLER:
            assert td.predecessors(n.id) == []
    # every annulus leaves somewhere
    for n in td.annuli():
        assert td.succ[n.index]
