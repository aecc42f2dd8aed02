import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import check_against_oracle, check_order_axioms
from smalekit.assembly import GluingSpec, derive_piece, transit_digraph, validate_gluing
from smalekit.examples import GOLDEN
from smalekit.io import load_fatgraph, load_gluing
from smalekit.random_models import random_assembly
from smalekit.smale import (
    EQUAL,
    EQUAL_SETS,
    GREATER,
    INCOMPARABLE,
    LESS,
    STRICTLY_LARGER,
    chain_recurrence,
    closure_prongs,
    compare,
    nonwandering_vs_chainrecurrent,
    report,
    smale_classes,
    smale_order,
)


def decomposition(name):
    return smale_classes(transit_digraph(load_gluing(name)))


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_checks(name):
    checks, _ = GOLDEN[name]()
    bad = [c for c in checks if not c.ok]
    assert not bad, bad


def test_closures_intersect_details():
    dec = decomposition("closures_intersect.json")
    assert len(dec.classes) == 6
    assert sum(c.is_plug for c in dec.classes) == 4
    a, b = dec.class_containing("X.e2"), dec.class_containing("X.e6")
    assert compare(dec, a, b) == INCOMPARABLE
    r8, a3 = dec.class_containing("R[X.T8]"), dec.class_containing("A[X.T3]")
    assert compare(dec, r8, a) == LESS and compare(dec, a3, a) == GREATER
    assert compare(dec, a, a) == EQUAL
    assert closure_prongs(dec)[a] == {"X.pN", "X.pS"}
    for c in dec.classes:
        if c.is_plug:
            assert closure_prongs(dec)[c.index] == frozenset()
    classes, annuli = chain_recurrence(dec)
    assert annuli == dec.nonwandering_annuli()
    assert nonwandering_vs_chainrecurrent(dec) == EQUAL_SETS


def test_two_copy_details():
    dec = decomposition("chainrec_gt_nonwandering.json")
    extra = dec.class_containing("X.e4")
    assert dec.class_containing("X'.e8") == extra
    assert nonwandering_vs_chainrecurrent(dec) == STRICTLY_LARGER
    _, annuli = chain_recurrence(dec)
    assert set(dec.nonwandering_annuli()) < set(annuli)


def test_torus_order():
    dec = decomposition("chainrec_nontransitive.json")
    assert smale_order(dec) == [(0, 1)]
    assert nonwandering_vs_chainrecurrent(dec) == STRICTLY_LARGER


def test_all_plugged_piece():
    g = validate_gluing([derive_piece(load_fatgraph("sphere8.json"), name="X")], GluingSpec(()))
    dec = smale_classes(transit_digraph(g))
    assert dec.recurrent_annulus_classes() == []
    assert len(dec.wandering) == 8
    assert nonwandering_vs_chainrecurrent(dec) == EQUAL_SETS


def test_unknown_class():
    dec = decomposition("closures_intersect.json")
    with pytest.raises(KeyError):
        dec.compare(0, 99)
    with pytest.raises(KeyError):
        dec.class_containing("X.e1")  # wandering


def test_report_is_plain_data():
    import json

    rep = report(decomposition("chainrec_gt_nonwandering.json"))
    assert json.loads(json.dumps(rep)) == rep


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_random_assemblies(seed):
    dec = smale_classes(transit_digraph(random_assembly(random.Random(seed))))
    check_order_axioms(dec)
    if len(dec.digraph) <= 40:
        check_against_oracle(dec)
    # chain-recurrent annuli always contain the non-wandering ones
    assert set(dec.nonwandering_annuli()) <= set(dec.chain_recurrent)


@pytest.mark.parametrize("name", ["closures_intersect.json", "chainrec_gt_nonwandering.json", "chainrec_nontransitive.json"])
def test_golden_against_oracle(name):
    dec = decomposition(name)
    check_order_axioms(dec)
    check_against_oracle(dec)
