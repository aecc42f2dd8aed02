"""Golden assemblies and the properties they are expected to have.

Each runner loads its packaged gluing file, computes the decomposition and
returns a list of named checks; the CLI and the tests share them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .assembly import transit_digraph
from .fatgraph import boundary_components, check_admissibility, surface_invariants
from .io import load_fatgraph, load_gluing
from .smale import EQUAL_SETS, INCOMPARABLE, LESS, STRICTLY_LARGER, nonwandering_vs_chainrecurrent, smale_classes


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _sphere_checks(fg) -> list[Check]:
    rep = check_admissibility(fg)
    loops = boundary_components(fg)
    parts = [rep.partition[lp.index] for lp in loops] if rep.partition else []
    alternating = all(parts[i] != parts[(i + 1) % len(parts)] for i in range(len(parts)))
    return [
        Check("admissible", rep.accepting, "; ".join(rep.failures())),
        Check("8 boundary loops", len(loops) == 8, str(len(loops))),
        Check("4+4 alternating partition", parts.count("outgoing") == 4 and alternating, str(parts)),
        Check("all loops even", all(lp.side_count % 2 == 0 for lp in loops)),
    ]


def closures_intersect() -> tuple[list[Check], object]:
    checks = _sphere_checks(load_fatgraph("sphere8.json"))
    td = transit_digraph(load_gluing("closures_intersect.json"))
    dec = smale_classes(td)
    rec = [[td.nodes[i].id for i in c.members] for c in dec.recurrent_annulus_classes()]
    checks.append(Check("recurrent annulus classes are {Q12}, {Q56}", rec == [["X.e2"], ["X.e6"]], str(rec)))
    a, b = dec.class_containing("X.e2"), dec.class_containing("X.e6")
    checks.append(Check("Q12 and Q56 incomparable", dec.compare(a, b) == INCOMPARABLE, dec.compare(a, b)))
    both = {"X.pN", "X.pS"}
    checks.append(Check("both 4-prongs in closure of each", dec.prong_closures[a] == both == dec.prong_closures[b]))
    r8, a3 = dec.class_containing("R[X.T8]"), dec.class_containing("A[X.T3]")
    checks.append(Check("R@T8 <= Q12 <= A@T3", dec.leq(r8, a) and dec.leq(a, a3)))
    checks.append(Check("Q12 and Q56 share a chain class", dec.chain_class_of(a) == dec.chain_class_of(b)))
    verdict = nonwandering_vs_chainrecurrent(dec)
    checks.append(Check("non-wandering = chain-recurrent", verdict == EQUAL_SETS, verdict))
    return checks, dec


def chainrec_gt_nonwandering() -> tuple[list[Check], object]:
    td = transit_digraph(load_gluing("chainrec_gt_nonwandering.json"))
    dec = smale_classes(td)
    c = {k: dec.class_containing(v) for k, v in
         (("12", "X.e2"), ("56", "X.e6"), ("12'", "X'.e2"), ("56'", "X'.e6"))}
    checks = [
        Check("Q23 -> {e1', e8'}", td.successors("X.e3") == ["X'.e1", "X'.e8"], str(td.successors("X.e3"))),
        Check("e8' -> {e4, e5}", td.successors("X'.e8") == ["X.e4", "X.e5"], str(td.successors("X'.e8"))),
        Check("L12 < L12'", dec.compare(c["12"], c["12'"]) == LESS),
        Check("L56' < L56", dec.compare(c["56'"], c["56"]) == LESS),
    ]
    p, pp = {"X.pN", "X.pS"}, {"X'.pN", "X'.pS"}
    checks += [
        Check("pN, pS in closure(L12)", p <= dec.prong_closures[c["12"]]),
        Check("pN, pS in closure(L56)", p <= dec.prong_closures[c["56"]]),
        Check("pN', pS' in closure(L12')", pp <= dec.prong_closures[c["12'"]]),
        Check("pN', pS' in closure(L56')", pp <= dec.prong_closures[c["56'"]]),
    ]
    ccs = {dec.chain_class_of(x) for x in c.values()}
    checks.append(Check("one chain class holds all four", len(ccs) == 1))
    extra = [[td.nodes[i].id for i in k.members] for k in dec.recurrent_annulus_classes()
             if k.index not in c.values()]
    checks.append(Check("extra recurrent class {e4, e8'} reported", extra == [["X.e4", "X'.e8"]], str(extra)))
    verdict = nonwandering_vs_chainrecurrent(dec)
    checks.append(Check("chain-recurrent strictly larger", verdict == STRICTLY_LARGER, verdict))
    return checks, dec


def chainrec_nontransitive() -> tuple[list[Check], object]:
    fg = load_fatgraph("torus8.json")
    chi, g, b = surface_invariants(fg)
    rep = check_admissibility(fg)
    glued = load_gluing("chainrec_nontransitive.json")
    td = transit_digraph(glued)
    dec = smale_classes(td)
    checks = [
        Check("admissible", rep.accepting, "; ".join(rep.failures())),
        Check("4 vertices, chi = -8, genus 1, 8 loops", (fg.num_vertices, chi, g, b) == (4, -8, 1, 8), str((fg.num_vertices, chi, g, b))),
        Check("closed with zero plugs", glued.is_closed and not glued.attractors and not glued.repellers),
        Check("exactly 2 Smale classes", len(dec.classes) == 2, str(len(dec.classes))),
    ]
    if len(dec.classes) == 2:
        top, bot = dec.class_containing("Y.c1"), dec.class_containing("Y.d1")
        checks.append(Check("top -> bottom only", dec.compare(top, bot) == LESS, dec.compare(top, bot)))
        allp = {"Y.x", "Y.y", "Y.z", "Y.w"}
        checks.append(Check("all four prongs in both closures",
                            dec.prong_closures[top] == allp == dec.prong_closures[bot]))
    annuli = [n.index for n in td.annuli()]
    checks.append(Check("every annulus chain-recurrent", sorted(dec.chain_recurrent) == annuli))
    return checks, dec


GOLDEN = {
    "closures-intersect": closures_intersect,
    "chainrec-gt-nonwandering": chainrec_gt_nonwandering,
    "chainrec-nontransitive": chainrec_nontransitive,
}

