"""Smale classes, the Smale order, closures and chain recurrence.

Conventions:

* A recurrent class is a strongly connected set of annuli that carries a
  directed cycle (size > 1, or a self-loop). Every plug is its own class.
* ``c1 <= c2`` iff some transit path runs from ``c1`` to ``c2``. Orbits flow
  upward, so attractor plugs are maximal and repeller plugs minimal.
* The closure of an annulus class contains the periodic orbits bounding its
  annuli. Chain recurrence adds two-way jumps between classes whose
  closures share an orbit; an annulus is chain-recurrent iff it lies on a
  cycle of that augmented graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .assembly import ANNULUS, ATTRACTOR, REPELLER, TransitDigraph

LESS = "less"
GREATER = "greater"
EQUAL = "equal"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class SmaleClass:
    index: int
    members: tuple[int, ...]
    kind: str  # annulus, attractor or repeller

    @property
    def is_plug(self) -> bool:
        return self.kind != ANNULUS


@dataclass
class SmaleDecomposition:
    digraph: TransitDigraph
    classes: list[SmaleClass]
    wandering: list[int]
    class_of: dict[int, int]
    reach: list[frozenset[int]]
    closures: dict[int, frozenset[str]]
    prong_closures: dict[int, frozenset[str]]
    chain_classes: list[tuple[int, ...]]
    chain_recurrent: list[int]

    def label(self, c: int) -> str:
        return "{" + ", ".join(self.digraph.nodes[i].id for i in self.classes[c].members) + "}"

    def class_containing(self, node_id: str) -> int:
        """Class index of a node; KeyError when the node is wandering."""
        return self.class_of[self.digraph.index(node_id)]

    def leq(self, c1: int, c2: int) -> bool:
        self._check(c1)
        self._check(c2)
        return c2 in self.reach[c1]

    def compare(self, c1: int, c2: int) -> str:
        le, ge = self.leq(c1, c2), self.leq(c2, c1)
        if le and ge:
            return EQUAL
        if le:
            return LESS
        if ge:
            return GREATER
        return INCOMPARABLE

    def order_pairs(self) -> list[tuple[int, int]]:
        """All strict relations ``c1 < c2``."""
        return [(a, b) for a in range(len(self.classes)) for b in sorted(self.reach[a]) if a != b]

    def recurrent_annulus_classes(self) -> list[SmaleClass]:
        return [c for c in self.classes if not c.is_plug]

    def chain_class_of(self, c: int) -> int:
        for k, cc in enumerate(self.chain_classes):
            if c in cc:
                return k
        raise KeyError(c)

    def nonwandering_annuli(self) -> list[int]:
        return sorted(i for c in self.recurrent_annulus_classes() for i in c.members)

    def _check(self, c):
        if not (isinstance(c, int) and 0 <= c < len(self.classes)):
            raise KeyError(f"unknown class {c!r}")


def _graph(td: TransitDigraph, extra=()) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(td)))
    g.add_edges_from(td.edges())
    g.add_edges_from(extra)
    return g


def _cyclic(g: nx.DiGraph, comp) -> bool:
    if len(comp) > 1:
        return True
    (v,) = comp
    return g.has_edge(v, v)


def smale_classes(td: TransitDigraph) -> SmaleDecomposition:
    """Full decomposition: classes, order, closures and chain recurrence."""
    g = _graph(td)
    comps = sorted((sorted(c) for c in nx.strongly_connected_components(g)), key=lambda c: c[0])
    classes, wandering, class_of = [], [], {}
    for comp in comps:
        kind = td.nodes[comp[0]].kind
        if kind == ANNULUS and not _cyclic(g, comp):
            wandering.append(comp[0])
            continue
        c = SmaleClass(len(classes), tuple(comp), kind)
        for v in comp:
            class_of[v] = c.index
        classes.append(c)

    reach = []
    for c in classes:
        down = nx.descendants(g, c.members[0]) | {c.members[0]}
        reach.append(frozenset(class_of[v] for v in down if v in class_of))

    closures, prong_closures = {}, {}
    for c in classes:
        verts, prongs = set(), set()
        for v in c.members:
            verts.update(td.nodes[v].vertices)
            prongs.update(td.nodes[v].prongs)
        closures[c.index] = frozenset(verts)
        prong_closures[c.index] = frozenset(prongs)

    dec = SmaleDecomposition(td, classes, sorted(wandering), class_of, reach, closures, prong_closures, [], [])
    _chain_recurrence(dec)
    return dec


def _chain_recurrence(dec: SmaleDecomposition) -> None:
    jumps = []
    ann = dec.recurrent_annulus_classes()
    for i, a in enumerate(ann):
        for b in ann[i + 1:]:
            if dec.closures[a.index] & dec.closures[b.index]:
                u, v = a.members[0], b.members[0]
                jumps += [(u, v), (v, u)]
    g = _graph(dec.digraph, jumps)
    chain_classes, recurrent = [], []
    for comp in nx.strongly_connected_components(g):
        comp = sorted(comp)
        if _cyclic(g, comp):
            recurrent.extend(v for v in comp if dec.digraph.nodes[v].kind == ANNULUS)
        cls = sorted({dec.class_of[v] for v in comp if v in dec.class_of})
        if cls:
            chain_classes.append(tuple(cls))
    dec.chain_classes = sorted(chain_classes)
    dec.chain_recurrent = sorted(recurrent)


def smale_order(dec: SmaleDecomposition) -> list[tuple[int, int]]:
    return dec.order_pairs()


def compare(dec: SmaleDecomposition, c1: int, c2: int) -> str:
    return dec.compare(c1, c2)


def closure_prongs(dec: SmaleDecomposition) -> dict[int, frozenset[str]]:
    return dict(dec.prong_closures)


def chain_recurrence(dec: SmaleDecomposition) -> tuple[list[tuple[int, ...]], list[int]]:
    return dec.chain_classes, dec.chain_recurrent


EQUAL_SETS = "equal"
STRICTLY_LARGER = "strictly_larger"


def nonwandering_vs_chainrecurrent(dec: SmaleDecomposition) -> str:
    wandering = set(dec.wandering)
    return STRICTLY_LARGER if wandering & set(dec.chain_recurrent) else EQUAL_SETS


def report(dec: SmaleDecomposition) -> dict:
    td = dec.digraph
    return {
        "classes": [
            {
                "index": c.index,
                "kind": c.kind,
                "members": [td.nodes[i].id for i in c.members],
                "closure": sorted(dec.closures[c.index]),
                "prong_closure": sorted(dec.prong_closures[c.index]),
            }
            for c in dec.classes
        ],
        "wandering_annuli": [td.nodes[i].id for i in dec.wandering],
        "order": [[a, b] for a, b in dec.order_pairs()],
        "chain_classes": [list(cc) for cc in dec.chain_classes],
        "chain_recurrent_annuli": [td.nodes[i].id for i in dec.chain_recurrent],
        "nonwandering_vs_chainrecurrent": nonwandering_vs_chainrecurrent(dec),
    }

