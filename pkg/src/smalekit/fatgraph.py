"""Ribbon fatgraphs, boundary tracing and admissibility.

A ribbon fatgraph is stored as two permutations of its half-edges:

* ``vertex_next`` (sigma) sends a half-edge to the next one in the cyclic
  order around its vertex;
* ``edge_pair`` (alpha) is the fixed-point-free involution pairing the two
  half-edges of an edge.

Boundary components are the orbits of the face permutation
``phi = sigma o alpha``, i.e. ``phi(h) = sigma(alpha(h))``: cross the edge,
then turn to the next half-edge at the far vertex.

Worked example, two vertices joined by two parallel edges ``a`` and ``b``::

    vertex 0: (a0, b0)      -> sigma: a0 -> b0 -> a0
    vertex 1: (a1, b1)      -> sigma: a1 -> b1 -> a1
    alpha:    a0 <-> a1, b0 <-> b1

    phi(a0) = sigma(a1) = b1,  phi(b1) = sigma(b0) = a0   -> loop (a0, b1)
    phi(a1) = sigma(a0) = b0,  phi(b0) = sigma(b1) = a1   -> loop (a1, b0)

Two loops, V - E = 0, so the surface is an annulus (genus 0, b = 2).
With vertex 1 listed as ``(b1, a1)`` instead, sigma is unchanged (a
2-cycle) and the answer is the same; at higher valence the listed cyclic
order matters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

OUTGOING = "outgoing"
INCOMING = "incoming"
UNASSIGNED = "unassigned"


class FatgraphError(ValueError):
    """Malformed fatgraph data. ``position`` locates the offending entry."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{position}: {message}"
        super().__init__(message)


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True)
class RibbonFatgraph:
    """Validated ribbon graph with half-edges indexed ``0 .. n-1``.

    ``labels[i]`` is the caller's identifier of half-edge ``i``; indices
    follow the order in which half-edges appear in the vertex lists.
    """

    labels: tuple
    vertex_next: tuple[int, ...]
    edge_pair: tuple[int, ...]
    vertex_of: tuple[int, ...]
    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    edge_of: tuple[int, ...]
    name: str = ""
    vertex_names: tuple[str, ...] = ()
    edge_names: tuple[str, ...] = ()
    loop_names: tuple[tuple[str, int], ...] = ()

    @property
    def num_half_edges(self) -> int:
        return len(self.labels)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def valence(self, v: int) -> int:
        return len(self.vertices[v])

    def face_next(self, h: int) -> int:
        return self.vertex_next[self.edge_pair[h]]

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def vertex_name(self, v: int) -> str:
        return self.vertex_names[v] if self.vertex_names else f"v{v}"

    def edge_name(self, e: int) -> str:
        return self.edge_names[e] if self.edge_names else f"e{e}"


def build_fatgraph(
    vertices: Sequence[Sequence[Hashable]],
    edges: Sequence[Sequence[Hashable]],
    *,
    name: str = "",
    vertex_names: Sequence[str] | None = None,
    edge_names: Sequence[str] | None = None,
    loop_names: dict | None = None,
) -> RibbonFatgraph:
    """Build a ribbon fatgraph from per-vertex cyclic half-edge lists.

    ``edges`` lists pairs of half-edge labels. ``loop_names`` optionally maps
    a boundary-loop name to the label of any half-edge on that loop.
    Raises :class:`FatgraphError` on duplicates, unpaired or self-paired
    half-edges, and disconnected graphs.
    """
    labels = []
    index = {}
    vertex_lists = []
    for v, hs in enumerate(vertices):
        if len(hs) == 0:
            raise FatgraphError("vertex has no half-edges", f"vertices[{v}]")
        ids = []
        for j, h in enumerate(hs):
            if h in index:
                raise FatgraphError(f"duplicate half-edge {h!r}", f"vertices[{v}][{j}]")
            index[h] = len(labels)
            labels.append(h)
            ids.append(index[h])
        vertex_lists.append(tuple(ids))

    n = len(labels)
    pair = [-1] * n
    edge_list = []
    for k, e in enumerate(edges):
        if len(e) != 2:
            raise FatgraphError("edge must list exactly two half-edges", f"edges[{k}]")
        a, b = e
        for j, h in enumerate((a, b)):
            if h not in index:
                raise FatgraphError(f"unknown half-edge {h!r}", f"edges[{k}][{j}]")
        ia, ib = index[a], index[b]
        if ia == ib:
            raise FatgraphError(f"half-edge {a!r} paired to itself", f"edges[{k}]")
        for j, i in enumerate((ia, ib)):
            if pair[i] != -1:
                raise FatgraphError(f"half-edge {labels[i]!r} paired twice", f"edges[{k}][{j}]")
        pair[ia], pair[ib] = ib, ia
        edge_list.append((ia, ib))
    for i, p in enumerate(pair):
        if p == -1:
            raise FatgraphError(f"unpaired half-edge {labels[i]!r}", "edges")

    vnext = [0] * n
    vertex_of = [0] * n
    for v, ids in enumerate(vertex_lists):
        for j, i in enumerate(ids):
            vnext[i] = ids[(j + 1) % len(ids)]
            vertex_of[i] = v
    edge_of = [0] * n
    for k, (ia, ib) in enumerate(edge_list):
        edge_of[ia] = edge_of[ib] = k

    # connectivity over vertices through edges
    seen = {0} if vertex_lists else set()
    stack = [0] if vertex_lists else []
    while stack:
        v = stack.pop()
        for i in vertex_lists[v]:
            w = vertex_of[pair[i]]
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(vertex_lists):
        missing = min(set(range(len(vertex_lists))) - seen)
        raise FatgraphError("graph is disconnected", f"vertices[{missing}]")

    if vertex_names is not None and len(vertex_names) != len(vertex_lists):
        raise FatgraphError("expected one name per vertex", "vertex_names")
    if edge_names is not None and len(edge_names) != len(edge_list):
        raise FatgraphError("expected one name per edge", "edge_names")
    named_loops = []
    for lname, h in (loop_names or {}).items():
        if h not in index:
            raise FatgraphError(f"unknown half-edge {h!r}", f"loop_names.{lname}")
        named_loops.append((str(lname), index[h]))

    fg = RibbonFatgraph(
        labels=tuple(labels),
        vertex_next=tuple(vnext),
        edge_pair=tuple(pair),
        vertex_of=tuple(vertex_of),
        vertices=tuple(vertex_lists),
        edges=tuple(edge_list),
        edge_of=tuple(edge_of),
        name=name,
        vertex_names=tuple(vertex_names or ()),
        edge_names=tuple(edge_names or ()),
        loop_names=tuple(named_loops),
    )
    if named_loops:
        loop_of = _loop_index(fg)
        seen_loops = {}
        for lname, h in named_loops:
            li = loop_of[h]
            if li in seen_loops:
                raise FatgraphError(
                    f"names {seen_loops[li]!r} and {lname!r} refer to the same loop",
                    f"loop_names.{lname}",
                )
            seen_loops[li] = lname
    return fg


@dataclass(frozen=True)
class BoundaryLoop:
    index: int
    sides: tuple[int, ...]
    polarity: str = UNASSIGNED
    name: str = ""

    @property
    def side_count(self) -> int:
        return len(self.sides)


def _face_orbits(fg: RibbonFatgraph) -> list[tuple[int, ...]]:
    seen = [False] * fg.num_half_edges
    orbits = []
    for start in range(fg.num_half_edges):
        if seen[start]:
            continue
        orbit = []
        h = start
        while not seen[h]:
            seen[h] = True
            orbit.append(h)
            h = fg.face_next(h)
        orbits.append(tuple(orbit))
    return orbits


def _loop_index(fg: RibbonFatgraph) -> list[int]:
    loop_of = [0] * fg.num_half_edges
    for li, orbit in enumerate(_face_orbits(fg)):
        for h in orbit:
            loop_of[h] = li
    return loop_of


def boundary_components(fg: RibbonFatgraph) -> list[BoundaryLoop]:
    """Orbits of ``phi = sigma o alpha``, ordered by least half-edge index."""
    orbits = _face_orbits(fg)
    names = {}
    if fg.loop_names:
        loop_of = _loop_index(fg)
        names = {loop_of[h]: n for n, h in fg.loop_names}
    return [BoundaryLoop(i, orbit, UNASSIGNED, names.get(i, f"L{i}")) for i, orbit in enumerate(orbits)]


def loop_of_half_edge(fg: RibbonFatgraph) -> list[int]:
    return _loop_index(fg)


def surface_invariants(fg: RibbonFatgraph) -> tuple[int, int, int]:
    """Return ``(euler_characteristic, genus, boundary_count)``."""
    chi = fg.num_vertices - fg.num_edges
    b = len(_face_orbits(fg))
    twice_g = 2 - chi - b
    # chi + b = 2 - 2g is forced to be even for an orientable ribbon surface
    assert twice_g >= 0 and twice_g % 2 == 0, (chi, b)
    return chi, twice_g // 2, b


@dataclass(frozen=True)
class AdmissibilityReport:
    valences_ok: bool
    valence_witness: tuple[int, int] | None
    partition: dict[int, str] | None
    partition_witness: dict | None
    even_loops_ok: dict[int, bool] = field(default_factory=dict)
    flipped: bool = False

    @property
    def accepting(self) -> bool:
        return self.valences_ok and self.partition is not None and all(self.even_loops_ok.values())

    def failures(self) -> list[str]:
        out = []
        if not self.valences_ok:
            v, d = self.valence_witness
            out.append(f"condition 1: vertex {v} has valence {d} (need even and >= 4)")
        if self.partition is None:
            w = self.partition_witness
            if w["kind"] == "edge":
                out.append(f"condition 2: both sides of edge {w['edge']} lie on loop {w['loops'][0]}")
            else:
                out.append(f"condition 2: odd cycle of loops {list(w['loops'])}")
        for li, ok in self.even_loops_ok.items():
            if not ok:
                out.append(f"condition 3: loop {li} has an odd number of edge-sides")
        return out

    def to_dict(self) -> dict:
        return {
            "accepting": self.accepting,
            "valences_ok": self.valences_ok,
            "valence_witness": list(self.valence_witness) if self.valence_witness else None,
            "partition": {str(k): v for k, v in self.partition.items()} if self.partition else None,
            "partition_witness": self.partition_witness,
            "even_loops_ok": {str(k): v for k, v in self.even_loops_ok.items()},
            "failures": self.failures(),
        }


def check_admissibility(fg: RibbonFatgraph, flip: bool = False) -> AdmissibilityReport:
    """Decide the three admissibility conditions.

    The in/out partition is canonical: the loop through half-edge 0 is
    outgoing, or incoming when ``flip`` is set. On a connected fatgraph the
    partition, when it exists, is unique up to this global flip.
    """
    valence_witness = None
    for v in range(fg.num_vertices):
        d = fg.valence(v)
        if d % 2 or d < 4:
            valence_witness = (v, d)
            break

    loops = boundary_components(fg)
    loop_of = _loop_index(fg)
    even = {lp.index: lp.side_count % 2 == 0 for lp in loops}

    partition, witness = _two_color(fg, loop_of, len(loops))
    if partition is not None:
        first, second = (INCOMING, OUTGOING) if flip else (OUTGOING, INCOMING)
        partition = {li: first if c == 0 else second for li, c in sorted(partition.items())}

    return AdmissibilityReport(
        valences_ok=valence_witness is None,
        valence_witness=valence_witness,
        partition=partition,
        partition_witness=witness,
        even_loops_ok=even,
        flipped=flip,
    )


def _two_color(fg, loop_of, nloops):
    # constraint graph: loops adjacent when an edge has its two sides on them
    adj = [[] for _ in range(nloops)]
    for k, (a, b) in enumerate(fg.edges):
        la, lb = loop_of[a], loop_of[b]
        if la == lb:
            return None, {"kind": "edge", "edge": k, "loops": [la]}
        adj[la].append((lb, k))
        adj[lb].append((la, k))

    color = {}
    parent = {}
    for root in range(nloops):
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = [root]
        while queue:
            u = queue.pop(0)
            for w, _ in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return None, {"kind": "odd_cycle", "loops": _odd_cycle(parent, u, w)}
    return color, None


def _odd_cycle(parent, u, w):
    def path(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    pu, pw = path(u), path(w)
    common = set(pu) & set(pw)
    cu = []
    for x in pu:
        cu.append(x)
        if x in common:
            break
    cw = []
    for x in pw:
        if x in common:
            break
        cw.append(x)
    return cu + cw[::-1]
