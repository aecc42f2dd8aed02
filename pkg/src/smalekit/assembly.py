"""Flow pieces from admissible fatgraphs, gluings, and the transit digraph.

Each vertex of an admissible fatgraph is a periodic orbit with
``valence / 2`` prongs (2 means a regular orbit), each edge is a Birkhoff
annulus crossed from its incoming side to its outgoing side, and each
boundary loop is a transverse torus.

Transit is modelled generically: an orbit leaving annulus ``a`` through
its outgoing torus re-enters through the glued incoming torus and may cross
any annulus whose incoming side lies on that torus.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fatgraph import (
    INCOMING,
    OUTGOING,
    AdmissibilityReport,
    NotAdmissible,
    RibbonFatgraph,
    boundary_components,
    check_admissibility,
    loop_of_half_edge,
)

ANNULUS = "annulus"
ATTRACTOR = "attractor"
REPELLER = "repeller"


class GluingError(ValueError):
    pass


@dataclass(frozen=True)
class Torus:
    piece: str
    loop: int
    name: str
    polarity: str
    leaf_count: int

    @property
    def ref(self) -> str:
        return f"{self.piece}.{self.name}"


@dataclass(frozen=True)
class Annulus:
    piece: str
    edge: int
    name: str
    out_loop: int
    in_loop: int
    vertices: tuple[int, ...]

    @property
    def ref(self) -> str:
        return f"{self.piece}.{self.name}"


@dataclass(frozen=True)
class FlowPiece:
    name: str
    fatgraph: RibbonFatgraph
    prongs: tuple[int, ...]
    annuli: tuple[Annulus, ...]
    tori: tuple[Torus, ...]

    def vertex_ref(self, v: int) -> str:
        return f"{self.name}.{self.fatgraph.vertex_name(v)}"

    def torus(self, key) -> Torus:
        """Look a torus up by loop index or by name."""
        for t in self.tori:
            if t.loop == key or t.name == key:
                return t
        raise KeyError(f"{self.name}.{key}")


def derive_piece(fg: RibbonFatgraph, report: AdmissibilityReport | None = None, name: str = "") -> FlowPiece:
    if report is None:
        report = check_admissibility(fg)
    if not report.accepting:
        raise NotAdmissible("; ".join(report.failures()))
    name = name or fg.name or "P"
    loops = boundary_components(fg)
    loop_of = loop_of_half_edge(fg)
    pol = report.partition

    prongs = tuple(fg.valence(v) // 2 for v in range(fg.num_vertices))
    annuli = []
    for k, (a, b) in enumerate(fg.edges):
        la, lb = loop_of[a], loop_of[b]
        out_loop, in_loop = (la, lb) if pol[la] == OUTGOING else (lb, la)
        ends = tuple(sorted({fg.vertex_of[a], fg.vertex_of[b]}))
        annuli.append(Annulus(name, k, fg.edge_name(k), out_loop, in_loop, ends))
    tori = tuple(Torus(name, lp.index, lp.name, pol[lp.index], lp.side_count) for lp in loops)
    return FlowPiece(name, fg, prongs, tuple(annuli), tori)


@dataclass(frozen=True)
class GluingSpec:
    """Matches are ``((piece, loop), (piece, loop))`` running outgoing -> incoming."""

    matches: tuple[tuple[tuple[str, int], tuple[str, int]], ...]
    genericity_assumed: bool = True
    lamination_condition_assumed: bool = True


@dataclass(frozen=True)
class GluedFlow:
    pieces: tuple[FlowPiece, ...]
    gluing: GluingSpec
    attractors: tuple[tuple[str, int], ...]
    repellers: tuple[tuple[str, int], ...]

    def piece(self, name: str) -> FlowPiece:
        for p in self.pieces:
            if p.name == name:
                return p
        raise KeyError(name)

    def torus(self, key: tuple[str, int]) -> Torus:
        return self.piece(key[0]).torus(key[1])

    @property
    def is_closed(self) -> bool:
        matched = {t for m in self.gluing.matches for t in m}
        plugged = set(self.attractors) | set(self.repellers)
        every = {(p.name, t.loop) for p in self.pieces for t in p.tori}
        return every == matched | plugged


def validate_gluing(pieces, spec: GluingSpec) -> GluedFlow:
    """Check a gluing and cap every unmatched torus with a plug.

    A match may be given in either order; it is stored outgoing first.
    """
    by_name = {}
    for p in pieces:
        if p.name in by_name:
            raise GluingError(f"duplicate piece name {p.name!r}")
        by_name[p.name] = p

    def resolve(ref):
        piece, key = ref
        if piece not in by_name:
            raise GluingError(f"unknown piece {piece!r}")
        try:
            return by_name[piece].torus(key)
        except KeyError:
            raise GluingError(f"unknown torus {piece}.{key}") from None

    used = {}
    normalized = []
    for i, (r1, r2) in enumerate(spec.matches):
        t1, t2 = resolve(r1), resolve(r2)
        if t1.polarity == t2.polarity:
            raise GluingError(
                f"match {i}: {t1.ref} and {t2.ref} are both {t1.polarity}; gluing must pair outgoing with incoming"
            )
        if t1.polarity == INCOMING:
            t1, t2 = t2, t1
        for t in (t1, t2):
            key = (t.piece, t.loop)
            if key in used:
                raise GluingError(f"match {i}: torus {t.ref} already used by match {used[key]}")
            used[key] = i
        normalized.append(((t1.piece, t1.loop), (t2.piece, t2.loop)))

    attractors, repellers = [], []
    for p in pieces:
        for t in p.tori:
            key = (p.name, t.loop)
            if key in used:
                continue
            (attractors if t.polarity == OUTGOING else repellers).append(key)
    gspec = GluingSpec(tuple(normalized), spec.genericity_assumed, spec.lamination_condition_assumed)
    return GluedFlow(tuple(pieces), gspec, tuple(attractors), tuple(repellers))


@dataclass(frozen=True)
class Node:
    index: int
    id: str
    kind: str
    piece: str
    ref: int  # edge index for annuli, loop index for plugs
    vertices: tuple[str, ...] = ()
    prongs: tuple[str, ...] = ()


@dataclass
class TransitDigraph:
    nodes: list[Node]
    succ: list[list[int]]
    _by_id: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_id = {n.id: n.index for n in self.nodes}

    def __len__(self):
        return len(self.nodes)

    def index(self, node_id: str) -> int:
        return self._by_id[node_id]

    def node(self, node_id: str) -> Node:
        return self.nodes[self._by_id[node_id]]

    def successors(self, node_id: str) -> list[str]:
        return [self.nodes[j].id for j in self.succ[self._by_id[node_id]]]

    def predecessors(self, node_id: str) -> list[str]:
        i = self._by_id[node_id]
        return [self.nodes[j].id for j in range(len(self.nodes)) if i in self.succ[j]]

    def edges(self):
        for i, out in enumerate(self.succ):
            for j in out:
                yield i, j

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.succ)

    def annuli(self) -> list[Node]:
        return [n for n in self.nodes if n.kind == ANNULUS]


def plug_id(kind: str, torus: Torus) -> str:
    return f"{'A' if kind == ATTRACTOR else 'R'}[{torus.ref}]"


def transit_digraph(glued: GluedFlow) -> TransitDigraph:
    """Nodes are annuli (in piece and edge order) followed by plugs."""
    nodes = []
    ann_idx = {}
    for p in glued.pieces:
        for a in p.annuli:
            verts = tuple(p.vertex_ref(v) for v in a.vertices)
            prongs = tuple(p.vertex_ref(v) for v in a.vertices if p.prongs[v] > 2)
            ann_idx[(p.name, a.edge)] = len(nodes)
            nodes.append(Node(len(nodes), a.ref, ANNULUS, p.name, a.edge, verts, prongs))
    plug_idx = {}
    for kind, keys in ((ATTRACTOR, glued.attractors), (REPELLER, glued.repellers)):
        for key in keys:
            t = glued.torus(key)
            plug_idx[key] = len(nodes)
            nodes.append(Node(len(nodes), plug_id(kind, t), kind, key[0], key[1]))

    reading_in = {}
    for p in glued.pieces:
        for a in p.annuli:
            reading_in.setdefault((p.name, a.in_loop), []).append(ann_idx[(p.name, a.edge)])
    glue = dict(glued.gluing.matches)

    succ = [[] for _ in nodes]
    for p in glued.pieces:
        for a in p.annuli:
            i = ann_idx[(p.name, a.edge)]
            out_key = (p.name, a.out_loop)
            if out_key in glue:
                succ[i].extend(reading_in.get(glue[out_key], []))
            else:
                succ[i].append(plug_idx[out_key])
    for key in glued.repellers:
        succ[plug_idx[key]].extend(reading_in.get(key, []))
    for s in succ:
        s.sort()
    return TransitDigraph(nodes, succ)
