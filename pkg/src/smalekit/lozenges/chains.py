"""Chains of lozenges and the operations on them.

A chain is an indexed sequence ``L_i``. Finite chains are just a core.
Infinite tails are eventually periodic: the right tail repeats the block
``right`` under ``right_map`` and the left tail repeats ``left`` under the
inverse of ``left_map``::

    i in [start, start + len(core))           -> core[i - start]
    i = start + len(core) + r*p + m            -> right_map^r (right[m])
    i = start - 1 - (r*q + m)                  -> left_map^-r (left[q - 1 - m])

Statements about bi-infinite chains are decided on a window made of the
core plus a number of periods on each side (two by default).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from functools import lru_cache

from .complex import Automorphism, LozengeComplex, Ref, opposite_slot


class ChainError(ValueError):
    pass


@dataclass(frozen=True)
class Chain:
    core: tuple
    right: tuple = ()
    right_map: Automorphism | None = None
    left: tuple = ()
    left_map: Automorphism | None = None
    start: int = 0

    def __post_init__(self):
        object.__setattr__(self, "core", tuple(tuple(x) for x in self.core))
        object.__setattr__(self, "right", tuple(tuple(x) for x in self.right))
        object.__setattr__(self, "left", tuple(tuple(x) for x in self.left))
        if self.right and self.right_map is None:
            raise ChainError("a right tail needs right_map")
        if self.left and self.left_map is None:
            raise ChainError("a left tail needs left_map")
        if not (self.core or self.right or self.left):
            raise ChainError("empty chain")

    @property
    def left_infinite(self) -> bool:
        return bool(self.left)

    @property
    def right_infinite(self) -> bool:
        return bool(self.right)

    @property
    def is_finite(self) -> bool:
        return not (self.left or self.right)

    @property
    def is_bi_infinite(self) -> bool:
        return bool(self.left and self.right)

    @property
    def end(self) -> int:
        """One past the index of the last core lozenge."""
        return self.start + len(self.core)

    def has_index(self, i: int) -> bool:
        if i < self.start:
            return self.left_infinite
        if i >= self.end:
            return self.right_infinite
        return True

    def __getitem__(self, i: int) -> Ref:
        if self.start <= i < self.end:
            return self.core[i - self.start]
        if i >= self.end:
            if not self.right:
                raise IndexError(i)
            r, m = divmod(i - self.end, len(self.right))
            return _power(self.right_map, r).lozenge(self.right[m])
        if not self.left:
            raise IndexError(i)
        q = len(self.left)
        r, m = divmod(self.start - 1 - i, q)
        x = self.left[q - 1 - m]
        return _power(self.left_map, -r).lozenge(x) if r else x

    def window_range(self, periods: int = 2) -> range:
        lo = self.start - periods * len(self.left)
        hi = self.end + periods * len(self.right)
        return range(lo, hi)

    def window(self, periods: int = 2) -> list[tuple[int, Ref]]:
        return [(i, self[i]) for i in self.window_range(periods)]

    def expanded(self, lo: int, hi: int) -> "Chain":
        """Same chain with the core covering ``[lo, hi)`` where tails allow."""
        c = self
        while c.right and c.end < hi:
            c = replace(c, core=c.core + c.right, right=tuple(c.right_map.lozenge(x) for x in c.right))
        while c.left and c.start > lo:
            c = replace(
                c,
                core=c.left + c.core,
                left=tuple(c.left_map.inverse().lozenge(x) for x in c.left),
                start=c.start - len(c.left),
            )
        return c


@lru_cache(maxsize=4096)
def _power(g: Automorphism, r: int) -> Automorphism:
    if r == 0:
        return _Identity()
    base = g if r > 0 else g.inverse()
    out = base
    for _ in range(abs(r) - 1):
        out = base * out
    return out


class _Identity:
    def lozenge(self, ref):
        return ref

    def corner(self, ref):
        return ref


def finite_chain(refs) -> Chain:
    return Chain(core=tuple(refs))


def as_lozenge_set(chain, periods: int = 2) -> list[Ref]:
    if isinstance(chain, Chain):
        return [L for _, L in chain.window(periods)]
    return [tuple(x) for x in chain]


# -- connectivity and trees -------------------------------------------------

def _check_members(cx: LozengeComplex, refs):
    for L in refs:
        cx.check_lozenge(L)


def is_chain(cx: LozengeComplex, chain) -> bool:
    """Connected under corner sharing (checked on the window for infinite chains)."""
    refs = list(dict.fromkeys(as_lozenge_set(chain)))
    _check_members(cx, refs)
    if not refs:
        return False
    by_corner = {}
    for L in refs:
        for c in cx.corners_of(L):
            by_corner.setdefault(c, []).append(L)
    seen = {refs[0]}
    stack = [refs[0]]
    while stack:
        L = stack.pop()
        for c in cx.corners_of(L):
            for M in by_corner[c]:
                if M not in seen:
                    seen.add(M)
                    stack.append(M)
    return len(seen) == len(refs)


@dataclass(frozen=True)
class ChainTree:
    corners: tuple
    edges: tuple  # (corner, corner, lozenge)

    def degree(self, corner) -> int:
        return sum((a == corner) + (b == corner) for a, b, _ in self.edges)

    def is_path(self) -> bool:
        return all(self.degree(c) <= 2 for c in self.corners)


def chain_tree(cx: LozengeComplex, chain, periods: int = 2) -> ChainTree:
    """Graph on corners with one edge per lozenge; raises on a cycle."""
    refs = list(dict.fromkeys(as_lozenge_set(chain, periods)))
    _check_members(cx, refs)
    if not is_chain(cx, refs):
        raise ChainError("not a chain: lozenges are not connected through corners")
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for L in refs:
        a, b = cx.corners_of(L)
        ra, rb = find(a), find(b)
        if ra == rb:
            raise ChainError(f"cycle through lozenge {L!r}: invalid complex data")
        parent[ra] = rb
        edges.append((a, b, L))
    corners = tuple(sorted(parent))
    return ChainTree(corners, tuple(edges))


# -- lines ------------------------------------------------------------------

def line_break(cx: LozengeComplex, chain) -> int | None:
    """First index where consecutive lozenges fail to share opposite sides."""
    if isinstance(chain, Chain):
        idx = list(chain.window_range())
        get = chain.__getitem__
    else:
        seq = [tuple(x) for x in chain]
        idx = list(range(len(seq)))
        get = seq.__getitem__
    _check_members(cx, [get(i) for i in idx])
    prev_slot = None
    for i in idx[:-1]:
        a, b = get(i), get(i + 1)
        pairs = cx.shared_sides(a, b)
        if not pairs:
            return i
        if prev_slot is not None:
            pairs = [p for p in pairs if p[0] == opposite_slot(prev_slot)]
            if not pairs:
                return i
        prev_slot = pairs[0][1]
    return None


def is_line(cx: LozengeComplex, chain) -> bool:
    return line_break(cx, chain) is None


def shared_side_signs(cx: LozengeComplex, chain) -> set:
    out = set()
    for i in list(chain.window_range())[:-1]:
        for s, _ in cx.shared_sides(chain[i], chain[i + 1]):
            out.add("+" if s % 2 == 0 else "-")
    return out


# -- minimality ----------------------------------------------------------------

def _require_bi_infinite(chain):
    if not isinstance(chain, Chain) or not chain.is_bi_infinite:
        raise ChainError("minimality is defined here for bi-infinite chains only")


def triple_corners(cx: LozengeComplex, chain: Chain, periods: int = 2) -> list:
    """Corners carried by three or more lozenges of the chain (inner window)."""
    counts = Counter()
    for L in set(as_lozenge_set(chain, periods)):
        for c in cx.corners_of(L):
            counts[c] += 1
    inner = {c for _, L in chain.window(periods - 1) for c in cx.corners_of(L)}
    return sorted(c for c in inner if counts[c] >= 3)


def is_minimal_no_triple(cx: LozengeComplex, chain: Chain) -> bool:
    _require_bi_infinite(chain)
    chain_tree(cx, chain)
    return not triple_corners(cx, chain)


def is_minimal_by_removal(cx: LozengeComplex, chain: Chain, periods: int = 2) -> bool:
    """Brute force: minimal iff removing any single lozenge leaves no
    component joining the two outermost periods of the window."""
    _require_bi_infinite(chain)
    chain_tree(cx, chain, periods)
    p, q = len(chain.right), len(chain.left)
    win = chain.window(periods)
    lo, hi = win[0][0], win[-1][0]
    left_end = {L for i, L in win if i < lo + q}
    right_end = {L for i, L in win if i > hi - p}
    members = list(dict.fromkeys(L for _, L in win))
    if not _joins(cx, members, left_end, right_end):
        raise ChainError("chain does not connect its two ends")
    inner = list(dict.fromkeys(L for _, L in chain.window(periods - 1)))
    for L in inner:
        rest = [M for M in members if M != L]
        if _joins(cx, rest, left_end - {L}, right_end - {L}):
            return False
    return True


def _joins(cx, members, sources, targets) -> bool:
    if not sources or not targets:
        return False
    by_corner = {}
    for L in members:
        for c in cx.corners_of(L):
            by_corner.setdefault(c, []).append(L)
    seen = set(sources)
    stack = list(sources)
    while stack:
        L = stack.pop()
        if L in targets:
            return True
        for c in cx.corners_of(L):
            for M in by_corner[c]:
                if M not in seen:
                    seen.add(M)
                    stack.append(M)
    return False


def is_minimal(cx: LozengeComplex, chain: Chain) -> bool:
    a = is_minimal_no_triple(cx, chain)
    b = is_minimal_by_removal(cx, chain)
    if a != b:
        raise AssertionError(f"minimality tests disagree: no-triple={a}, removal={b}")
    return a


# -- Smale chains ---------------------------------------------------------------

@dataclass(frozen=True)
class SmaleReport:
    wandering_ok: bool
    wandering_index: int | None
    adjacency_ok: bool
    adjacency_index: int | None
    no_triple_ok: bool
    triple_corner: Ref | None
    bi_infinite: bool

    @property
    def conditions_ok(self) -> bool:
        return self.wandering_ok and self.adjacency_ok and self.no_triple_ok

    @property
    def is_smale_chain(self) -> bool:
        return self.conditions_ok and self.bi_infinite

    def to_dict(self) -> dict:
        return {
            "wandering": {"ok": self.wandering_ok, "first_violation": self.wandering_index},
            "side_or_singular_corner": {"ok": self.adjacency_ok, "first_violation": self.adjacency_index},
            "no_triple_corner": {"ok": self.no_triple_ok, "corner": list(self.triple_corner) if self.triple_corner else None},
            "bi_infinite": self.bi_infinite,
            "smale_chain": self.is_smale_chain,
        }


def adjacent_ok(cx: LozengeComplex, a: Ref, b: Ref) -> bool:
    if cx.shared_sides(a, b):
        return True
    return any(cx.is_singular(c) for c in cx.shared_corners(a, b))


def is_smale_chain(cx: LozengeComplex, chain, periods: int = 2) -> SmaleReport:
    if not isinstance(chain, Chain):
        chain = finite_chain(chain)
    idx = list(chain.window_range(periods))
    seq = [chain[i] for i in idx]
    _check_members(cx, seq)
    w_idx = next((i for i, L in zip(idx, seq) if not cx.wandering(L)), None)
    a_idx = next((idx[k] for k in range(len(seq) - 1) if not adjacent_ok(cx, seq[k], seq[k + 1])), None)
    triples = _triples_in(cx, chain, periods)
    return SmaleReport(
        w_idx is None, w_idx,
        a_idx is None, a_idx,
        not triples, triples[0] if triples else None,
        chain.is_bi_infinite,
    )


def _triples_in(cx, chain, periods):
    if chain.is_finite:
        counts = Counter(c for L in set(chain.core) for c in cx.corners_of(L))
        return sorted(c for c, n in counts.items() if n >= 3)
    return triple_corners(cx, chain, periods)


def shared_corner(cx: LozengeComplex, a: Ref, b: Ref):
    common = cx.shared_corners(a, b)
    if len(common) != 1:
        return None
    return next(iter(common))


# -- merging -------------------------------------------------------------------

class MergeError(ChainError):
    pass


def merge(cx: LozengeComplex, w: Chain, w2: Chain, k: int) -> Chain:
    """Splice ``{L_i : i <= k}`` of ``w`` with ``{L'_i : i >= k+1}`` of ``w2``."""
    if k < 0:
        raise MergeError("k must be non-negative")
    for name, c in (("W", w), ("W'", w2)):
        rep = is_smale_chain(cx, c)
        if not rep.conditions_ok:
            raise MergeError(f"{name} violates the Smale chain conditions: {rep.to_dict()}")
        for i in (0, k):
            if not c.has_index(i):
                raise MergeError(f"{name} has no lozenge at index {i}")
    for i in range(k + 1):
        if w[i] != w2[i]:
            raise MergeError(f"overlap hypothesis violated: L_{i} != L'_{i}")
    if k == 0 and w.has_index(-1):
        if not w2.has_index(-1):
            raise MergeError("k = 0: W' has no L'_-1 to compare back corners with")
        if shared_corner(cx, w[-1], w[0]) != shared_corner(cx, w2[-1], w2[0]):
            raise MergeError("k = 0: the shared corners of L_-1, L_0 and L'_-1, L'_0 differ")

    a = w.expanded(min(0, w.start), k + 1)
    b = w2.expanded(k + 1, k + 1)
    if not b.has_index(k + 1):
        core = a.core[: k + 1 - a.start]
        return Chain(core, left=a.left, left_map=a.left_map, start=a.start)
    tail = b.core[k + 1 - b.start:] if b.start <= k + 1 else ()
    return Chain(
        a.core[: k + 1 - a.start] + tail,
        right=b.right, right_map=b.right_map,
        left=a.left, left_map=a.left_map,
        start=a.start,
    )


# -- extension -------------------------------------------------------------------

class ExtensionError(ChainError):
    pass


def _end_corners(cx, seq):
    if len(seq) == 1:
        c0, c1 = cx.corners_of(seq[0])
        return c0, c1
    first = set(cx.corners_of(seq[0])) - set(cx.corners_of(seq[1]))
    last = set(cx.corners_of(seq[-1])) - set(cx.corners_of(seq[-2]))
    if len(first) != 1 or len(last) != 1:
        raise ExtensionError("chain ends are ambiguous")
    return first.pop(), last.pop()


def _grow(cx, start_loz, start_corner, used_corners, max_steps):
    """Greedy walk from ``start_corner``; returns (pre-period, period, shift)."""
    added = []
    seen = {}
    L, c = start_loz, start_corner
    for _ in range(max_steps):
        cands = [
            M for M in cx.candidates(c, L)
            if cx.wandering(M) and cx.far_corner(M, c) not in used_corners
        ]
        if not cands:
            raise ExtensionError(f"adjacency exhausted at corner {c!r}")
        M = min(cands, key=lambda x: (x[0], x[1] - c[1]))
        state = (M[0], c[0], M[1] - c[1])
        if state in seen:
            s0, n0 = seen[state]
            shift = c[1] - n0
            if shift == 0:
                raise ExtensionError(f"walk closes up at corner {c!r} without translating")
            return added[:s0], added[s0:], shift
        seen[state] = (len(added), c[1])
        added.append(M)
        used_corners.add(c)
        c = cx.far_corner(M, c)
        used_corners.add(c)
        L = M
    raise ExtensionError("no periodic pattern found within the step bound")


def extend_to_smale_chain(cx: LozengeComplex, chain, max_steps: int | None = None) -> Chain:
    """Extend a finite chain satisfying the Smale conditions to a bi-infinite one.

    At each end, take the next wandering lozenge across the free corner: one
    sharing a side when the corner is regular, any other lozenge at the
    corner when it is singular. Ties go to the least ``(label, relative
    copy)``. The walk stops once its state repeats up to translation.
    """
    if not isinstance(chain, Chain):
        chain = finite_chain(chain)
    if not chain.is_finite:
        raise ExtensionError("input must be a finite chain")
    if not cx.periodic:
        raise ExtensionError("a finite complex cannot hold a bi-infinite chain")
    rep = is_smale_chain(cx, chain)
    if not rep.conditions_ok:
        raise ExtensionError(f"input violates the Smale chain conditions: {rep.to_dict()}")
    seq = list(chain.core)
    if len(seq) > 1 and not is_chain(cx, seq):
        raise ExtensionError("input is not a chain")
    if max_steps is None:
        max_steps = 4 * len(cx.lozenges) * len(cx.corners) + 16
    left_c, right_c = _end_corners(cx, seq)
    used = {c for L in seq for c in cx.corners_of(L)}

    pre_r, per_r, shift_r = _grow(cx, seq[-1], right_c, set(used), max_steps)
    pre_l, per_l, shift_l = _grow(cx, seq[0], left_c, set(used), max_steps)
    core = tuple(reversed(pre_l)) + tuple(seq) + tuple(pre_r)
    out = Chain(
        core,
        right=tuple(per_r), right_map=Automorphism.translation(cx, shift_r),
        left=tuple(reversed(per_l)), left_map=Automorphism.translation(cx, -shift_l),
        start=chain.start - len(pre_l),
    )
    rep = is_smale_chain(cx, out)
    if not rep.is_smale_chain:
        raise ExtensionError(f"extension fails the Smale chain conditions: {rep.to_dict()}")
    corners = chain_corners(cx, out)
    if len(set(corners)) != len(corners):
        raise ExtensionError("extension repeats a corner")
    return out


def chain_corners(cx: LozengeComplex, chain: Chain, periods: int = 2) -> list:
    """Corners ``c_i`` (shared by ``L_{i-1}`` and ``L_i``) along the window, plus the two ends."""
    idx = list(chain.window_range(periods))
    out = []
    for a, b in zip(idx, idx[1:]):
        c = shared_corner(cx, chain[a], chain[b])
        if c is None:
            raise ChainError(f"L_{a} and L_{b} do not share exactly one corner")
        out.append(c)
    first = set(cx.corners_of(chain[idx[0]])) - {out[0]} if out else set(cx.corners_of(chain[idx[0]]))
    last = set(cx.corners_of(chain[idx[-1]])) - {out[-1]} if out else set()
    return sorted(first) + out + sorted(last)


# -- corners ---------------------------------------------------------------------

def classify_corner(cx: LozengeComplex, corner: Ref) -> str:
    return cx.classify_corner(corner)


def is_pivot_only(cx: LozengeComplex, chain) -> bool:
    refs = set(as_lozenge_set(chain))
    corners = {c for L in refs for c in cx.corners_of(L)}
    return all(cx.classify_corner(c) == "pivot" for c in corners)


__all__ = [
    "Chain",
    "ChainError",
    "ChainTree",
    "ExtensionError",
    "MergeError",
    "SmaleReport",
    "chain_corners",
    "chain_tree",
    "classify_corner",
    "extend_to_smale_chain",
    "finite_chain",
    "is_chain",
    "is_line",
    "is_minimal",
    "is_minimal_by_removal",
    "is_minimal_no_triple",
    "is_pivot_only",
    "is_smale_chain",
    "line_break",
    "merge",
    "triple_corners",
]
