"""Translation symmetries of chains, invariant chains and scalloped completion."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .chains import Chain, ChainError, is_line, is_smale_chain, shared_corner
from .complex import Automorphism, LozengeComplex, make_complex, opposite_slot


@dataclass(frozen=True)
class Symmetry:
    word: tuple  # ((generator, +1 or -1), ...)
    g: Automorphism
    k: int
    i: int

    @property
    def word_str(self) -> str:
        return " ".join(n if e > 0 else f"{n}^-1" for n, e in self.word)


def back_corner(cx: LozengeComplex, chain: Chain, i: int):
    """Corner shared by ``L_{i-1}`` and ``L_i``."""
    return shared_corner(cx, chain[i - 1], chain[i])


def _reduced_words(gens: dict, max_len: int):
    """Breadth-first over freely reduced words, skipping repeated maps."""
    names = sorted(gens)
    letters = [(n, e) for n in names for e in (1, -1)]
    seen = []
    queue = deque([((), None)])
    while queue:
        word, g = queue.popleft()
        if word:
            if any(g.same_map(h) for h in seen):
                continue
            seen.append(g)
            yield word, g
        if len(word) == max_len:
            continue
        for n, e in letters:
            if word and word[-1] == (n, -e):
                continue
            step = gens[n] if e > 0 else gens[n].inverse()
            queue.append((word + ((n, e),), step if g is None else g * step))


def _matches(cx, chain, g, periods=2):
    """Pairs ``(i, k)`` with g L_i = L_{i+k}, k > 0, preserving back corners."""
    idx = list(chain.window_range(periods))
    where = {}
    for i in idx:
        where.setdefault(chain[i], i)
    for i in sorted(idx[1:], key=lambda i: (abs(i - chain.start), i)):
        j = where.get(g.lozenge(chain[i]))
        if j is None or j <= i or not chain.has_index(j - 1):
            continue
        c = back_corner(cx, chain, i)
        if c is not None and g.corner(c) == back_corner(cx, chain, j):
            yield i, j - i


def find_translation_symmetry(cx: LozengeComplex, chain: Chain, generators: dict, max_len: int = 4):
    """Shortest generator word g with ``g L_i = L_{i+k}`` and ``g c_i = c_{i+k}``.

    ``c_i`` is the back corner of ``L_i``, so a map that carries a lozenge
    forward while swapping its corners is rejected. Returns a ``Symmetry``
    or None when nothing is found within ``max_len`` letters.
    """
    if not chain.is_bi_infinite:
        raise ChainError("symmetry search needs a bi-infinite chain")
    for word, g in _reduced_words(generators, max_len):
        if g.is_identity():
            continue
        for i, k in _matches(cx, chain, g):
            return Symmetry(word, g, k, i)
    return None


def invariant_chain(cx: LozengeComplex, sym: Symmetry, chain: Chain) -> Chain:
    """The chain ``U g^n {L_i, ..., L_{i+k-1}}``, checked invariant and Smale."""
    g, k, i = sym.g, sym.k, sym.i
    block = tuple(chain[j] for j in range(i, i + k))
    out = Chain(
        core=block,
        right=tuple(g.lozenge(L) for L in block), right_map=g,
        left=tuple(g.inverse().lozenge(L) for L in block), left_map=g,
        start=i,
    )
    check_invariant(out, g, k)
    rep = is_smale_chain(cx, out)
    if not rep.is_smale_chain:
        raise ChainError(f"invariant chain fails the Smale conditions: {rep.to_dict()}")
    return out


def check_invariant(chain: Chain, g: Automorphism, k: int, periods: int = 2) -> None:
    for i in chain.window_range(periods):
        if g.lozenge(chain[i]) != chain[i + k]:
            raise ChainError(f"g L_{i} != L_{i + k}")


# -- scalloped regions ------------------------------------------------------

@dataclass(frozen=True)
class ScallopedRegion:
    complex_a: LozengeComplex
    line_a: Chain
    complex_b: LozengeComplex
    line_b: Chain
    sign_a: str
    sign_b: str
    period: int

    def meets(self, i: int, j: int) -> bool:
        # every lozenge of one line crosses every lozenge of the other
        return self.line_a.has_index(i) and self.line_b.has_index(j)

    def validate(self) -> None:
        for cx, line in ((self.complex_a, self.line_a), (self.complex_b, self.line_b)):
            if not line.is_bi_infinite:
                raise ChainError("scalloped lines must be bi-infinite")
            if not is_line(cx, line):
                raise ChainError("scalloped region side is not a line of lozenges")
        if self.sign_a == self.sign_b:
            raise ChainError("the two lines must share sides of opposite foliations")
        if len(self.line_b.right) != self.period:
            raise ChainError("transverse line has the wrong period")
        wa = list(self.line_a.window_range())
        wb = list(self.line_b.window_range())
        if not all(self.meets(i, j) for i in wa for j in wb):
            raise ChainError("meets relation is not total")


def _line_sign(cx, chain) -> str:
    i = next(iter(chain.window_range()))
    (s, _), *_ = cx.shared_sides(chain[i], chain[i + 1])
    return "+" if s % 2 == 0 else "-"


def _extend_line(cx: LozengeComplex, chain: Chain) -> Chain:
    """Grow the missing tail by opposite-side partners until it repeats."""
    if chain.is_bi_infinite:
        return chain
    leftward = chain.right_infinite
    lo = chain.start
    if leftward:
        cur, nxt = chain[lo], chain[lo + 1]
    else:
        last = chain.end - 1
        cur, nxt = chain[last], chain[last - 1]
    added, seen = [], {}
    for _ in range(4 * len(cx.lozenges) + 4):
        (s, _), = cx.shared_sides(cur, nxt)[:1] or [(None, None)]
        if s is None:
            raise ChainError("input is not a line")
        hit = cx.side_partner(cur, opposite_slot(s))
        if hit is None:
            raise ChainError(f"no lozenge across the side opposite to {cur!r}")
        M = hit[0]
        state = (M[0], M[1] - cur[1], cur[0])
        if state in seen:
            s0, n0 = seen[state]
            shift = cur[1] - n0
            if shift == 0:
                raise ChainError("line closes up without translating")
            pre, per = added[:s0], added[s0:]
            if leftward:
                t = Automorphism.translation(cx, -shift)
                return Chain(
                    tuple(reversed(pre)) + chain.core, right=chain.right, right_map=chain.right_map,
                    left=tuple(reversed(per)), left_map=t, start=chain.start - len(pre),
                )
            return Chain(
                chain.core + tuple(pre), right=tuple(per), right_map=Automorphism.translation(cx, shift),
                left=chain.left, left_map=chain.left_map, start=chain.start,
            )
        seen[state] = (len(added), cur[1])
        added.append(M)
        cur, nxt = M, cur
    raise ChainError("no periodic continuation found")


def complete_to_scalloped(cx: LozengeComplex, line: Chain) -> ScallopedRegion:
    """Bi-infinite line through ``line`` plus a formal transverse line."""
    if line.is_finite:
        raise ChainError("a finite line has no translation symmetry")
    if not is_line(cx, line):
        raise ChainError("input is not a line of lozenges")
    full = _extend_line(cx, line)
    if not is_line(cx, full):
        raise ChainError("extended chain is not a line")
    sign_a = _line_sign(cx, full)
    sign_b = "-" if sign_a == "+" else "+"
    p = len(full.right)
    bx = transverse_complex(p, sign_b)
    t = Automorphism.translation(bx, 1)
    core = tuple((f"B{j}", 0) for j in range(p))
    line_b = Chain(core, right=tuple(t.lozenge(L) for L in core), right_map=t,
                   left=tuple(t.inverse().lozenge(L) for L in core), left_map=t)
    region = ScallopedRegion(cx, full, bx, line_b, sign_a, sign_b, p)
    region.validate()
    return region


def transverse_complex(p: int, sign: str) -> LozengeComplex:
    """Periodic line of ``p`` lozenges per period sharing sides of one sign."""
    s = 0 if sign == "+" else 1
    corners = {f"v{j}": 2 for j in range(p)}
    lozenges = {}
    for j in range(p):
        c1 = (f"v{j + 1}", 0) if j + 1 < p else ("v0", 1)
        lozenges[f"B{j}"] = ((f"v{j}", 0), c1)
    shares = []
    for j in range(p):
        nxt, d = (f"B{j + 1}", 0) if j + 1 < p else ("B0", 1)
        shares.append((f"B{j}", s + 2, nxt, s, d))
    return make_complex(corners, lozenges, shares, periodic=True, name="transverse")
