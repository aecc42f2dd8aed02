"""Synthetic periodic lozenge ambients for the property suites.

Positions ``j`` run over the integers; position ``j`` is the corner
``c{j % P}`` in copy ``j // P``. Every position has a spine lozenge
``S_j = [c_j, c_{j+1}]``; flagged positions also carry a detour
``D_j = [c_j, d_j], [d_j, c_{j+2}]``. Corners ``c`` are regular, with a
quadrant model for side sharing: each lozenge arriving at ``c_j`` shares
one side with each lozenge leaving it, so adjacency only ever points
forward or backward along the spine. Detour midpoints ``d`` are regular
(the two halves share a side) or singular. Non-wandering decoys hang off
``d`` and optional pendants ``c_j - p_j - q_j`` hang off the spine.

A chain never contains both routes of a detour without a triple corner,
so every Smale chain here is a tree even though the ambient has cycles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from smalekit.lozenges.chains import Chain
from smalekit.lozenges.complex import Automorphism, make_complex


@dataclass
class Ambient:
    cx: object
    P: int
    detour: tuple

    def c(self, j):
        return (f"c{j % self.P}", j // self.P)

    def S(self, j):
        return (f"S{j % self.P}", j // self.P)

    def D1(self, j):
        return (f"Da{j % self.P}", j // self.P)

    def D2(self, j):
        return (f"Db{j % self.P}", j // self.P)

    def P1(self, j):
        return (f"P{j % self.P}", j // self.P)

    def P2(self, j):
        return (f"Q{j % self.P}", j // self.P)

    def has_detour(self, j):
        return self.detour[j % self.P]

    def t(self, s=1):
        return Automorphism.translation(self.cx, s, f"t^{s}")

    # routes: steps "S" (one lozenge) or "D" (two), from position j
    def route(self, j, steps):
        out = []
        for s in steps:
            if s == "S":
                out.append(self.S(j))
                j += 1
            else:
                assert self.has_detour(j)
                out += [self.D1(j), self.D2(j)]
                j += 2
        return out, j

    def random_steps(self, rng, j, length, p_detour=0.5):
        """Steps covering exactly ``length`` positions from ``j``."""
        steps, end = [], j + length
        while j < end:
            if end - j >= 2 and self.has_detour(j) and rng.random() < p_detour:
                steps.append("D")
                j += 2
            else:
                steps.append("S")
                j += 1
        return steps


def _ref_entry(a, sa, b, sb):
    return (a[0], sa, b[0], sb, b[1] - a[1])


def detour_ambient(rng: random.Random, P=None, sub=None, pendants=False, decoys=True) -> Ambient:
    """Random ambient with ``P`` positions per copy.

    When ``sub`` divides ``P`` all per-position data repeats every ``sub``
    positions, so shifting by ``sub`` is an automorphism.
    """
    if P is None:
        P = rng.randint(1, 4)
    base = sub or P
    assert P % base == 0
    det = [rng.random() < 0.6 for _ in range(base)]
    flip_s = [rng.random() < 0.3 for _ in range(base)]
    flip_a = [rng.random() < 0.3 for _ in range(base)]
    flip_b = [rng.random() < 0.3 for _ in range(base)]
    d_prong = [rng.choice((2, 2, 3, 4)) for _ in range(base)]
    d_sign = [rng.randint(0, 1) for _ in range(base)]
    decoy = [decoys and rng.random() < 0.5 for _ in range(base)]
    f = lambda arr, j: arr[j % base]  # noqa: E731

    amb = Ambient(None, P, tuple(f(det, j) for j in range(P)))
    corners, lozenges = {}, {}
    for r in range(P):
        corners[f"c{r}"] = 2
        if f(det, r):
            corners[f"d{r}"] = f(d_prong, r)
        if pendants:
            corners[f"p{r}"] = 2
            corners[f"q{r}"] = 2

    def cref(j):
        return amb.c(j)

    def put(ref, a, b, flip, wandering=True):
        lab, n = ref
        a = (a[0], a[1] - n)
        b = (b[0], b[1] - n)
        lozenges[lab] = (b, a, wandering) if flip else (a, b, wandering)

    for r in range(P):
        put(amb.S(r), cref(r), cref(r + 1), f(flip_s, r))
        if f(det, r):
            d = (f"d{r}", 0)
            put(amb.D1(r), cref(r), d, f(flip_a, r))
            put(amb.D2(r), d, cref(r + 2), f(flip_b, r))
            if f(decoy, r):
                corners[f"e{r}"] = 2
                put((f"E{r}", 0), d, (f"e{r}", 0), False, wandering=False)
        if pendants:
            put(amb.P1(r), cref(r), (f"p{r}", 0), False)
            put(amb.P2(r), (f"p{r}", 0), (f"q{r}", 0), False)

    def slot(ref, corner, sign):
        (c0, d0), (c1, d1) = lozenges[ref[0]][:2]
        k = 0 if (c0, ref[1] + d0) == corner else 1
        return 2 * k + sign

    shares = []
    for r in range(P):
        c = cref(r)
        ins = [amb.S(r - 1)] + ([amb.D2(r - 2)] if f(det, r - 2) else [])
        outs = [amb.S(r)] + ([amb.D1(r)] if f(det, r) else [])
        for a, i in enumerate(ins):
            for b, o in enumerate(outs):
                sign = 0 if a == b else 1
                shares.append(_ref_entry(i, slot(i, c, sign), o, slot(o, c, sign)))
        if f(det, r) and f(d_prong, r) == 2:
            d = (f"d{r}", 0)
            s = f(d_sign, r)
            shares.append(_ref_entry(amb.D1(r), slot(amb.D1(r), d, s), amb.D2(r), slot(amb.D2(r), d, s)))
    amb.cx = make_complex(corners, lozenges, shares, periodic=True, name="detour")
    return amb


def shift_automorphism(amb: Ambient, s: int, name="s") -> Automorphism:
    """Shift every label by ``s`` positions (valid when the data is s-periodic)."""
    P = amb.P

    def move(lab):
        head = lab.rstrip("0123456789")
        r = int(lab[len(head):]) + s
        return (f"{head}{r % P}", r // P)

    cm = {c: move(c) for c in amb.cx.corners}
    lm = {lab: move(lab) for lab in amb.cx.lozenges}
    return Automorphism.from_maps(cm, lm, name)


# -- chains --------------------------------------------------------------

def periodic_route_chain(amb: Ambient, rng, j0, core_len, left_steps=None, right_steps=None, start=None):
    """Bi-infinite chain: random core route over ``core_len`` positions from
    ``j0``, with period blocks covering a multiple of P positions."""
    P = amb.P
    m = rng.randint(1, 2)
    if left_steps is None:
        left_steps = amb.random_steps(rng, j0 - m * P, m * P)
    aL = sum(1 if s == "S" else 2 for s in left_steps)
    left, _ = amb.route(j0 - aL, left_steps)
    core_steps = amb.random_steps(rng, j0, core_len)
    core, y = amb.route(j0, core_steps)
    if right_steps is None:
        m = rng.randint(1, 2)
        right_steps = amb.random_steps(rng, y, m * P)
    aR = sum(1 if s == "S" else 2 for s in right_steps)
    right, _ = amb.route(y, right_steps)
    assert aL % P == 0 and aR % P == 0
    return Chain(
        tuple(core), right=tuple(right), right_map=amb.t(aR // P),
        left=tuple(left), left_map=amb.t(aL // P),
        start=-len(core) // 2 if start is None else start,
    )


def chain_from_parts(amb: Ambient, left_steps, xL, core_refs, y, right_steps, start):
    P = amb.P
    aL = sum(1 if s == "S" else 2 for s in left_steps)
    aR = sum(1 if s == "S" else 2 for s in right_steps)
    left, _ = amb.route(xL - aL, left_steps)
    right, _ = amb.route(y, right_steps)
    return Chain(
        tuple(core_refs), right=tuple(right), right_map=amb.t(aR // P),
        left=tuple(left), left_map=amb.t(aL // P), start=start,
    )


def _block_steps(amb, rng, j, mult=None):
    m = mult or rng.randint(1, 2)
    return amb.random_steps(rng, j, m * amb.P)


def merge_pair(rng: random.Random):
    """Two bi-infinite Smale chains agreeing on indices 0..k."""
    amb = detour_ambient(rng)
    j0 = rng.randint(-3, 3)
    shared, y0 = amb.route(j0, amb.random_steps(rng, j0, rng.randint(1, 5)))
    k = rng.randint(0, len(shared) - 1)

    def side():
        lpos = rng.randint(0, 4)
        lsteps = amb.random_steps(rng, j0 - lpos, lpos)
        lcore, _ = amb.route(j0 - lpos, lsteps)
        rlen = rng.randint(0, 4)
        rsteps = amb.random_steps(rng, y0, rlen)
        rcore, y = amb.route(y0, rsteps)
        xL = j0 - lpos
        mL = rng.randint(1, 2) * amb.P
        left_block = amb.random_steps(rng, xL - mL, mL)
        right_block = _block_steps(amb, rng, y)
        return chain_from_parts(amb, left_block, xL, lcore + shared + rcore, y, right_block, -len(lcore))

    w = side()
    w2 = w if rng.random() < 0.1 else side()
    return amb, w, w2, k


def extension_case(rng: random.Random):
    """A finite Smale chain (a short route, possibly starting mid-detour)."""
    amb = detour_ambient(rng)
    j = rng.randint(-4, 4)
    steps = amb.random_steps(rng, j, rng.randint(1, 6))
    refs, _ = amb.route(j, steps)
    if len(refs) > 1 and rng.random() < 0.3 and refs[0][0].startswith("Da"):
        refs = refs[1:]  # start at the detour midpoint
    if len(refs) > 1 and rng.random() < 0.3 and refs[-1][0].startswith("Db"):
        refs = refs[:-1]
    start = rng.randint(-3, 3)
    return amb, Chain(tuple(refs), start=start)


def minimality_case(rng: random.Random):
    """Eventually periodic bi-infinite chain, with or without extra lozenges.

    Returns ``(ambient, chain, truth)`` where truth is the constructed
    minimality: minimal iff the chain is just a route.
    """
    amb = detour_ambient(rng, pendants=True)
    P = amb.P
    chain = periodic_route_chain(amb, rng, rng.randint(-2, 2), rng.randint(0, 2 * P))
    if rng.random() < 0.45:
        return amb, chain, True

    def decorate(block):
        """Pendants at step corners, or the unused spine lozenge beside a detour."""
        extra = []
        for jj in _positions(amb, block):
            x = rng.random()
            if x < 0.25:
                extra.append(amb.P1(jj))
                if rng.random() < 0.5:
                    extra.append(amb.P2(jj))
            elif x < 0.4 and amb.D1(jj) in block:
                extra.append(amb.S(jj))  # still a tree, with a triple at c_jj
        return list(block) + extra

    where = rng.choice(["core", "right", "left", "all"])
    core, right, left = list(chain.core), list(chain.right), list(chain.left)
    changed = False
    for name in (["core", "right", "left"] if where == "all" else [where]):
        blk = {"core": core, "right": right, "left": left}[name]
        new = decorate(blk)
        if len(new) != len(blk):
            changed = True
        blk[:] = new
    if not changed:
        # force one pendant in the core region or the right block
        blk = core if core else right
        j = next(iter(_positions(amb, blk)))
        blk.append(amb.P1(j))
    out = Chain(tuple(core), right=tuple(right), right_map=chain.right_map,
                left=tuple(left), left_map=chain.left_map, start=chain.start)
    return amb, out, False


def _positions(amb, block):
    """Start positions of the route steps in ``block``."""
    out = []
    for lab, n in block:
        head = lab.rstrip("0123456789")
        if head in ("S", "Da"):
            out.append(n * amb.P + int(lab[len(head):]))
    return sorted(set(out))


def symmetric_case(rng: random.Random, exact: bool = True):
    """Ambient with a planted shift symmetry s (s^m = t) and a chain whose
    tails repeat with period ``sub`` positions.

    With ``exact`` the core repeats the same pattern, so the whole chain is
    s-invariant; otherwise the core is a random route and only the tails are.
    """
    sub = rng.randint(1, 3)
    m = rng.randint(2, 3)
    amb = detour_ambient(rng, P=sub * m, sub=sub)
    s = shift_automorphism(amb, sub, "s")
    j0 = rng.randint(-2, 2)
    pattern = amb.random_steps(rng, j0, sub)
    if exact:
        reps = rng.randint(0, 2)
        core_steps, core_len = list(pattern) * reps, reps * sub
    else:
        core_len = rng.randint(0, 2 * sub)
        core_steps = amb.random_steps(rng, j0, core_len) if rng.random() < 0.5 else []
        if not core_steps:
            core_len = 0
    y = j0 + core_len
    # align the right tail to the pattern phase
    pad = (-(y - j0)) % sub
    core_steps += ["S"] * pad if pad else []
    y += pad
    core, _ = amb.route(j0, core_steps)
    # tails repeat the pattern, so they are s-invariant
    left, _ = amb.route(j0 - m * sub, list(pattern) * m)
    right, _ = amb.route(y, list(pattern) * m)
    chain = Chain(tuple(core), right=tuple(right), right_map=amb.t(1),
                  left=tuple(left), left_map=amb.t(1), start=rng.randint(-2, 2))
    k_planted = len(amb.route(j0, pattern)[0])
    return amb, chain, s, k_planted

