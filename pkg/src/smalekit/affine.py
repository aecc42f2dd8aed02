"""Affine model of an Anosov-like action on the trivial bifoliated plane.

The group is Z^2 x|_A Z with elements ``(A^n, t)`` acting by
``x -> A^n x + t``. Composition::

    (A^m, u)(A^n, v) = (A^(m+n), A^m v + u)

Fixed points are exact rationals. Eigen-data is handled symbolically
(trace and determinant, with sympy for the quadratic surds), never as
floating eigenvectors. The two foliations are the eigenline foliations:
F+ leaves run along the expanding eigenvector, F- leaves along the
contracting one.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

DEFAULT_A = ((2, 1), (1, 1))

IDENTITY = "identity"
HYPERBOLIC = "hyperbolic_fixed"
FREE = "free_translation"


class AffineError(ValueError):
    pass


def _mul(m, n):
    return (
        (m[0][0] * n[0][0] + m[0][1] * n[1][0], m[0][0] * n[0][1] + m[0][1] * n[1][1]),
        (m[1][0] * n[0][0] + m[1][1] * n[1][0], m[1][0] * n[0][1] + m[1][1] * n[1][1]),
    )


def _apply(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def _det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _trace(m):
    return m[0][0] + m[1][1]


I2 = ((1, 0), (0, 1))


def check_matrix(A) -> tuple:
    A = tuple(tuple(int(x) for x in row) for row in A)
    if len(A) != 2 or any(len(r) != 2 for r in A):
        raise AffineError("A must be a 2x2 integer matrix")
    if _det(A) != 1:
        raise AffineError(f"A must have determinant 1, got {_det(A)}")
    if abs(_trace(A)) <= 2:
        raise AffineError(f"A must be hyperbolic (|trace| > 2), got trace {_trace(A)}")
    return A


@lru_cache(maxsize=None)
def matrix_power(A, n: int):
    if n == 0:
        return I2
    if n < 0:
        (a, b), (c, d) = A
        return matrix_power(((d, -b), (-c, a)), -n)
    half = matrix_power(A, n // 2)
    sq = _mul(half, half)
    return _mul(sq, A) if n % 2 else sq


@dataclass(frozen=True)
class AffineElement:
    n: int
    t: tuple
    A: tuple = DEFAULT_A

    @property
    def linear(self):
        return matrix_power(self.A, self.n)

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        if self.A != other.A:
            raise AffineError("elements of different groups")
        u = _apply(self.linear, other.t)
        return AffineElement(self.n + other.n, (u[0] + self.t[0], u[1] + self.t[1]), self.A)

    def inverse(self) -> "AffineElement":
        inv = matrix_power(self.A, -self.n)
        u = _apply(inv, self.t)
        return AffineElement(-self.n, (-u[0], -u[1]), self.A)

    def __call__(self, x):
        y = _apply(self.linear, x)
        return (y[0] + self.t[0], y[1] + self.t[1])

    def is_identity(self) -> bool:
        return self.n == 0 and self.t == (0, 0)

    def to_dict(self) -> dict:
        return {"power": self.n, "linear": [list(r) for r in self.linear], "translation": list(self.t)}


def identity(A=DEFAULT_A) -> AffineElement:
    return AffineElement(0, (0, 0), A)


def generators(A=DEFAULT_A) -> dict:
    return {
        "a": AffineElement(1, (0, 0), A),
        "t1": AffineElement(0, (1, 0), A),
        "t2": AffineElement(0, (0, 1), A),
    }


_TOKEN = re.compile(r"(a|t1|t2)(?:\^(-?\d+))?$")


def parse_word(word) -> list[tuple[str, int]]:
    """``"a t1 a^-1"`` (separators: space, ``*``, ``.``) to ``[(gen, exp), ...]``."""
    if not isinstance(word, str):
        return [(str(g), int(e)) for g, e in word]
    out = []
    for tok in re.split(r"[\s*.·]+", word.strip()):
        if not tok or tok in ("e", "1", "id"):
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise AffineError(f"bad token {tok!r} in word {word!r}")
        out.append((m.group(1), int(m.group(2) or 1)))
    return out


def evaluate(word, A=DEFAULT_A) -> AffineElement:
    A = check_matrix(A)
    gens = generators(A)
    out = identity(A)
    for g, e in parse_word(word):
        x = gens[g] if e > 0 else gens[g].inverse()
        for _ in range(abs(e)):
            out = out * x
    return out


LETTERS = (("a", 1), ("a", -1), ("t1", 1), ("t1", -1), ("t2", 1), ("t2", -1))


def reduced_words(max_len: int):
    """All freely reduced words of length <= max_len, shortest first."""
    yield ()
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for g, e in LETTERS:
                if w and w[-1] == (g, -e):
                    continue
                nxt.append(w + ((g, e),))
        yield from nxt
        layer = nxt


def word_str(word) -> str:
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in word) or "e"


# -- fixed points ---------------------------------------------------------

def fixed_point(g: AffineElement):
    """Exact fixed point, ``"identity"`` for the identity, None for a free translation."""
    if g.n == 0:
        return IDENTITY if g.t == (0, 0) else None
    M = g.linear
    B = ((1 - M[0][0], -M[0][1]), (-M[1][0], 1 - M[1][1]))
    d = _det(B)
    if d == 0:
        raise AffineError("I - A^n is singular; A is not hyperbolic")
    x = Fraction(B[1][1] * g.t[0] - B[0][1] * g.t[1], d)
    y = Fraction(-B[1][0] * g.t[0] + B[0][0] * g.t[1], d)
    return (x, y)


@dataclass(frozen=True)
class Classification:
    kind: str
    trace: int | None = None
    det: int | None = None
    fixed: tuple | None = None

    @property
    def lam(self):
        """Leading eigenvalue as a sympy expression (None unless hyperbolic)."""
        if self.kind != HYPERBOLIC:
            return None
        return _eigen(self.trace)[0]

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.kind == HYPERBOLIC:
            d.update(
                trace=self.trace,
                det=self.det,
                expansion=str(self.lam),
                fixed_point=[str(c) for c in self.fixed],
            )
        return d


def classify_element(g: AffineElement) -> Classification:
    if g.is_identity():
        return Classification(IDENTITY)
    if g.n == 0:
        return Classification(FREE)
    M = g.linear
    return Classification(HYPERBOLIC, _trace(M), _det(M), fixed_point(g))


@lru_cache(maxsize=None)
def _eigen(trace: int):
    import sympy

    T = sympy.Integer(trace)
    s = 1 if trace > 0 else -1
    lam = (T + s * sympy.sqrt(T**2 - 4)) / 2
    return lam, (T - s * sympy.sqrt(T**2 - 4)) / 2


@lru_cache(maxsize=None)
def eigen_check(A, n: int) -> bool:
    """Exact check of the expansion/contraction pattern of ``A^n``, n != 0.

    With lambda the eigenvalue of modulus > 1, ``A^n v_u = lambda v_u`` and
    ``A^n v_s = lambda^-1 v_s``; v_u, v_s independent, so the four rays
    ``v_u, v_s, -v_u, -v_s`` alternate between expansion and contraction.
    """
    import sympy

    M = matrix_power(A, n)
    lam, mu = _eigen(_trace(M))
    if sympy.simplify(lam * mu - 1) != 0 or not (abs(lam) > 1):
        return False
    Ms = sympy.Matrix(M)
    vu = sympy.Matrix([M[0][1], lam - M[0][0]])
    vs = sympy.Matrix([M[0][1], mu - M[0][0]])
    ok_u = all(sympy.expand(e) == 0 for e in Ms * vu - lam * vu)
    ok_s = all(sympy.expand(e) == 0 for e in Ms * vs - mu * vs)
    indep = sympy.expand(vu[0] * vs[1] - vu[1] * vs[0]) != 0
    # the eigenlines of every power of A are those of A itself
    base = eigen_directions(A)
    same = sympy.expand(vu[0] * base[0][1] - vu[1] * base[0][0]) == 0 or sympy.expand(
        vu[0] * base[1][1] - vu[1] * base[1][0]) == 0
    return bool(ok_u and ok_s and indep and same)


@lru_cache(maxsize=None)
def eigen_directions(A):
    """Exact (expanding, contracting) eigenvectors of A as sympy pairs."""
    lam, mu = _eigen(_trace(A))
    return (A[0][1], lam - A[0][0]), (A[0][1], mu - A[0][0])


def moves_every_leaf(g: AffineElement) -> bool:
    """A pure translation fixes no leaf: its vector is not along an irrational eigenline."""
    if g.n != 0 or g.t == (0, 0):
        return False
    import sympy

    for v in eigen_directions(g.A):
        if sympy.expand(g.t[0] * v[1] - g.t[1] * v[0]) == 0:
            return False
    return True


def conjugation_covariant(g: AffineElement, h: AffineElement) -> bool:
    """fixed_point(h g h^-1) == h(fixed_point(g)), exactly."""
    x = fixed_point(g)
    y = fixed_point(h * g * h.inverse())
    if x == IDENTITY or x is None:
        return y == x
    return y == h(x)


# -- density of fixed leaves ---------------------------------------------------

def _eigen_float(A):
    (p, q), _ = A
    T = _trace(A)
    r = math.sqrt(T * T - 4)
    s = 1 if T > 0 else -1
    lam, mu = (T + s * r) / 2, (T - s * r) / 2
    return (q, lam - p), (q, mu - p)


def to_eigen(A, x):
    """Coordinates ``(alpha, beta)`` with ``x = alpha v_u + beta v_s``."""
    vu, vs = _eigen_float(A)
    d = vu[0] * vs[1] - vu[1] * vs[0]
    x0, x1 = float(x[0]), float(x[1])
    return ((x0 * vs[1] - x1 * vs[0]) / d, (vu[0] * x1 - vu[1] * x0) / d)


def from_eigen(A, a, b):
    vu, vs = _eigen_float(A)
    return (a * vu[0] + b * vs[0], a * vu[1] + b * vs[1])


@dataclass(frozen=True)
class DensityReport:
    bound: int
    window: tuple
    fixed_points: int
    plus_leaves: tuple
    minus_leaves: tuple
    plus_gap: float
    minus_gap: float

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "window": [list(w) for w in self.window],
            "fixed_points": self.fixed_points,
            "plus_leaves": len(self.plus_leaves),
            "minus_leaves": len(self.minus_leaves),
            "plus_gap": self.plus_gap,
            "minus_gap": self.minus_gap,
        }


def _max_gap(values, lo, hi) -> float:
    pts = [lo] + sorted(values) + [hi]
    return max(b - a for a, b in zip(pts, pts[1:]))


def fixed_leaf_density(n: int, window=((0, 1), (0, 1)), A=DEFAULT_A) -> DensityReport:
    """Max gap between fixed leaves of each foliation inside ``window``.

    ``window`` is ``((alpha_lo, alpha_hi), (beta_lo, beta_hi))`` in
    eigencoordinates. Every ``(A^k, t)`` with ``0 < |k| <= n`` whose fixed
    point lies in the window contributes its F+ leaf (its beta value) and
    its F- leaf (its alpha value). Raising ``n`` only adds points, so the
    gaps never increase.
    """
    A = check_matrix(A)
    if n < 1:
        raise AffineError("word bound must be >= 1")
    (a0, a1), (b0, b1) = window
    if not (a0 < a1 and b0 < b1):
        raise AffineError(f"degenerate window {window!r}")
    corners = [from_eigen(A, a, b) for a, b in product((a0, a1), (b0, b1))]
    found = set()
    for k in [k for m in range(1, n + 1) for k in (m, -m)]:
        M = matrix_power(A, k)
        # t = (I - A^k) x, so t ranges over the image of the window
        imgs = [(x - (M[0][0] * x + M[0][1] * y), y - (M[1][0] * x + M[1][1] * y)) for x, y in corners]
        xs = [p[0] for p in imgs]
        ys = [p[1] for p in imgs]
        for tx in range(math.floor(min(xs)) - 1, math.ceil(max(xs)) + 2):
            for ty in range(math.floor(min(ys)) - 1, math.ceil(max(ys)) + 2):
                x = fixed_point(AffineElement(k, (tx, ty), A))
                al, be = to_eigen(A, x)
                if a0 <= al <= a1 and b0 <= be <= b1:
                    found.add((x, al, be))
    alphas = sorted({al for _, al, _ in found})
    betas = sorted({be for _, _, be in found})
    return DensityReport(
        n, ((a0, a1), (b0, b1)), len({x for x, _, _ in found}),
        tuple(betas), tuple(alphas),
        _max_gap(betas, b0, b1), _max_gap(alphas, a0, a1),
    )


def smale_relation(x, gx: AffineElement, y, gy: AffineElement) -> bool:
    """Fixed points of nontrivial elements are always Smale-equivalent.

    In the trivial plane each F+ leaf meets each F- leaf, so the leaves
    through ``x`` and ``y`` cross both ways.
    """
    for p, g in ((x, gx), (y, gy)):
        if g.n == 0:
            raise AffineError("Smale relation is defined on fixed points of hyperbolic elements")
        if fixed_point(g) != tuple(p):
            raise AffineError(f"{p!r} is not fixed by the given element")
    vu, vs = _eigen_float(gx.A)
    # F+ through x is x + R v_u, F- through y is y + R v_s; independent lines meet
    return (vu[0] * vs[1] - vu[1] * vs[0]) != 0
