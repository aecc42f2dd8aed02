"""Abstract lozenge complexes.

A complex is described by finitely many *base* corners and lozenges. When
``periodic`` is set it stands for the infinite complex made of copies
``(label, n)`` for every integer ``n``; a base lozenge whose corner is
given as ``(c, d)`` has, in copy ``n``, the corner ``(c, n + d)``. A finite
complex is the case where only copy 0 exists (all offsets are 0).

Every lozenge has four side slots::

    0 = corner0, F+ side     1 = corner0, F- side
    2 = corner1, F+ side     3 = corner1, F- side

Two lozenges share a side when the side-sharing relation pairs one of
their slots; the slots must sit at the same corner and have the same sign.
Opposite sides of a lozenge are slots ``0 <-> 2`` and ``1 <-> 3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

Ref = tuple  # (label, copy)

SLOT_NAMES = ("0+", "0-", "1+", "1-")
PLUS, MINUS = "+", "-"


class ComplexError(ValueError):
    pass


def slot_corner(slot: int) -> int:
    return slot // 2


def slot_sign(slot: int) -> str:
    return PLUS if slot % 2 == 0 else MINUS


def opposite_slot(slot: int) -> int:
    return (slot + 2) % 4


def parse_slot(s) -> int:
    if isinstance(s, int) and 0 <= s < 4:
        return s
    try:
        return SLOT_NAMES.index(str(s))
    except ValueError:
        raise ComplexError(f"bad side slot {s!r}; expected one of {SLOT_NAMES}") from None


@dataclass(frozen=True)
class BaseLozenge:
    corners: tuple[tuple[str, int], tuple[str, int]]
    wandering: bool = True


@dataclass
class LozengeComplex:
    corners: dict[str, int]
    lozenges: dict[str, BaseLozenge]
    side_sharing: list = field(default_factory=list)
    periodic: bool = False
    name: str = ""

    def __post_init__(self):
        self._partner = {}
        self._at = {c: [] for c in self.corners}
        self._validate()

    # -- construction -------------------------------------------------
    def _validate(self):
        for c, p in self.corners.items():
            if not isinstance(p, int) or p < 2:
                raise ComplexError(f"corner {c!r}: prong count must be an integer >= 2, got {p!r}")
        for lab, loz in self.lozenges.items():
            (c0, d0), (c1, d1) = loz.corners
            for c in (c0, c1):
                if c not in self.corners:
                    raise ComplexError(f"lozenge {lab!r}: unknown corner {c!r}")
            if (c0, d0) == (c1, d1):
                raise ComplexError(f"lozenge {lab!r}: corners must be distinct")
            if not self.periodic and (d0 or d1):
                raise ComplexError(f"lozenge {lab!r}: offsets need a periodic complex")
            self._at[c0].append((lab, -d0))
            self._at[c1].append((lab, -d1))
        for c in self._at:
            self._at[c].sort()

        for k, entry in enumerate(self.side_sharing):
            (l1, s1), (l2, d, s2) = entry
            if l1 not in self.lozenges or l2 not in self.lozenges:
                raise ComplexError(f"side_sharing[{k}]: unknown lozenge")
            if d and not self.periodic:
                raise ComplexError(f"side_sharing[{k}]: offsets need a periodic complex")
            if (l1, 0, s1) == (l2, d, s2) or (l1 == l2 and d == 0):
                raise ComplexError(f"side_sharing[{k}]: a lozenge cannot share a side with itself")
            if slot_sign(s1) != slot_sign(s2):
                raise ComplexError(f"side_sharing[{k}]: sides of different foliations")
            ca = self.lozenges[l1].corners[slot_corner(s1)]
            cb = self.lozenges[l2].corners[slot_corner(s2)]
            if ca[0] != cb[0] or ca[1] != cb[1] + d:
                raise ComplexError(f"side_sharing[{k}]: shared sides must start at the same corner")
            for key, val in (((l1, s1), (l2, d, s2)), ((l2, s2), (l1, -d, s1))):
                if key in self._partner and self._partner[key] != val:
                    raise ComplexError(f"side_sharing[{k}]: side {key[0]}:{SLOT_NAMES[key[1]]} shared twice")
                self._partner[key] = val

    # -- queries ------------------------------------------------------
    def has_lozenge(self, ref: Ref) -> bool:
        lab, n = ref
        return lab in self.lozenges and (self.periodic or n == 0)

    def has_corner(self, ref: Ref) -> bool:
        lab, n = ref
        return lab in self.corners and (self.periodic or n == 0)

    def check_lozenge(self, ref: Ref) -> None:
        if not self.has_lozenge(ref):
            raise ComplexError(f"lozenge {ref!r} is not in the complex")

    def corners_of(self, ref: Ref) -> tuple[Ref, Ref]:
        lab, n = ref
        (c0, d0), (c1, d1) = self.lozenges[lab].corners
        return (c0, n + d0), (c1, n + d1)

    def prong(self, corner: Ref) -> int:
        return self.corners[corner[0]]

    def is_singular(self, corner: Ref) -> bool:
        return self.corners[corner[0]] > 2

    def wandering(self, ref: Ref) -> bool:
        return self.lozenges[ref[0]].wandering

    def lozenges_at(self, corner: Ref) -> list[Ref]:
        lab, n = corner
        return [(l, n + d) for l, d in self._at[lab]]

    def side_partner(self, ref: Ref, slot: int):
        """The ``(lozenge, slot)`` sharing this side, or None."""
        hit = self._partner.get((ref[0], slot))
        if hit is None:
            return None
        l2, d, s2 = hit
        return (l2, ref[1] + d), s2

    def corner_slot(self, ref: Ref, corner: Ref) -> int:
        c = self.corners_of(ref)
        if c[0] == corner:
            return 0
        if c[1] == corner:
            return 1
        raise ComplexError(f"{corner!r} is not a corner of {ref!r}")

    def shared_corners(self, a: Ref, b: Ref) -> set:
        return set(self.corners_of(a)) & set(self.corners_of(b))

    def shared_sides(self, a: Ref, b: Ref) -> list[tuple[int, int]]:
        """Slot pairs ``(slot in a, slot in b)`` along which a and b share a side."""
        out = []
        for s in range(4):
            hit = self.side_partner(a, s)
            if hit is not None and hit[0] == b:
                out.append((s, hit[1]))
        return out

    def far_corner(self, ref: Ref, corner: Ref) -> Ref:
        c = self.corners_of(ref)
        return c[1] if c[0] == corner else c[0]

    def candidates(self, corner: Ref, ref: Ref) -> list[Ref]:
        """Lozenges adjacent to ``ref`` across ``corner``.

        At a singular corner this is every other lozenge with that corner;
        at a regular corner only those sharing a side based there.
        """
        if self.is_singular(corner):
            return [L for L in self.lozenges_at(corner) if L != ref]
        k = self.corner_slot(ref, corner)
        out = []
        for s in (2 * k, 2 * k + 1):
            hit = self.side_partner(ref, s)
            if hit is not None:
                out.append(hit[0])
        return sorted(out)

    def classify_corner(self, corner: Ref) -> str:
        if not self.has_corner(corner):
            raise ComplexError(f"corner {corner!r} is not in the complex")
        if self.is_singular(corner):
            return "prong"
        for L in self.lozenges_at(corner):
            k = self.corner_slot(L, corner)
            if self.side_partner(L, 2 * k) or self.side_partner(L, 2 * k + 1):
                return "pivot"
        return "plain"

    def iter_base_lozenges(self) -> Iterable[Ref]:
        for lab in sorted(self.lozenges):
            yield (lab, 0)


def make_complex(corners, lozenges, side_sharing=(), periodic=False, name="") -> LozengeComplex:
    """Friendly constructor.

    ``lozenges`` maps a label to ``(corner0, corner1)`` or
    ``(corner0, corner1, wandering)``; a corner is a label or ``(label, offset)``.
    ``side_sharing`` entries are ``(lozenge, slot, lozenge, slot)`` with an
    optional fifth item, the copy offset of the second lozenge.
    """
    def cref(c):
        if isinstance(c, (tuple, list)):
            return (str(c[0]), int(c[1]))
        return (str(c), 0)

    lz = {}
    for lab, spec in lozenges.items():
        c0, c1 = spec[0], spec[1]
        wand = bool(spec[2]) if len(spec) > 2 else True
        lz[str(lab)] = BaseLozenge((cref(c0), cref(c1)), wand)
    shares = []
    for entry in side_sharing:
        l1, s1, l2, s2 = entry[:4]
        d = int(entry[4]) if len(entry) > 4 else 0
        shares.append(((str(l1), parse_slot(s1)), (str(l2), d, parse_slot(s2))))
    return LozengeComplex({str(k): int(v) for k, v in corners.items()}, lz, shares, periodic, name)


@dataclass(frozen=True)
class Automorphism:
    """Label permutation plus copy offsets, for corners and lozenges.

    ``corner_map[c] = (c2, d)`` sends ``(c, n)`` to ``(c2, n + d)``.
    Composition ``(g * h)(x) = g(h(x))``.
    """

    corner_map: tuple
    lozenge_map: tuple
    name: str = ""

    @classmethod
    def from_maps(cls, corner_map: dict, lozenge_map: dict, name="") -> "Automorphism":
        def norm(m):
            return tuple(sorted((str(k), (str(v[0]), int(v[1]))) for k, v in m.items()))

        return cls(norm(corner_map), norm(lozenge_map), name)

    @classmethod
    def translation(cls, cx: LozengeComplex, shift: int, name="") -> "Automorphism":
        if shift and not cx.periodic:
            raise ComplexError("translations need a periodic complex")
        return cls.from_maps(
            {c: (c, shift) for c in cx.corners},
            {l: (l, shift) for l in cx.lozenges},
            name or f"t^{shift}",
        )

    @property
    def cmap(self) -> dict:
        return dict(self.corner_map)

    @property
    def lmap(self) -> dict:
        return dict(self.lozenge_map)

    def corner(self, ref: Ref) -> Ref:
        c2, d = self.cmap[ref[0]]
        return (c2, ref[1] + d)

    def lozenge(self, ref: Ref) -> Ref:
        l2, d = self.lmap[ref[0]]
        return (l2, ref[1] + d)

    __call__ = lozenge

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        def comp(f, g):
            out = {}
            for k, (k1, d1) in g.items():
                k2, d2 = f[k1]
                out[k] = (k2, d1 + d2)
            return out

        name = f"{self.name}{other.name}" if self.name or other.name else ""
        return Automorphism.from_maps(comp(self.cmap, other.cmap), comp(self.lmap, other.lmap), name)

    def inverse(self) -> "Automorphism":
        def inv(f):
            return {k2: (k, -d) for k, (k2, d) in f.items()}

        return Automorphism.from_maps(inv(self.cmap), inv(self.lmap), f"({self.name})^-1" if self.name else "")

    def is_identity(self) -> bool:
        return all(k == v[0] and v[1] == 0 for k, v in self.corner_map + self.lozenge_map)

    def same_map(self, other: "Automorphism") -> bool:
        return self.corner_map == other.corner_map and self.lozenge_map == other.lozenge_map

    def validate(self, cx: LozengeComplex) -> None:
        """Raise ComplexError unless this preserves all structure of ``cx``."""
        cm, lm = self.cmap, self.lmap
        if set(cm) != set(cx.corners) or sorted(v[0] for v in cm.values()) != sorted(cx.corners):
            raise ComplexError(f"{self.name or 'automorphism'}: corner map is not a bijection")
        if set(lm) != set(cx.lozenges) or sorted(v[0] for v in lm.values()) != sorted(cx.lozenges):
            raise ComplexError(f"{self.name or 'automorphism'}: lozenge map is not a bijection")
        if not cx.periodic and any(v[1] for v in list(cm.values()) + list(lm.values())):
            raise ComplexError("offsets need a periodic complex")
        for c in cx.corners:
            if cx.corners[c] != cx.corners[cm[c][0]]:
                raise ComplexError(f"corner {c!r}: prong count not preserved")
        for lab in cx.lozenges:
            L = (lab, 0)
            gL = self.lozenge(L)
            if cx.wandering(L) != cx.wandering(gL):
                raise ComplexError(f"lozenge {lab!r}: wandering flag not preserved")
            img = tuple(self.corner(c) for c in cx.corners_of(L))
            if set(img) != set(cx.corners_of(gL)):
                raise ComplexError(f"lozenge {lab!r}: corners not mapped to corners of its image")
            for s in range(4):
                hit = cx.side_partner(L, s)
                gs = self.image_slot(cx, L, s)
                ghit = cx.side_partner(gL, gs)
                if hit is None:
                    if ghit is not None:
                        raise ComplexError(f"lozenge {lab!r}: side sharing not preserved")
                    continue
                L2, s2 = hit
                want = (self.lozenge(L2), self.image_slot(cx, L2, s2))
                if ghit != want:
                    raise ComplexError(f"lozenge {lab!r}: side sharing not preserved")

    def image_slot(self, cx: LozengeComplex, ref: Ref, slot: int) -> int:
        corner = cx.corners_of(ref)[slot_corner(slot)]
        k = cx.corner_slot(self.lozenge(ref), self.corner(corner))
        return 2 * k + slot % 2


def word_element(generators: dict, word) -> Automorphism:
    """Evaluate a word given as a sequence of ``(name, exponent)``."""
    out = None
    for name, e in word:
        g = generators[name] if e > 0 else generators[name].inverse()
        for _ in range(abs(e)):
            out = g if out is None else out * g
    if out is None:
        raise ValueError("empty word")
    return out
