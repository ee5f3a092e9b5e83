"""Exact arithmetic on the Farey graph: slopes, the resolution product and PSL(2,Z)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional


class SlopeError(ValueError):
    pass


class ZeroSlopePair(SlopeError):
    pass


class NotFareyRelated(SlopeError):
    pass


class InsufficientData(SlopeError):
    pass


class Inconsistent(SlopeError):
    pass


@dataclass(frozen=True, order=True)
class Slope:
    """Reduced fraction ``p/q`` with ``q > 0``, or ``1/0`` for infinity.

    Build instances through :func:`canon`; the constructor does not normalise.
    """

    p: int
    q: int

    def __str__(self) -> str:
        return "inf" if self.q == 0 else f"{self.p}/{self.q}"

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        if text in ("inf", "oo", "1/0", "-1/0"):
            return INF
        if "/" in text:
            p, q = text.split("/")
            return canon(int(p), int(q))
        return canon(int(text), 1)


def canon(p: int, q: int) -> Slope:
    """Canonical representative of the projective class of ``(p, q)``.

    >>> canon(2, 4), canon(-1, 0), canon(3, -6)
    (Slope(p=1, q=2), Slope(p=1, q=0), Slope(p=-1, q=2))
    """
    if p == 0 and q == 0:
        raise ZeroSlopePair("(0, 0) is not a slope")
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return Slope(p, q)


INF = Slope(1, 0)
ZERO = Slope(0, 1)
ONE = Slope(1, 1)


def det(s: Slope, t: Slope) -> int:
    return s.p * t.q - t.p * s.q


def farey_rel(s: Slope, t: Slope) -> bool:
    return abs(det(s, t)) == 1


def resolve(s: Slope, t: Slope) -> Slope:
    """Resolution product of two Farey neighbours: ``s + det(s, t) * t``."""
    lam = det(s, t)
    if abs(lam) != 1:
        raise NotFareyRelated(f"{s} and {t} are not Farey neighbours (det {lam})")
    return canon(s.p + lam * t.p, s.q + lam * t.q)


def _circle_key(s: Slope):
    return (1, 0) if s.q == 0 else (0, Fraction(s.p, s.q))


def circular_sign(a: Slope, b: Slope, c: Slope) -> int:
    """+1 if ``a, b, c`` occur in increasing cyclic order on R u {inf}, else -1.

    Increasing order on the real line is the counterclockwise order on the
    boundary of the upper half plane.
    """
    if len({a, b, c}) < 3:
        raise SlopeError("circular order needs three distinct slopes")
    ka, kb, kc = _circle_key(a), _circle_key(b), _circle_key(c)
    # rotate so that a comes first
    rb = (kb < ka, kb)
    rc = (kc < ka, kc)
    return 1 if rb < rc else -1


@dataclass(frozen=True)
class ModularMatrix:
    """Integer 2x2 matrix of determinant +-1 taken up to sign."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c) != 1:
            raise SlopeError("determinant must be +1 or -1")

    @classmethod
    def of(cls, a: int, b: int, c: int, d: int) -> "ModularMatrix":
        first = next(x for x in (a, b, c, d) if x != 0)
        if first < 0:
            a, b, c, d = -a, -b, -c, -d
        return cls(a, b, c, d)

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def reflect(self) -> bool:
        return self.determinant == -1

    def inverse(self) -> "ModularMatrix":
        e = self.determinant
        return ModularMatrix.of(e * self.d, -e * self.b, -e * self.c, e * self.a)

    def __matmul__(self, other: "ModularMatrix") -> "ModularMatrix":
        return ModularMatrix.of(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


IDENTITY = ModularMatrix(1, 0, 0, 1)


def act(m: ModularMatrix, s: Slope) -> Slope:
    return canon(m.a * s.p + m.b * s.q, m.c * s.p + m.d * s.q)


@dataclass(frozen=True)
class SlopeSet:
    elements: frozenset
    depth: int
    # False when max_depth was hit before a fixpoint (the non-fatal DepthExceeded flag)
    fixpoint: bool = True

    def to_json(self) -> str:
        return json.dumps(sorted(str(s) for s in self.elements))

    @classmethod
    def from_json(cls, text: str) -> "SlopeSet":
        return cls(frozenset(Slope.parse(t) for t in json.loads(text)), 0)

    def __contains__(self, s) -> bool:
        return s in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def closure(x: Iterable[Slope], max_depth: int) -> SlopeSet:
    """Iterate ``X <- X u {bc : b, c Farey, b, c, cb in X}`` up to ``max_depth`` times."""
    current = frozenset(x)
    if not current:
        raise SlopeError("closure of an empty set")
    depth = 0
    while depth < max_depth:
        new = set()
        for b in current:
            for c in current:
                if b != c and farey_rel(b, c) and resolve(c, b) in current:
                    bc = resolve(b, c)
                    if bc not in current:
                        new.add(bc)
        if not new:
            return SlopeSet(current, depth, True)
        current = current | new
        depth += 1
    # one more pass decides whether the last step happened to reach a fixpoint
    done = not any(
        b != c and farey_rel(b, c) and resolve(c, b) in current and resolve(b, c) not in current
        for b in current
        for c in current
    )
    return SlopeSet(current, depth, done)


def _frame(s1: Slope, s2: Slope, s3: Slope) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    # columns l1*s1, l2*s2 with l1*s1 + l2*s2 = s3, so (1,0),(0,1),(1,1) map to s1,s2,s3
    dd = det(s1, s2)
    if dd == 0:
        raise InsufficientData("sources must be pairwise distinct")
    l1 = Fraction(det(s3, s2), dd)
    l2 = Fraction(det(s1, s3), dd)
    return (l1 * s1.p, l2 * s2.p, l1 * s1.q, l2 * s2.q)


def fit_modular_map(pairs: list[tuple[Slope, Slope]]) -> ModularMatrix:
    """The projective integer matrix of determinant +-1 with ``act(M, s) == t`` for all pairs.

    Raises :class:`InsufficientData` for fewer than three distinct sources and
    :class:`Inconsistent` when no such matrix exists.
    """
    pairs = list(dict.fromkeys(pairs))
    sources = [s for s, _ in pairs]
    if len(set(sources)) != len(sources):
        raise Inconsistent("one source is sent to two different targets")
    if len(pairs) < 3:
        raise InsufficientData("at least three pairs are needed")
    (s1, t1), (s2, t2), (s3, t3) = pairs[:3]
    if len({t1, t2, t3}) < 3:
        raise Inconsistent("targets of distinct sources coincide")
    a11, a12, a21, a22 = _frame(s1, s2, s3)
    b11, b12, b21, b22 = _frame(t1, t2, t3)
    adet = a11 * a22 - a12 * a21
    # M = B * A^-1
    i11, i12, i21, i22 = a22 / adet, -a12 / adet, -a21 / adet, a11 / adet
    m = [
        b11 * i11 + b12 * i21,
        b11 * i12 + b12 * i22,
        b21 * i11 + b22 * i21,
        b21 * i12 + b22 * i22,
    ]
    denom = 1
    for x in m:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in m]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if abs(ints[0] * ints[3] - ints[1] * ints[2]) != 1:
        raise Inconsistent("the unique projective map is not in PGL(2, Z)")
    mat = ModularMatrix.of(*ints)
    for s, t in pairs:
        if act(mat, s) != t:
            raise Inconsistent(f"pair {s} -> {t} contradicts the fitted matrix")
    return mat


def try_fit_modular_map(pairs: list[tuple[Slope, Slope]]) -> Optional[ModularMatrix]:
    try:
        return fit_modular_map(pairs)
    except Inconsistent:
        return None


def common_neighbours(s: Slope, t: Slope, bound: int) -> list[Slope]:
    """Brute-force Farey common neighbours of ``s`` and ``t`` with ``|p|, |q| <= bound``."""
    out = set()
    for p in range(-bound, bound + 1):
        for q in range(0, bound + 1):
            if (p, q) == (0, 0) or gcd(p, q) != 1 or (q == 0 and p != 1):
                continue
            u = Slope(p, q)
            if u not in (s, t) and farey_rel(u, s) and farey_rel(u, t):
                out.add(u)
    return sorted(out)


def slopes_up_to(bound: int) -> list[Slope]:
    out = {canon(p, q) for p in range(-bound, bound + 1) for q in range(0, bound + 1) if (p, q) != (0, 0)}
    return sorted(out)
