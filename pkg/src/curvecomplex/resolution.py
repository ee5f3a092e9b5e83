"""The resolution product of curve classes and the reduction machinery built on it.

A crossing of ``a`` and ``b`` is smoothed so that a traveller along ``a``
turns onto ``b``.  For a single crossing this is the based product of the two
loops.  For two crossings of opposite sign, based at the first crossing
``p1`` with ``a = x a2`` and ``b = y b2`` (``x``, ``y`` the arcs from ``p1``
to ``p2``), the smoothed loop is ``x y^-1 a2^-1 b2 = g A^-1 g B`` with
``g = x y^-1``.  Everything is read off lines in the universal cover.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Union

from . import tree as T
from . import words as W
from .curves import (
    CurveClass,
    CurveError,
    canon_curve,
    crossings,
    enumerate_curves,
    intersection_profile,
    is_essential,
)
from .surface import RibbonSurface


class ResolutionError(ValueError):
    pass


class NotTopRelated(ResolutionError):
    pass


class PreconditionFailed(ResolutionError):
    pass


class SearchExhausted(ResolutionError):
    pass


# Orientation convention: with ``+1`` the product a*b on the punctured torus
# is the class of the word "ab" (slope 1/1 in the chart a -> inf, b -> 0).
TURN = 1


def _oriented_crossings(surface: RibbonSurface, u: W.Word, v: W.Word) -> list[tuple[int, int, int]]:
    """Crossings as ``(i, j, sign)`` where the axes of ``rotate(u, i)`` and ``rotate(v, j)`` cross."""
    m = len(v)
    out = []
    for c in crossings(surface, u, v):
        j = (m - c.j) % m if c.flipped else c.j
        la = T.Line.axis(W.rotate(u, c.i))
        lb = T.Line.axis(W.rotate(v, j))
        if not T.crosses(surface, la, lb):
            raise CurveError("model bug: enumerated crossing lines do not cross")
        out.append((c.i, j, T.crossing_sign(surface, la, lb)))
    return out


def _prefix(word: W.Word, d: int) -> W.Word:
    """Group element reached after ``d`` steps along the axis of ``word`` (``d`` may be negative)."""
    n = len(word)
    if d >= 0:
        return W.multiply(W.power(word, d // n), word[: d % n])
    return _prefix(W.inverse(word), -d)


def _resolve_words(surface: RibbonSurface, u: W.Word, v: W.Word, kind: str) -> W.Word:
    cr = _oriented_crossings(surface, u, v)
    if kind == "perp":
        (i, j, s), = cr
        return W.multiply(W.rotate(u, i), W.power(W.rotate(v, j), TURN * s))
    # perp0: base at the crossing where the traveller turns forward onto b
    (c1, c2) = cr
    if TURN * c1[2] < 0:
        c1, c2 = c2, c1
    i1, j1, _ = c1
    i2, j2, _ = c2
    A = W.rotate(u, i1)
    B = W.rotate(v, j1)
    la = T.Line.axis(A)
    lb = T.Line.axis(B)
    n, m = len(u), len(v)
    g_a = _first(surface, la, lb, A, n, (i2 - i1) % n, lambda g: T.Line.axis(W.rotate(v, j2), g), n + m)
    g_b = _first(surface, lb, la, B, m, (j2 - j1) % m, lambda g: T.Line.axis(W.rotate(u, i2), g), n + m)
    gamma = W.multiply(g_a, W.inverse(g_b))
    return W.multiply(gamma, W.inverse(A), gamma, B)


def _first(surface, line, here, word, n, d0, make, reach) -> W.Word:
    """Translate of the next crossing along ``line`` after the one with ``here``.

    One crossing of the wanted type sits on each period of ``line``, at
    offsets ``d0 + k n``.  Shared segments may be longer than a period, so
    offsets are tried over a window of ``reach`` letters and the nearest one
    ahead is chosen with :func:`tree.crosses_before`.
    """
    k = reach // n + 2
    ahead = []
    for d in range(d0 - k * n, d0 + (k + 1) * n, n):
        g = _prefix(word, d)
        other = make(g)
        if T.crosses(surface, line, other) and T.crosses_before(surface, line, here, other):
            ahead.append((g, other))
    if not ahead:
        raise CurveError("model bug: no crossing found after the base crossing")
    best = ahead[0]
    for cand in ahead[1:]:
        if T.crosses_before(surface, line, cand[1], best[1]):
            best = cand
    return best[0]


def resolve_curves(surface: RibbonSurface, a: CurveClass, b: CurveClass) -> CurveClass:
    """The class ``a*b`` obtained by smoothing every crossing of ``a`` and ``b``."""
    return _resolve_cached(surface, a, b)


@lru_cache(maxsize=None)
def _resolve_cached(surface: RibbonSurface, a: CurveClass, b: CurveClass) -> CurveClass:
    prof = intersection_profile(surface, a, b)
    if prof.kind not in ("perp", "perp0"):
        raise NotTopRelated(f"{a} and {b} are {prof.kind}, not perp or perp0")
    w = _resolve_words(surface, a.word, b.word, prof.kind)
    r = canon_curve(surface, w)
    if not is_essential(surface, r):
        raise CurveError(f"model bug: smoothing {a} and {b} gives the non-simple {r}")
    for x in (a, b):
        if intersection_profile(surface, r, x).kind != prof.kind:
            raise CurveError(f"model bug: {r} is not {prof.kind} to {x}")
    return r


def is_top(surface: RibbonSurface, a: CurveClass, b: CurveClass) -> bool:
    return intersection_profile(surface, a, b).kind in ("perp", "perp0")


# -- Fenchel-Nielsen systems and generator expressions ---------------------


@dataclass(frozen=True)
class FNSystem:
    classes: tuple[CurveClass, ...]

    def __post_init__(self):
        if not self.classes:
            raise PreconditionFailed("an FN system needs at least one class")

    def check(self, surface: RibbonSurface) -> None:
        cs = self.classes
        for i in range(len(cs)):
            for j in range(i):
                if intersection_profile(surface, cs[i], cs[j]).kind != "disjoint":
                    raise PreconditionFailed(f"{cs[i]} and {cs[j]} are not disjoint")

    def is_maximal(self, surface: RibbonSurface) -> bool:
        return len(self.classes) == 3 * surface.genus + surface.boundary_count - 3

    def first(self, k: int) -> "FNSystem":
        """The same system with ``classes[k]`` moved to the front."""
        cs = list(self.classes)
        return FNSystem(tuple([cs[k]] + cs[:k] + cs[k + 1 :]))


def in_generating_set(surface: RibbonSurface, fn: FNSystem, a: CurveClass) -> bool:
    return all(intersection_profile(surface, a, x).kind in ("equal", "disjoint", "perp", "perp0") for x in fn.classes)


@dataclass(frozen=True)
class Leaf:
    curve: CurveClass

    def to_json(self):
        return ["leaf", str(self.curve)]


@dataclass(frozen=True)
class Mul:
    left: "Expression"
    right: "Expression"

    def to_json(self):
        return ["mul", self.left.to_json(), self.right.to_json()]


Expression = Union[Leaf, Mul]


def evaluate(surface: RibbonSurface, e: Expression) -> CurveClass:
    if isinstance(e, Leaf):
        return e.curve
    return resolve_curves(surface, evaluate(surface, e.left), evaluate(surface, e.right))


def leaves(e: Expression) -> list[CurveClass]:
    if isinstance(e, Leaf):
        return [e.curve]
    return leaves(e.left) + leaves(e.right)


def depth(e: Expression) -> int:
    if isinstance(e, Leaf):
        return 0
    return 1 + max(depth(e.left), depth(e.right))


def expression_to_json(e: Expression) -> str:
    return json.dumps(e.to_json())


def expression_from_json(surface: RibbonSurface, data) -> Expression:
    if isinstance(data, str):
        data = json.loads(data)
    if data[0] == "leaf":
        return Leaf(canon_curve(surface, data[1]))
    if data[0] == "mul":
        return Mul(expression_from_json(surface, data[1]), expression_from_json(surface, data[2]))
    raise ValueError(f"unknown expression node {data[0]!r}")


# -- reduction -------------------------------------------------------------


def _geo(surface, x, y) -> int:
    return intersection_profile(surface, x, y).geo


def check_reduction(surface: RibbonSurface, fn: FNSystem, a: CurveClass, b1: CurveClass, b2: CurveClass) -> list[str]:
    """Violated parts of the reduction contract for the split ``a = b1*b2`` (empty when it holds)."""
    bad = []
    if not is_top(surface, b1, b2):
        return ["the two factors are not perp or perp0"]
    if resolve_curves(surface, b1, b2) != a:
        bad.append("b1*b2 differs from a")
    other = resolve_curves(surface, b2, b1)
    first, rest = fn.classes[0], fn.classes[1:]
    ia = _geo(surface, a, first)
    for name, x in (("b1", b1), ("b2", b2), ("b2*b1", other)):
        if not _geo(surface, x, first) < ia:
            bad.append(f"I({name}, a1) is not below I(a, a1) = {ia}")
        for k, y in enumerate(rest, start=2):
            if _geo(surface, x, y) > _geo(surface, a, y):
                bad.append(f"I({name}, a{k}) exceeds I(a, a{k})")
    return bad


def reduce_step(
    surface: RibbonSurface,
    fn: FNSystem,
    a: CurveClass,
    max_len: Optional[int] = None,
    pool: Optional[Iterable[CurveClass]] = None,
) -> tuple[CurveClass, CurveClass]:
    """A split ``a = b1*b2`` satisfying every inequality of the reduction lemma.

    Found by certified search over classes of length at most ``max_len``
    (default ``len(a) + 2``), shortest first.
    """
    first = fn.classes[0]
    prof = intersection_profile(surface, a, first)
    if prof.geo < 2 or prof.kind == "perp0":
        raise PreconditionFailed(f"I({a}, {first}) = {prof.geo} ({prof.kind}); need at least 2 and not perp0")
    if max_len is None:
        max_len = len(a) + 2
    if pool is None:
        pool = enumerate_curves(surface, max_len)
    ia = prof.geo
    cands = sorted(
        (x for x in pool if len(x) <= max_len and x != a and is_top(surface, x, a) and _geo(surface, x, first) < ia),
        key=lambda c: c.sort_key,
    )
    for b1 in cands:
        for b2 in cands:
            if b1 == b2 or not is_top(surface, b1, b2):
                continue
            if resolve_curves(surface, b1, b2) != a:
                continue
            if not check_reduction(surface, fn, a, b1, b2):
                return b1, b2
    raise SearchExhausted(f"no split of {a} among classes of length <= {max_len}")


def express(
    surface: RibbonSurface,
    fn: FNSystem,
    a: CurveClass,
    max_len: Optional[int] = None,
    pool: Optional[list[CurveClass]] = None,
) -> Expression:
    """Write ``a`` as an iterated product of classes from the generating set of ``fn``.

    Each step splits by the first system class ``a`` is not related to; the
    total intersection with the system drops strictly, so this terminates.
    """
    for k, x in enumerate(fn.classes):
        if not in_generating_set(surface, FNSystem((x,)), a):
            b1, b2 = reduce_step(surface, fn.first(k), a, max_len=max_len, pool=pool)
            return Mul(express(surface, fn, b1, max_len, pool), express(surface, fn, b2, max_len, pool))
    return Leaf(a)
