"""Ends and lines of the universal cover of a one-vertex ribbon graph.

The cover is a tree whose vertices are the elements of the free group; a
vertex inherits the cyclic order of half-edge ends, which makes the tree
planar and orders its space of ends cyclically.  Ends are stored as
ultimately periodic reduced rays ``prefix + period**inf`` read from the
identity vertex.  Lines are pairs of ends.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import words as W
from .surface import RibbonSurface

End = tuple[W.Word, W.Word]


def letter(e: End, k: int) -> int:
    prefix, period = e
    if k < len(prefix):
        return prefix[k]
    return period[(k - len(prefix)) % len(period)]


def ray(period: W.Word) -> End:
    """The end ``period**inf``; ``period`` must be cyclically reduced."""
    return ((), tuple(period))


def translate(g: W.Word, e: End) -> End:
    """Left multiply the end ``e`` by the reduced word ``g``."""
    prefix, period = e
    head = list(g)
    i = 0
    while head and head[-1] == -letter(e, i):
        head.pop()
        i += 1
    if i < len(prefix):
        return (tuple(head) + prefix[i:], period)
    return (tuple(head), W.rotate(period, i - len(prefix)))


def lcp(e1: End, e2: End) -> int:
    bound = max(len(e1[0]), len(e2[0])) + len(e1[1]) + len(e2[1])
    for k in range(bound):
        if letter(e1, k) != letter(e2, k):
            return k
    raise ValueError("ends coincide")


def cyclic_order(surface: RibbonSurface, e1: End, e2: End, e3: End) -> int:
    """+1 when three distinct ends are counterclockwise on the circle at infinity."""
    l12, l13, l23 = lcp(e1, e2), lcp(e1, e3), lcp(e2, e3)
    m = max(l12, l13, l23)
    ends = (e1, e2, e3)
    if l12 == l13 == l23:
        dirs = [letter(e, m) for e in ends]
    else:
        # exactly one pair branches deepest; the third end lies back toward the root
        pair = {(0, 1): l12, (0, 2): l13, (1, 2): l23}
        (i, j), _ = max(pair.items(), key=lambda kv: kv[1])
        back = -letter(ends[i], m - 1)
        dirs = [letter(e, m) if k in (i, j) else back for k, e in enumerate(ends)]
    return surface.cyc(*dirs)


@dataclass(frozen=True)
class Line:
    """Oriented bi-infinite geodesic of the tree given by its two ends."""

    tail: End
    head: End

    @classmethod
    def axis(cls, word: W.Word, g: W.Word = ()) -> "Line":
        """Translate by ``g`` of the axis of the cyclically reduced ``word`` through the root.

        The axis reads ``word`` forward from the root vertex.
        """
        return cls(translate(g, ray(W.inverse(word))), translate(g, ray(word)))

    def reversed(self) -> "Line":
        return Line(self.head, self.tail)

    def translate(self, g: W.Word) -> "Line":
        return Line(translate(g, self.tail), translate(g, self.head))


def side(surface: RibbonSurface, line: Line, e: End) -> int:
    """+1 if the end ``e`` lies to the left of the oriented ``line``."""
    return cyclic_order(surface, line.tail, line.head, e)


def crosses(surface: RibbonSurface, l1: Line, l2: Line) -> bool:
    return side(surface, l1, l2.tail) != side(surface, l1, l2.head)


def crossing_sign(surface: RibbonSurface, l1: Line, l2: Line) -> int:
    """+1 when ``l2`` passes from the right of ``l1`` to its left."""
    return side(surface, l1, l2.head)


def crosses_before(surface: RibbonSurface, line: Line, m1: Line, m2: Line) -> bool:
    """Whether ``m1`` crosses the oriented ``line`` before ``m2`` does.

    ``m1`` and ``m2`` must both cross ``line`` and must not cross each other.
    """
    r1 = m1.tail if side(surface, line, m1.tail) < 0 else m1.head
    r2 = m2.tail if side(surface, line, m2.tail) < 0 else m2.head
    return cyclic_order(surface, line.tail, r1, r2) > 0


def left_of(surface: RibbonSurface, l: Line, m: Line) -> bool:
    """For non-crossing lines sharing an edge: ``m`` runs on the left of ``l``."""
    return side(surface, l, m.head) > 0
