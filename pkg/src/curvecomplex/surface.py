"""One-vertex ribbon graph spines of compact surfaces with boundary.

Half-edge ends are signed integers: ``+k`` is the end where generator ``k``
leaves the vertex and ``-k`` the end where it comes back.  A letter ``x``
therefore leaves through end ``x`` and arrives through end ``-x``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from . import words as W


class SurfaceError(ValueError):
    pass


class UnsupportedSurface(SurfaceError):
    pass


class ModelMismatch(SurfaceError):
    pass


CATALOG = {(1, 1), (0, 4), (0, 5), (1, 2), (0, 6), (1, 3)}


def _end_name(e: int) -> str:
    return W.format_word((abs(e),)) + ("+" if e > 0 else "-")


def _parse_end(text: str) -> int:
    k = ord(text[0]) - ord("a") + 1
    return k if text[1] == "+" else -k


@dataclass(frozen=True, eq=False)
class RibbonSurface:
    rank: int
    cyclic_order: tuple[int, ...]
    genus: int
    boundary_count: int

    def __post_init__(self):
        if sorted(self.cyclic_order) != sorted(list(range(1, self.rank + 1)) + list(range(-self.rank, 0))):
            raise SurfaceError("cyclic order must list every half-edge end exactly once")

    def __eq__(self, other):
        return isinstance(other, RibbonSurface) and self.cyclic_order == other.cyclic_order

    def __hash__(self):
        return hash(self.cyclic_order)

    def __repr__(self):
        return f"RibbonSurface(g={self.genus}, n={self.boundary_count})"

    @property
    def euler_characteristic(self) -> int:
        return 1 - self.rank

    @cached_property
    def position(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.cyclic_order)}

    def next_end(self, e: int) -> int:
        i = self.position[e]
        return self.cyclic_order[(i + 1) % len(self.cyclic_order)]

    def cyc(self, a: int, b: int, c: int) -> int:
        """+1 when ends ``a, b, c`` are counterclockwise around the vertex."""
        pos = self.position
        n = len(self.cyclic_order)
        pa = pos[a]
        return 1 if (pos[b] - pa) % n < (pos[c] - pa) % n else -1

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Boundary walks as raw letter sequences, found by face tracing."""
        seen: set[int] = set()
        faces = []
        for start in self.cyclic_order:
            if start in seen:
                continue
            walk = []
            h = start
            while h not in seen:
                seen.add(h)
                walk.append(h)
                h = self.next_end(-h)
            faces.append(tuple(walk))
        return tuple(faces)

    @cached_property
    def boundary_walks(self) -> tuple[W.Word, ...]:
        return tuple(W.canonical_cyclic(f, self.rank) for f in self.faces)

    @cached_property
    def peripheral(self) -> frozenset:
        return frozenset(self.boundary_walks)

    def to_dict(self) -> dict:
        return {
            "g": self.genus,
            "n": self.boundary_count,
            "cyclic_order": [_end_name(e) for e in self.cyclic_order],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "RibbonSurface":
        if "cyclic_order" not in data:
            return build_surface(data["g"], data["n"])
        order = tuple(_parse_end(t) for t in data["cyclic_order"])
        return _checked(len(order) // 2, order, data["g"], data["n"])


def _checked(rank: int, order: tuple[int, ...], g: int, n: int) -> RibbonSurface:
    s = RibbonSurface(rank, order, g, n)
    faces = len(s.faces)
    derived_g, rem = divmod(2 - s.euler_characteristic - faces, 2)
    if rem or faces != n or derived_g != g:
        raise ModelMismatch(f"face tracing gives (g, n) = ({derived_g}, {faces}), expected ({g}, {n})")
    return s


def is_supported(g: int, n: int) -> bool:
    return (g, n) in CATALOG or (g == 0 and n >= 3)


def build_surface(g: int, n: int) -> RibbonSurface:
    """Standard spine of the genus ``g`` surface with ``n`` boundary circles.

    Genus 0 uses the rose ``x1 ... x_{n-1}`` with end order
    ``(x1+, x1-, x2+, x2-, ...)``; genus 1 puts ``(a+, b+, a-, b-)`` in front.
    """
    if not is_supported(g, n):
        raise UnsupportedSurface(f"surface ({g}, {n}) is outside the supported catalog")
    rank = 2 * g + n - 1
    order: list[int] = []
    k = 1
    for _ in range(g):
        order += [k, k + 1, -k, -(k + 1)]
        k += 2
    while k <= rank:
        order += [k, -k]
        k += 1
    return _checked(rank, tuple(order), g, n)
