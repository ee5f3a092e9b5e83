"""Isotopy classes of simple closed curves as canonical cyclic words.

Intersection numbers are computed in the universal cover.  Two lifts that
meet share a unique maximal segment; translating its first vertex (in the
direction of the first curve) to the root gives one representative per
orbit, so crossings are enumerated by pairs of cyclic positions.  Whether a
shared segment is a crossing is read off the cyclic order at its two ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from typing import Iterator, NamedTuple, Optional

from . import tree as T
from . import words as W
from .surface import RibbonSurface


class CurveError(ValueError):
    pass


class NotSimple(CurveError):
    pass


class BudgetExceeded(CurveError):
    pass


class InvalidMappingClass(CurveError):
    pass


@dataclass(frozen=True)
class CurveClass:
    """An unoriented free homotopy class, stored as its canonical cyclic word."""

    word: W.Word
    rank: int

    def __str__(self) -> str:
        return W.format_word(self.word)

    def __repr__(self) -> str:
        return f"CurveClass({str(self)!r})"

    def __len__(self) -> int:
        return len(self.word)

    @property
    def sort_key(self):
        return (len(self.word), tuple(W.letter_key(x, self.rank) for x in self.word))

    def __lt__(self, other: "CurveClass") -> bool:
        return self.sort_key < other.sort_key


def canon_curve(surface: RibbonSurface, w) -> CurveClass:
    """Canonical class of a word given as text or as a letter tuple."""
    if isinstance(w, CurveClass):
        return w
    if isinstance(w, str):
        w = W.parse_word(w, surface.rank)
    return CurveClass(W.canonical_cyclic(w, surface.rank), surface.rank)


class Crossing(NamedTuple):
    """One transverse crossing between lifts, in orbit-representative form.

    ``i`` is the position on the first word where the shared segment starts,
    ``j`` the position on ``w`` (the second word, or its inverse when
    ``flipped``), ``length`` the number of shared edges and ``sign`` the
    crossing sign relative to the second word's own orientation.
    """

    i: int
    j: int
    flipped: bool
    length: int
    sign: int


def crossings(surface: RibbonSurface, u: W.Word, v: W.Word, same_class: bool = False) -> Iterator[Crossing]:
    n, m = len(u), len(v)
    cyc = surface.cyc
    for flipped, w in ((False, v), (True, W.inverse(v))):
        flag = -1 if flipped else 1
        for i in range(n):
            a_in = -u[i - 1]
            for j in range(m):
                if u[i - 1] == w[j - 1]:
                    continue
                ell = 0
                limit = n + m
                while ell < limit and u[(i + ell) % n] == w[(j + ell) % m]:
                    ell += 1
                if ell >= limit:
                    # identical lines: only possible between lifts of the same class
                    continue
                b_in = -w[j - 1]
                if ell == 0:
                    if flipped:
                        continue
                    a_out, b_out = u[i], w[j]
                    if a_in == b_out or a_out == b_in:
                        continue
                    if cyc(a_in, b_in, a_out) == cyc(a_in, b_out, a_out):
                        continue
                    sign = cyc(a_out, b_out, a_in)
                else:
                    d_x = u[i]
                    d_y = -u[(i + ell - 1) % n]
                    a_out, b_out = u[(i + ell) % n], w[(j + ell) % m]
                    s1 = cyc(d_x, a_in, b_in)
                    if s1 != cyc(d_y, a_out, b_out):
                        continue
                    sign = s1
                yield Crossing(i, j, flipped, ell, sign * flag)


class RelationProfile(NamedTuple):
    kind: str
    geo: int
    alg: int

    def to_dict(self) -> dict:
        return {"kind": self.kind, "geo": self.geo, "alg": self.alg}


def _kind(geo: int, alg: int) -> str:
    if geo == 0:
        return "disjoint"
    if geo == 1:
        return "perp"
    if geo == 2 and alg == 0:
        return "perp0"
    return "other"


@lru_cache(maxsize=None)
def _profile_words(surface: RibbonSurface, u: W.Word, v: W.Word) -> RelationProfile:
    geo = 0
    alg = 0
    for c in crossings(surface, u, v):
        geo += 1
        alg += c.sign
    return RelationProfile(_kind(geo, abs(alg)), geo, abs(alg))


def intersection_profile(surface: RibbonSurface, a: CurveClass, b: CurveClass) -> RelationProfile:
    if a == b:
        return RelationProfile("equal", 0, 0)
    if b.sort_key < a.sort_key:
        a, b = b, a
    return _profile_words(surface, a.word, b.word)


def geometric_intersection(surface: RibbonSurface, a: CurveClass, b: CurveClass) -> int:
    return intersection_profile(surface, a, b).geo


def self_intersection(surface: RibbonSurface, c: CurveClass) -> int:
    """Minimal number of self-crossings of a primitive class."""
    if W.is_proper_power(c.word):
        raise CurveError("self-intersection is only defined here for primitive classes")
    count = sum(1 for _ in crossings(surface, c.word, c.word))
    return count // 2


def is_peripheral(surface: RibbonSurface, c: CurveClass) -> bool:
    return c.word in surface.peripheral


def is_essential(surface: RibbonSurface, c: CurveClass) -> bool:
    """Primitive, simple and not parallel to a boundary component."""
    if W.is_proper_power(c.word) or is_peripheral(surface, c):
        return False
    return self_intersection(surface, c) == 0


def _cyclically_reduced_words(rank: int, length: int) -> Iterator[W.Word]:
    """Cyclically reduced words that can be canonical.

    A canonical word starts with its least letter, and no letter of the word
    or of its inverse sorts below that first letter, which prunes the search.
    """
    letters = list(range(1, rank + 1)) + list(range(-rank, 0))
    key = {x: W.letter_key(x, rank) for x in letters}
    word: list[int] = []

    def extend(allowed):
        if len(word) == length:
            if length == 1 or word[0] != -word[-1]:
                yield tuple(word)
            return
        for x in allowed:
            if word[-1] == -x:
                continue
            word.append(x)
            yield from extend(allowed)
            word.pop()

    for first in letters:
        k0 = key[first]
        allowed = [x for x in letters if key[x] >= k0 and key[-x] >= k0]
        if first not in allowed:
            continue
        word.append(first)
        yield from extend(allowed)
        word.pop()


def enumerate_curves(surface: RibbonSurface, max_len: int, budget: Optional[int] = None) -> list[CurveClass]:
    """All essential simple classes with canonical word length at most ``max_len``.

    ``budget`` caps the number of canonical candidate words examined.
    """
    if max_len < 1:
        raise CurveError("max_len must be positive")
    out = []
    examined = 0
    for length in range(1, max_len + 1):
        for w in _cyclically_reduced_words(surface.rank, length):
            if not W.is_canonical(w, surface.rank):
                continue
            examined += 1
            if budget is not None and examined > budget:
                raise BudgetExceeded(f"more than {budget} candidate classes")
            c = CurveClass(w, surface.rank)
            if is_essential(surface, c):
                out.append(c)
    out.sort(key=lambda c: c.sort_key)
    return out


# -- homology --------------------------------------------------------------


def intersection_form(surface: RibbonSurface) -> list[list[int]]:
    """Algebraic intersection numbers of the generator loops.

    Entry ``[i][j]`` is the sign of the single crossing of loops ``i+1`` and
    ``j+1`` after perturbing them off the vertex, or 0 when their ends do
    not interleave.  The sign convention is that of :func:`crossings`.
    """
    r = surface.rank
    form = [[0] * r for _ in range(r)]
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i == j:
                continue
            ps = [c.sign for c in crossings(surface, (i,), (j,))]
            form[i - 1][j - 1] = sum(ps)
    return form


def homology_class(surface: RibbonSurface, c: CurveClass) -> list[int]:
    return W.exponent_sums(c.word, surface.rank)


def algebraic_intersection(surface: RibbonSurface, a: CurveClass, b: CurveClass) -> int:
    form = intersection_form_cached(surface)
    ha, hb = homology_class(surface, a), homology_class(surface, b)
    r = surface.rank
    return sum(ha[i] * form[i][j] * hb[j] for i in range(r) for j in range(r))


@lru_cache(maxsize=None)
def _form(surface: RibbonSurface) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in intersection_form(surface))


def intersection_form_cached(surface: RibbonSurface):
    return _form(surface)


def is_separating_homological(surface: RibbonSurface, c: CurveClass) -> bool:
    """Mod-2 test: a simple closed curve separates iff it pairs to zero with every loop."""
    form = _form(surface)
    h = [x % 2 for x in homology_class(surface, c)]
    r = surface.rank
    return all(sum(h[i] * form[i][j] for i in range(r)) % 2 == 0 for j in range(r))


# -- mapping classes -------------------------------------------------------


@dataclass(frozen=True)
class Move:
    """Free-group automorphism given by generator images (identity elsewhere)."""

    name: str
    images: tuple[tuple[int, W.Word], ...]

    def as_dict(self) -> dict[int, W.Word]:
        return dict(self.images)


@dataclass(frozen=True)
class MappingClassWord:
    moves: tuple[Move, ...] = ()

    def __len__(self):
        return len(self.moves)

    def then(self, other: "MappingClassWord") -> "MappingClassWord":
        """Apply ``self`` first, then ``other``."""
        return MappingClassWord(self.moves + other.moves)

    def apply_word(self, w: W.Word) -> W.Word:
        for mv in self.moves:
            w = W.substitute(w, mv.as_dict())
        return w

    def names(self) -> list[str]:
        return [mv.name for mv in self.moves]


def explicit_move(name: str, images: dict[int, W.Word]) -> Move:
    return Move(name, tuple(sorted(images.items())))


def half_twist(surface: RibbonSurface, i: int, inverse: bool = False) -> Move:
    """Half-twist ``sigma_i`` of a planar surface, ``1 <= i <= n - 1``.

    For ``i < n - 1`` it swaps boundary circles ``i`` and ``i + 1`` via
    ``x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i``.  The last one swaps
    ``x_{n-1}`` with the outer circle ``x_n = (x_1 ... x_{n-1})^-1``.
    """
    if surface.genus != 0:
        raise InvalidMappingClass("half-twist presets are defined on planar surfaces")
    r = surface.rank
    if not 1 <= i <= r:
        raise InvalidMappingClass(f"sigma_{i} does not exist on this surface")
    if i < r:
        if not inverse:
            images = {i: (i, i + 1, -i), i + 1: (i,)}
        else:
            images = {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}
    else:
        head = tuple(range(1, r))
        if not inverse:
            images = {r: W.multiply(W.inverse(head), (-r,))}
        else:
            images = {r: W.multiply((-r,), W.inverse(head))}
    name = f"s{i}" + ("^-1" if inverse else "")
    return explicit_move(name, images)


def torus_twist(surface: RibbonSurface, which: str, inverse: bool = False) -> Move:
    """Twist presets on the handle generators: ``'a'`` is a <- ab, ``'b'`` is b <- ba."""
    if surface.genus < 1:
        raise InvalidMappingClass("torus twists need a handle")
    if which == "a":
        images = {1: (1, -2) if inverse else (1, 2)}
    elif which == "b":
        images = {2: (2, -1) if inverse else (2, 1)}
    else:
        raise InvalidMappingClass(f"unknown twist preset {which!r}")
    return explicit_move(f"t{which}" + ("^-1" if inverse else ""), images)


def check_move(surface: RibbonSurface, move: Move) -> None:
    """Raise :class:`InvalidMappingClass` unless ``move`` permutes the boundary classes."""
    images = move.as_dict()
    gens = [images.get(k, (k,)) for k in range(1, surface.rank + 1)]
    if any(not g for g in gens):
        raise InvalidMappingClass(f"{move.name} kills a generator")
    out = set()
    for walk in surface.boundary_walks:
        img = W.substitute(walk, images)
        if not W.cyclic_reduce(img):
            raise InvalidMappingClass(f"{move.name} kills a boundary class")
        out.add(W.canonical_cyclic(img, surface.rank))
    if out != set(surface.peripheral):
        raise InvalidMappingClass(f"{move.name} does not preserve the peripheral structure")


def apply_mapping_class(surface: RibbonSurface, m: MappingClassWord, c: CurveClass) -> CurveClass:
    for mv in m.moves:
        check_move(surface, mv)
    return canon_curve(surface, m.apply_word(c.word))


# -- cutting ---------------------------------------------------------------
#
# The surface is the vertex disk with one band per generator.  A simple class
# in minimal position is a set of strands, one per letter, through the bands
# and one chord per letter junction across the disk.  Strand order inside a
# band comes from the order of the corresponding lifts along the edge of the
# tree, which is where the cyclic order at infinity is used.


def _strands(surface: RibbonSurface, u: W.Word) -> dict[int, list[int]]:
    """For each end, the junction indices whose chords touch it, counterclockwise."""
    n = len(u)
    lines: dict[int, list[tuple[int, T.Line]]] = {e: [] for e in surface.cyclic_order}
    for i in range(n):
        axis = T.Line.axis(W.rotate(u, i))
        lines[u[i]].append((i, axis))
        lines[-u[i - 1]].append((i, axis.reversed()))

    # a strand lying further left (looking outward) comes later counterclockwise
    def cmp(x, y):
        return 1 if T.left_of(surface, y[1], x[1]) else -1

    return {e: [i for i, _ in sorted(items, key=cmp_to_key(cmp))] for e, items in lines.items()}


def _chords_cross(p: tuple[int, int], q: tuple[int, int]) -> bool:
    a, b = sorted(p)
    c, d = sorted(q)
    return (a < c < b) != (a < d < b)


def cut_along(surface: RibbonSurface, c: CurveClass) -> list[tuple[int, int]]:
    """Types ``(g, n)`` of the pieces of the surface cut along ``c``.

    Pieces are sorted; new boundary circles are counted, so the total number
    of boundary circles is ``n + 2``.
    """
    u = c.word
    if W.is_proper_power(u) or self_intersection(surface, c) != 0:
        raise NotSimple(f"{c} is not a simple closed curve")
    n = len(u)
    order = _strands(surface, u)
    counts = {e: len(order[e]) for e in order}

    # disk boundary as a cyclic sequence of atoms; chord endpoints are points
    atoms: list[tuple] = []
    point_at: dict[tuple[int, int], int] = {}
    for e in surface.cyclic_order:
        for t in range(counts[e]):
            atoms.append(("gap", e, t))
            point_at[(e, t)] = len(atoms)
            atoms.append(("pt", e, t))
        atoms.append(("gap", e, counts[e]))
        atoms.append(("corner", e))
    slot = {e: {i: t for t, i in enumerate(order[e])} for e in order}
    partner: dict[int, int] = {}
    chords = []
    for i in range(n):
        p = point_at[(-u[i - 1], slot[-u[i - 1]][i])]
        q = point_at[(u[i], slot[u[i]][i])]
        partner[p], partner[q] = q, p
        chords.append((p, q))
    for k in range(len(chords)):
        for l in range(k):
            if _chords_cross(chords[k], chords[l]):
                raise CurveError(f"model bug: chords of {c} cross")
    for e in range(1, surface.rank + 1):
        # the band is untwisted: slot t on one side is slot count-1-t on the other
        for t, i in enumerate(order[e]):
            other = (i + 1) % n if u[i] == e else (i - 1) % n
            if slot[-e][other] != counts[e] - 1 - t:
                raise CurveError(f"model bug: strands of {c} twist inside band {e}")

    # regions: walk along the circle and jump across chords
    size = len(atoms)
    region = [-1] * size
    count = 0
    for start in range(size):
        if atoms[start][0] == "pt" or region[start] >= 0:
            continue
        k = start
        while region[k] < 0:
            region[k] = count
            k = (k + 1) % size
            if atoms[k][0] == "pt":
                k = (partner[k] + 1) % size
        count += 1
    if count != len(chords) + 1:
        raise CurveError(f"model bug: {count} regions for {len(chords)} chords")
    index = {a: k for k, a in enumerate(atoms) if a[0] != "pt"}

    parent = list(range(count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    bands = []
    for e in range(1, surface.rank + 1):
        for t in range(counts[e] + 1):
            r1 = region[index[("gap", e, t)]]
            r2 = region[index[("gap", -e, counts[e] - t)]]
            bands.append(r1)
            parent[find(r1)] = find(r2)
    comps = sorted({find(r) for r in range(count)})
    chi = {k: 0 for k in comps}
    for r in range(count):
        chi[find(r)] += 1
    for r in bands:
        chi[find(r)] -= 1
    boundary = {k: (2 if len(comps) == 1 else 1) for k in comps}
    for face in surface.faces:
        # a face runs through the corner after end -h for each of its ends h
        boundary[find(region[index[("corner", -face[0])]])] += 1
    out = []
    for k in comps:
        g2 = 2 - chi[k] - boundary[k]
        if g2 < 0 or g2 % 2:
            raise CurveError(f"model bug: piece with chi {chi[k]} and {boundary[k]} boundary circles")
        out.append((g2 // 2, boundary[k]))
    if sum(chi.values()) != surface.euler_characteristic or sum(b for _, b in out) != surface.boundary_count + 2:
        raise CurveError("model bug: cut bookkeeping does not add up")
    return sorted(out)


def classify_curve(surface: RibbonSurface, c: CurveClass, check: bool = True) -> str:
    """``nonseparating``, ``separating`` or ``boundary_class``.

    The fast path is the mod-2 homology test; with ``check`` the cut is
    computed as well and the two must agree.
    """
    separating = is_separating_homological(surface, c)
    pieces = cut_along(surface, c) if (check or separating) else None
    if pieces is not None and separating != (len(pieces) == 2):
        raise CurveError(f"model bug: homology and cut disagree on {c}")
    if not separating:
        return "nonseparating"
    return "boundary_class" if (0, 3) in pieces else "separating"


def boundary_walks(surface: RibbonSurface) -> list[CurveClass]:
    return [CurveClass(w, surface.rank) for w in surface.boundary_walks]
