"""Exhaustive checks of the combinatorial lemmas, the branched double cover and
the exceptional automorphism of the curve complex of the twice-holed torus.

Every verifier returns a :class:`VerificationReport`.  Quantifiers run over a
finite ball, so ``bounded`` is set whenever the statement is about all curves.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

import networkx as nx

from . import slopes as SL
from . import words as W
from .complex import (
    ChartInconsistent,
    ComplexBall,
    InsufficientOverlap,
    build_ball,
    check_transitions,
    fit_chart,
    max_separating_simplex,
    max_simplex,
)
from .curves import (
    CurveClass,
    MappingClassWord,
    Move,
    apply_mapping_class,
    canon_curve,
    check_move,
    classify_curve,
    cut_along,
    explicit_move,
    half_twist,
    intersection_profile,
    is_essential,
    torus_twist,
)
from .resolution import (
    FNSystem,
    SearchExhausted,
    check_reduction,
    evaluate,
    express,
    in_generating_set,
    is_top,
    leaves,
    reduce_step,
    resolve_curves,
)
from .surface import RibbonSurface, build_surface


class LabError(ValueError):
    pass


class WrongSurface(LabError):
    pass


class ConfigNotFound(LabError):
    pass


class NotEssential(LabError):
    pass


@dataclass
class VerificationReport:
    lemma: str
    checked: int = 0
    failures: list = field(default_factory=list)
    bounded: bool = True
    max_len: Optional[int] = None
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, text: str) -> None:
        self.failures.append(text)

    def to_dict(self) -> dict:
        out = {
            "lemma": self.lemma,
            "checked": self.checked,
            "failures": list(self.failures),
            "bounded": self.bounded,
            "max_len": self.max_len,
        }
        if self.notes:
            out["notes"] = self.notes
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


@lru_cache(maxsize=None)
def fixture_ball(g: int, n: int, max_len: int) -> ComplexBall:
    return build_ball(build_surface(g, n), max_len)


def _require(surface: RibbonSurface, *allowed: tuple[int, int]) -> None:
    if (surface.genus, surface.boundary_count) not in allowed:
        raise WrongSurface(f"surface ({surface.genus}, {surface.boundary_count}) not in {list(allowed)}")


def _disjoint(surface, x, y) -> bool:
    return intersection_profile(surface, x, y).kind == "disjoint"


def _meets(surface, x, y) -> bool:
    return intersection_profile(surface, x, y).geo > 0


# -- slope dictionaries ----------------------------------------------------


def slope_dictionary(surface: RibbonSurface, bound: int) -> dict[CurveClass, SL.Slope]:
    """Curves of the one-holed torus or four-holed sphere labelled by slopes ``|p|, |q| <= bound``.

    Grown from two perpendicular seeds by twist moves whose action on slopes
    is a fixed parabolic matrix; every class reached twice must get the same
    slope, which is checked.
    """
    key = (surface.genus, surface.boundary_count)
    if key == (1, 1):
        seeds = {canon_curve(surface, "a"): SL.INF, canon_curve(surface, "b"): SL.ZERO}
        gens = [
            (torus_twist(surface, "a"), SL.ModularMatrix(1, 0, 1, 1)),
            (torus_twist(surface, "b"), SL.ModularMatrix(1, 1, 0, 1)),
        ]
    elif key == (0, 4):
        seeds = {canon_curve(surface, "ab"): SL.INF, canon_curve(surface, "bc"): SL.ZERO}
        gens = [
            (half_twist(surface, 1), SL.ModularMatrix(1, 1, 0, 1)),
            (half_twist(surface, 2), SL.ModularMatrix(1, 0, -1, 1)),
        ]
    else:
        raise WrongSurface("slope dictionaries exist for the one-holed torus and the four-holed sphere")
    moves = []
    for mv, mat in gens:
        inv = _inverse_move(surface, mv)
        moves += [(mv, mat), (inv, mat.inverse())]
    table = dict(seeds)
    queue = deque(table)
    while queue:
        c = queue.popleft()
        for mv, mat in moves:
            t = SL.act(mat, table[c])
            if abs(t.p) > bound or t.q > bound:
                continue
            d = apply_mapping_class(surface, MappingClassWord((mv,)), c)
            if d in table:
                if table[d] != t:
                    raise LabError(f"slope dictionary is not well defined at {d}")
                continue
            table[d] = t
            queue.append(d)
    return table


def _inverse_move(surface: RibbonSurface, mv: Move) -> Move:
    if mv.name.startswith("s"):
        return half_twist(surface, int(mv.name[1:]), inverse=True)
    return torus_twist(surface, mv.name[1:], inverse=True)


def verify_farey(bound: int = 6) -> VerificationReport:
    """Word-model intersection numbers against ``|det|`` and ``2 |det|`` on all slopes up to ``bound``."""
    rep = VerificationReport("farey", bounded=False, max_len=None)
    expected = SL.slopes_up_to(bound)
    for (g, n), factor in (((1, 1), 1), ((0, 4), 2)):
        S = build_surface(g, n)
        table = slope_dictionary(S, bound)
        missing = set(expected) - set(table.values())
        if missing:
            rep.fail(f"({g},{n}): slopes {sorted(map(str, missing))[:5]} not reached")
        items = sorted(table.items(), key=lambda kv: kv[1])
        for (x, s), (y, t) in combinations(items, 2):
            rep.checked += 1
            prof = intersection_profile(S, x, y)
            if prof.geo != factor * abs(SL.det(s, t)):
                rep.fail(f"({g},{n}) {x}@{s} vs {y}@{t}: geo {prof.geo}, expected {factor * abs(SL.det(s, t))}")
        rep.notes[f"{g},{n}"] = len(items)
    return rep


def verify_resolution_slopes(bound: int = 6) -> VerificationReport:
    """``{st, ts}`` is the pair of mutually unrelated common Farey neighbours."""
    rep = VerificationReport("resolution-slopes", bounded=False)
    slopes = SL.slopes_up_to(bound)
    search = 2 * bound + 1
    for s, t in combinations(slopes, 2):
        if not SL.farey_rel(s, t):
            continue
        rep.checked += 1
        nbrs = SL.common_neighbours(s, t, search)
        pairs = {frozenset((u, v)) for u, v in combinations(nbrs, 2) if not SL.farey_rel(u, v)}
        got = frozenset((SL.resolve(s, t), SL.resolve(t, s)))
        if pairs != {got}:
            rep.fail(f"{s}, {t}: resolutions {sorted(map(str, got))}, brute force {[sorted(map(str, p)) for p in pairs]}")
    return rep


# -- lemma verifiers -------------------------------------------------------


def _induced_five_cycles(ball: ComplexBall) -> Iterable[tuple[int, ...]]:
    g = ball.disjointness_graph()
    adj = {v: set(g[v]) for v in g}
    for s in sorted(adj):
        for a in sorted(adj[s]):
            if a <= s:
                continue
            for b in sorted(adj[a]):
                if b <= s or b in adj[s] or b == s:
                    continue
                for c in sorted(adj[b]):
                    if c <= s or c in (a,) or c in adj[s] or c in adj[a]:
                        continue
                    for d in sorted(adj[c] & adj[s]):
                        if d <= s or d in (a, b) or d in adj[a] or d in adj[b] or d <= a:
                            continue
                        # d > a removes the reflected copy of the cycle
                        yield (s, a, b, c, d)


def verify_pentagon(ball: ComplexBall) -> VerificationReport:
    """Five classes with consecutive ones meeting and next-but-one disjoint are consecutively perp0."""
    _require(ball.surface, (0, 5))
    rep = VerificationReport("pentagon", max_len=ball.max_len)
    for cyc in _induced_five_cycles(ball):
        # a disjointness 5-cycle c0..c4 is the pentagon b = (c0, c3, c1, c4, c2)
        b = [ball.vertices[cyc[k]] for k in (0, 3, 1, 4, 2)]
        rep.checked += 1
        for k in range(5):
            kind = ball.relation(b[k], b[(k + 1) % 5]).kind
            if kind != "perp0":
                rep.fail(f"{[str(x) for x in b]}: pair {k} is {kind}")
    return rep


def verify_unique_common_neighbor(ball: ComplexBall) -> VerificationReport:
    _require(ball.surface, (0, 5), (1, 2))
    rep = VerificationReport("unique-common-neighbor", max_len=ball.max_len)
    verts = ball.vertices
    disj = {c: set(ball.disjoint_from(c)) for c in verts}
    histogram: dict[int, int] = {}
    for x, y in combinations(verts, 2):
        rep.checked += 1
        common = disj[x] & disj[y]
        histogram[len(common)] = histogram.get(len(common), 0) + 1
        if len(common) > 1:
            rep.fail(f"{x}, {y}: disjoint from {sorted(map(str, common))}")
    rep.notes["histogram"] = {str(k): v for k, v in sorted(histogram.items())}
    return rep


def find_config(surface: RibbonSurface, max_len: int = 4) -> tuple[CurveClass, ...]:
    """A configuration satisfying the hypotheses of the identity lemma on ``surface``.

    Five-holed sphere: ``alpha perp0 beta perp0 gamma`` with ``alpha, gamma``
    disjoint.  Twice-holed torus: ``alpha perp0 beta perp gamma perp delta``
    with ``alpha`` disjoint from ``gamma`` and ``delta`` and ``beta`` disjoint
    from ``delta``.
    """
    _require(surface, (0, 5), (1, 2))
    ball = fixture_ball(surface.genus, surface.boundary_count, max_len)
    vs = ball.vertices
    rel = ball.relation
    for beta in vs:
        for alpha in vs:
            if rel(alpha, beta).kind != "perp0":
                continue
            for gamma in vs:
                if (surface.genus, surface.boundary_count) == (0, 5):
                    if gamma != alpha and rel(beta, gamma).kind == "perp0" and rel(alpha, gamma).kind == "disjoint":
                        return alpha, beta, gamma
                    continue
                if rel(beta, gamma).kind != "perp" or rel(alpha, gamma).kind != "disjoint":
                    continue
                for delta in vs:
                    if (
                        rel(gamma, delta).kind == "perp"
                        and rel(alpha, delta).kind == "disjoint"
                        and rel(beta, delta).kind == "disjoint"
                    ):
                        return alpha, beta, gamma, delta
    raise ConfigNotFound(f"no configuration among classes of length <= {max_len}")


def verify_config_identities(surface: RibbonSurface, max_len: int = 4) -> VerificationReport:
    """Evaluate every relation claimed by the identity lemma on one explicit configuration."""
    _require(surface, (0, 5), (1, 2))
    cfg = find_config(surface, max_len)
    rep = VerificationReport("configs-" + ("0,5" if surface.genus == 0 else "1,2"), bounded=False, max_len=max_len)
    rep.notes["config"] = [str(c) for c in cfg]
    mul = lambda x, y: resolve_curves(surface, x, y)
    kind = lambda x, y: intersection_profile(surface, x, y).kind

    def claim(text: str, ok: bool):
        rep.checked += 1
        if not ok:
            rep.fail(text)

    if surface.genus == 0:
        al, be, ga = cfg
        ab, ba, gb, bg = mul(al, be), mul(be, al), mul(ga, be), mul(be, ga)
        claim("ab and gb are disjoint", kind(ab, gb) == "disjoint")
        claim("ab meets bg", _meets(surface, ab, bg))
        claim("ba meets gb", _meets(surface, ba, gb))
        claim("ba and bg are disjoint", kind(ba, bg) == "disjoint")
    else:
        al, be, ga, de = cfg
        ab, ba, gb, bg = mul(al, be), mul(be, al), mul(ga, be), mul(be, ga)
        dg, gd = mul(de, ga), mul(ga, de)
        claim("ab perp gb", kind(ab, gb) == "perp")
        claim("ab is not top-related to bg", not is_top(surface, ab, bg))
        claim("ba is not top-related to gb", not is_top(surface, ba, gb))
        claim("ba perp bg", kind(ba, bg) == "perp")
        claim("dg and bg are disjoint", kind(dg, bg) == "disjoint")
        claim("gd and gb are disjoint", kind(gd, gb) == "disjoint")
        claim("dg meets gb", _meets(surface, dg, gb))
        claim("gd meets bg", _meets(surface, gd, bg))
    return rep


def verify_cuts(ball: ComplexBall) -> VerificationReport:
    """Euler characteristic and boundary bookkeeping of every cut, and fast path against cut path."""
    S = ball.surface
    rep = VerificationReport(f"cuts-{S.genus},{S.boundary_count}", max_len=ball.max_len)
    for c in ball.vertices:
        rep.checked += 1
        pieces = cut_along(S, c)
        chi = sum(2 - 2 * g - n for g, n in pieces)
        if chi != S.euler_characteristic:
            rep.fail(f"{c}: pieces {pieces} have chi {chi}")
        if sum(n for _, n in pieces) != S.boundary_count + 2:
            rep.fail(f"{c}: pieces {pieces} do not have n + 2 boundary circles")
        fast = classify_curve(S, c, check=False)
        slow = "nonseparating" if len(pieces) == 1 else ("boundary_class" if (0, 3) in pieces else "separating")
        if fast != slow:
            rep.fail(f"{c}: homology says {fast}, cut says {slow}")
    return rep


# recorded thresholds: the smallest max_len where the clique sizes reach their values
DIMENSION_THRESHOLDS = {(0, 5): 2, (1, 2): 4, (1, 3): 4, (0, 6): 3}


def verify_dimensions(fixtures: Optional[dict] = None) -> VerificationReport:
    fixtures = fixtures or DIMENSION_THRESHOLDS
    rep = VerificationReport("dimensions")
    for (g, n), L in sorted(fixtures.items()):
        ball = fixture_ball(g, n, L)
        size, witness = max_simplex(ball)
        sep = max_separating_simplex(ball)
        rep.checked += 2
        if size != 3 * g + n - 3:
            rep.fail(f"({g},{n}) max_len {L}: max simplex {size}, expected {3 * g + n - 3}")
        if sep != 2 * g + n - 3:
            rep.fail(f"({g},{n}) max_len {L}: max separating simplex {sep}, expected {2 * g + n - 3}")
        rep.notes[f"{g},{n}"] = {"max_len": L, "fn": [str(c) for c in witness], "separating": sep}
    return rep


def verify_charts(max_len_torus: int = 6, max_len_sphere: int = 6, max_len_five: int = 4) -> VerificationReport:
    """Charts from every seed pair are relation exact and their transitions are in PGL(2, Z)."""
    rep = VerificationReport("charts")
    for (g, n), L in (((1, 1), max_len_torus), ((0, 4), max_len_sphere), ((0, 5), max_len_five)):
        ball = fixture_ball(g, n, L)
        charts = []
        for x, y in combinations(ball.vertices, 2):
            if not is_top(ball.surface, x, y):
                continue
            rep.checked += 1
            try:
                charts.append(fit_chart(ball, (x, y)))
            except ChartInconsistent as e:
                rep.fail(f"({g},{n}) seed {x}, {y}: {e}")
        transitions = 0
        for c1, c2 in combinations(charts, 2):
            try:
                m = check_transitions(c1, c2)
            except InsufficientOverlap:
                continue
            transitions += 1
            rep.checked += 1
            if m is None:
                rep.fail(f"({g},{n}) charts {c1.seed} and {c2.seed}: no PGL(2,Z) transition")
        rep.notes[f"{g},{n}"] = {"charts": len(charts), "transitions": transitions}
    return rep


def reduction_instances(surface: RibbonSurface, pool: list[CurveClass], fns: list[FNSystem], limit: Optional[int]):
    out = []
    for fn in fns:
        for a in pool:
            prof = intersection_profile(surface, a, fn.classes[0])
            if prof.geo >= 2 and prof.kind != "perp0":
                out.append((fn, a))
    return out if limit is None else out[:limit]


def verify_reduction(surface: RibbonSurface, instances, pool: list[CurveClass]) -> VerificationReport:
    """Run ``reduce_step`` and ``express`` on each instance and check their contracts."""
    rep = VerificationReport(f"reduction-{surface.genus},{surface.boundary_count}")
    for fn, a in instances:
        rep.checked += 1
        try:
            b1, b2 = reduce_step(surface, fn, a, max_len=max(len(c) for c in pool), pool=pool)
        except SearchExhausted as e:
            rep.fail(f"{a} over {[str(c) for c in fn.classes]}: {e}")
            continue
        bad = check_reduction(surface, fn, a, b1, b2)
        if bad:
            rep.fail(f"{a} = {b1}*{b2}: {bad}")
        try:
            e = express(surface, fn, a, max_len=max(len(c) for c in pool), pool=pool)
        except SearchExhausted as err:
            rep.fail(f"express {a}: {err}")
            continue
        if evaluate(surface, e) != a:
            rep.fail(f"express {a} does not evaluate back")
        if not all(in_generating_set(surface, fn, x) for x in leaves(e)):
            rep.fail(f"express {a} has a leaf outside the generating set")
    return rep


def reduction_suite(g: int, n: int) -> VerificationReport:
    """Reduction and expression contracts on the fixed sample used by the acceptance run.

    Σ_{1,1} and Σ_{0,4}: single-class systems at slopes inf, 0, 1, -1 and
    every α inside the 5-box, factors searched in the 7-box dictionary.
    Other surfaces: maximal systems from the length-6 ball and α of length
    at most 5, capped at 150 instances.
    """
    surface = build_surface(g, n)
    if (g, n) in ((1, 1), (0, 4)):
        table = slope_dictionary(surface, 7)
        inv = {s: c for c, s in table.items()}
        pool = sorted(table, key=lambda c: c.sort_key)
        fns = [FNSystem((inv[s],)) for s in (SL.INF, SL.ZERO, SL.ONE, SL.canon(-1, 1))]
        small = [c for c in pool if abs(table[c].p) <= 5 and table[c].q <= 5]
        limit = None
    else:
        ball = fixture_ball(g, n, 6)
        pool = ball.vertices
        size = 3 * g + n - 3
        graph = ball.disjointness_graph()
        fns = sorted((
            FNSystem(tuple(sorted(ball.vertices[i] for i in cl)))
            for cl in nx.find_cliques(graph)
            if len(cl) == size
        ), key=lambda fn: fn.classes)[:20]
        small = [c for c in pool if len(c) <= 5]
        limit = 150
    inst = reduction_instances(surface, small, fns, limit)
    rep = verify_reduction(surface, inst, pool)
    rep.notes["systems"] = len(fns)
    return rep


# -- branched double cover -------------------------------------------------


@dataclass(frozen=True)
class CoverSpec:
    base: RibbonSurface
    cover: RibbonSurface
    monodromy: tuple[int, ...]
    images: tuple[W.Word, ...]
    deck: MappingClassWord


def double_cover() -> CoverSpec:
    """The double cover of the five-holed sphere branched over four holes.

    With transversal ``{1, x1}`` the subgroup of even words is free on
    ``y_i = x_i x1^-1`` and ``z_i = x1 x_i``.  Filling the four cone points
    kills ``x_i^2``, that is ``z1 = 1`` and ``z_i = y_i^-1``, leaving the free
    group on ``y2, y3, y4``; these go to ``a, b, bAC`` of the torus spine,
    which carries the two lifts of the outer hole onto the two boundary walks.
    """
    base = build_surface(0, 5)
    cover = build_surface(1, 2)
    images = (W.parse_word("a", 3), W.parse_word("b", 3), W.parse_word("bAC", 3))
    # conjugation by x1 sends y_i to z_i = y_i^-1; c = y4^-1 b A
    deck = MappingClassWord((explicit_move("deck", {1: (-1,), 2: (-2,), 3: W.parse_word("bACBa", 3)}),))
    spec = CoverSpec(base, cover, (1, 1, 1, 1), images, deck)
    for mv in deck.moves:
        check_move(cover, mv)
    lifted = set()
    for walk in base.boundary_walks:
        c = CurveClass(walk, base.rank)
        if _monodromy(spec, c.word) == 0:
            # two lifts, read from either sheet
            for w in (c.word, W.multiply((1,), c.word, (-1,))):
                lifted.add(canon_curve(cover, _rewrite(spec, w)))
    if lifted != {CurveClass(w, cover.rank) for w in cover.boundary_walks}:
        raise LabError("cover identification does not match the boundary walks")
    return spec


def _monodromy(spec: CoverSpec, w: W.Word) -> int:
    return sum(spec.monodromy[abs(x) - 1] for x in w) % 2


def _rewrite(spec: CoverSpec, w: W.Word) -> W.Word:
    """Rewrite an even word into the filled subgroup and then into cover letters."""
    sheet = 0
    out: list[W.Word] = []
    for x in w:
        k = abs(x)
        if spec.monodromy[k - 1] == 0:
            raise LabError("only cone generators are supported")
        # from sheet 0 both x_k and x_k^-1 give y_k, from sheet 1 both give y_k^-1
        if k != 1:
            img = spec.images[k - 2]
            out.append(img if sheet == 0 else W.inverse(img))
        sheet ^= 1
    if sheet:
        raise LabError("word is not in the index two subgroup")
    return W.multiply(*out)


def lift_double_cover(spec: CoverSpec, c: CurveClass) -> CurveClass:
    if not is_essential(spec.base, c):
        raise NotEssential(f"{c} is not essential in the base")
    w = c.word
    if _monodromy(spec, w):
        w = w + w
    return canon_curve(spec.cover, _rewrite(spec, w))


def verify_double_cover(max_len: int = 5) -> VerificationReport:
    spec = double_cover()
    ball = fixture_ball(0, 5, max_len)
    rep = VerificationReport("double-cover", max_len=max_len)
    lifts = {c: lift_double_cover(spec, c) for c in ball.vertices}
    if len(set(lifts.values())) != len(lifts):
        rep.fail("lift is not injective")
    pattern: dict[str, list[int]] = {}
    for c, d in lifts.items():
        rep.checked += 1
        if not is_essential(spec.cover, d):
            rep.fail(f"lift of {c} is not essential")
            continue
        if apply_mapping_class(spec.cover, spec.deck, d) != d:
            rep.fail(f"deck involution moves the lift of {c}")
        kind = classify_curve(spec.cover, d)
        pattern.setdefault(kind, []).append(len(c))
    for x, y in combinations(ball.vertices, 2):
        rep.checked += 1
        base_disjoint = ball.relation(x, y).kind == "disjoint"
        cover_disjoint = _disjoint(spec.cover, lifts[x], lifts[y])
        if base_disjoint != cover_disjoint:
            rep.fail(f"{x}, {y}: disjoint {base_disjoint} in the base but {cover_disjoint} upstairs")
    if not ({"nonseparating"} <= set(pattern) and ({"separating", "boundary_class"} & set(pattern))):
        rep.fail(f"lifts do not realise both separating and nonseparating classes: {sorted(pattern)}")
    rep.notes["types"] = {k: len(v) for k, v in sorted(pattern.items())}
    return rep


# -- the exceptional automorphism -----------------------------------------


@dataclass
class PartialAutomorphism:
    surface: RibbonSurface
    mapping: dict

    def certify(self) -> dict:
        """Flags recomputed from raw intersection data on every call."""
        S = self.surface
        items = sorted(self.mapping.items(), key=lambda kv: kv[0].sort_key)
        flags = {"preserves_disjointness": True, "preserves_perp": True, "preserves_perp0": True}
        for (x, fx), (y, fy) in combinations(items, 2):
            k1 = intersection_profile(S, x, y).kind
            k2 = intersection_profile(S, fx, fy).kind
            for flag, kind in (("preserves_disjointness", "disjoint"), ("preserves_perp", "perp"), ("preserves_perp0", "perp0")):
                if (k1 == kind) != (k2 == kind):
                    flags[flag] = False
        sep = lambda c: classify_curve(S, c, check=False) != "nonseparating"
        flips = [(x, fx) for x, fx in items if sep(x) != sep(fx)]
        # prefer a separating class sent to a nonseparating one
        witness = next(((x, fx) for x, fx in flips if sep(x)), flips[0] if flips else None)
        flags["preserves_separating"] = witness is None
        flags["witness"] = None if witness is None else [str(witness[0]), str(witness[1])]
        return flags

    def to_dict(self) -> dict:
        return {
            "mapping": [[str(x), str(y)] for x, y in sorted(self.mapping.items(), key=lambda kv: kv[0].sort_key)],
            "certification": self.certify(),
        }


def _braid_moves(surface: RibbonSurface) -> list[Move]:
    out = []
    for i in range(1, surface.rank + 1):
        out += [half_twist(surface, i), half_twist(surface, i, inverse=True)]
    return out


def find_braid(surface: RibbonSurface, u: CurveClass, v: CurveClass, budget: int = 6) -> MappingClassWord:
    """Shortest product of half twists carrying ``u`` to ``v`` (breadth first)."""
    moves = _braid_moves(surface)
    seen = {u: MappingClassWord()}
    frontier = [u]
    for _ in range(budget):
        nxt = []
        for c in frontier:
            for mv in moves:
                d = apply_mapping_class(surface, MappingClassWord((mv,)), c)
                if d in seen:
                    continue
                seen[d] = seen[c].then(MappingClassWord((mv,)))
                if d == v:
                    return seen[d]
                nxt.append(d)
        frontier = nxt
    if u == v:
        return MappingClassWord()
    raise SearchExhausted(f"no braid word of length <= {budget} takes {u} to {v}")


def conjugate_by_lift(spec: CoverSpec, h: MappingClassWord, base: Iterable[CurveClass]) -> PartialAutomorphism:
    """``phi = lift . h . lift^-1`` on the lifts of ``base``."""
    mapping = {}
    for c in base:
        mapping[lift_double_cover(spec, c)] = lift_double_cover(spec, apply_mapping_class(spec.base, h, c))
    return PartialAutomorphism(spec.cover, mapping)


def exceptional_automorphism(max_len: int = 6, budget: int = 6) -> tuple[PartialAutomorphism, VerificationReport, dict]:
    spec = double_cover()
    base_ball = fixture_ball(0, 5, max_len)
    lifts = {c: lift_double_cover(spec, c) for c in base_ball.vertices}
    kind = {c: classify_curve(spec.cover, d) for c, d in lifts.items()}
    u = next((c for c in base_ball.vertices if kind[c] != "nonseparating"), None)
    v = next((c for c in base_ball.vertices if kind[c] == "nonseparating"), None)
    if u is None or v is None:
        raise SearchExhausted("the base ball does not contain both lift types")
    h = find_braid(spec.base, u, v, budget)
    phi = conjugate_by_lift(spec, h, base_ball.vertices)
    cert = phi.certify()
    rep = VerificationReport("exceptional", max_len=max_len)
    rep.checked = len(phi.mapping)
    if not cert["preserves_disjointness"]:
        rep.fail("phi does not preserve disjointness")
    if cert["preserves_separating"]:
        rep.fail("phi preserves separating classes, so it certifies nothing")
    # adversarial control: undoing h upstairs gives the identity
    h_inv = MappingClassWord(tuple(_invert(spec.base, mv) for mv in reversed(h.moves)))
    back = conjugate_by_lift(spec, h_inv, [apply_mapping_class(spec.base, h, c) for c in base_ball.vertices])
    if any(back.mapping[phi.mapping[x]] != x for x in phi.mapping):
        rep.fail("lift h^-1 lift^-1 does not undo phi")
    rep.notes = {
        "u": str(u),
        "v": str(v),
        "lift_u": str(lifts[u]),
        "lift_v": str(lifts[v]),
        "h": h.names(),
        "witness": cert["witness"],
    }
    info = {"u": u, "v": v, "h": h, "spec": spec}
    return phi, rep, info


def _invert(surface: RibbonSurface, mv: Move) -> Move:
    name = mv.name
    i = int(name[1:].split("^")[0])
    return half_twist(surface, i, inverse=not name.endswith("^-1"))
