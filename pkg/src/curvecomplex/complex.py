"""Finite decorated balls of the curve complex, simplices, Farey charts and export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Optional

import networkx as nx

from . import slopes as SL
from .curves import (
    CurveClass,
    RelationProfile,
    canon_curve,
    classify_curve,
    enumerate_curves,
    intersection_profile,
)
from .resolution import resolve_curves
from .surface import RibbonSurface, build_surface


class ChartInconsistent(ValueError):
    pass


class InsufficientOverlap(ValueError):
    pass


@dataclass
class ComplexBall:
    surface: RibbonSurface
    max_len: int
    vertices: list[CurveClass]
    kinds: dict[CurveClass, str]
    relations: dict[tuple[int, int], RelationProfile] = field(repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[CurveClass, int]:
        return {c: i for i, c in enumerate(self.vertices)}

    def separating(self, c: CurveClass) -> bool:
        return self.kinds[c] != "nonseparating"

    def boundary_class(self, c: CurveClass) -> bool:
        return self.kinds[c] == "boundary_class"

    def relation(self, a: CurveClass, b: CurveClass) -> RelationProfile:
        idx = self.index
        i, j = idx[a], idx[b]
        if i == j:
            return RelationProfile("equal", 0, 0)
        return self.relations[(min(i, j), max(i, j))]

    def disjointness_graph(self, vertices: Optional[list[CurveClass]] = None) -> nx.Graph:
        keep = set(self.vertices if vertices is None else vertices)
        g = nx.Graph()
        g.add_nodes_from(i for i, c in enumerate(self.vertices) if c in keep)
        for (i, j), prof in self.relations.items():
            if prof.kind == "disjoint" and i in g and j in g:
                g.add_edge(i, j)
        return g

    def disjoint_from(self, c: CurveClass) -> list[CurveClass]:
        return [x for x in self.vertices if x != c and self.relation(c, x).kind == "disjoint"]


def build_ball(surface: RibbonSurface, max_len: int, budget: Optional[int] = None) -> ComplexBall:
    vertices = enumerate_curves(surface, max_len, budget=budget)
    kinds = {c: classify_curve(surface, c) for c in vertices}
    relations = {}
    for i, j in combinations(range(len(vertices)), 2):
        relations[(i, j)] = intersection_profile(surface, vertices[i], vertices[j])
    return ComplexBall(surface, max_len, vertices, kinds, relations)


def max_simplex(ball: ComplexBall, separating_only: bool = False) -> tuple[int, list[CurveClass]]:
    """Maximum clique of the disjointness graph, with a witness."""
    verts = [c for c in ball.vertices if ball.separating(c)] if separating_only else None
    g = ball.disjointness_graph(verts)
    if g.number_of_nodes() == 0:
        return 0, []
    clique, size = nx.max_weight_clique(g, weight=None)
    return size, sorted(ball.vertices[i] for i in clique)


def max_separating_simplex(ball: ComplexBall) -> int:
    return max_simplex(ball, separating_only=True)[0]


# -- charts ----------------------------------------------------------------


@dataclass(frozen=True)
class Chart:
    seed: tuple[CurveClass, CurveClass]
    anchor: Optional[CurveClass]
    coord: dict

    @property
    def domain(self) -> frozenset:
        return frozenset(self.coord)

    def inverse(self) -> dict:
        return {s: c for c, s in self.coord.items()}


def _is_top(kind: str) -> bool:
    return kind in ("perp", "perp0")


def fit_chart(ball: ComplexBall, seed: tuple[CurveClass, CurveClass], slack: int = 2) -> Chart:
    """Grow slope coordinates from ``seed`` (sent to ``inf`` and ``0``) by resolution.

    Intermediate classes up to ``max_len + slack`` letters are used as
    scaffolding; the chart keeps the ball classes reached.
    """
    surface = ball.surface
    s1, s2 = seed
    kind = intersection_profile(surface, s1, s2).kind
    if not _is_top(kind):
        raise ChartInconsistent(f"seed pair is {kind}, not perp or perp0")
    cap = ball.max_len + slack
    coord = {s1: SL.INF, s2: SL.ZERO}
    frontier = [(s1, s2), (s2, s1)]
    done: set = set()
    while frontier:
        new = []
        for x, y in frontier:
            if (x, y) in done:
                continue
            done.add((x, y))
            r = resolve_curves(surface, x, y)
            t = SL.resolve(coord[x], coord[y])
            if r in coord:
                if coord[r] != t:
                    raise ChartInconsistent(f"{x}*{y} = {r} has slope {coord[r]}, expected {t}")
                continue
            if len(r) > cap:
                continue
            if t in coord.values():
                raise ChartInconsistent(f"slope {t} assigned twice")
            coord[r] = t
            for z in list(coord):
                if z != r and SL.farey_rel(coord[z], t):
                    new += [(r, z), (z, r)]
        frontier = new
    inside = set(ball.vertices)
    coord = {c: s for c, s in coord.items() if c in inside}
    common = [c for c in ball.vertices if ball.relation(c, s1).kind == "disjoint" and ball.relation(c, s2).kind == "disjoint"]
    chart = Chart((s1, s2), common[0] if len(common) == 1 else None, coord)
    problems = chart_violations(ball, chart)
    if problems:
        raise ChartInconsistent(problems[0])
    return chart


def chart_violations(ball: ComplexBall, chart: Chart) -> list[str]:
    """Pairs on which the chart is not relation exact (empty for a healthy chart)."""
    surface = ball.surface
    out = []
    items = sorted(chart.coord.items(), key=lambda kv: kv[0].sort_key)
    if len(set(chart.coord.values())) != len(items):
        out.append("coordinates are not injective")
    for (u, su), (v, sv) in combinations(items, 2):
        top = _is_top(ball.relation(u, v).kind)
        if top != SL.farey_rel(su, sv):
            out.append(f"{u}, {v}: relation {ball.relation(u, v).kind} but slopes {su}, {sv}")
        elif top:
            for x, y, sx, sy in ((u, v, su, sv), (v, u, sv, su)):
                r = resolve_curves(surface, x, y)
                if r in chart.coord and chart.coord[r] != SL.resolve(sx, sy):
                    out.append(f"{x}*{y} = {r} sits at {chart.coord[r]}, not {SL.resolve(sx, sy)}")
    return out


def chart_to_dict(chart: Chart) -> dict:
    items = sorted(chart.coord.items(), key=lambda kv: kv[0].sort_key)
    return {
        "seed": [str(c) for c in chart.seed],
        "anchor": None if chart.anchor is None else str(chart.anchor),
        "coord": {str(c): str(s) for c, s in items},
    }


def check_transitions(c1: Chart, c2: Chart) -> Optional[SL.ModularMatrix]:
    """The projective integer matrix taking ``c1`` coordinates to ``c2`` ones on the overlap."""
    overlap = sorted(c1.domain & c2.domain, key=lambda c: c.sort_key)
    if len(overlap) < 3:
        raise InsufficientOverlap(f"charts share {len(overlap)} classes, need 3")
    return SL.try_fit_modular_map([(c1.coord[c], c2.coord[c]) for c in overlap])


# -- export ----------------------------------------------------------------


def to_dict(ball: ComplexBall) -> dict:
    s = ball.surface
    return {
        "surface": {"g": s.genus, "n": s.boundary_count},
        "max_len": ball.max_len,
        "curves": [
            {
                "id": i,
                "word": str(c),
                "separating": ball.separating(c),
                "boundary_class": ball.boundary_class(c),
            }
            for i, c in enumerate(ball.vertices)
        ],
        "pairs": [
            {"u": i, "v": j, "kind": p.kind, "geo": p.geo, "alg": p.alg}
            for (i, j), p in sorted(ball.relations.items())
        ],
    }


def to_dot(ball: ComplexBall, overlay: bool = False) -> str:
    lines = ["graph C {"]
    for i, c in enumerate(ball.vertices):
        style = ' shape=box style=filled fillcolor="lightgray"' if ball.separating(c) else ""
        lines.append(f'  v{i} [label="{c}"{style}];')
    for (i, j), p in sorted(ball.relations.items()):
        if p.kind == "disjoint":
            lines.append(f"  v{i} -- v{j};")
        elif overlay and p.kind in ("perp", "perp0"):
            lines.append(f'  v{i} -- v{j} [style=dashed constraint=false label="{p.kind}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(ball: ComplexBall, format: str = "json", overlay: bool = False) -> bytes:
    if format == "json":
        return (json.dumps(to_dict(ball), separators=(",", ":")) + "\n").encode()
    if format == "dot":
        return to_dot(ball, overlay).encode()
    raise ValueError(f"unknown export format {format!r}")


def parse_ball(data) -> ComplexBall:
    """Inverse of the JSON export."""
    if isinstance(data, (bytes, str)):
        data = json.loads(data)
    surface = build_surface(data["surface"]["g"], data["surface"]["n"])
    vertices = [canon_curve(surface, c["word"]) for c in data["curves"]]
    kinds = {}
    for c, rec in zip(vertices, data["curves"]):
        kinds[c] = "boundary_class" if rec["boundary_class"] else ("separating" if rec["separating"] else "nonseparating")
    relations = {(p["u"], p["v"]): RelationProfile(p["kind"], p["geo"], p["alg"]) for p in data["pairs"]}
    return ComplexBall(surface, data.get("max_len", 0), vertices, kinds, relations)
