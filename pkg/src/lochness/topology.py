"""Euler characteristic, genus, boundary and ends of truncated monsters.

A surface piece is encoded as a single polygon whose boundary word lists
oriented edges. A label used twice (once forward, once inverted) is glued;
a label used once stays on the boundary. Everything here is exact integer
(or rational) arithmetic.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .group import Variant, gen_f, gen_g
from .mobius import MobiusMap, apply_real


class MalformedWord(ValueError):
    pass


class NotStabilized(RuntimeError):
    pass


@dataclass(frozen=True)
class Edge:
    label: str
    inverted: bool = False

    def __str__(self):
        return self.label + ("^-1" if self.inverted else "")


def parse_word(text: str) -> tuple[Edge, ...]:
    """'a b a^-1 b^-1' -> edges. A trailing ' is accepted as shorthand for ^-1."""
    edges = []
    for tok in text.split():
        if tok.endswith("^-1"):
            edges.append(Edge(tok[:-3], True))
        elif tok.endswith("'"):
            edges.append(Edge(tok[:-1], True))
        else:
            edges.append(Edge(tok))
    return tuple(edges)


@dataclass(frozen=True)
class IdentifiedPolygon:
    edges: tuple[Edge, ...]

    @classmethod
    def from_string(cls, text: str) -> "IdentifiedPolygon":
        return cls(parse_word(text))

    def __str__(self):
        return " ".join(map(str, self.edges))

    def occurrences(self) -> dict[str, list[int]]:
        occ: dict[str, list[int]] = {}
        for pos, e in enumerate(self.edges):
            occ.setdefault(e.label, []).append(pos)
        return occ

    def validate(self) -> None:
        if not self.edges:
            raise MalformedWord("empty boundary word")
        for label, pos in self.occurrences().items():
            if len(pos) > 2:
                raise MalformedWord(f"label {label!r} appears {len(pos)} times")
            if len(pos) == 2 and self.edges[pos[0]].inverted == self.edges[pos[1]].inverted:
                raise MalformedWord(f"label {label!r} is glued with matching orientations (non-orientable)")


@dataclass(frozen=True)
class CellComplex:
    vertices: int
    edges: int
    faces: int
    vertex_cycles: tuple[tuple[int, ...], ...]

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - self.edges + self.faces


@dataclass(frozen=True)
class TopologySummary:
    euler_characteristic: int
    genus: int
    boundary_components: int
    orientable: bool = True

    def as_dict(self) -> dict:
        return {
            "chi": self.euler_characteristic,
            "genus": self.genus,
            "boundary": self.boundary_components,
            "orientable": self.orientable,
        }


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return out


def _tail_head(p: IdentifiedPolygon, pos: int) -> tuple[int, int]:
    """Corners at the start and end of the edge's own orientation.

    Corner j sits just before edge j as the boundary is walked.
    """
    n = len(p.edges)
    a, b = pos, (pos + 1) % n
    return (b, a) if p.edges[pos].inverted else (a, b)


def _corner_classes(p: IdentifiedPolygon) -> _UnionFind:
    uf = _UnionFind(len(p.edges))
    for label, pos in p.occurrences().items():
        if len(pos) == 2:
            t0, h0 = _tail_head(p, pos[0])
            t1, h1 = _tail_head(p, pos[1])
            uf.union(t0, t1)
            uf.union(h0, h1)
    return uf


def complex_from_polygon(p: IdentifiedPolygon) -> CellComplex:
    p.validate()
    classes = _corner_classes(p).classes()
    cycles = tuple(sorted(tuple(v) for v in classes.values()))
    return CellComplex(len(cycles), len(p.occurrences()), 1, cycles)


def boundary_components(p: IdentifiedPolygon) -> int:
    """Connected chains of unpaired edges, joined at identified corners."""
    uf = _corner_classes(p)
    free = [pos for label, pos in p.occurrences().items() if len(pos) == 1]
    graph = _UnionFind(len(p.edges))
    touched = set()
    for (pos,) in free:
        a, b = _tail_head(p, pos)
        ra, rb = uf.find(a), uf.find(b)
        graph.union(ra, rb)
        touched.update((ra, rb))
    return len({graph.find(v) for v in touched})


def topology_summary(p: IdentifiedPolygon) -> TopologySummary:
    cx = complex_from_polygon(p)
    chi = cx.euler_characteristic
    b = boundary_components(p)
    twice_genus = 2 - chi - b
    if twice_genus < 0 or twice_genus % 2:
        raise MalformedWord(f"chi = {chi} with {b} boundary components is not a surface")
    return TopologySummary(chi, twice_genus // 2, b, True)


# --- truncations ---------------------------------------------------------


@dataclass(frozen=True)
class FlatTruncation:
    """The first k glued slit pairs inside a disk of the given radius."""

    k: int
    radius: float | None = None

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.radius is not None and not self.radius > 8 * self.k:
            raise ValueError(f"radius {self.radius} does not enclose the {2 * self.k} slits")

    @property
    def bounding_radius(self) -> float:
        return self.radius if self.radius is not None else 8 * self.k + 4


@dataclass(frozen=True)
class HyperbolicTruncation:
    """The piece P_m of the domain between Re z = 16m - 2 and Re z = 16m + 14, capped at Im z = cap."""

    m: int
    cap: float = 3.0
    variant: Variant = Variant.CORRECTED


def flat_polygon(k: int) -> IdentifiedPolygon:
    """Disk with 2k slits, cut open along a bridge from the rim to each slit's left end.

    Going round the rim we enter each bridge, walk clockwise round the slit
    (upper side left to right, lower side back), and return. The side labels
    encode the gluing: U_i is the upper side of l_{2i-1} and the lower side
    of l_{2i}; W_i is the lower side of l_{2i-1} and the upper side of l_{2i}.
    """
    edges: list[Edge] = []
    for j in range(1, 2 * k + 1):
        i = (j + 1) // 2
        upper, lower = (f"U{i}", f"W{i}") if j % 2 else (f"W{i}", f"U{i}")
        edges += [
            Edge(f"rim{j}"),
            Edge(f"bridge{j}"),
            Edge(upper),
            Edge(lower, inverted=True),
            Edge(f"bridge{j}", inverted=True),
        ]
    if not edges:
        edges = [Edge("rim")]
    return IdentifiedPolygon(tuple(edges))


def _arc_orientation(t: MobiusMap, src: int, dst: int) -> bool:
    """Whether t reverses the left-to-right orientation of the arc C_src onto C_dst.

    Raises MalformedWord when t does not carry one arc onto the other.
    """
    left, right = Fraction(src - 1), Fraction(src + 1)
    images = (apply_real(t, left), apply_real(t, right))
    if images == (dst - 1, dst + 1):
        return False
    if images == (dst + 1, dst - 1):
        return True
    raise MalformedWord(f"{t} does not carry C_{src} onto C_{dst}: endpoints go to {images}")


def hyperbolic_polygon(m: int, variant: Variant = Variant.CORRECTED) -> IdentifiedPolygon:
    """Boundary word of P_m with the arcs glued by f_m and g_m.

    Walk: the ideal segments of the real axis alternating with the four arcs,
    up the right strip edge, back along the cap, down the left strip edge.
    Arc orientations are read off from the exact action on the endpoints.
    """
    base = 16 * m
    f_rev = _arc_orientation(gen_f(m), base, base + 8)
    g_rev = _arc_orientation(gen_g(m, variant), base + 4, base + 12)
    arcs = [Edge("A"), Edge("B"), Edge("A", f_rev), Edge("B", g_rev)]
    edges: list[Edge] = []
    for j, arc in enumerate(arcs):
        edges += [Edge(f"s{j}"), arc]
    edges += [Edge("s4"), Edge("right"), Edge("cap"), Edge("left")]
    return IdentifiedPolygon(tuple(edges))


def truncation_topology(t: FlatTruncation | HyperbolicTruncation) -> TopologySummary:
    if isinstance(t, FlatTruncation):
        return topology_summary(flat_polygon(t.k))
    return topology_summary(hyperbolic_polygon(t.m, t.variant))


# --- ends ----------------------------------------------------------------


def _shell_components(k: int, r_in: float, r_out: float, circumference: float | None, cells: int) -> int:
    """Components of the shell between two exhaustion levels that reach the outer level.

    Plane: the annulus r_in < |z - c| <= r_out about the centre of the slit
    family. Cylinder: the two bands r_in < |y| <= r_out, x periodic. The
    shell is cut into grid cells joined to their edge neighbours. Every slit
    lies inside r_in, so the gluings never touch the shell.
    """
    if circumference is None:
        cx = 4.0 * k
        if k and max(cx - 3, 8 * k - cx) >= r_in:
            raise ValueError("truncation does not enclose the slits")
        x0, width = cx - r_out, 2 * r_out
    else:
        cx = 0.0
        x0, width = 0.0, circumference
    hx, hy = width / cells, 2 * r_out / cells

    def dist(i: int, j: int) -> float:
        x, y = x0 + (i + 0.5) * hx, -r_out + (j + 0.5) * hy
        return abs(y) if circumference is not None else math.hypot(x - cx, y)

    shell = {(i, j) for i in range(cells) for j in range(cells) if r_in < dist(i, j) <= r_out}
    outer = {c for c in shell if dist(*c) > r_out - 1.5 * max(hx, hy)}

    def neighbours(i: int, j: int):
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            ni = (i + di) % cells if circumference is not None else i + di
            yield ni, j + dj

    seen: set[tuple[int, int]] = set()
    reaching = 0
    for c in sorted(shell):
        if c in seen:
            continue
        seen.add(c)
        queue = deque([c])
        hits_outer = False
        while queue:
            u = queue.popleft()
            hits_outer = hits_outer or u in outer
            for v in neighbours(*u):
                if v in shell and v not in seen:
                    seen.add(v)
                    queue.append(v)
        reaching += hits_outer
    return reaching


def count_ends(
    k: int,
    levels: int = 3,
    circumference: float | None = None,
    cells: int = 64,
) -> int:
    """Number of ends seen by a nested exhaustion, plane base unless a circumference is given.

    Level r_j = r_0 2^j with r_0 = 8k + 4, which encloses every slit. At each
    level we count the components of the shell between r_j and r_{j+1} that
    reach the outer level; the count must agree over the last two levels.
    """
    if levels < 2:
        raise ValueError("need at least two levels")
    r0 = 8 * k + 4
    counts = [
        _shell_components(k, r0 * 2**j, r0 * 2 ** (j + 1), circumference, cells) for j in range(levels)
    ]
    if counts[-1] != counts[-2]:
        raise NotStabilized(f"end counts {counts} still changing; use more levels")
    return counts[-1]
