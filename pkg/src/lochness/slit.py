"""The flat monster: the plane with the slits l_i = [4i - 1, 4i] x {0} glued in pairs.

Slit l_{2i-1} is glued to l_{2i} by the translation +4 e1: the upper side
of l_{2i-1} to the lower side of l_{2i}, and the lower side of l_{2i-1}
to the upper side of l_{2i}. Each glued pair adds a handle, and the slit
endpoints become cone points of angle 4 pi.

A cylinder base (x taken modulo a circumference) is also supported; it
only serves as a two-ended comparator for end counting.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

ENDPOINT_TOL = 1e-9
PARAM_TOL = 1e-12
DEFAULT_CONE_RADIUS = 1e-3


class Side(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"

    def flip(self) -> "Side":
        return Side.LOWER if self is Side.UPPER else Side.UPPER


class SlitError(Exception):
    pass


class SingularPoint(SlitError):
    """The point is a slit endpoint, where the gluing is ambiguous."""


class SingularStart(SlitError):
    pass


@dataclass(frozen=True)
class FlatPoint:
    x: float
    y: float
    side: Side | None = None


@dataclass(frozen=True)
class SlitSurface:
    """The first 2k slits of the family on a plane (circumference None) or a cylinder."""

    k: int
    circumference: float | None = None

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("number of slit pairs must be non-negative")
        if self.circumference is not None:
            if not self.circumference > 0:
                raise ValueError("cylinder circumference must be positive")
            if self.k and 4 * self.i_max > self.circumference:
                raise ValueError(
                    f"slit l_{self.i_max} ends at x = {4 * self.i_max}, past the seam at {self.circumference}"
                )

    @property
    def i_max(self) -> int:
        return 2 * self.k

    @property
    def is_cylinder(self) -> bool:
        return self.circumference is not None

    def segments(self) -> list[tuple[float, float]]:
        return [slit_span(i) for i in range(1, self.i_max + 1)]

    def pairs(self) -> list[tuple[int, int]]:
        return [(2 * i - 1, 2 * i) for i in range(1, self.k + 1)]

    def wrap(self, x: float) -> float:
        if self.circumference is None:
            return x
        return x % self.circumference

    def endpoints(self) -> list[tuple[float, float]]:
        return [(float(x), 0.0) for i in range(1, self.i_max + 1) for x in slit_span(i)]

    def slit_at(self, x: float) -> int | None:
        """Index of the slit whose closed span contains x (after wrapping), else None."""
        x = self.wrap(x)
        i = math.ceil(x / 4)
        if 1 <= i <= self.i_max and 4 * i - 1 - ENDPOINT_TOL <= x <= 4 * i + ENDPOINT_TOL:
            return i
        return None

    def near_endpoint(self, x: float, tol: float = ENDPOINT_TOL) -> bool:
        i = self.slit_at(x)
        if i is None:
            return False
        xw = self.wrap(x)
        return min(abs(xw - (4 * i - 1)), abs(xw - 4 * i)) <= tol

    def is_singular(self, p: FlatPoint, tol: float = ENDPOINT_TOL) -> bool:
        return abs(p.y) <= tol and self.near_endpoint(p.x, tol)

    def distance_to_singularity(self, x: float, y: float) -> float:
        if not self.k:
            return math.inf
        xw = self.wrap(x)
        best = math.inf
        for ex, _ in self.endpoints():
            dx = abs(xw - ex)
            if self.circumference is not None:
                dx = min(dx, self.circumference - dx)
            best = min(best, math.hypot(dx, y))
        return best


def slit_span(i: int) -> tuple[int, int]:
    return (4 * i - 1, 4 * i)


def partner(i: int) -> int:
    return i + 1 if i % 2 else i - 1


def build_monster_slits(k: int) -> SlitSurface:
    if k < 1:
        raise ValueError("need at least one glued pair; use bare_plane() for the plain plane")
    return SlitSurface(k)


def bare_plane() -> SlitSurface:
    return SlitSurface(0)


def build_cylinder_slits(k: int, circumference: float) -> SlitSurface:
    return SlitSurface(k, circumference)


def resolve_crossing(s: SlitSurface, p: FlatPoint, heading_down: bool = True) -> FlatPoint:
    """Carry a point on one side of a slit to the point it is glued to.

    The side is taken from p, or from the direction of approach when p
    carries none (coming from above meets the upper side).
    """
    if abs(p.y) > ENDPOINT_TOL:
        raise ValueError(f"({p.x}, {p.y}) is not on the slit line")
    i = s.slit_at(p.x)
    if i is None:
        raise ValueError(f"({p.x}, {p.y}) is not on a slit")
    if s.near_endpoint(p.x):
        raise SingularPoint(f"({p.x}, {p.y}) is an endpoint of l_{i}")
    side = p.side or (Side.UPPER if heading_down else Side.LOWER)
    offset = 4 if i % 2 else -4
    return FlatPoint(p.x + offset, 0.0, side.flip())


# --- geodesics -----------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    slit: int
    entry: tuple[float, float]
    exit: tuple[float, float]


@dataclass(frozen=True)
class SingularityHit:
    point: tuple[float, float]


@dataclass(frozen=True)
class StepLimit:
    events: int


@dataclass
class GeodesicTrace:
    start: FlatPoint
    direction: tuple[float, float]
    events: list = field(default_factory=list)
    polyline: list[tuple[tuple[float, float], tuple[float, float]]] = field(default_factory=list)
    length: float = 0.0
    end: FlatPoint | None = None

    @property
    def crossings(self) -> list[Crossing]:
        return [e for e in self.events if isinstance(e, Crossing)]

    def polyline_length(self) -> float:
        return sum(math.dist(a, b) for a, b in self.polyline)


def trace_geodesic(
    s: SlitSurface,
    start: FlatPoint,
    direction: tuple[float, float],
    max_events: int = 50,
    max_length: float = 100.0,
) -> GeodesicTrace:
    """Follow the straight line from start, jumping across glued slits.

    The direction never changes: the gluings are translations.
    """
    dx, dy = direction
    if dx == 0 and dy == 0:
        raise ValueError("direction must be nonzero")
    if s.is_singular(start):
        raise SingularStart(f"({start.x}, {start.y}) is a cone point")
    if abs(start.y) <= ENDPOINT_TOL and dy == 0 and s.slit_at(start.x) is not None:
        raise ValueError("a horizontal path along a slit is not a geodesic of the surface")

    trace = GeodesicTrace(start, (dx, dy))
    speed = math.hypot(dx, dy)
    x, y = start.x, start.y
    side = start.side
    remaining = max_length
    on_slit_line = abs(y) <= ENDPOINT_TOL

    if on_slit_line and dy == 0 and s.k:
        ahead = _first_endpoint_ahead(s, x, dx, remaining)
        if ahead is not None:
            trace.polyline.append(((x, y), (ahead, 0.0)))
            trace.length += abs(ahead - x)
            trace.events.append(SingularityHit((ahead, 0.0)))
            trace.end = FlatPoint(ahead, 0.0)
            return trace

    while True:
        hit = None
        if dy != 0:
            if on_slit_line:
                # leaving the slit line; only a stated side facing the motion means an immediate crossing
                going_down = dy < 0
                if side is not None and (side is Side.UPPER) == going_down and s.slit_at(x) is not None:
                    hit = 0.0
            else:
                t = -y / dy
                if t > PARAM_TOL and t * speed <= remaining:
                    hit = t
        if hit is None:
            t_end = remaining / speed
            end = (x + t_end * dx, y + t_end * dy)
            trace.polyline.append(((x, y), end))
            trace.length += remaining
            trace.end = FlatPoint(*end)
            return trace

        hx = x + hit * dx
        if hit > 0:
            trace.polyline.append(((x, y), (hx, 0.0)))
            trace.length += hit * speed
            remaining -= hit * speed
        i = s.slit_at(hx)
        if i is None:
            # off the slits the line passes through y = 0 and never returns
            t_end = remaining / speed
            end = (hx + t_end * dx, t_end * dy)
            trace.polyline.append(((hx, 0.0), end))
            trace.length += remaining
            trace.end = FlatPoint(*end)
            return trace
        if s.near_endpoint(hx):
            trace.events.append(SingularityHit((hx, 0.0)))
            trace.end = FlatPoint(hx, 0.0)
            return trace
        if len(trace.crossings) >= max_events:
            trace.events.append(StepLimit(max_events))
            trace.end = FlatPoint(hx, 0.0, Side.UPPER if dy < 0 else Side.LOWER)
            return trace
        out = resolve_crossing(s, FlatPoint(hx, 0.0), heading_down=dy < 0)
        trace.events.append(Crossing(i, (hx, 0.0), (out.x, 0.0)))
        x, y, side, on_slit_line = out.x, 0.0, out.side, True


# --- cone angles ---------------------------------------------------------


def cone_angle(s: SlitSurface, p: FlatPoint, radius: float = DEFAULT_CONE_RADIUS) -> float:
    """Total angle around p, found by developing a small circle through the gluings.

    The circle is swept counterclockwise from the top. Whenever the swept
    point crosses the slit line on a slit, the centre moves to the glued
    copy (a translation, so the crossing angles do not change). The sweep
    stops once the centre is home and the starting angle comes round again.
    """
    x, y = p.x, p.y
    if s.is_singular(p):
        i = s.slit_at(x)
        xw = s.wrap(x)
        x += min(slit_span(i), key=lambda e: abs(xw - e)) - xw
        y = 0.0
    else:
        radius = min(radius, 0.5 * s.distance_to_singularity(x, y))
    if abs(y) >= radius:
        return 2 * math.pi

    up = math.asin(-y / radius)  # slit line crossed moving upward
    crossings = (up, math.pi - up)
    home = math.pi / 2
    cx = x
    theta, total = home, 0.0
    for _ in range(4 * s.i_max + 8):
        nxt = min(c + 2 * math.pi * math.ceil((theta - c) / (2 * math.pi) + 1e-12) for c in crossings)
        if total > 0 and math.isclose(cx, x, abs_tol=1e-9):
            back = theta + (home - theta) % (2 * math.pi)
            if back <= nxt:
                return total + back - theta
        total += nxt - theta
        theta = nxt
        px = cx + radius * math.cos(theta)
        i = s.slit_at(px)
        if i is not None and not s.near_endpoint(px):
            cx += 4 if i % 2 else -4
    raise RuntimeError("loop around the point did not close")


def _first_endpoint_ahead(s: SlitSurface, x: float, dx: float, reach: float) -> float | None:
    """Nearest slit endpoint met by a horizontal path along the slit line, unwrapped."""
    best = None
    for ex, _ in s.endpoints():
        offsets = [ex - s.wrap(x)]
        if s.circumference is not None:
            offsets = [o + j * s.circumference for o in offsets for j in (-1, 0, 1)]
        for o in offsets:
            if o * dx > 0 and abs(o) <= reach and (best is None or abs(o) < abs(best)):
                best = o
    return None if best is None else x + best
