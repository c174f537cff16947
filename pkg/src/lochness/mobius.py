"""Exact Mobius transformations of the upper half-plane.

Maps are integer matrices of determinant one, stored in a canonical PSL
sign so that equality of group elements is equality of four integers.
Points are plain floats; generalized circles are geodesics of the
upper half-plane (circles centred on the real axis, or vertical lines).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

DEFAULT_TOL = 1e-9


class Kind(enum.Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with integer entries and ad - bc = 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if not isinstance(v, int):
                raise TypeError(f"matrix entries must be integers, got {v!r}")
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")
        first = next(v for v in (self.a, self.b, self.c, self.d) if v != 0)
        if first < 0:
            raise ValueError(f"{self.rows()} is not in canonical sign; use MobiusMap.from_entries")

    @classmethod
    def from_entries(cls, a: int, b: int, c: int, d: int) -> "MobiusMap":
        """Build from any integer SL2 matrix, flipping the overall sign if needed."""
        first = next((v for v in (a, b, c, d) if v != 0), 0)
        if first < 0:
            a, b, c, d = -a, -b, -c, -d
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def is_identity(self) -> bool:
        return self == IDENTITY

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return compose(self, other)

    def __invert__(self) -> "MobiusMap":
        return inverse(self)

    def __call__(self, z):
        return apply(self, z)

    def __repr__(self):
        return f"MobiusMap([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


IDENTITY = MobiusMap(1, 0, 0, 1)


@dataclass(frozen=True)
class UpperHalfPoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise ValueError(f"point {self.re} + {self.im}i is not in the upper half-plane")

    @classmethod
    def from_complex(cls, z: complex) -> "UpperHalfPoint":
        return cls(z.real, z.imag)

    def __complex__(self):
        return complex(self.re, self.im)


Point = Union[UpperHalfPoint, complex]


def parts(z) -> tuple:
    """(re, im) of a point, keeping the numeric type (float, or mpmath mpf for mpc input)."""
    if isinstance(z, UpperHalfPoint):
        return z.re, z.im
    if isinstance(z, (int, float)):
        return float(z), 0.0
    return z.real, z.imag


def _as_complex(z) -> complex:
    x, y = parts(z)
    return complex(float(x), float(y))


def apply(t: MobiusMap, z):
    """Evaluate t at z.

    Returns the same kind of object it is given: an UpperHalfPoint for an
    UpperHalfPoint, a complex for a complex. Any other complex type with
    .real/.imag (e.g. mpmath.mpc) is evaluated in its own precision.
    """
    x, y = parts(z)
    # closed forms for det = 1; Im keeps its sign where complex division cancels
    cx_d = t.c * x + t.d
    cy = t.c * y
    den = cx_d * cx_d + cy * cy
    if den == 0:
        raise ZeroDivisionError(f"{z} is the pole of {t}")
    re = ((t.a * x + t.b) * cx_d + t.a * cy * y) / den
    im = y / den
    if isinstance(z, UpperHalfPoint):
        return UpperHalfPoint(float(re), float(im))
    if isinstance(z, (complex, int, float)):
        return complex(re, im)
    return type(z)(re, im)


def apply_real(t: MobiusMap, x: Fraction | int) -> Fraction | None:
    """Exact action on the rational boundary point x; None stands for infinity."""
    num = t.a * Fraction(x) + t.b
    den = t.c * Fraction(x) + t.d
    if den == 0:
        return None
    return num / den


def image_of_infinity(t: MobiusMap) -> Fraction | None:
    if t.c == 0:
        return None
    return Fraction(t.a, t.c)


def compose(s: MobiusMap, t: MobiusMap) -> MobiusMap:
    """The map z -> s(t(z)), i.e. the matrix product s . t."""
    return MobiusMap.from_entries(
        s.a * t.a + s.b * t.c,
        s.a * t.b + s.b * t.d,
        s.c * t.a + s.d * t.c,
        s.c * t.b + s.d * t.d,
    )


def compose_all(maps: Iterable[MobiusMap]) -> MobiusMap:
    result = IDENTITY
    for t in maps:
        result = compose(result, t)
    return result


def inverse(t: MobiusMap) -> MobiusMap:
    return MobiusMap.from_entries(t.d, -t.b, -t.c, t.a)


def conjugate(t: MobiusMap, s: MobiusMap) -> MobiusMap:
    """s t s^-1"""
    return compose(compose(s, t), inverse(s))


def classify(t: MobiusMap) -> Kind:
    if t.is_identity():
        return Kind.IDENTITY
    tr = abs(t.trace)
    if tr < 2:
        return Kind.ELLIPTIC
    if tr == 2:
        return Kind.PARABOLIC
    return Kind.HYPERBOLIC


def fixed_points(t: MobiusMap) -> tuple[complex, ...]:
    """Roots of c w^2 + (d - a) w - b = 0 on the Riemann sphere (inf as complex('inf'))."""
    a, b, c, d = t.a, t.b, t.c, t.d
    if t.is_identity():
        raise ValueError("every point is fixed by the identity")
    if c == 0:
        # integer ad = 1 forces a = d = 1: a translation
        return (complex(math.inf, 0),)
    disc = (d - a) ** 2 + 4 * b * c  # == trace^2 - 4, exact
    if disc == 0:
        return (complex((a - d) / (2 * c), 0),)
    root = cmath.sqrt(disc)
    return ((a - d - root) / (2 * c), (a - d + root) / (2 * c))


# --- generalized circles -------------------------------------------------


@dataclass(frozen=True)
class Circle:
    """Half-circle |z - center| = radius in the upper half-plane."""

    center: float
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"circle radius must be positive, got {self.radius}")

    def endpoints(self) -> tuple[float, float]:
        return (self.center - self.radius, self.center + self.radius)

    def contains(self, z: Point, tol: float = DEFAULT_TOL) -> bool:
        return abs(abs(_as_complex(z) - self.center) - self.radius) <= tol

    def point_at(self, theta: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * theta)


@dataclass(frozen=True)
class VerticalLine:
    x0: float

    def contains(self, z: Point, tol: float = DEFAULT_TOL) -> bool:
        return abs(_as_complex(z).real - self.x0) <= tol


GeneralizedCircle = Union[Circle, VerticalLine]


class Region(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


def region_of(c: Circle, z: Point) -> Region:
    return Region.INSIDE if abs(_as_complex(z) - c.center) < c.radius else Region.OUTSIDE


def circles_close(c1: GeneralizedCircle, c2: GeneralizedCircle, tol: float = DEFAULT_TOL) -> bool:
    if isinstance(c1, Circle) and isinstance(c2, Circle):
        return abs(c1.center - c2.center) <= tol and abs(c1.radius - c2.radius) <= tol
    if isinstance(c1, VerticalLine) and isinstance(c2, VerticalLine):
        return abs(c1.x0 - c2.x0) <= tol
    return False


def _real_image(t: MobiusMap, x: float, tol: float) -> Fraction | None:
    q = Fraction(x)  # exact for any float
    den = t.c * q + t.d
    if abs(den) <= tol:
        return None
    return (t.a * q + t.b) / den


def circle_image(t: MobiusMap, c: GeneralizedCircle, tol: float = DEFAULT_TOL) -> GeneralizedCircle:
    """Image of a geodesic under t.

    A real Mobius map sends geodesics to geodesics, so it is enough to move
    the two ideal endpoints, which is done in exact rational arithmetic.
    An endpoint landing on infinity (pole on c) gives a vertical line.
    """
    if isinstance(c, Circle):
        ends = [_real_image(t, x, tol) for x in c.endpoints()]
    else:
        ends = [_real_image(t, c.x0, tol), image_of_infinity(t)]
    finite = [x for x in ends if x is not None]
    if len(finite) == 1:
        return VerticalLine(float(finite[0]))
    if not finite:
        raise ValueError("degenerate geodesic image")
    lo, hi = sorted(finite)
    return Circle(float((lo + hi) / 2), float((hi - lo) / 2))
