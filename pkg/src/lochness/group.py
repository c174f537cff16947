"""The infinitely generated Fuchsian group of the hyperbolic monster.

The fundamental domain P is the common exterior of the half-circles
C_{4n} = {|z - 4n| = 1}. For each m the map f_m pairs C_{16m} with
C_{16m+8} and g_m pairs C_{16m+4} with C_{16m+12}. Everything that
touches the group takes an explicit window |m| <= window, since only
finitely many generators can ever be materialized.

The g_m formula exists in two variants. PRINTED has leading coefficient
16m+8 and sends C_{16m+4} onto C_{16m+8}, the wrong circle; CORRECTED
uses 16m+12 and realizes the intended pairing with C_{16m+12}.
CORRECTED is the default everywhere.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator

from .mobius import (
    DEFAULT_TOL,
    IDENTITY,
    Circle,
    GeneralizedCircle,
    Kind,
    MobiusMap,
    UpperHalfPoint,
    apply,
    circle_image,
    circles_close,
    classify,
    compose,
    fixed_points,
    inverse,
    parts,
)

DEFAULT_WORD_CAP = 10**6
DEFAULT_REDUCTION_CAP = 10_000


class Variant(enum.Enum):
    PRINTED = "printed"
    CORRECTED = "corrected"


class GroupError(Exception):
    pass


class WindowExceeded(GroupError):
    pass


class NonTermination(GroupError):
    pass


class ResourceLimit(GroupError):
    pass


def f_lift(m: int) -> tuple[int, int, int, int]:
    """Entries (a, b, c, d) of the SL2 lift of f_m with c = 1; its trace is 8."""
    return 16 * m + 8, -(1 + 16 * m * (16 * m + 8)), 1, -16 * m


def g_lift(m: int, variant: Variant = Variant.CORRECTED) -> tuple[int, int, int, int]:
    """Entries of the SL2 lift of g_m with c = 1 (trace 8 corrected, 4 printed)."""
    p = 16 * m + 4
    if variant is Variant.PRINTED:
        return 16 * m + 8, -(1 + p * (16 * m + 8)), 1, -p
    return 16 * m + 12, -(1 + p * (16 * m + 12)), 1, -p


def gen_f(m: int) -> MobiusMap:
    return MobiusMap.from_entries(*f_lift(m))


def gen_g(m: int, variant: Variant = Variant.CORRECTED) -> MobiusMap:
    return MobiusMap.from_entries(*g_lift(m, variant))


def boundary_circle(n: int) -> Circle:
    """C_{4n}: the unit half-circle centred at 4n."""
    return Circle(4.0 * n, 1.0)


# --- words ---------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Letter:
    """One generator f_m, g_m or an inverse. Ordering gives the lexicographic word order."""

    family: str  # "f" or "g"
    m: int
    inverted: bool = False

    def __post_init__(self):
        if self.family not in ("f", "g"):
            raise ValueError(f"unknown generator family {self.family!r}")

    def inv(self) -> "Letter":
        return Letter(self.family, self.m, not self.inverted)

    def matrix(self, variant: Variant = Variant.CORRECTED) -> MobiusMap:
        t = gen_f(self.m) if self.family == "f" else gen_g(self.m, variant)
        return inverse(t) if self.inverted else t

    def __str__(self):
        return f"{self.family}_{self.m}" + ("^-1" if self.inverted else "")


@dataclass(frozen=True)
class Word:
    """A reduced word; as a map it is letters[0] o letters[1] o ... ."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for x, y in zip(self.letters, self.letters[1:]):
            if y == x.inv():
                raise ValueError(f"word is not reduced at {x}{y}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return " ".join(str(x) for x in self.letters) or "id"

    def inverse(self) -> "Word":
        return Word(tuple(x.inv() for x in reversed(self.letters)))

    def matrix(self, variant: Variant = Variant.CORRECTED) -> MobiusMap:
        t = IDENTITY
        for x in self.letters:
            t = compose(t, x.matrix(variant))
        return t

    def apply(self, z, variant: Variant = Variant.CORRECTED):
        for x in reversed(self.letters):
            z = apply(x.matrix(variant), z)
        return z


def letters(window: int) -> list[Letter]:
    """All 4(2 window + 1) generator letters in lexicographic order."""
    return [
        Letter(fam, m, inv)
        for fam in ("f", "g")
        for m in range(-window, window + 1)
        for inv in (False, True)
    ]


# --- fundamental domain --------------------------------------------------


def nearest_centers(x: float) -> tuple[int, int]:
    """Indices n of the two centres 4n nearest to x."""
    n = math.floor(float(x) / 4)
    return n, n + 1


def domain_contains(z, tol: float = DEFAULT_TOL) -> bool:
    x, y = parts(z)
    return all((x - 4 * n) ** 2 + y * y >= (1 - tol) ** 2 for n in nearest_centers(x))


def enclosing_circle(z) -> int | None:
    """Index n with z strictly inside C_{4n}, if any (the circles are disjoint)."""
    x, y = parts(z)
    n = math.floor(float(x) / 4 + 0.5)
    return n if (x - 4 * n) ** 2 + y * y < 1 else None


def pairing_letter(n: int) -> Letter:
    """The generator carrying the inside of C_{4n} to the outside of its partner."""
    m, r = divmod(n, 4)
    return {
        0: Letter("f", m, False),
        1: Letter("g", m, False),
        2: Letter("f", m, True),
        3: Letter("g", m, True),
    }[r]


def reduce_to_domain(
    z, window: int, cap: int = DEFAULT_REDUCTION_CAP
) -> tuple[Word, UpperHalfPoint]:
    """Move z into P by ping-pong.

    z may be an mpmath.mpc for extended precision: deep orbit points sit
    exponentially close to the real axis, where doubles lose the real part.

    Returns (w, z') with z' = w(z); len(w) is the number of steps taken.
    Each step strictly increases Im z, because the pairing map expands the
    inside of its source circle, and lands outside the partner circle, so
    consecutive letters never cancel.
    """
    w = complex(z) if isinstance(z, UpperHalfPoint) else z
    if not parts(w)[1] > 0:
        raise ValueError(f"{w} is not in the upper half-plane")
    applied: list[Letter] = []
    for _ in range(cap):
        n = enclosing_circle(w)
        if n is None:
            x, y = parts(w)
            return Word(tuple(reversed(applied))), UpperHalfPoint(float(x), float(y))
        letter = pairing_letter(n)
        if abs(letter.m) > window:
            raise WindowExceeded(f"point {w} is inside C_{4 * n}; its pairing needs m = {letter.m}")
        w = apply(letter.matrix(), w)
        applied.append(letter)
    raise NonTermination(f"no reduction of {z} after {cap} steps")


# --- verification --------------------------------------------------------


@dataclass(frozen=True)
class PairingRecord:
    letter: Letter
    source: Circle
    target: Circle
    image: GeneralizedCircle
    match: bool


@dataclass(frozen=True)
class PairingReport:
    window: int
    variant: Variant
    records: tuple[PairingRecord, ...]

    @property
    def matches(self) -> int:
        return sum(r.match for r in self.records)

    @property
    def ok(self) -> bool:
        return all(r.match for r in self.records)


def verify_side_pairings(
    window: int, variant: Variant = Variant.CORRECTED, tol: float = DEFAULT_TOL
) -> PairingReport:
    if window < 0:
        raise ValueError("window must be non-negative")
    records = []
    for m in range(-window, window + 1):
        for letter, src, dst in (
            (Letter("f", m), 4 * m, 4 * m + 2),
            (Letter("g", m), 4 * m + 1, 4 * m + 3),
        ):
            source, target = boundary_circle(src), boundary_circle(dst)
            image = circle_image(letter.matrix(variant), source, tol)
            records.append(PairingRecord(letter, source, target, image, circles_close(image, target, tol)))
    return PairingReport(window, variant, tuple(records))


def _inside_samples(c: Circle, count: int) -> list[complex]:
    side = max(1, math.isqrt(count))
    while side * side < count:
        side += 1
    pts = []
    for i in range(side):
        rho = (i + 0.5) / side * 0.98
        for j in range(side):
            theta = (j + 0.5) / side * math.pi
            pts.append(c.center + c.radius * rho * complex(math.cos(theta), math.sin(theta)))
    return pts[:count]


def _outside_samples(c: Circle, count: int) -> list[complex]:
    """Points of P outside c: a band around c plus a few far-away points."""
    pts = []
    side = max(1, math.isqrt(count))
    while side * side < count:
        side += 1
    for i in range(side):
        rho = 1.02 + 1.4 * i / max(1, side - 1)
        for j in range(side):
            theta = (j + 0.5) / side * math.pi
            z = c.center + c.radius * rho * complex(math.cos(theta), math.sin(theta))
            if i == side - 1:
                z = complex(z.real, z.imag * 10.0 ** (j % 4 + 1))
            pts.append(z)
    return [z for z in pts if domain_contains(z)][:count]


def verify_region_exchange(window: int, samples: int = 64, tol: float = DEFAULT_TOL) -> bool:
    """Check that each pairing swaps the inside of its source with the outside of its target."""
    return all(r["ok"] for r in region_exchange_report(window, samples, tol))


def region_exchange_report(window: int, samples: int = 64, tol: float = DEFAULT_TOL) -> list[dict]:
    rows = []
    for m in range(-window, window + 1):
        for letter, src, dst in (
            (Letter("f", m), 4 * m, 4 * m + 2),
            (Letter("g", m), 4 * m + 1, 4 * m + 3),
        ):
            t = letter.matrix()
            source, target = boundary_circle(src), boundary_circle(dst)
            inside = _inside_samples(source, samples)
            outside = _outside_samples(source, samples)
            in_ok = sum(abs(apply(t, z) - target.center) > target.radius - tol for z in inside)
            out_ok = sum(abs(apply(t, z) - target.center) < target.radius + tol for z in outside)
            rows.append(
                {
                    "letter": str(letter),
                    "inside_samples": len(inside),
                    "inside_ok": in_ok,
                    "outside_samples": len(outside),
                    "outside_ok": out_ok,
                    "ok": in_ok == len(inside) and out_ok == len(outside) and len(outside) == samples,
                }
            )
    return rows


# --- orbit enumeration ---------------------------------------------------


def word_count(window: int, depth: int) -> int:
    """Number of reduced words of length <= depth over the windowed letters."""
    n = 4 * (2 * window + 1)
    return 1 + sum(n * (n - 1) ** (d - 1) for d in range(1, depth + 1))


def _raw_words(window: int, depth: int, variant: Variant, cap: int):
    if window < 0 or depth < 0:
        raise ValueError("window and depth must be non-negative")
    total = word_count(window, depth)
    if total > cap:
        raise ResourceLimit(f"{total} words exceed the cap of {cap}")
    alphabet = [(x, x.matrix(variant)) for x in letters(window)]
    layer: list[tuple[tuple[Letter, ...], MobiusMap]] = [((), IDENTITY)]
    yield (), IDENTITY
    for _ in range(depth):
        nxt = []
        for lets, t in layer:
            last_inv = lets[-1].inv() if lets else None
            for x, xt in alphabet:
                if x != last_inv:
                    nxt.append((lets + (x,), compose(t, xt)))
        yield from nxt
        layer = nxt


def iter_words(
    window: int, depth: int, variant: Variant = Variant.CORRECTED, cap: int = DEFAULT_WORD_CAP
) -> Iterator[tuple[Word, MobiusMap]]:
    """Breadth-first, lexicographic within each length; identity first."""
    for lets, t in _raw_words(window, depth, variant, cap):
        yield Word(lets), t


def enumerate_words(
    window: int, depth: int, variant: Variant = Variant.CORRECTED, cap: int = DEFAULT_WORD_CAP
) -> list[tuple[Word, MobiusMap]]:
    return list(iter_words(window, depth, variant, cap))


@dataclass
class ProbeReport:
    window: int
    depth: int
    words: int = 0
    distinct_matrices: int = 0
    counts: dict = field(default_factory=lambda: {k.value: 0 for k in Kind if k is not Kind.IDENTITY})
    identity_words: list = field(default_factory=list)
    elliptic_words: list = field(default_factory=list)
    parabolic_words: list = field(default_factory=list)
    nonreal_fixed_points: int = 0

    @property
    def free(self) -> bool:
        """All probed reduced words gave pairwise distinct matrices."""
        return self.distinct_matrices == self.words + 1

    @property
    def fixed_point_free(self) -> bool:
        return not self.identity_words and not self.elliptic_words and self.nonreal_fixed_points == 0

    def as_dict(self) -> dict:
        return {
            "window": self.window,
            "depth": self.depth,
            "words": self.words,
            "distinct_matrices": self.distinct_matrices,
            "counts": dict(self.counts),
            "identity_words": list(self.identity_words),
            "elliptic_words": list(self.elliptic_words),
            "parabolic_words": list(self.parabolic_words),
            "nonreal_fixed_points": self.nonreal_fixed_points,
            "free": self.free,
            "fixed_point_free": self.fixed_point_free,
        }


def probe_fixed_points(
    window: int, depth: int, variant: Variant = Variant.CORRECTED, cap: int = DEFAULT_WORD_CAP
) -> ProbeReport:
    """Look for non-identity elements with a fixed point inside the upper half-plane.

    For an integer matrix the fixed-point quadratic has discriminant
    trace^2 - 4, so the roots are real exactly when |trace| >= 2; the
    classification is done on exact integers.
    """
    report = ProbeReport(window, depth)
    seen = set()
    for lets, t in _raw_words(window, depth, variant, cap):
        seen.add((t.a, t.b, t.c, t.d))
        if not lets:
            continue
        report.words += 1
        kind = classify(t)
        if kind is Kind.IDENTITY:
            report.identity_words.append(str(Word(lets)))
            continue
        report.counts[kind.value] += 1
        if kind is Kind.ELLIPTIC:
            report.elliptic_words.append(str(Word(lets)))
            report.nonreal_fixed_points += 1
        elif kind is Kind.PARABOLIC:
            report.parabolic_words.append(str(Word(lets)))
    report.distinct_matrices = len(seen)
    return report


def real_fixed_points(t: MobiusMap) -> tuple[float, ...]:
    """Fixed points of a hyperbolic or parabolic element; raises if one lies off the real line."""
    pts = fixed_points(t)
    for p in pts:
        if abs(p.imag) > 0:
            raise ValueError(f"{t} fixes {p}, which is not on the boundary")
    return tuple(p.real for p in pts)
