"""Poincare-disc primitives.

Points are plain Python complex numbers with modulus < 1. Orientation
preserving isometries are stored as the first row ``(a, b)`` of a matrix
``(a, b; conj(b), conj(a))`` with ``|a|^2 - |b|^2 = 1``; the sign of the matrix
is kept, because trace functions of a fixed lift are needed downstream.

Geodesic computations go through the hyperboloid model: a point of the disc
is a future timelike unit vector of R^{2,1} and an oriented geodesic is the
spacelike unit normal of its plane.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels

TOL_ID = 1e-9
TOL_CLASS = 1e-8
RENORM_EVERY = 16


class DomainError(ValueError):
    """A point is outside the open disc or an input is degenerate."""


class ClassMismatch(ValueError):
    """An isometry does not have the type an operation requires."""


def check_point(p) -> complex:
    p = complex(p)
    if not abs(p) < 1.0:
        raise DomainError(f"point {p!r} is not inside the unit disc")
    return p


# --------------------------------------------------------------------------
# isometries


@dataclass(frozen=True)
class MoebiusIso:
    a: complex
    b: complex

    def __call__(self, z):
        z = complex(z)
        return (self.a * z + self.b) / (self.b.conjugate() * z + self.a.conjugate())

    def __matmul__(self, other: "MoebiusIso") -> "MoebiusIso":
        return compose(self, other)

    def __neg__(self) -> "MoebiusIso":
        return MoebiusIso(-self.a, -self.b)

    @property
    def det(self) -> float:
        return abs(self.a) ** 2 - abs(self.b) ** 2

    @property
    def trace(self) -> float:
        return 2.0 * self.a.real

    def inverse(self) -> "MoebiusIso":
        return MoebiusIso(self.a.conjugate(), -self.b)

    def renormalized(self) -> "MoebiusIso":
        s = math.sqrt(self.det)
        return MoebiusIso(self.a / s, self.b / s)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.b.conjugate(), self.a.conjugate()]])

    def distance_to(self, other: "MoebiusIso") -> float:
        """Max-entry distance between the matrices (sign sensitive)."""
        return max(abs(self.a - other.a), abs(self.b - other.b))

    def projective_distance(self, other: "MoebiusIso") -> float:
        return min(self.distance_to(other), self.distance_to(-other))


IDENTITY = MoebiusIso(1.0 + 0j, 0j)


def compose(m2: MoebiusIso, m1: MoebiusIso) -> MoebiusIso:
    """Matrix product ``m2 @ m1``: apply ``m1`` first."""
    return MoebiusIso(m2.a * m1.a + m2.b * m1.b.conjugate(),
                      m2.a * m1.b + m2.b * m1.a.conjugate())


def product(isos) -> MoebiusIso:
    """``isos[-1] @ ... @ isos[0]`` with periodic renormalization."""
    isos = list(isos)
    if not isos:
        return IDENTITY
    a, b = kernels.mobius_chain([m.a for m in isos], [m.b for m in isos])
    return MoebiusIso(complex(a), complex(b))


def apply(m: MoebiusIso, p) -> complex:
    return m(check_point(p))


def half_turn(p) -> MoebiusIso:
    """Rotation by pi about ``p`` in the lift continuous in ``p``.

    ``half_turn(0)`` is ``(i, 0; 0, -i)``; the square is ``-Id``.
    """
    p = check_point(p)
    r2 = abs(p) ** 2
    w = 1.0 / (1.0 - r2)
    return MoebiusIso(1j * (1.0 + r2) * w, -2j * p * w)


def half_turn_product(points) -> MoebiusIso:
    """``s_{p[n-1]} ... s_{p[0]}`` in the continuous lift."""
    a, b = kernels.half_turn_product([check_point(p) for p in points])
    return MoebiusIso(complex(a), complex(b))


def disc_translation(p) -> MoebiusIso:
    """The transvection sending 0 to ``p`` along the diameter through ``p``."""
    p = check_point(p)
    s = 1.0 / math.sqrt(1.0 - abs(p) ** 2)
    return MoebiusIso(complex(s), p * s)


def rotate_about(p, theta: float) -> MoebiusIso:
    """Elliptic isometry fixing ``p`` with rotation angle ``theta``."""
    t = disc_translation(p)
    r = MoebiusIso(cmath.exp(0.5j * theta), 0j)
    return compose(t, compose(r, t.inverse()))


def distance(p, q) -> float:
    p, q = check_point(p), check_point(q)
    num = abs(p - q)
    if num == 0.0:
        return 0.0
    # arcosh form keeps precision when both points are near the boundary
    x = 2.0 * num * num / ((1.0 - abs(p) ** 2) * (1.0 - abs(q) ** 2))
    return math.acosh(1.0 + x) if x > 1e-8 else 2.0 * math.atanh(num / abs(1.0 - q.conjugate() * p))


class IsoClass(enum.Enum):
    IDENTITY = "Identity"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


def classify(m: MoebiusIso, tol: float = TOL_CLASS, tol_id: float = TOL_ID) -> IsoClass:
    if m.projective_distance(IDENTITY) < tol_id:
        return IsoClass.IDENTITY
    t = abs(m.trace)
    if t < 2.0 - tol:
        return IsoClass.ELLIPTIC
    if t > 2.0 + tol:
        return IsoClass.HYPERBOLIC
    return IsoClass.PARABOLIC


def _fixed_points(m: MoebiusIso):
    """Roots of conj(b) z^2 + (conj(a) - a) z - b = 0 (b != 0)."""
    bc = m.b.conjugate()
    s = cmath.sqrt(-(m.a.imag ** 2) + abs(m.b) ** 2)
    return (1j * m.a.imag + s) / bc, (1j * m.a.imag - s) / bc


def _derivative(m: MoebiusIso, z: complex) -> complex:
    return 1.0 / (m.b.conjugate() * z + m.a.conjugate()) ** 2


def elliptic_data(m: MoebiusIso):
    """Return ``(center, angle)`` with angle in [0, 2 pi)."""
    if classify(m) not in (IsoClass.ELLIPTIC, IsoClass.IDENTITY):
        raise ClassMismatch(f"not elliptic: trace {m.trace!r}")
    if abs(m.b) < 1e-300:
        center = 0j
    else:
        z1, z2 = _fixed_points(m)
        center = z1 if abs(z1) < abs(z2) else z2
    angle = cmath.phase(_derivative(m, center)) % (2.0 * math.pi)
    return center, angle


def hyperbolic_data(m: MoebiusIso):
    """Return ``(axis, length)``; the axis is oriented along the translation."""
    if classify(m) is not IsoClass.HYPERBOLIC:
        raise ClassMismatch(f"not hyperbolic: trace {m.trace!r}")
    z1, z2 = _fixed_points(m)
    z1, z2 = z1 / abs(z1), z2 / abs(z2)
    # the repelling fixed point has derivative > 1
    if abs(_derivative(m, z1)) < abs(_derivative(m, z2)):
        z1, z2 = z2, z1
    length = 2.0 * math.acosh(abs(m.trace) / 2.0)
    return Geodesic(z1, z2), length


# --------------------------------------------------------------------------
# hyperboloid helpers


def to_hyperboloid(z) -> np.ndarray:
    z = complex(z)
    r2 = abs(z) ** 2
    return np.array([1.0 + r2, 2.0 * z.real, 2.0 * z.imag]) / (1.0 - r2)


def from_hyperboloid(x) -> complex:
    return complex(x[1], x[2]) / (1.0 + x[0])


def minkowski(x, y) -> float:
    return float(-x[0] * y[0] + x[1] * y[1] + x[2] * y[2])


def lorentz_cross(x, y) -> np.ndarray:
    # Euclidean cross product with the time component negated
    return np.array([
        -(x[1] * y[2] - x[2] * y[1]),
        x[2] * y[0] - x[0] * y[2],
        x[0] * y[1] - x[1] * y[0],
    ])


def _light(e) -> np.ndarray:
    return np.array([1.0, e.real, e.imag])


def _unit_timelike(x) -> np.ndarray:
    n = math.sqrt(-minkowski(x, x))
    x = x / n
    return -x if x[0] < 0 else x


# --------------------------------------------------------------------------
# geodesics


@dataclass(frozen=True)
class Geodesic:
    """Oriented geodesic given by its ideal endpoints, from ``start`` to ``end``."""

    start: complex
    end: complex

    def __post_init__(self):
        if abs(self.start - self.end) < 1e-15:
            raise DomainError("geodesic endpoints coincide")

    def reversed(self) -> "Geodesic":
        return Geodesic(self.end, self.start)

    def normal(self) -> np.ndarray:
        """Unit spacelike normal; points on the left have positive pairing."""
        n = lorentz_cross(_light(self.start), _light(self.end))
        return n / math.sqrt(minkowski(n, n))

    @classmethod
    def from_normal(cls, n) -> "Geodesic":
        n = np.asarray(n, dtype=float)
        n = n / math.sqrt(minkowski(n, n))
        phi = math.atan2(n[2], n[1])
        w = math.acos(max(-1.0, min(1.0, n[0] / math.hypot(n[1], n[2]))))
        e1, e2 = cmath.exp(1j * (phi - w)), cmath.exp(1j * (phi + w))
        g = cls(e1, e2)
        if minkowski(g.normal(), n) < 0:
            g = g.reversed()
        return g

    def side(self, p) -> float:
        """Signed ``sinh`` of the distance from ``p``; positive on the left."""
        return minkowski(to_hyperboloid(p), self.normal())

    def closest_to_origin(self) -> complex:
        return project_onto(0j, self)

    def standardizer(self) -> MoebiusIso:
        """Isometry sending ``start`` to -1 and ``end`` to +1."""
        c0 = self.closest_to_origin()
        t = disc_translation(c0).inverse()
        u = t(self.end)
        rot = MoebiusIso(cmath.exp(-0.5j * cmath.phase(u)), 0j)
        return compose(rot, t)

    def coordinate(self, p) -> float:
        """Signed arclength of the foot of ``p`` along the oriented geodesic."""
        x = self.standardizer()(project_onto(p, self)).real
        x = max(-1.0 + 1e-16, min(1.0 - 1e-16, x))
        return 2.0 * math.atanh(x)

    def point_at(self, s: float) -> complex:
        """Point at signed arclength ``s`` from the origin's foot."""
        return self.standardizer().inverse()(complex(math.tanh(s / 2.0)))

    def tangent_at(self, p) -> complex:
        """Unit Euclidean tangent direction of the oriented geodesic at ``p``."""
        m = self.standardizer()
        w = m(p)
        # derivative of the inverse at w maps the positive real direction
        mi = m.inverse()
        d = _derivative(mi, w)
        return d / abs(d)

    def contains(self, p, tol: float = 1e-9) -> bool:
        return abs(self.side(p)) < tol


def geodesic_through(p, q) -> Geodesic:
    """Geodesic through ``p`` and ``q``, oriented from ``p`` towards ``q``."""
    p, q = check_point(p), check_point(q)
    if abs(p - q) < 1e-15:
        raise DomainError("coincident points do not determine a geodesic")
    t = disc_translation(p)
    w = t.inverse()(q)
    u = w / abs(w)
    return Geodesic(t(-u), t(u))


def project_onto(p, g: Geodesic) -> complex:
    x = to_hyperboloid(check_point(p))
    n = g.normal()
    y = x - minkowski(x, n) * n
    return from_hyperboloid(_unit_timelike(y))


def distance_to_geodesic(p, g: Geodesic) -> float:
    return math.asinh(abs(g.side(p)))


def translate_along(g: Geodesic, d: float) -> MoebiusIso:
    """Translation by signed length ``d`` along ``g`` (positive: towards ``end``)."""
    m = g.standardizer()
    tr = MoebiusIso(complex(math.cosh(d / 2.0)), complex(math.sinh(d / 2.0)))
    return compose(m.inverse(), compose(tr, m))


def midpoint(p, q) -> complex:
    if abs(p - q) < 1e-15:
        return complex(p)
    return translate_along(geodesic_through(p, q), distance(p, q) / 2.0)(p)


@dataclass(frozen=True)
class Crossing:
    point: complex
    angle: float


@dataclass(frozen=True)
class Asymptotic:
    point: complex


@dataclass(frozen=True)
class Disjoint:
    perpendicular: Geodesic
    gap: float
    foot1: complex
    foot2: complex


def geodesics_relation(g1: Geodesic, g2: Geodesic, tol: float = TOL_CLASS):
    """Mutual position of two geodesics.

    Returns :class:`Crossing`, :class:`Asymptotic` (an ideal endpoint shared
    within ``tol``) or :class:`Disjoint` with the common perpendicular,
    oriented from ``g1`` to ``g2``, and the gap between the lines.
    """
    ends1, ends2 = (g1.start, g1.end), (g2.start, g2.end)
    close = [(abs(e - f), e, f) for e in ends1 for f in ends2]
    close.sort(key=lambda t: t[0])
    if close[0][0] < tol and close[1][0] < tol:
        raise DomainError("the two geodesics coincide")
    n1, n2 = g1.normal(), g2.normal()
    c = minkowski(n1, n2)
    if close[0][0] < tol:
        e, f = close[0][1], close[0][2]
        mid = (e + f) / 2.0
        return Asymptotic(mid / abs(mid))
    if abs(c) < 1.0:
        x = _unit_timelike(lorentz_cross(n1, n2))
        return Crossing(from_hyperboloid(x), math.acos(max(-1.0, min(1.0, c))))
    m = lorentz_cross(n1, n2)
    foot1 = from_hyperboloid(_unit_timelike(lorentz_cross(m, n1)))
    foot2 = from_hyperboloid(_unit_timelike(lorentz_cross(m, n2)))
    return Disjoint(geodesic_through(foot1, foot2), math.acosh(abs(c)), foot1, foot2)


# --------------------------------------------------------------------------
# triples of half-turns


def delta_invariant(p1, p2, p3) -> float:
    """Half the absolute trace of ``s3 s2 s1``; equals sinh(h) sinh(d(p1, p2))."""
    return abs(half_turn_product([p1, p2, p3]).trace) / 2.0


def delta_invariant_geometric(p1, p2, p3) -> float:
    d = distance(p1, p2)
    if d == 0.0:
        return 0.0
    h = distance_to_geodesic(p3, geodesic_through(p1, p2))
    return math.sinh(h) * math.sinh(d)


def commutator(a: MoebiusIso, b: MoebiusIso) -> MoebiusIso:
    """``[A, B] = B^-1 A^-1 B A``."""
    return product([a, b, a.inverse(), b.inverse()])


def commutator_points(a: MoebiusIso, b: MoebiusIso, tol: float = TOL_CLASS):
    """Points ``x1, x2, x3`` with ``A = s2 s1`` and ``B = s2 s3`` projectively."""
    for name, m in (("A", a), ("B", b)):
        if classify(m, tol) is not IsoClass.HYPERBOLIC:
            raise ClassMismatch(f"{name} is not hyperbolic (trace {m.trace!r})")
    axis_a, len_a = hyperbolic_data(a)
    axis_b, len_b = hyperbolic_data(b)
    same = (abs(axis_a.start - axis_b.start) < tol and abs(axis_a.end - axis_b.end) < tol) or (
        abs(axis_a.start - axis_b.end) < tol and abs(axis_a.end - axis_b.start) < tol)
    if same:
        x2 = project_onto(0j, axis_a)
    else:
        rel = geodesics_relation(axis_a, axis_b, tol)
        if not isinstance(rel, Crossing):
            raise ClassMismatch(f"axes do not cross: {type(rel).__name__}")
        x2 = rel.point
    x1 = translate_along(axis_a, -len_a / 2.0)(x2)
    x3 = translate_along(axis_b, -len_b / 2.0)(x2)
    return x1, x2, x3
