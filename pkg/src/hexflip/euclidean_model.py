"""Euclidean limit of sextuples near the singular configuration.

A direction at the singular point is a tuple of six complex numbers with
vanishing alternating sum, taken modulo translations. The Hermitian form
``h`` on that space has signature (2, 2); its real part ``q`` cuts out the
cone of genuine limit directions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .hyperbolic_core import DomainError
from .sextuple import BraidWord, Sextuple

ALT = np.array([-1.0, 1.0, -1.0, 1.0, -1.0, 1.0])
_SIGNS = np.array([[(-1.0) ** (i + j) for j in range(1, 7)] for i in range(1, 7)])
_UPPER = np.triu(np.ones((6, 6)), k=1)

# signed intersections of the six curves: +1 with the previous, -1 with the next
INTERSECTION = np.zeros((6, 6))
for _i in range(6):
    INTERSECTION[_i, (_i + 1) % 6] = -1.0
    INTERSECTION[_i, (_i - 1) % 6] = 1.0

# symplectic form on H1 in the ordered basis (a1, a2, b1, b2)
OMEGA = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])


def _slice_basis() -> np.ndarray:
    """Orthonormal real basis (4 x 6) of {alternating sum 0, mean 0}."""
    _, _, vt = np.linalg.svd(np.vstack([ALT, np.ones(6)]))
    return vt[2:]


SLICE = _slice_basis()


class ConstraintError(ValueError):
    pass


class NotLagrangian(ValueError):
    pass


class LiftError(RuntimeError):
    pass


@dataclass(frozen=True)
class EucConfig:
    p: tuple

    @classmethod
    def of(cls, pts) -> "EucConfig":
        pts = tuple(complex(x) for x in pts)
        if len(pts) != 6:
            raise ValueError("need six points")
        return cls(pts)

    def array(self) -> np.ndarray:
        return np.array(self.p, dtype=complex)

    def alternating_sum(self) -> complex:
        return complex(ALT @ self.array())

    def gauged(self) -> "EucConfig":
        a = self.array()
        return EucConfig.of(a - a.mean())

    def __add__(self, other: "EucConfig") -> "EucConfig":
        return EucConfig.of(self.array() + other.array())

    def __sub__(self, other: "EucConfig") -> "EucConfig":
        return EucConfig.of(self.array() - other.array())

    def scaled(self, c: complex) -> "EucConfig":
        return EucConfig.of(c * self.array())

    def norm(self) -> float:
        return float(np.linalg.norm(self.gauged().array()))

    def to_json(self) -> str:
        return json.dumps({"model": "euclidean",
                           "points": [[p.real, p.imag] for p in self.p]})

    @classmethod
    def from_json(cls, s: str) -> "EucConfig":
        d = json.loads(s)
        if d.get("model") != "euclidean":
            raise ValueError("not a euclidean configuration")
        return cls.of(complex(x, y) for x, y in d["points"])


def _check_constraint(v: EucConfig, tol: float = 1e-12) -> None:
    scale = max(1.0, float(np.abs(v.array()).max()))
    if abs(v.alternating_sum()) > tol * scale:
        raise ConstraintError(f"alternating sum {abs(v.alternating_sum()):.3e} is not zero")


# --------------------------------------------------------------------------
# forms


def area(a: complex, b: complex, c: complex) -> float:
    """Signed area of the triangle (a, b, c)."""
    return 0.5 * ((b - a).conjugate() * (c - a)).imag


def h(v: EucConfig, w: EucConfig) -> complex:
    """Hermitian form, linear in ``v`` and antilinear in ``w``."""
    x, y = v.array(), w.array()
    m = np.outer(x, y.conj()) - np.outer(y.conj(), x)
    return complex((_SIGNS * _UPPER * m).sum() / 4j)


def q_double_sum(v: EucConfig) -> float:
    return h(v, v).real


def q_area(v: EucConfig) -> float:
    _check_constraint(v)
    p = v.p
    return area(p[0], p[1], p[2]) + area(p[3], p[4], p[5])


def q_symplectic(v: EucConfig) -> float:
    ua1, ub1, ua2, ub2 = to_symplectic_values(v)
    return 0.5 * (ua1 * ub1.conjugate() + ua2 * ub2.conjugate()).imag


def q(v: EucConfig) -> float:
    return q_double_sum(v)


def to_symplectic_values(v: EucConfig):
    """``(u(a1), u(b1), u(a2), u(b2))`` of the cocycle attached to ``v``."""
    z = v.p
    return z[0] - z[1], z[2] - z[1], z[3] - z[4], z[5] - z[4]


def from_symplectic_values(ua1, ub1, ua2, ub2) -> EucConfig:
    """Inverse of :func:`to_symplectic_values`, in the mean-zero gauge."""
    z5 = ua1 + ub1 - ua2 - ub2
    return EucConfig.of([ua1, 0.0, ub1, z5 + ua2, z5, z5 + ub2]).gauged()


def hermitian_matrix(basis: np.ndarray = SLICE) -> np.ndarray:
    vs = [EucConfig.of(b) for b in basis]
    return np.array([[h(a, b) for b in vs] for a in vs])


def signature_of_h(basis: np.ndarray = SLICE, tol: float = 1e-10):
    """``(n_plus, n_minus)`` of ``h`` on the gauge slice spanned by ``basis``."""
    ev = np.linalg.eigvalsh(hermitian_matrix(basis))
    if np.min(np.abs(ev)) < tol * np.max(np.abs(ev)):
        raise DomainError("h is degenerate on the given slice")
    return int((ev > 0).sum()), int((ev < 0).sum())


# --------------------------------------------------------------------------
# real coordinates on the gauge slice


def to_real(v: EucConfig) -> np.ndarray:
    c = SLICE @ v.gauged().array()
    return np.concatenate([c.real, c.imag])


def from_real(x: np.ndarray) -> EucConfig:
    c = np.asarray(x[:4]) + 1j * np.asarray(x[4:])
    return EucConfig.of(c @ SLICE)


def real_form(f) -> np.ndarray:
    """Symmetric 8x8 matrix of a quadratic form ``f`` on the slice."""
    e = np.eye(8)
    d = np.array([f(from_real(e[k])) for k in range(8)])
    m = np.empty((8, 8))
    for j in range(8):
        for k in range(j, 8):
            m[j, k] = m[k, j] = 0.5 * (f(from_real(e[j] + e[k])) - d[j] - d[k]) if j != k else d[j]
    return m


def im_h_matrix() -> np.ndarray:
    e = np.eye(8)
    return np.array([[h(from_real(e[j]), from_real(e[k])).imag for k in range(8)] for j in range(8)])


# --------------------------------------------------------------------------
# braid action and flows


def euclid_leapfrog(v: EucConfig, i: int, sign: int = 1) -> EucConfig:
    """Leapfrog with Euclidean half-turns ``s_p(x) = 2p - x``; no regauging."""
    if not 1 <= i <= 6 or sign not in (1, -1):
        raise ValueError(f"bad move ({i}, {sign})")
    p = list(v.p)
    a, b = i - 1, i % 6
    if sign == 1:
        p[a], p[b] = p[b], 2 * p[b] - p[a]
    else:
        p[a], p[b] = 2 * p[a] - p[b], p[a]
    return EucConfig.of(p)


def euclid_apply_word(v: EucConfig, w: BraidWord) -> EucConfig:
    for i, e in w:
        v = euclid_leapfrog(v, i, e)
    return v


def euclid_word_matrix(w: BraidWord) -> np.ndarray:
    """Real 6x6 matrix ``M`` with ``euclid_apply_word(v, w).p = M @ v.p``."""
    cols = [euclid_apply_word(EucConfig.of(np.eye(6)[k]), w).array().real for k in range(6)]
    return np.array(cols).T


def psi_flow(v: EucConfig, t: float) -> EucConfig:
    """Rotate the first three points by ``t`` about ``z1 - z2 + z3``."""
    p = v.array()
    c = p[0] - p[1] + p[2]
    r = np.exp(1j * t)
    p[:3] = c + r * (p[:3] - c)
    return EucConfig.of(p)


# --------------------------------------------------------------------------
# cohomology


def f2(lam) -> EucConfig:
    lam = np.asarray(lam, dtype=complex)
    return EucConfig.of(lam + np.roll(lam, -1))


def f2_inverse(v: EucConfig) -> np.ndarray:
    """Some ``lam`` with ``f2(lam)`` equal to ``v`` modulo translation."""
    m = np.hstack([np.eye(6) + np.roll(np.eye(6), -1, axis=1), np.ones((6, 1))])
    sol, *_ = np.linalg.lstsq(m, v.array(), rcond=None)
    return sol[:6]


def cup(lam, mu) -> complex:
    """Cup product of ``f1(lam)`` and ``f1(mu)`` on the fundamental class."""
    return complex(np.asarray(lam) @ INTERSECTION @ np.asarray(mu))


def cup_formula(lam) -> complex:
    lam = np.asarray(lam, dtype=complex)
    return -2j * float(np.sum((lam * np.roll(lam, -1).conj()).imag))


def q_of_f2_formula(lam) -> float:
    lam = np.asarray(lam, dtype=complex)
    return -0.5 * float(np.sum((lam * np.roll(lam, -1).conj()).imag))


KERNEL_GENERATORS = (np.array([1, 0, 1, 0, 1, 0], dtype=complex),
                     np.array([0, 1, 0, 1, 0, 1], dtype=complex))


# --------------------------------------------------------------------------
# partition curves


def q_gamma(v: EucConfig, curve) -> float:
    """Quadratic form of a partition curve: area of its triple after the conjugator."""
    p = euclid_apply_word(v, curve.conjugator).p
    return area(p[0], p[1], p[2])


# --------------------------------------------------------------------------
# Lagrangian Grassmannian picture


@dataclass(frozen=True)
class LagrangianPoint:
    """Oriented kernel plane ``L`` (rows of ``basis``) and the form ``g`` on ``L*``.

    ``u`` and its conjugate share the unoriented plane and ``g``; the basis
    order is chosen so that ``det u > 0`` on the dual vectors, which makes
    the inverse single-valued.
    """

    basis: np.ndarray
    g: np.ndarray

    def projector(self) -> np.ndarray:
        q_, _ = np.linalg.qr(self.basis.T)
        return q_ @ q_.T

    def dual_vectors(self) -> np.ndarray:
        return _dual_vectors(self.basis)

    def quadratic_form(self) -> np.ndarray:
        """``x -> g(x mod L)`` as a 4x4 matrix on H1, ``L`` in its kernel."""
        # x = sum c_i m_i + l  with  c_i = omega(l_i, x)
        c = self.basis @ OMEGA
        return c.T @ self.g @ c


def _dual_vectors(basis: np.ndarray) -> np.ndarray:
    """Columns ``m_i`` with ``omega(l_j, m_i) = delta_ij``."""
    a = basis @ OMEGA
    return a.T @ np.linalg.inv(a @ a.T)


def u_vector(v: EucConfig) -> np.ndarray:
    """Values of ``u`` on ``(a1, a2, b1, b2)``."""
    ua1, ub1, ua2, ub2 = to_symplectic_values(v)
    return np.array([ua1, ua2, ub1, ub2])


def from_u_vector(u) -> EucConfig:
    return from_symplectic_values(u[0], u[2], u[1], u[3])


def u_matrix(v: EucConfig) -> np.ndarray:
    u = u_vector(v)
    return np.vstack([u.real, u.imag])


def lagrangian_map(v: EucConfig, tol: float = 1e-9) -> LagrangianPoint:
    m = u_matrix(v)
    _, s, vt = np.linalg.svd(m)
    if s[1] <= tol * max(s[0], 1e-300):
        raise DomainError("aligned direction: u has rank < 2")
    basis = vt[2:]
    iso = float(basis[0] @ OMEGA @ basis[1])
    if abs(iso) > tol:
        raise NotLagrangian(f"kernel of u is symplectic (omega = {iso:.3e}); q = {q(v):.3e}")
    w = m @ _dual_vectors(basis)
    if np.linalg.det(w) < 0:
        basis = basis[::-1].copy()
        w = w[:, ::-1]
    return LagrangianPoint(basis, w.T @ w)


def gram_root(g: np.ndarray):
    """Complex numbers ``(w1, w2)`` with Gram matrix ``g``, ``w1 > 0``."""
    w1 = math.sqrt(g[0, 0])
    w2 = complex(g[0, 1] / w1, math.sqrt(max(g[1, 1] - g[0, 1] ** 2 / g[0, 0], 0.0)))
    return w1, w2


def lagrangian_inverse(pt: LagrangianPoint) -> EucConfig:
    m = pt.dual_vectors()
    w1, w2 = gram_root(pt.g)
    b = np.vstack([pt.basis, m.T])
    u = np.linalg.solve(b.astype(complex), np.array([0, 0, w1, w2], dtype=complex))
    return phase_normalize(from_u_vector(u))


def phase_normalize(v: EucConfig, tol: float = 1e-14) -> EucConfig:
    """Rotate so the first nonzero symplectic value is positive real."""
    for x in to_symplectic_values(v):
        if abs(x) > tol:
            return v.scaled(abs(x) / x).gauged()
    return v.gauged()


def sp_act(g: np.ndarray, v: EucConfig) -> EucConfig:
    """``u -> u o g^-1`` for ``g`` symplectic on (a1, a2, b1, b2)."""
    return from_u_vector(np.linalg.inv(g).T @ u_vector(v))


def sp_act_lagrangian(g: np.ndarray, pt: LagrangianPoint) -> LagrangianPoint:
    basis = pt.basis @ g.T
    # g transported to the new dual vectors
    gi = np.linalg.inv(g)
    form = gi.T @ pt.quadratic_form() @ gi
    m = _dual_vectors(basis)
    return LagrangianPoint(basis, m.T @ form @ m)


def is_symplectic(g: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.abs(g.T @ OMEGA @ g - OMEGA).max() < tol)


def sp_generators():
    e = np.eye(2)
    z = np.zeros((2, 2))
    out = [OMEGA.copy()]
    for s in (np.array([[1.0, 0], [0, 0]]), np.array([[0, 0], [0, 1.0]]), np.array([[0, 1.0], [1.0, 0]])):
        out.append(np.block([[e, s], [z, e]]))
        out.append(np.block([[e, z], [s, e]]))
    for a in (np.array([[2.0, 0], [0, 1]]), np.array([[1.0, 1], [0, 1]])):
        out.append(np.block([[a, z], [z, np.linalg.inv(a).T]]))
    return out


# --------------------------------------------------------------------------
# symplectic forms


def omega_V(u1, u2, pairing: str = "real") -> float:
    """Coordinate expression of the symplectic form on values ``(a1, a2, b1, b2)``.

    ``pairing="real"`` reads the bracket as ``Re(x conj(y))``,
    ``pairing="det"`` as ``det(x, y) = Im(conj(x) y)``.
    """
    if pairing == "real":
        br = lambda x, y: (x * np.conj(y)).real  # noqa: E731
    elif pairing == "det":
        br = lambda x, y: (np.conj(x) * y).imag  # noqa: E731
    else:
        raise ValueError(pairing)
    v, w = u1, u2
    return float(-br(v[0], w[2]) + br(w[0], v[2]) - br(v[1], w[3]) + br(w[1], v[3]))


def omega_checks(v: EucConfig, w1: EucConfig, w2: EucConfig, tol: float = 1e-9) -> float:
    """``Im h(w1, w2)`` for tangent vectors at ``v`` (``Re h(v, w) = 0``)."""
    scale = max(v.norm(), 1e-300)
    for w in (w1, w2):
        if abs(h(v, w).real) > tol * scale * max(w.norm(), 1.0):
            raise DomainError("vector is not tangent to the level set of q")
    return h(w1, w2).imag


CHART_POINT = np.array([0.0, 0.0, 0.0, 1.0, 0.0, 1.0])
OMEGA_L_COEFFS = (1.0, 2.0, 1.0)


def chart_u(pq) -> np.ndarray:
    """Values on (a1, a2, b1, b2) of the cocycle at chart coordinates ``(p, q)``."""
    p1, p2, p3, q1, q2, q3 = pq
    v1 = math.sqrt(q1)
    v2 = complex(q2 / v1, math.sqrt(q3 - q2 * q2 / q1))
    return np.array([-p1 * v1 - p2 * v2, -p2 * v1 - p3 * v2, v1, v2])


def omega_L_matrix() -> np.ndarray:
    m = np.zeros((6, 6))
    for k, c in enumerate(OMEGA_L_COEFFS):
        m[k, 3 + k] = c
        m[3 + k, k] = -c
    return m


def pullback_ratio(pq=CHART_POINT, step: float = 1e-6, pairing: str = "real"):
    """Fit ``omega_V(dU_j, dU_k) = c * omega_L[j, k]`` on the chart; returns ``(c, rel_dev)``."""
    pq = np.asarray(pq, dtype=float)
    d = []
    for k in range(6):
        e = np.zeros(6)
        e[k] = step
        d.append((chart_u(pq + e) - chart_u(pq - e)) / (2 * step))
    ov = np.array([[omega_V(d[j], d[k], pairing) for k in range(6)] for j in range(6)])
    ol = omega_L_matrix()
    c = float((ov * ol).sum() / (ol * ol).sum())
    return c, float(np.abs(ov - c * ol).max() / np.abs(ol).max())


def random_chart_point(rng: np.random.Generator) -> np.ndarray:
    p = rng.normal(size=3)
    a = rng.normal(size=(2, 2))
    g = a @ a.T + 0.5 * np.eye(2)
    return np.array([p[0], p[1], p[2], g[0, 0], g[0, 1], g[1, 1]])


# --------------------------------------------------------------------------
# Morse chart at the singular configuration


def _exp_s0(z: complex) -> np.ndarray:
    r = abs(z)
    c = math.cosh(r)
    s = math.sinh(r) / r if r > 0 else 1.0
    e = np.array([[c, s * z], [s * z.conjugate(), c]])
    return e @ np.diag([1j, -1j])


def morse_F_phi(z, radius: float = 0.7):
    """``(F, phi)`` with ``exp(xi_6) s0 ... exp(xi_1) s0 = -exp([[i phi, F], [conj F, -i phi]])``."""
    z = [complex(x) for x in z]
    if max(abs(x) for x in z) >= radius:
        raise DomainError("outside the chart radius")
    m = np.eye(2, dtype=complex)
    for x in z:
        m = _exp_s0(x) @ m
    n = -m
    c = n[0, 0].real
    if c <= -1.0 + 1e-12:
        raise DomainError("product is outside the exponential chart")
    if c >= 1.0:
        r = math.acosh(c)
        s = math.sinh(r) / r if r > 1e-8 else 1.0 + r * r / 6.0
    else:
        r = math.acos(c)
        s = math.sin(r) / r if r > 1e-8 else 1.0 - r * r / 6.0
    return complex(n[0, 1] / s), float(n[0, 0].imag / s)


def lift_chart(v: EucConfig, t: float, max_iter: int = 50, tol: float = 1e-15) -> np.ndarray:
    """Solve ``F = 0, phi = 0`` near ``t v`` moving only ``z5, z6``."""
    z = t * v.gauged().array()

    def resid(zz):
        f, phi = morse_F_phi(zz)
        return np.array([f.real, f.imag, phi])

    r = resid(z)
    for _ in range(max_iter):
        if np.abs(r).max() < tol:
            return z
        h_ = 1e-7 * max(t, 1e-12)
        jac = np.empty((3, 4))
        for k, (idx, dz) in enumerate(((4, 1), (4, 1j), (5, 1), (5, 1j))):
            zp, zm = z.copy(), z.copy()
            zp[idx] += h_ * dz
            zm[idx] -= h_ * dz
            jac[:, k] = (resid(zp) - resid(zm)) / (2 * h_)
        step = -np.linalg.pinv(jac) @ r
        z = z.copy()
        z[4] += step[0] + 1j * step[1]
        z[5] += step[2] + 1j * step[3]
        r = resid(z)
    if np.abs(r).max() < 1e3 * tol:
        return z
    raise LiftError(f"Newton did not converge, residual {np.abs(r).max():.3e}")


def chart_to_sextuple(z) -> Sextuple:
    pts = []
    for x in z:
        r = abs(x)
        pts.append(math.tanh(r / 2.0) * x / r if r > 0 else 0j)
    return Sextuple.of(pts)


def lift_to_sextuple(v: EucConfig, t: float) -> Sextuple:
    return chart_to_sextuple(lift_chart(v, t))


# --------------------------------------------------------------------------
# sampling


def random_config(rng: np.random.Generator) -> EucConfig:
    c = rng.normal(size=4) + 1j * rng.normal(size=4)
    return EucConfig.of(c @ SLICE)


def random_cone_point(rng: np.random.Generator) -> EucConfig:
    """Random direction with ``q = 0``: solve along a line through two random points."""
    while True:
        v, w = random_config(rng), random_config(rng)
        a, b, c = q(w), 2.0 * h(v, w).real, q(v)
        disc = b * b - 4 * a * c
        if abs(a) < 1e-6 or disc < 0:
            continue
        s = (-b + math.sqrt(disc)) / (2 * a)
        x = v + w.scaled(s)
        return x.scaled(1.0 / x.norm())


def random_lagrangian_point(rng: np.random.Generator) -> LagrangianPoint:
    """Random Lagrangian plane (graph of a symmetric map) and positive form."""
    s = rng.normal(size=(2, 2))
    s = s + s.T
    basis = np.hstack([np.eye(2), s])
    a = rng.normal(size=(2, 2))
    g = a @ a.T + 0.2 * np.eye(2)
    gens = sp_generators()
    gs = np.eye(4)
    for _ in range(3):
        gs = gs @ gens[int(rng.integers(len(gens)))]
    if rng.random() < 0.5:
        basis = basis[::-1].copy()
        g = g[::-1, ::-1].copy()
    return sp_act_lagrangian(gs, LagrangianPoint(basis, g))


# --------------------------------------------------------------------------
# distribution spanned by the twist fields


def hamiltonian_matrices(curves=None):
    """Linear Hamiltonian fields of the ``q_gamma`` in real slice coordinates."""
    if curves is None:
        from .twist_flows import ALL_CURVES
        curves = ALL_CURVES
    om = im_h_matrix()
    om_inv_t = np.linalg.inv(om.T)
    return [2.0 * om_inv_t @ real_form(lambda v, c=c: q_gamma(v, c)) for c in curves]


def _rank(vectors, rel: float) -> int:
    s = np.linalg.svd(np.array(vectors), compute_uv=False)
    return int((s > rel * s[0]).sum())


def complex_structure() -> np.ndarray:
    return np.block([[np.zeros((4, 4)), -np.eye(4)], [np.eye(4), np.zeros((4, 4))]])


def distribution_rank(v: EucConfig, curves=None, rel: float = 1e-8):
    """Ranks of the twist fields at ``v`` and after adding their brackets.

    Returns ``{"upstairs": (r, r_br), "quotient": (r', r_br')}``; the
    quotient counts are modulo the circle direction ``i v``.
    """
    if np.linalg.matrix_rank(u_matrix(v), tol=1e-9 * np.abs(u_matrix(v)).max()) < 2:
        raise DomainError("aligned direction")
    x = to_real(v)
    mats = hamiltonian_matrices(curves)
    ys = [m @ x for m in mats]
    br = [(a @ b - b @ a) @ x for k, a in enumerate(mats) for b in mats[k + 1:]]
    ix = complex_structure() @ x
    r1, r2 = _rank(ys, rel), _rank(ys + br, rel)
    q1, q2 = _rank(ys + [ix], rel) - 1, _rank(ys + br + [ix], rel) - 1
    return {"upstairs": (r1, r2), "quotient": (q1, q2)}


def cone_tangent_basis(v: EucConfig) -> np.ndarray:
    """Orthonormal basis (rows) of the tangent space of ``q = 0`` at ``v``."""
    qm = real_form(q)
    grad = qm @ to_real(v)
    _, _, vt = np.linalg.svd(grad[None, :])
    return vt[1:]
