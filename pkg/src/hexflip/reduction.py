"""Size reduction of sextuples by braid moves.

Every operation returns ``(z_new, word)`` where ``word`` replayed on the input
through :func:`sextuple.apply_word` reproduces ``z_new``; points are never
edited directly. The driver :func:`reduce` chains the operations until
``A + B <= 2 eps``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .hyperbolic_core import (
    IDENTITY,
    IsoClass,
    MoebiusIso,
    classify,
    compose,
    distance,
    elliptic_data,
    geodesic_through,
    half_turn,
    distance_to_geodesic,
)
from .sextuple import (
    ROT_WORD,
    BraidWord,
    ClassificationError,
    ConfigClass,
    ConfigTag,
    Sextuple,
    act,
    apply_word,
    aux_points,
    centering,
    classify_config,
    half_twist_word,
    horocyclic_distance,
    pair_line,
    side_lengths,
    size_A,
    size_B,
    size_F,
    triple_holonomy,
)

A_SMALL = 0.05
B_SMALL = 0.05
N_MAX_CAP = 200_000
DEGENERATE_TARGET = 0.01
DESCENT_DEPTH = 3
RECENTRE_RADIUS = 0.9


class WrongClass(ValueError):
    pass


@dataclass
class _Run:
    """Accumulates moves applied to a configuration."""

    z: Sextuple
    letters: list = field(default_factory=list)

    def play(self, w: BraidWord) -> None:
        if len(w):
            self.z = apply_word(self.z, w)
            self.letters.extend(w.letters)

    def power(self, i: int, k: int) -> None:
        if abs(k) > N_MAX_CAP:
            raise WrongClass(f"power L{i}^{k} exceeds the cap {N_MAX_CAP}")
        self.play(BraidWord.power(i, k))

    def rotate(self, k: int = 1) -> None:
        for _ in range(k % 6):
            self.play(ROT_WORD)

    @property
    def word(self) -> BraidWord:
        return BraidWord(tuple(self.letters))


def _require(z: Sextuple, *tags: ConfigTag) -> ConfigClass:
    cls = classify_config(z)
    if cls.tag not in tags:
        raise WrongClass(f"expected {'/'.join(t.value for t in tags)}, got {cls}")
    return cls


def _paired(z: Sextuple):
    a = side_lengths(z)
    return a[0], a[2], a[4]


def _even_rotation_to(run: _Run, slot: int) -> None:
    """Rotate by an even amount so the longest paired side sits at ``slot`` (1, 3 or 5)."""
    a = _paired(run.z)
    k = max(range(3), key=lambda j: a[j])
    run.rotate((2 * k + 1 - slot) % 6)


def minimizing_power(z: Sextuple, i: int, target: complex) -> int:
    """Power of ``L_i`` bringing ``x_i`` closest to ``target`` on the line D_{i,i+1}."""
    g = pair_line(z, i)
    step = distance(z[i], z[i + 1])
    s = g.coordinate(z[i]) - g.coordinate(target)
    return -round(s / step)


def _argmin_convex_int(f, k0: int) -> int:
    """Integer minimizer of a convex function, starting the search at ``k0``."""
    f0 = f(k0)
    if f(k0 + 1) < f0:
        d = 1
    elif f(k0 - 1) < f0:
        d = -1
    else:
        return k0
    lo, step = k0, 1
    while f(k0 + d * 2 * step) < f(k0 + d * step):
        lo = k0 + d * step
        step *= 2
    a, b = sorted((lo, k0 + d * 2 * step))
    while b - a > 2:
        m1 = a + (b - a) // 3
        m2 = b - (b - a) // 3
        if f(m1) <= f(m2):
            b = m2
        else:
            a = m1
    return min(range(a, b + 1), key=f)


def refine_powers(z: Sextuple, ks: dict) -> dict:
    """Adjust the powers ``{i: k}`` of ``L_i`` (i odd) to a coordinate-wise minimum of B.

    ``L_i^k`` slides the pair (x_i, x_{i+1}) by ``k a_{i,i+1}`` along its
    line, so B is a convex function of the slide lengths. The starting
    powers come from the auxiliary points; descending from there keeps the
    contraction bounds and repairs guesses spoiled by ill-conditioned
    intersections of nearly parallel lines.
    """
    lines, base, step = {}, {}, {}
    for i in (1, 3, 5):
        lines[i] = pair_line(z, i)
        base[i] = lines[i].coordinate(z[i])
        step[i] = distance(z[i], z[i + 1])
    free = [i for i in (1, 3, 5) if i in ks and step[i] > 0.0]
    ks = {i: ks.get(i, 0) for i in (1, 3, 5)}

    def pos(i, k):
        g = lines[i]
        return g.point_at(base[i] + k * step[i]), g.point_at(base[i] + (k + 1) * step[i])

    def b_of(kk):
        p = {i: pos(i, kk[i]) for i in (1, 3, 5)}
        return (distance(p[1][1], p[3][0]) + distance(p[3][1], p[5][0])
                + distance(p[5][1], p[1][0]))

    for _ in range(50):
        changed = False
        for i in free:
            def f(k, i=i):
                kk = dict(ks)
                kk[i] = k
                return b_of(kk)
            k_new = _argmin_convex_int(f, ks[i])
            if k_new != ks[i] and f(k_new) < f(ks[i]):
                ks[i] = k_new
                changed = True
        if not changed:
            break
    return ks


# --------------------------------------------------------------------------
# operations


def op_rot(z: Sextuple):
    run = _Run(z)
    run.rotate(1)
    return run.z, run.word


def op_tri(z: Sextuple):
    """Triangle case: B(z') = A(z) and A(z') <= 23/24 A(z)."""
    _require(z, ConfigTag.TRI)
    run = _Run(z)
    _even_rotation_to(run, 1)
    y = aux_points(run.z).y
    ks = {i: minimizing_power(run.z, i, y[i - 1]) for i in (1, 3, 5)}
    ks = refine_powers(run.z, ks)
    for i in (1, 3, 5):
        run.power(i, ks[i])
    b0 = size_B(run.z)
    best = None
    for sgn in (1, -1):
        cand = apply_word(run.z, BraidWord(((1, sgn),)))
        b = size_B(cand)
        if b < b0 and (best is None or b < best[0]):
            best = (b, sgn)
    if best is not None:
        run.power(1, best[1])
    run.rotate(1)
    return run.z, run.word


def op_par(z: Sextuple, max_push: int = 400):
    """Common ideal point case: push x3, x4 to the ideal point, then minimize."""
    _require(z, ConfigTag.PAR)
    run = _Run(z)
    _even_rotation_to(run, 3)
    A = size_A(run.z)
    xi = aux_points(run.z).extras["ideal_point"]
    d34 = pair_line(run.z, 3)
    toward = 1 if abs(d34.end - xi) < abs(d34.start - xi) else -1
    for _ in range(max_push):
        h3 = horocyclic_distance(xi, run.z[3], pair_line(run.z, 1))
        h4 = horocyclic_distance(xi, run.z[4], pair_line(run.z, 5))
        if h3 < A / 12.0 and h4 < A / 12.0:
            break
        run.power(3, toward)
    y = aux_points(run.z).y
    ks = refine_powers(run.z, {i: minimizing_power(run.z, i, y[i - 1]) for i in (1, 5)})
    for i in (1, 5):
        run.power(i, ks[i])
    run.rotate(1)
    return run.z, run.word


def op_skh0(z: Sextuple):
    """Skew hexagon preparation; leaves A unchanged."""
    _require(z, ConfigTag.SKH)
    run = _Run(z)
    _even_rotation_to(run, 3)
    aux = aux_points(run.z)
    y = aux.y
    for i in (1, 5):
        run.power(i, minimizing_power(run.z, i, y[i - 1]))
    g = pair_line(run.z, 3)
    a34 = distance(run.z[3], run.z[4])
    s3 = g.coordinate(run.z[3]) - g.coordinate(y[2])
    tm = g.coordinate(aux.extras["m"]) - g.coordinate(y[2])
    # x3 in [y3, m] or x4 in [m, y4]  <=>  s3 in [tm - a34, tm]
    k = math.ceil((tm - a34 - s3) / a34)
    if s3 + k * a34 > tm:
        k -= 1
    run.power(3, k)
    return run.z, run.word


def skh0_segment_parameter(z: Sextuple) -> float:
    """Position of x3 relative to ``[y3, m]`` after :func:`op_skh0`.

    Returns ``t`` with ``x3 = y3 + t (m - y3)`` along D34 (in arclength),
    so membership of x3 in ``[y3, m]`` is ``0 <= t <= 1`` and membership of
    x4 in ``[m, y4]`` is ``t <= 0`` together with ``t >= (tm - a34) / tm``.
    """
    aux = aux_points(z)
    g = pair_line(z, 3)
    tm = g.coordinate(aux.extras["m"]) - g.coordinate(aux.y[2])
    s3 = g.coordinate(z[3]) - g.coordinate(aux.y[2])
    return s3 / tm


def op_skh1(z: Sextuple):
    """(Skh0) followed by the half-twist on the first triple.

    The twist runs forward when x3 landed in ``[y3, m]`` and backward when
    x4 landed in ``[m, y4]``; the second case is the mirror image of the
    first, and mirroring reverses the twist.
    """
    z0, w0 = op_skh0(z)
    t = skh0_segment_parameter(z0)
    twist = half_twist_word(1)
    if not 0.0 <= t <= 1.0:
        twist = twist.inverse()
    run = _Run(z0, list(w0.letters))
    run.play(twist)
    return run.z, run.word


def skh2_power(angle: float) -> int:
    """N in [1, N_max] making N * angle closest to +-pi/2 (mod 2 pi)."""
    gap = abs(math.pi - angle)
    n_max = math.ceil(2.0 * math.pi / max(gap, 1e-300)) + 8
    if n_max > N_MAX_CAP:
        raise WrongClass(f"rotation too close to a half-turn (N_max = {n_max})")
    n = np.arange(1, n_max + 1, dtype=np.float64)
    t = np.mod(n * angle, 2.0 * math.pi)
    err = np.minimum(np.abs(t - math.pi / 2.0), np.abs(t - 1.5 * math.pi))
    return int(np.argmin(err)) + 1


def op_skh2(z: Sextuple):
    """(Skh0), then the half-twist power turning the first triple by about pi/2."""
    z0, w0 = op_skh0(z)
    f = triple_holonomy(z0, 1)
    if classify(f) is not IsoClass.ELLIPTIC:
        raise WrongClass("holonomy of the first triple is not elliptic")
    _, angle = elliptic_data(f)
    n = skh2_power(angle)
    run = _Run(z0, list(w0.letters))
    for _ in range(n):
        run.play(half_twist_word(1))
    return run.z, run.word


def skh_b_lengths(z: Sextuple):
    """``(b23, b45, b61)``: sides of the skew hexagon on the common perpendiculars."""
    y = aux_points(z).y
    return distance(y[1], y[2]), distance(y[3], y[4]), distance(y[5], y[0])


# --------------------------------------------------------------------------
# degenerate and aligned configurations


@dataclass(frozen=True)
class PinchedCertificate:
    """Configuration in pinched form ``x1=x2, x3=x4, x5=x6`` reached by ``word``."""

    z: Sextuple
    word: BraidWord
    gen1: MoebiusIso
    gen2: MoebiusIso
    reason: str


def pinched_generators(z: Sextuple):
    return compose(half_turn(z[3]), half_turn(z[1])), compose(half_turn(z[5]), half_turn(z[1]))


def _coincident_pair(z: Sextuple, tol: float):
    for i in range(1, 7):
        if distance(z[i], z[i + 1]) < tol:
            return i
    return None


def euclid_steps(run: _Run, target: float, tol: float, max_steps: int = 10_000):
    """Subtractive Euclid on (d(x1,x2), d(x1,x4)) with x5 = x6.

    Returns ``(status, n_steps, history)`` where status is ``"small"`` when
    both lengths dropped below ``target`` and ``"pinched"`` when one of them
    collapsed or the process stalled.
    """
    z = run.z
    delta_line = geodesic_through(z[1], z[2])
    t = [delta_line.coordinate(z[i]) for i in (1, 2, 3, 4)]
    d1 = t[1] - t[0]
    # bring x4 to the right of x1 with powers of L3 (each shifts x3, x4 by -d1)
    if t[3] <= t[0]:
        k = math.floor((t[0] - t[3]) / d1) + 1
        run.power(3, -k)
    scale = max(distance(run.z[1], run.z[2]), distance(run.z[1], run.z[4]))
    history = []
    prev = math.inf
    for n in range(max_steps + 1):
        d1 = distance(run.z[1], run.z[2])
        d2 = distance(run.z[1], run.z[4])
        history.append((d1, d2))
        if min(d1, d2) <= tol * scale or abs(d1 - d2) <= tol * scale:
            return "pinched", n, history
        if max(d1, d2) < target:
            return "small", n, history
        m = min(d1, d2)
        if n > 0 and m > prev * (1.0 - 1e-13) and m >= prev:
            return "pinched", n, history
        prev = min(prev, m)
        if d2 > d1:
            run.power(3, 1)
        else:
            run.power(2, -1)
    return "pinched", max_steps, history


def _pinch_form(run: _Run, tol: float) -> None:
    """From x5 = x6 and a collapsed Euclid pair, reach x1=x2, x3=x4, x5=x6."""
    z = run.z
    d1 = distance(z[1], z[2])
    d2 = distance(z[1], z[4])
    if abs(d1 - d2) <= max(d1, d2) * 1e-6 and min(d1, d2) > tol:
        run.power(3, 1)
        z = run.z
        d1, d2 = distance(z[1], z[2]), distance(z[1], z[4])
    if d2 < d1:
        # (p, q, q, p, r, r): rotate to (q, q, p, r, r, p), then L3 L4
        run.rotate(1)
        run.play(BraidWord(((3, 1), (4, 1))))


def op_degenerate_euclid(z: Sextuple, target: float = 1e-4, tol: float = 1e-9,
                         max_steps: int = 10_000, pair_tol: float = 1e-8):
    """Degenerate case: some x_i = x_{i+1}.

    Rotates so that x5 = x6, runs Euclid on the collinear x1..x4, pushes the
    cluster to the foot of x5 and, if x5 is off the line, applies the
    half-twist power on the triple (x6, x1, x2). Returns ``(z', word)`` or a
    :class:`PinchedCertificate`.
    """
    i = _coincident_pair(z, pair_tol)
    if i is None:
        raise WrongClass("no coincident adjacent pair")
    run = _Run(z)
    run.rotate((i - 5) % 6)
    if distance(run.z[1], run.z[2]) < pair_tol or distance(run.z[3], run.z[4]) < pair_tol:
        if distance(run.z[1], run.z[2]) < pair_tol and distance(run.z[3], run.z[4]) < pair_tol:
            g1, g2 = pinched_generators(run.z)
            return PinchedCertificate(run.z, run.word, g1, g2, "syntactically pinched")
        # x1 = x2 or x3 = x4 alone: re-seat the coincident pair at (5, 6)
        j = 1 if distance(run.z[1], run.z[2]) < pair_tol else 3
        run.rotate((j - 5) % 6)
    status, _, _ = euclid_steps(run, target, tol, max_steps)
    if status == "pinched":
        _pinch_form(run, tol)
        g1, g2 = pinched_generators(run.z)
        return PinchedCertificate(run.z, run.word, g1, g2, "commensurable Euclid lengths")
    _push_cluster(run)
    x5 = run.z[5]
    line = geodesic_through(run.z[1], run.z[2]) if distance(run.z[1], run.z[2]) > 0 else None
    if line is not None and distance_to_geodesic(x5, line) > 1e-12:
        f = triple_holonomy(run.z, 6)
        if classify(f) is IsoClass.ELLIPTIC:
            _, angle = elliptic_data(f)
            try:
                n = skh2_power(angle)
            except WrongClass:
                n = 0
            for _ in range(n):
                run.play(half_twist_word(6))
    return run.z, run.word


def _push_cluster(run: _Run) -> None:
    """Shift both pairs (x1,x2) and (x3,x4) towards the foot of x5 on their line."""
    z = run.z
    d1 = distance(z[1], z[2])
    if d1 == 0.0:
        return
    line = geodesic_through(z[1], z[2])
    t = [line.coordinate(z[i]) for i in (1, 2, 3, 4)]
    centre = sum(t) / 4.0
    c = line.coordinate(z[5])
    k = round((c - centre) / d1)
    if k:
        run.power(1, k)
        run.power(3, -k)


def op_aligned(z: Sextuple, tol: float = 1e-9):
    """All six points on one line: one halving step on the gaps, then (Rot)."""
    pts = z.x
    far = max(((p, q) for p in pts for q in pts), key=lambda pq: distance(*pq))
    line = geodesic_through(*far)
    run = _Run(z)
    t = [line.coordinate(p) for p in run.z.x]
    d = [t[(j + 1) % 6] - t[j] for j in range(6)]
    k = max(range(3), key=lambda j: abs(d[2 * j]))
    run.rotate((2 * k + 1 - 5) % 6)
    t = [line.coordinate(p) for p in run.z.x]
    d = [t[(j + 1) % 6] - t[j] for j in range(6)]
    # L3^k: d4 -> d4 - k d3 ; then L1^k: d2 -> d2 - k d1
    if abs(d[2]) > tol:
        run.power(3, round(d[3] / d[2]))
    t = [line.coordinate(p) for p in run.z.x]
    d = [t[(j + 1) % 6] - t[j] for j in range(6)]
    if abs(d[0]) > tol:
        run.power(1, round(d[1] / d[0]))
    run.rotate(1)
    return run.z, run.word


# --------------------------------------------------------------------------
# driver


@dataclass(frozen=True)
class ReductionStep:
    op_name: str
    word: BraidWord
    A: float
    B: float
    F: float
    cls: str
    # isometry applied after the word when the driver recentres its frame
    recentre: MoebiusIso | None = None


@dataclass
class ReductionTrace:
    initial: Sextuple
    steps: list = field(default_factory=list)
    final: Sextuple | None = None

    def word(self) -> BraidWord:
        letters = []
        for s in self.steps:
            letters.extend(s.word.letters)
        return BraidWord(tuple(letters))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "op", "|word|", "A", "B", "F", "class"])
        for n, s in enumerate(self.steps, 1):
            w.writerow([n, s.op_name, len(s.word), repr(s.A), repr(s.B), repr(s.F), s.cls])
        return buf.getvalue()


@dataclass(frozen=True)
class Verdict:
    tag: str  # Reduced, Pinched, Singular, Stalled
    eps: float | None = None
    gen1: MoebiusIso | None = None
    gen2: MoebiusIso | None = None
    reason: str = ""

    def to_json(self) -> str:
        d = {"verdict": self.tag}
        if self.eps is not None:
            d["eps"] = self.eps
        if self.gen1 is not None:
            d["generators"] = [[[g.a.real, g.a.imag], [g.b.real, g.b.imag]]
                               for g in (self.gen1, self.gen2)]
        if self.reason:
            d["reason"] = self.reason
        return json.dumps(d)


def _safe_class(z: Sextuple) -> str:
    try:
        return str(classify_config(z))
    except (ClassificationError, ValueError):
        return "Unclassified"


def reduce(z: Sextuple, eps: float = 1e-3, max_steps: int = 100_000,
           a_small: float = A_SMALL, b_small: float = B_SMALL):
    """Drive ``A + B`` below ``2 eps`` by braid moves.

    Phase 1 applies (Tri), (Par), (Skh1) or the degenerate handlers until
    ``A <= a_small``; phase 2 keeps applying (Skh1) until a hexagon side on
    a common perpendicular is ``<= b_small``; phase 3 picks, at each step,
    whichever of (Skh1) and (Skh2)+(Skh0) gives the smaller ``B``. Once the
    lines cross, (Tri) contracts A and B down to ``eps``. Entering phase 3
    at ``eps`` itself would need half-twist powers of order ``1/eps**2``.
    """
    trace = ReductionTrace(z)
    cls = classify_config(z)
    if cls.tag is ConfigTag.SINGULAR:
        trace.final = z
        return trace, Verdict("Singular")
    # work in a frame recentred whenever the points drift towards the circle
    frame = IDENTITY
    cur = z
    for _ in range(max_steps):
        A, B = size_A(cur), size_B(cur)
        if A + B <= 2.0 * eps:
            trace.final = act(frame.inverse(), cur)
            return trace, Verdict("Reduced", eps=eps)
        pair = _coincident_pair(cur, 1e-8)
        try:
            cls = classify_config(cur)
        except ClassificationError:
            cls = None
        if cls is not None and cls.tag is ConfigTag.HEX:
            trace.final = act(frame.inverse(), cur)
            return trace, Verdict("Stalled", reason="hexagon case: Euler class +-2 component")
        if pair is not None:
            res = op_degenerate_euclid(cur, target=min(DEGENERATE_TARGET, size_B(cur) / 8.0))
            if isinstance(res, PinchedCertificate):
                _record(trace, "degenerate_euclid", res.z, res.word)
                trace.final = act(frame.inverse(), res.z)
                return trace, Verdict("Pinched", gen1=res.gen1, gen2=res.gen2, reason=res.reason)
            name, (nxt, w) = "degenerate_euclid", res
        else:
            try:
                if cls is None:
                    raise WrongClass("unclassifiable configuration")
                name, (nxt, w) = _dispatch(cur, cls, A, eps, a_small, b_small)
            except (WrongClass, ClassificationError):
                # a nearly collapsed pair makes the slide powers explode
                name, (nxt, w) = "descent", op_descent(cur)
        if len(w) == 0 and name != "aligned":
            name, (nxt, w) = "descent", op_descent(cur)
        if len(w) == 0 and name != "aligned":
            trace.final = act(frame.inverse(), cur)
            return trace, Verdict("Stalled", reason="no move lowers A + B")
        _record(trace, name, nxt, w)
        cur = nxt
        if max(abs(p) for p in cur.x) > RECENTRE_RADIUS:
            g = centering(cur)
            cur = act(g, cur)
            frame = g @ frame
            trace.steps[-1] = replace(trace.steps[-1], recentre=g)
    trace.final = act(frame.inverse(), cur)
    return trace, Verdict("Stalled", reason=f"max_steps={max_steps} reached")


def _dispatch(cur, cls, A, eps, a_small, b_small):
    if cls.tag is ConfigTag.ALIGNED:
        return "aligned", op_aligned(cur)
    if cls.tag is ConfigTag.TRI:
        return "tri", op_tri(cur)
    if cls.tag is ConfigTag.PAR:
        return "par", op_par(cur)
    if A > max(eps, a_small) or min(skh_b_lengths(cur)) > max(eps, b_small):
        return "skh1", op_skh1(cur)
    return _best_phase3(cur)


def op_descent(z: Sextuple, depth: int = DESCENT_DEPTH):
    """Shortest word of length ``<= depth`` that lowers ``A + B``, best first.

    Fallback for configurations where the structured operations stall, for
    instance next to a collapsed pair. Returns an empty word when no such
    word exists.
    """
    letters = [(i, e) for i in range(1, 7) for e in (1, -1)]
    best, best_w = size_A(z) + size_B(z), None
    for n in range(1, depth + 1):
        for w in itertools.product(letters, repeat=n):
            c = apply_word(z, BraidWord(w))
            v = size_A(c) + size_B(c)
            if v < best * (1.0 - 1e-12):
                best, best_w, best_z = v, w, c
        if best_w is not None:
            return best_z, BraidWord(best_w)
    return z, BraidWord(())


def _best_phase3(z: Sextuple):
    cands = [("skh1", op_skh1(z))]
    try:
        z2, w2 = op_skh2(z)
        if classify_config(z2).tag is ConfigTag.SKH:
            z3, w3 = op_skh0(z2)
            cands.append(("skh2+skh0", (z3, w2 + w3)))
        else:
            cands.append(("skh2", (z2, w2)))
    except (WrongClass, ClassificationError):
        pass
    # ties go to the cheaper (Skh1)
    best = cands[0]
    for c in cands[1:]:
        if size_B(c[1][0]) < size_B(best[1][0]):
            best = c
    return best


def _record(trace: ReductionTrace, name: str, z: Sextuple, w: BraidWord) -> None:
    trace.steps.append(ReductionStep(name, w, size_A(z), size_B(z), size_F(z), _safe_class(z)))


def replay(trace: ReductionTrace) -> Sextuple:
    """Re-apply the step words, recentring where the driver did."""
    z, frame = trace.initial, IDENTITY
    for s in trace.steps:
        z = apply_word(z, s.word)
        if s.recentre is not None:
            z = act(s.recentre, z)
            frame = s.recentre @ frame
    return act(frame.inverse(), z)


# --------------------------------------------------------------------------
# discreteness


@dataclass(frozen=True)
class DiscretenessReport:
    outcome: str  # NonDiscrete, Inconclusive-Pinched, Elementary, Inconclusive
    verdict: Verdict
    detail: str

    def to_json(self) -> str:
        return json.dumps({"outcome": self.outcome, "detail": self.detail,
                           "verdict": json.loads(self.verdict.to_json())})


def discreteness_report(z: Sextuple, eps: float = 1e-3, max_steps: int = 100_000) -> DiscretenessReport:
    cls = classify_config(z)
    if cls.tag in (ConfigTag.SINGULAR, ConfigTag.ALIGNED):
        v = Verdict("Singular") if cls.tag is ConfigTag.SINGULAR else Verdict("Stalled", reason="aligned")
        return DiscretenessReport("Elementary", v, f"{cls} configurations give elementary groups")
    _, verdict = reduce(z, eps, max_steps)
    if verdict.tag == "Reduced":
        return DiscretenessReport(
            "NonDiscrete", verdict,
            f"orbit reaches A+B <= {2 * eps:g}; arbitrarily short displacements of the "
            "generators rule out discreteness (Margulis lemma)")
    if verdict.tag == "Pinched":
        return DiscretenessReport(
            "Inconclusive-Pinched", verdict,
            "pinched orbit: decide discreteness of <s3 s1, s5 s1> with a two-generator algorithm")
    if verdict.tag == "Singular":
        return DiscretenessReport("Elementary", verdict, "singular configuration")
    return DiscretenessReport("Inconclusive", verdict, verdict.reason)
