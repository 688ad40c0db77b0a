"""Acceptance suite: thirteen numbered checks with pinned tolerances.

Each check returns a :class:`CheckResult` carrying the measured metrics, so a
failing check still reports how far off it is.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import euclidean_model as em
from . import reduction as red
from . import twist_flows as tf
from .hyperbolic_core import DomainError, compose, distance, half_turn
from .sextuple import (
    BraidWord,
    ClassificationError,
    ConfigTag,
    Sextuple,
    apply_word,
    classify_config,
    construct_par,
    normalize,
    sample_random,
    size_A,
    size_B,
    validate,
)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    metrics: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        shown = ", ".join(f"{k}={_fmt(v)}" for k, v in self.metrics.items())
        return f"[{tag}] {self.number:2d} {self.name} ({self.seconds:.1f}s): {shown}"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3g}"
    return str(v)


def _max_diff(z1: Sextuple, z2: Sextuple) -> float:
    return float(np.abs(z1.array() - z2.array()).max())


def _sampled(tag: ConfigTag, n: int, spread: float, seed0: int = 0, extra=None):
    """First ``n`` sampled configurations of class ``tag`` from consecutive seeds."""
    out, seed = [], seed0
    while len(out) < n:
        z = sample_random(seed, spread)
        seed += 1
        try:
            cls = classify_config(z)
        except ClassificationError:
            continue
        if cls.tag is tag and (extra is None or extra(z)):
            out.append(z)
    return out


# --------------------------------------------------------------------------


def check_relation_preservation(n_pairs: int = 100_000, max_len: int = 64, seed: int = 1):
    """Random words keep the six-fold relation; L_i fixes s_{i+1} s_i."""
    rng = np.random.default_rng(seed)
    worst, escaped, bad, worst_pair = 0.0, 0, 0, 0.0
    pair_over, worst_pair_rel = 0, 0.0
    # residual by final diameter: the absolute residual floor grows like exp(diameter)
    bins = [0.0, 5.0, 10.0, 20.0, math.inf]
    by_bin = {k: [0, 0] for k in range(len(bins) - 1)}
    t0 = time.perf_counter()
    for k in range(n_pairs):
        z = sample_random(k)
        n = int(rng.integers(1, max_len + 1))
        idx = rng.integers(1, 7, n)
        sgn = rng.choice((-1, 1), n)
        w = BraidWord(tuple(zip(idx.tolist(), sgn.tolist())))
        i = int(rng.integers(1, 7))
        j = i % 6 + 1
        before = compose(half_turn(z[j]), half_turn(z[i]))
        moved = apply_word(z, BraidWord(((i, 1),)))
        change = before.projective_distance(compose(half_turn(moved[j]), half_turn(moved[i])))
        worst_pair = max(worst_pair, change)
        worst_pair_rel = max(worst_pair_rel, change / max(abs(before.a), abs(before.b)))
        pair_over += change >= 1e-10
        try:
            z2 = apply_word(z, w)
            _, res, _ = validate(z2)
            diam = max(distance(p, q) for p in z2.x for q in z2.x)
        except (DomainError, ValueError, OverflowError):
            escaped += 1
            bad += 1
            continue
        worst = max(worst, res)
        b = next(m for m in range(len(bins) - 1) if diam < bins[m + 1])
        by_bin[b][0] += 1
        if res >= 1e-8:
            bad += 1
            by_bin[b][1] += 1
    secs = time.perf_counter() - t0
    metrics = {
        "pairs": n_pairs, "violations": bad, "left_disc": escaped,
        "max_residual": worst, "max_pair_product_change": worst_pair,
        "pair changes over 1e-10": pair_over, "max relative pair change": worst_pair_rel,
        "runtime_s": secs,
    }
    for b, (cnt, fails) in by_bin.items():
        metrics[f"diam[{bins[b]:g},{bins[b + 1]:g})"] = f"{fails}/{cnt} over 1e-8"
    ok = bad == 0 and worst_pair < 1e-10 and secs < 60.0
    return ok, metrics


def check_tri_par(n_tri: int = 500, n_par: int = 200, seed: int = 2):
    """(Tri) and (Par): B(z') = A(z) and A(z') <= 23/24 A(z)."""
    tri = _sampled(ConfigTag.TRI, n_tri, 1.0)
    rng = np.random.default_rng(seed)
    par = [construct_par(rng) for _ in range(n_par)]
    eq_err, ratio_excess, worst_ratio = 0.0, -math.inf, 0.0
    par_margin, par_worst = 0, 0.0
    for z, op in [(z, red.op_tri) for z in tri] + [(z, red.op_par) for z in par]:
        A = size_A(z)
        z1, _ = op(z)
        eq_err = max(eq_err, abs(size_B(z1) - A))
        ratio_excess = max(ratio_excess, size_A(z1) - (23.0 / 24.0) * A)
        worst_ratio = max(worst_ratio, size_A(z1) / A)
        if op is red.op_par:
            r = size_A(z1) / A
            par_worst = max(par_worst, r)
            par_margin += r <= 5.0 / 6.0 + 1e-9
    ok = eq_err < 1e-9 and ratio_excess <= 1e-9
    return ok, {"tri": len(tri), "par": len(par), "max|B'-A|": eq_err,
                "max A'/A": worst_ratio, "max A'-23/24A": ratio_excess,
                "par within 5/6": f"{par_margin}/{len(par)}", "par max A'/A": par_worst}


def check_skh_decrement(n_wide: int = 250, n_small: int = 250):
    """(Skh1): cosh of the long side drops by the bound, the short sides stay put."""
    zs = _sampled(ConfigTag.SKH, n_wide, 1.0) + _sampled(ConfigTag.SKH, n_small, 0.02, seed0=10**6)
    dec_margin, drift, gated, gated_margin = math.inf, 0.0, 0, math.inf
    for z in zs:
        z0, _ = red.op_skh0(z)
        z1, _ = red.op_skh1(z)
        a0, a1 = red._paired(z0), red._paired(z1)
        bound = 2.0 * math.sinh(min(a0[0], a0[2])) ** 2 / math.cosh(a0[1]) ** 2
        dec_margin = min(dec_margin, math.cosh(a0[1]) - math.cosh(a1[1]) - bound)
        drift = max(drift, abs(a0[0] - a1[0]), abs(a0[2] - a1[2]))
        A = size_A(z)
        if A < 0.05:
            b23, b45, _ = red.skh_b_lengths(z0)
            est = size_B(z0) + 4.0 * A - min(1.0, b23, b45)
            gated += 1
            gated_margin = min(gated_margin, est + 1e-6 - size_B(z1))
    ok = dec_margin >= -1e-9 and drift < 1e-10 and (gated == 0 or gated_margin >= 0.0)
    return ok, {"configs": len(zs), "min decrement - bound": dec_margin, "max drift": drift,
                "gated cases": gated, "min gated slack": gated_margin}


def check_reduction(n: int = 1000, eps: float = 1e-3, max_steps: int = 100_000):
    """Driver reaches A + B <= 2 eps on sampled X0 configurations."""
    t0 = time.perf_counter()
    tags, worst_final, seed, done, max_len = {}, 0.0, 0, 0, 0
    while done < n:
        z = sample_random(seed, 1.0)
        seed += 1
        try:
            if size_A(z) + size_B(z) > 10.0 or classify_config(z).tag is ConfigTag.HEX:
                continue
        except ClassificationError:
            continue
        done += 1
        trace, verdict = red.reduce(z, eps, max_steps)
        tags[verdict.tag] = tags.get(verdict.tag, 0) + 1
        max_len = max(max_len, len(trace.steps))
        if verdict.tag == "Reduced":
            worst_final = max(worst_final, max(abs(p) for p in normalize(trace.final).x))
    secs = time.perf_counter() - t0
    ok = tags.get("Reduced", 0) == n and worst_final <= 2e-3 and secs < 600.0
    return ok, {"configs": n, "verdicts": tags, "max steps": max_len,
                "max|normalized final|": worst_final, "runtime_s": secs}


def euclid_quadruple(d1: float, d2: float, x5: complex = 0.3j) -> Sextuple:
    """Collinear x1..x4 at arclengths 0, d1, d1 + d2, d2 and x5 = x6."""
    t = [0.0, d1, d1 + d2, d2]
    return Sextuple.of([math.tanh(u / 2.0) for u in t] + [x5, x5])


def check_euclid():
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    run = red._Run(euclid_quadruple(1.0, golden))
    status, steps, hist = red.euclid_steps(run, 1e-3, 1e-9)
    pinched = red.op_degenerate_euclid(euclid_quadruple(1.0, 2.0))
    ok = status == "small" and steps <= 40 and isinstance(pinched, red.PinchedCertificate)
    return ok, {"golden status": status, "golden steps": steps, "final min delta": min(hist[-1]),
                "ratio 2": type(pinched).__name__}


def check_q_routes(n: int = 10_000, seed: int = 6):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        v = em.random_config(rng)
        a = em.q_area(v)
        worst = max(worst, abs(a - em.q_double_sum(v)), abs(a - em.q_symplectic(v)))
    sig = em.signature_of_h()
    return worst < 1e-12 and tuple(sig) == (2, 2), {"max route gap": worst, "signature": tuple(sig)}


def check_cohomology(n: int = 10_000, seed: int = 7):
    rng = np.random.default_rng(seed)
    worst_q, worst_cup = 0.0, 0.0
    for _ in range(n):
        lam = rng.normal(size=6) + 1j * rng.normal(size=6)
        worst_q = max(worst_q, abs(em.q(em.f2(lam)) - em.q_of_f2_formula(lam)))
        worst_cup = max(worst_cup, abs(em.cup(lam, lam.conj()) - em.cup_formula(lam)))
    kern = max(float(np.abs(em.f2(k).gauged().array()).max()) for k in em.KERNEL_GENERATORS)
    ok = worst_q < 1e-12 and worst_cup < 1e-12 and kern < 1e-12
    return ok, {"max q identity": worst_q, "max cup formula": worst_cup, "kernel image": kern}


def check_lagrangian(n: int = 10_000, seed: int = 8):
    rng = np.random.default_rng(seed)
    gens = em.sp_generators()
    worst_q, worst_back, worst_rt, worst_eq, rejected, off_cone = 0.0, 0.0, 0.0, 0.0, 0, 0
    flips, conj_only = 0, 0
    for k in range(n):
        # Lagrangian plane -> configuration on the cone -> same plane
        pt = em.random_lagrangian_point(rng)
        v = em.lagrangian_inverse(pt)
        worst_q = max(worst_q, abs(em.q(v)) / v.norm() ** 2)
        back = em.lagrangian_map(v)
        worst_back = max(worst_back, float(np.abs(back.projector() - pt.projector()).max()),
                         float(np.abs(back.quadratic_form() - pt.quadratic_form()).max()))
        # same oriented plane: positive change of basis
        flips += np.linalg.det(back.basis @ np.linalg.pinv(pt.basis)) <= 0
        # cone point -> Lagrangian plane -> same configuration up to phase
        c = em.random_cone_point(rng)
        lp = em.lagrangian_map(c)
        rt = em.lagrangian_inverse(lp)
        worst_rt = max(worst_rt, float(np.abs(rt.array() - em.phase_normalize(c).array()).max()))
        # the opposite orientation of the same plane gives the conjugate
        plain = em.lagrangian_inverse(em.LagrangianPoint(lp.basis[::-1].copy(), lp.g[::-1, ::-1].copy()))
        conj_only += float(np.abs(plain.array() - em.phase_normalize(c).array()).max()) > 1e-10
        # off the cone the kernel is symplectic
        w = em.random_config(rng)
        if abs(em.q(w)) > 1e-6 * w.norm() ** 2:
            off_cone += 1
            try:
                em.lagrangian_map(w)
            except em.NotLagrangian:
                rejected += 1
        if k < 200:
            for g in gens:
                a = em.lagrangian_map(em.sp_act(g, c))
                b = em.sp_act_lagrangian(g, lp)
                flips += np.linalg.det(a.basis @ np.linalg.pinv(b.basis)) <= 0
                worst_eq = max(worst_eq, float(np.abs(a.projector() - b.projector()).max()),
                               float(np.abs(a.quadratic_form() - b.quadratic_form()).max()))
    ok = (worst_q < 1e-10 and worst_back < 1e-10 and flips == 0 and rejected == off_cone
          and worst_rt < 1e-10 and worst_eq < 1e-9)
    return ok, {"max |q| of Lagrangian preimage": worst_q, "max plane mismatch": worst_back,
                "orientation flips": flips, "off-cone rejected": f"{rejected}/{off_cone}",
                "max round trip": worst_rt, "reversed orientation differs": f"{conj_only}/{n}",
                "max Sp mismatch": worst_eq}


def _slope(ts, ys) -> float:
    return float(np.polyfit(np.log(ts), np.log(ys), 1)[0])


def check_morse(n: int = 100, seed: int = 9, ts=(1e-2, 1e-3, 1e-4)):
    rng = np.random.default_rng(seed)
    f_slopes, phi_slopes = [], []
    for _ in range(n):
        d = rng.normal(size=6) + 1j * rng.normal(size=6)
        d /= np.linalg.norm(d)
        fr, pr = [], []
        for t in ts:
            z = t * d
            f, phi = em.morse_F_phi(z)
            fr.append(abs(f - em.ALT @ z))
            pr.append(abs(phi + 2.0 * em.q(em.EucConfig.of(z))))
        f_slopes.append(_slope(ts, fr))
        phi_slopes.append(_slope(ts, pr))
    ok = min(f_slopes) >= 1.8 and min(phi_slopes) >= 2.8
    return ok, {"min F slope": min(f_slopes), "min phi slope": min(phi_slopes)}


def check_trace_constant(n: int = 50, seed: int = 10, t: float = 1e-3):
    """|F_gamma| / t^2 against 8 |q_gamma|; the measured constant is reported too."""
    rng = np.random.default_rng(seed)
    dev8, ratios, skipped = 0.0, [], 0
    signs = {c.name: set() for c in tf.ALL_CURVES}
    for _ in range(n):
        v = em.random_cone_point(rng)
        z = em.lift_to_sextuple(v, t)
        for c in tf.ALL_CURVES:
            fg = tf.f_gamma(z, c) / t ** 2
            qg = em.q_gamma(v, c)
            if abs(qg) < 1e-3:
                # the ratio is meaningless where q_gamma nearly vanishes
                skipped += 1
                continue
            dev8 = max(dev8, abs(abs(fg) / (8.0 * abs(qg)) - 1.0))
            ratios.append(fg / qg)
            signs[c.name].add(int(np.sign(fg * qg)))
    const = all(len(s) == 1 for s in signs.values())
    ok = dev8 <= 0.05 and const
    r = np.array(ratios)
    return ok, {"max | |F|/(8|q|) - 1 |": dev8, "measured F/q min": float(r.min()),
                "measured F/q max": float(r.max()), "sign constant per curve": const, "skipped |q|<1e-3": skipped,
                "signs": "".join("+" if s == {1} else "-" if s == {-1} else "?" for s in signs.values())}


def check_distribution(n: int = 100, seed: int = 11):
    rng = np.random.default_rng(seed)
    seen = {}
    for _ in range(n):
        r = em.distribution_rank(em.random_cone_point(rng))
        key = (r["upstairs"], r["quotient"])
        seen[key] = seen.get(key, 0) + 1
    ok = seen == {((5, 7), (4, 6)): n}
    return ok, {"ranks": seen}


def check_symplectic_constant(n: int = 20, seed: int = 12):
    c0, dev0 = em.pullback_ratio()
    rng = np.random.default_rng(seed)
    worst, worst_dev = 0.0, 0.0
    for _ in range(n):
        c, dev = em.pullback_ratio(em.random_chart_point(rng))
        worst = max(worst, abs(c - 0.5))
        worst_dev = max(worst_dev, dev)
    ok = abs(c0 - 0.5) < 1e-6 and dev0 < 1e-6 and worst < 1e-4 and worst_dev < 1e-4
    return ok, {"chart ratio": c0, "chart fit dev": dev0, "max |ratio - 1/2| random": worst,
                "max fit dev random": worst_dev}


def check_twist_flows(n: int = 200, seed: int = 13, t: float = 0.05):
    rng = np.random.default_rng(seed)
    per, tw, val = 0.0, 0.0, 0.0
    for k in range(n):
        z = em.lift_to_sextuple(em.random_cone_point(rng), t)
        c = tf.ALL_CURVES[k % len(tf.ALL_CURVES)]
        th = float(tf.theta(z, c))
        per = max(per, _max_diff(tf.phi_flow(z, c, 2.0 * math.pi), z))
        tw = max(tw, _max_diff(tf.phi_flow(z, c, th), tf.half_twist_about(z, c)))
        s = float(rng.uniform(0.0, 2.0 * math.pi))
        val = max(val, validate(tf.phi_flow(z, c, s))[1])
    ok = per < 1e-9 and tw < 1e-9 and val < 1e-10
    return ok, {"max periodicity": per, "max half-twist gap": tw, "max flow residual": val}


CHECKS = [
    (1, "relation_preservation", check_relation_preservation),
    (2, "tri_par_contraction", check_tri_par),
    (3, "skew_hexagon_decrement", check_skh_decrement),
    (4, "reduction_driver", check_reduction),
    (5, "euclid_degenerate", check_euclid),
    (6, "q_routes_signature", check_q_routes),
    (7, "cohomology_identities", check_cohomology),
    (8, "lagrangian_criterion", check_lagrangian),
    (9, "morse_expansions", check_morse),
    (10, "trace_constant", check_trace_constant),
    (11, "distribution_ranks", check_distribution),
    (12, "symplectic_constant", check_symplectic_constant),
    (13, "twist_flows", check_twist_flows),
]


def run_check(number: int, **kwargs) -> CheckResult:
    _, name, fn = next(c for c in CHECKS if c[0] == number)
    t0 = time.perf_counter()
    ok, metrics = fn(**kwargs)
    return CheckResult(number, name, bool(ok), metrics, time.perf_counter() - t0)


def run_all(name_filter: str | None = None):
    for number, name, _ in CHECKS:
        if name_filter and name_filter not in name and name_filter != str(number):
            continue
        yield run_check(number)
