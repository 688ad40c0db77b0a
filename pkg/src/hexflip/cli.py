"""Command line front end.

Leapfrog letters ``i = 1..6`` act cyclically; letters 1..5 correspond to the
braid generators sigma_1..sigma_5 and letter 6 is conjugate to them by the
cyclic rotation. Every artifact is written atomically; failures print a JSON
diagnostic on stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import euclidean_model as em
from . import reduction as red
from . import twist_flows as tf
from .hyperbolic_core import TOL_CLASS, DomainError, MoebiusIso
from .sextuple import (
    BraidWord,
    ClassificationError,
    InvalidSextuple,
    Sextuple,
    act,
    apply_word,
    aux_points,
    centering,
    classify_config,
    component_of,
    pair_line,
    sample_random,
    size_A,
    size_B,
    validate,
)

EXIT_INPUT = 2
EXIT_RUNTIME = 1


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.kind = kind
        self.code = code


def derive_seed(master: int, index: int) -> int:
    """Child seed for item ``index``; independent of execution order."""
    data = (int(master) & (2**64 - 1)).to_bytes(8, "little") + int(index).to_bytes(8, "little")
    return int.from_bytes(hashlib.blake2b(data, digest_size=8).digest(), "little")


def default_tol() -> float:
    raw = os.environ.get("HEXFLIP_TOL")
    if raw is None:
        return TOL_CLASS
    try:
        tol = float(raw)
    except ValueError:
        raise CliError("config", f"HEXFLIP_TOL={raw!r} is not a number") from None
    if not tol > 0.0:
        raise CliError("config", "HEXFLIP_TOL must be positive")
    return tol


def write_atomic(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".hexflip-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError("io", str(exc)) from None


def read_sextuple(path: str) -> Sextuple:
    text = _read(path).strip()
    try:
        try:
            json.loads(text)
        except ValueError:
            # JSON lines from `sample`: take the first configuration
            text = text.splitlines()[0] if text else ""
        return Sextuple.from_json(text)
    except (ValueError, KeyError, TypeError, InvalidSextuple) as exc:
        raise CliError("schema", f"bad sextuple JSON: {exc}") from None


def read_euc(path: str) -> em.EucConfig:
    try:
        return em.EucConfig.from_json(_read(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError("schema", f"bad euclidean configuration JSON: {exc}") from None


def _iso_json(g: MoebiusIso):
    return [[g.a.real, g.a.imag], [g.b.real, g.b.imag]]


def _iso_from_json(d) -> MoebiusIso:
    (ar, ai), (br, bi) = d
    return MoebiusIso(complex(ar, ai), complex(br, bi))


# --------------------------------------------------------------------------
# svg


def svg_snapshot(z: Sextuple, size: int = 480) -> str:
    """Disc picture: points, lines D12, D34, D56 and the auxiliary points."""
    z = act(centering(z), z)
    r = size / 2.0 - 10.0
    c = size / 2.0

    def xy(p):
        return c + r * p.real, c - r * p.imag

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
           f'<circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="black"/>']
    colours = {1: "#c0392b", 3: "#2471a3", 5: "#229954"}
    for i, col in colours.items():
        try:
            g = pair_line(z, i)
        except (DomainError, ValueError):
            continue
        pts = " ".join("%.2f,%.2f" % xy(g.point_at(s)) for s in np.linspace(-12.0, 12.0, 241))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{col}"/>')
    try:
        for k, p in enumerate(aux_points(z).y, 1):
            x, y = xy(p)
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="none" stroke="grey"/>')
            out.append(f'<text x="{x + 4:.2f}" y="{y + 12:.2f}" font-size="9" fill="grey">y{k}</text>')
    except (ClassificationError, DomainError, ValueError):
        pass
    for k, p in enumerate(z.x, 1):
        x, y = xy(p)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="black"/>')
        out.append(f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="11">x{k}</text>')
    out.append("</svg>\n")
    return "\n".join(out)


# --------------------------------------------------------------------------
# commands


def cmd_sample(args) -> int:
    if args.n < 1 or args.spread <= 0.0:
        raise CliError("config", "--n must be >= 1 and --spread > 0")
    lines = [sample_random(derive_seed(args.seed, k), args.spread).to_json() for k in range(args.n)]
    write_atomic(args.out, "\n".join(lines) + "\n")
    return 0


def trace_log(trace: red.ReductionTrace) -> str:
    steps = []
    for s in trace.steps:
        d = {"op": s.op_name, "word": str(s.word)}
        if s.recentre is not None:
            d["recentre"] = _iso_json(s.recentre)
        steps.append(d)
    return json.dumps({"initial": json.loads(trace.initial.to_json()), "steps": steps}) + "\n"


def replay_log(text: str) -> Sextuple:
    d = json.loads(text)
    trace = red.ReductionTrace(Sextuple.from_json(json.dumps(d["initial"])))
    for s in d["steps"]:
        rec = _iso_from_json(s["recentre"]) if "recentre" in s else None
        trace.steps.append(red.ReductionStep(s["op"], BraidWord.parse(s["word"]), 0.0, 0.0, 0.0, "", rec))
    return red.replay(trace)


def cmd_reduce(args) -> int:
    z = read_sextuple(args.inp)
    ok, res, _ = validate(z, 1e-7)
    if not ok:
        raise CliError("schema", f"relation residual {res:.3e} exceeds 1e-7")
    trace, verdict = red.reduce(z, args.eps, args.max_steps)
    final = trace.final if trace.final is not None else z
    out = json.loads(verdict.to_json())
    out["steps"] = len(trace.steps)
    out["word_length"] = len(trace.word())
    out["final"] = json.loads(final.to_json())
    write_atomic(args.verdict, json.dumps(out) + "\n")
    if args.trace:
        write_atomic(args.trace, trace.to_csv())
    if args.words:
        write_atomic(args.words, trace_log(trace))
    if args.svg:
        write_atomic(args.svg, svg_snapshot(final))
    return 0


def cmd_replay(args) -> int:
    try:
        z = replay_log(_read(args.words))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError("schema", f"bad words log: {exc}") from None
    write_atomic(args.out, z.to_json() + "\n")
    return 0


def cmd_classify(args) -> int:
    z = read_sextuple(args.inp)
    tol = default_tol()
    ok, res, sign = validate(z)
    d = {"valid": bool(ok), "residual": res, "sign": sign, "A": size_A(z), "B": size_B(z)}
    try:
        d["class"] = str(classify_config(z, tol))
        d["component"] = component_of(z, tol).value
    except ClassificationError as exc:
        d["class"] = "Unclassified"
        d["reason"] = str(exc)
    write_atomic("-", json.dumps(d) + "\n")
    return 0


def orbit_walk(z: Sextuple, steps: int, seed: int):
    """Random leapfrog walk; running minimum of ``A + B`` in a recentred frame."""
    rng = np.random.default_rng(seed)
    best = size_A(z) + size_B(z)
    mins = [best]
    cur = z
    for _ in range(steps):
        i = int(rng.integers(1, 7))
        s = 1 if rng.random() < 0.5 else -1
        try:
            cur = apply_word(cur, BraidWord(((i, s),)))
            if max(abs(p) for p in cur.x) > red.RECENTRE_RADIUS:
                cur = act(centering(cur), cur)
        except (DomainError, ValueError, OverflowError):
            # the configuration outgrew double precision in the disc
            return mins, "left_disc"
        best = min(best, size_A(cur) + size_B(cur))
        mins.append(best)
    return mins, "completed"


def cmd_orbit(args) -> int:
    z = read_sextuple(args.inp)
    mins, status = orbit_walk(z, args.steps, derive_seed(args.seed, 0))
    d = {"steps": len(mins) - 1, "status": status, "initial": mins[0], "running_min": mins[-1],
         "reached_0.1": next((k for k, m in enumerate(mins) if m <= 0.1), None)}
    if args.stats:
        write_atomic(args.stats, "step,running_min\n"
                     + "".join(f"{k},{m!r}\n" for k, m in enumerate(mins)))
    write_atomic("-", json.dumps(d) + "\n")
    return 0


def cmd_flow(args) -> int:
    z = read_sextuple(args.inp)
    try:
        curve = tf.parse_curve(args.curve)
    except ValueError as exc:
        raise CliError("config", str(exc)) from None
    try:
        out = tf.phi_flow(z, curve, args.t)
    except tf.FlowUndefined as exc:
        raise CliError("domain", str(exc), EXIT_RUNTIME) from None
    write_atomic(args.out, out.to_json() + "\n")
    return 0


def _euc_input(args) -> em.EucConfig:
    if args.inp:
        return read_euc(args.inp)
    return em.random_cone_point(np.random.default_rng(derive_seed(args.seed, 0)))


def cmd_euclid(args) -> int:
    mode = args.mode
    if mode == "signature":
        d = {"signature": list(em.signature_of_h())}
    elif mode == "q":
        v = _euc_input(args)
        d = {"q": em.q(v), "q_double_sum": em.q_double_sum(v), "q_symplectic": em.q_symplectic(v),
             "q_area": em.q_area(v)}
    elif mode == "rank":
        d = em.distribution_rank(_euc_input(args))
    elif mode == "lift":
        z = em.lift_to_sextuple(_euc_input(args), args.t)
        d = json.loads(z.to_json())
        d["residual"] = validate(z)[1]
    elif mode == "taylor":
        v = _euc_input(args)
        d = {}
        for c in tf.ALL_CURVES:
            limit, sign = tf.taylor_f_gamma(v, c)
            qg = em.q_gamma(v, c)
            d[c.name] = {"limit": limit, "q_gamma": qg, "ratio": limit / qg if qg else None,
                         "sign": sign}
    else:
        raise CliError("config", f"unknown mode {mode}")
    write_atomic("-", json.dumps(d) + "\n")
    return 0


def cmd_check(args) -> int:
    from . import checks

    results = list(checks.run_all(args.filter))
    if not results:
        raise CliError("config", f"no check matches {args.filter!r}")
    for r in results:
        print(r.line(), flush=True)
    return 0 if all(r.passed for r in results) else EXIT_RUNTIME


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hexflip", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sample", help="sample valid configurations (JSON lines)")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--spread", type=float, default=1.0)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("reduce", help="run the size-reduction driver")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--eps", type=float, default=1e-3)
    s.add_argument("--max-steps", type=int, default=100_000)
    s.add_argument("--trace", help="CSV trace path")
    s.add_argument("--verdict", default="-", help="verdict JSON path")
    s.add_argument("--words", help="JSON log of step words for replay")
    s.add_argument("--svg", help="SVG snapshot of the final configuration")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("replay", help="replay a words log from `reduce --words`")
    s.add_argument("--words", required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_replay)

    s = sub.add_parser("classify", help="class, component and relation residual")
    s.add_argument("--in", dest="inp", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("orbit", help="random leapfrog walk")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--stats", help="CSV of the running minimum of A + B")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("flow", help="twist flow about a partition curve")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--curve", default="tri:1,2,3")
    s.add_argument("--t", type=float, default=math.pi)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_flow)

    s = sub.add_parser("euclid", help="Euclidean limit model")
    s.add_argument("--mode", choices=["q", "signature", "rank", "lift", "taylor"], required=True)
    s.add_argument("--in", dest="inp", help="euclidean configuration JSON (default: random cone point)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--t", type=float, default=1e-3)
    s.set_defaults(func=cmd_euclid)

    s = sub.add_parser("check", help="run the acceptance suite")
    s.add_argument("--filter", default=None, help="check number or name substring")
    s.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        err = {"error": exc.kind, "message": str(exc)}
        code = exc.code
    except (DomainError, ClassificationError, em.LiftError, red.WrongClass) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_RUNTIME
    sys.stderr.write(json.dumps(err) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
