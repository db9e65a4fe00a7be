"""Command-line front end.

    ps12 eval --basis s3 --grid 10 [--index 1 | --coeffs c.json] [--dir 1,0 ...]
    ps12 qi --basis s3 --func franke | --samples f.csv
    ps12 join config.json
    ps12 enumerate --degree 3 [--no-filter]
    ps12 tabulate dims | domain-points --basis s3t | kappa
    ps12 verify [suite ...] [--seed N] [--json]

Floats are printed with 17 significant digits, exact rationals as
``num/den``.  All randomized output depends only on ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import marsden, simplex, smoothness, verify
from .calculus import eval_derivatives
from .geometry import (
    REFERENCE_TRIANGLE,
    Triangle,
    cartesian,
    parse_scalar,
    scalar_to_json,
    triangle_from_json,
)
from .sbasis import ALL_BASES, BasisId, SplineFunction, basis_dimension, eval_basis, get_basis

BASIS_NAMES = [b.name for b in ALL_BASES]

#: Builtin test functions for ``qi`` (Cartesian arguments).
FUNCTIONS: dict[str, Callable] = {
    "one": lambda x, y: 1,
    "x": lambda x, y: x,
    "y": lambda x, y: y,
    "xy": lambda x, y: x * y,
    "x2": lambda x, y: x * x,
    "cubic": lambda x, y: x * x * x - 2 * x * y * y + y,
    "exp": lambda x, y: math.exp(float(x) + 2 * float(y)),
    "franke": lambda x, y: _franke(float(x), float(y)),
}


def _franke(x: float, y: float) -> float:
    return (
        0.75 * math.exp(-((9 * x - 2) ** 2 + (9 * y - 2) ** 2) / 4)
        + 0.75 * math.exp(-((9 * x + 1) ** 2) / 49 - (9 * y + 1) / 10)
        + 0.5 * math.exp(-((9 * x - 7) ** 2 + (9 * y - 3) ** 2) / 4)
        - 0.2 * math.exp(-((9 * x - 4) ** 2) - (9 * y - 7) ** 2)
    )


def fmt(v) -> str:
    if isinstance(v, (int, Fraction)):
        return scalar_to_json(v)
    return format(float(v), ".17g")


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _triangle(args) -> Triangle:
    t = triangle_from_json(_load_json(args.triangle)) if args.triangle else REFERENCE_TRIANGLE
    if not args.exact:
        t = Triangle(*[tuple(float(c) for c in p) for p in t.vertices])
    elif not t.exact:
        raise ValueError("--exact needs a triangle with integer or 'num/den' coordinates")
    return t


def _direction(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"direction must be 'ax,ay', got {text!r}")
    try:
        return tuple(_number_or_fraction(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid direction {text!r}") from None


def _number(s: str):
    try:
        return Fraction(int(s))
    except ValueError:
        return float(s)


def bary_grid(n: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """All points (i, j, k)/n with i + j + k = n, boundary included."""
    if n < 2:
        raise ValueError("grid resolution must be at least 2")
    return [(Fraction(n - i - j, n), Fraction(i, n), Fraction(j, n)) for i in range(n + 1) for j in range(n + 1 - i)]


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


# commands


def cmd_eval(args) -> int:
    basis = BasisId.parse(args.basis)
    n = get_basis(basis).size
    t = _triangle(args)
    dirs = list(args.dir or [])
    if len(dirs) > basis.degree:
        raise ValueError(f"{len(dirs)} derivative directions exceed degree {basis.degree}")
    if not args.exact:
        dirs = [tuple(float(c) for c in u) for u in dirs]
    coeffs = None
    if args.coeffs:
        obj = _load_json(args.coeffs)
        coeffs = [parse_scalar(c) for c in (obj["coeffs"] if isinstance(obj, dict) else obj)]
        if len(coeffs) != n:
            raise ValueError(f"{basis.name} needs {n} coefficients, got {len(coeffs)}")
    elif args.index is not None:
        if not 1 <= args.index <= n:
            raise ValueError(f"index must be in 1..{n}")
        coeffs = [int(j == args.index - 1) for j in range(n)]
    if not args.exact and coeffs is not None:
        coeffs = [float(c) for c in coeffs]

    rows = []
    for beta in bary_grid(args.grid):
        x = cartesian(t, beta if args.exact else tuple(float(b) for b in beta))
        stack = [eval_basis(basis, t, x)] + [eval_derivatives(basis, t, x, dirs[: m + 1]) for m in range(len(dirs))]
        if coeffs is None:
            rows.append([x[0], x[1], *stack[0]])
        else:
            rows.append([x[0], x[1], *(sum(c * v for c, v in zip(coeffs, vals)) for vals in stack)])
    if coeffs is None:
        if dirs:
            raise ValueError("derivative columns need --index or --coeffs")
        header = ["x", "y"] + [f"S{j}" for j in range(1, n + 1)]
    else:
        header = ["x", "y", "value"] + [f"d{m}" for m in range(1, len(dirs) + 1)]
    _write(_csv(header, rows), args.out)
    return 0


def _read_samples(path: str, t: Triangle, pts_bary) -> dict:
    """Map barycentric evaluation points to CSV values by nearest x,y."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].strip().startswith(("x", "#"))]
    data = np.array([[float(v) for v in r[:3]] for r in rows])
    out = {}
    for p in pts_bary:
        x = cartesian(t, p)
        dist = np.hypot(data[:, 0] - float(x[0]), data[:, 1] - float(x[1]))
        k = int(np.argmin(dist))
        if dist[k] > 1e-9 * max(1.0, t.diameter):
            raise ValueError(f"no sample at evaluation point ({float(x[0])}, {float(x[1])})")
        out[p] = _number_or_fraction(rows[k][2])
    return out


def _number_or_fraction(s: str):
    s = s.strip()
    return Fraction(s) if "/" in s else _number(s)


def cmd_qi(args) -> int:
    basis = BasisId.parse(args.basis)
    t = _triangle(args)
    if args.samples:
        table = _read_samples(args.samples, t, marsden.qi_evaluation_points(basis))
        coeffs = marsden.qi_apply_bary(basis, lambda p: table[p])
        f = SplineFunction(basis, coeffs, t)
    else:
        func = FUNCTIONS[args.func]
        f = marsden.qi_apply(basis, t, lambda x: func(x[0], x[1]))
    _write(json.dumps(f.to_json(), indent=2) + "\n", args.out)
    return 0


def cmd_points(args) -> int:
    """Evaluation points of the quasi-interpolant as a CSV template."""
    basis = BasisId.parse(args.basis)
    t = _triangle(args)
    rows = [cartesian(t, p) for p in marsden.qi_evaluation_points(basis)]
    _write(_csv(["x", "y"], rows), args.out)
    return 0


def cmd_join(args) -> int:
    cfg_obj = _load_json(args.config)
    left = SplineFunction.from_json(cfg_obj["left"])
    if left.basis != BasisId(3):
        raise ValueError("joins are defined for the cubic basis s3")
    apex = tuple(parse_scalar(c) for c in cfg_obj["right_apex"])
    order = int(cfg_obj.get("order", 2))
    cfg = smoothness.JoinConfiguration(left.triangle, apex, order)
    c = smoothness.sigma_reorder(left.coeffs)
    free = [parse_scalar(v) for v in cfg_obj.get("free", [0] * (16 - smoothness.FORCED[order]))]
    c_hat = smoothness.complete_join(cfg, c, free)
    f, f_hat = smoothness.spline_pair(cfg, c, c_hat)
    residuals = smoothness.verify_join(f, f_hat, order, int(cfg_obj.get("samples", 50)))
    ok = max(residuals) <= 1e-10
    report = {
        "c_hat_sigma": [scalar_to_json(v) for v in c_hat],
        "right": f_hat.to_json(),
        "residuals": [fmt(r) for r in residuals],
        "passed": ok,
    }
    _write(json.dumps(report, indent=2) + "\n", args.out)
    return 0 if ok else 1


def cmd_enumerate(args) -> int:
    if not 0 <= args.degree <= 3:
        raise ValueError("degree must be in 0..3")
    reps = simplex.enumerate_simplex_splines(args.degree, not args.no_filter)
    _write("".join(f"{k}\n" for k in reps), args.out)
    return 0


def cmd_tabulate(args) -> int:
    if args.what == "dims":
        text = "".join(f"{d} {basis_dimension(d)}\n" for d in range(4))
    elif args.what == "kappa":
        text = "".join(f"{n} {fmt(marsden.condition_number(n))}\n" for n in BASIS_NAMES if n != "s0")
    else:
        pts = marsden.domain_points(args.basis)
        text = "".join(f"{j} ({', '.join(fmt(c) for c in p)})\n" for j, p in enumerate(pts, start=1))
    _write(text, args.out)
    return 0


def cmd_verify(args) -> int:
    reports = verify.run_suites(args.suites, seed=args.seed)
    if args.json:
        text = json.dumps([r.to_json() for r in reports], indent=2) + "\n"
    else:
        text = "".join(r.line() + "\n" for r in reports)
    _write(text, args.out)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ps12", description="S-bases on the Powell-Sabin 12-split.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, basis=True):
        if basis:
            sp.add_argument("--basis", choices=BASIS_NAMES, default="s3")
        sp.add_argument("--triangle", help="triangle JSON file (default: the reference triangle)")
        sp.add_argument("--exact", action="store_true", help="rational arithmetic")
        sp.add_argument("--out", help="output file (default: stdout)")

    sp = sub.add_parser("eval", help="sample a basis or spline on a barycentric grid")
    common(sp)
    sp.add_argument("--grid", type=int, default=10)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--index", type=int, help="single basis function (1-based)")
    group.add_argument("--coeffs", help="JSON file with a coefficient list or a spline")
    sp.add_argument("--dir", type=_direction, action="append", help="derivative direction ax,ay (repeatable)")
    sp.set_defaults(handler=cmd_eval)

    sp = sub.add_parser("qi", help="quasi-interpolate a function")
    common(sp)
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--func", choices=sorted(FUNCTIONS), default="franke")
    src.add_argument("--samples", help="CSV of x,y,f rows at the evaluation points")
    sp.set_defaults(handler=cmd_qi)

    sp = sub.add_parser("qi-points", help="list the quasi-interpolant evaluation points")
    common(sp)
    sp.set_defaults(handler=cmd_points)

    sp = sub.add_parser("join", help="join a cubic spline across the edge [p1, p2]")
    sp.add_argument("config", help="JSON with left, right_apex, order and free")
    sp.add_argument("--out")
    sp.set_defaults(handler=cmd_join)

    sp = sub.add_parser("enumerate", help="list C^(d-1) simplex splines up to symmetry")
    sp.add_argument("--degree", "-d", type=int, required=True)
    sp.add_argument("--no-filter", action="store_true", help="skip the boundary B-spline filter")
    sp.add_argument("--out")
    sp.set_defaults(handler=cmd_enumerate)

    sp = sub.add_parser("tabulate", help="print dimensions, domain points or condition numbers")
    sp.add_argument("what", choices=["dims", "domain-points", "kappa"])
    sp.add_argument("--basis", choices=BASIS_NAMES, default="s3")
    sp.add_argument("--out")
    sp.set_defaults(handler=cmd_tabulate)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("suites", nargs="*", metavar="suite", help=f"any of: {', '.join(verify.SUITES)} (default: all)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(handler=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"ps12 {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
