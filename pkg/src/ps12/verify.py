"""Verification suites for the whole library.

Each suite checks one group of identities or published values and
returns a :class:`Report`.  Randomized suites draw rational points from a
seeded generator, so reports are reproducible.  The CLI ``verify``
command and the acceptance tests both run these suites.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import calculus, marsden, sbasis, simplex, smoothness
from .geometry import (
    POINT_BARY,
    SUBTRIANGLES,
    Point2,
    Triangle,
    barycentric_many,
    cartesian,
    directional,
    locate_bary,
)
from .sbasis import ALL_BASES, BasisId, SplineFunction, get_basis

F = Fraction


@dataclass
class Report:
    name: str
    passed: bool
    worst: float
    runtime: float
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "; ".join(f"{k}={v}" for k, v in self.details.items())
        return f"[{status}] {self.name}: worst={self.worst:.3g} ({self.runtime:.1f}s){'; ' + extra if extra else ''}"

    def to_json(self) -> dict:
        d = asdict(self)
        d["details"] = {k: str(v) for k, v in self.details.items()}
        return d


def _timed(name: str, fn: Callable[[], tuple[bool, float, dict]]) -> Report:
    t0 = time.perf_counter()
    ok, worst, details = fn()
    return Report(name, bool(ok), float(worst), time.perf_counter() - t0, details)


def random_point_in(rng: random.Random, k: int, den: int = 97) -> tuple:
    """Exact barycentric point strictly inside subtriangle k (1-based)."""
    while True:
        a, b = rng.randint(1, den - 2), rng.randint(1, den - 2)
        if a + b < den:
            break
    lam = (F(den - a - b, den), F(a, den), F(b, den))
    tri = [POINT_BARY[i - 1] for i in SUBTRIANGLES[k - 1]]
    return tuple(sum(lam[v] * tri[v][r] for v in range(3)) for r in range(3))


def random_point(rng: random.Random, den: int = 97) -> tuple:
    return random_point_in(rng, rng.randint(1, 12), den)


def random_direction(rng: random.Random, den: int = 13) -> tuple:
    a, b = F(rng.randint(-den, den), den), F(rng.randint(-den, den), den)
    return (-a - b, a, b)


def random_triangle(rng: random.Random) -> Triangle:
    while True:
        pts = [Point2(F(rng.randint(-20, 20), rng.randint(1, 5)), F(rng.randint(-20, 20), rng.randint(1, 5))) for _ in range(3)]
        try:
            t = Triangle(*pts)
        except ValueError:
            continue
        if abs(t.signed_area2) > 1:
            return t


# oracle equivalence


def suite_oracle(seed: int = 0, per_subtriangle: int = 50) -> Report:
    """Matrix products against the recursive simplex-spline oracle."""

    def run():
        rng = random.Random(seed)
        exact_bad = 0
        worst_float = 0.0
        count = 0
        for bid in ALL_BASES:
            spec = get_basis(bid)
            pts = [random_point_in(rng, k) for k in range(1, 13) for _ in range(per_subtriangle)]
            fast_float = sbasis.eval_basis_many_bary(bid, np.array([[float(c) for c in p] for p in pts]))
            for n, beta in enumerate(pts):
                want = [c * simplex.oracle_eval_bary(K, beta) for c, K in spec.elements]
                got = sbasis.eval_basis_bary(bid, beta)
                exact_bad += sum(1 for a, b in zip(want, got) if a != b)
                for a, b in zip(want, fast_float[n]):
                    worst_float = max(worst_float, abs(float(a) - b) / max(1.0, abs(float(a))))
                count += 1
        return exact_bad == 0 and worst_float <= 1e-12, worst_float, {
            "points": count,
            "exact_mismatches": exact_bad,
        }

    return _timed("oracle equivalence", run)


# Marsden identity and dual recurrence


def suite_marsden(seed: int = 0, samples: int = 200) -> Report:
    def run():
        rng = random.Random(seed)
        worst = F(0)
        t = random_triangle(rng)
        for _ in range(samples):
            x = cartesian(t, random_point(rng))
            y = (F(rng.randint(-30, 30), 7), F(rng.randint(-30, 30), 11))
            for bid in ALL_BASES:
                worst = max(worst, marsden.marsden_residual(bid, t, x, y))
            for d in (1, 2, 3):
                for variant in ("standard", "tilde") if d >= 2 else ("standard",):
                    res = marsden.dual_recurrence_residual(d, t, x, y, variant)
                    worst = max(worst, max(abs(r) for r in res))
        return worst == 0, float(worst), {"samples_per_degree": samples}

    return _timed("Marsden identity and dual recurrence", run)


# exchange identities


def _chains():
    out = []
    for variant in ("standard", "tilde"):
        mats = sbasis.recursion_matrices(3, variant)
        out.append((f"R1,R2 {variant}", sbasis.recursion_matrices(2, variant)[0], sbasis.recursion_matrices(2, variant)[1]))
        out.append((f"R2,R3 {variant}", mats[1], mats[2]))
    return out


def suite_exchange(seed: int = 0, samples: int = 100) -> Report:
    def run():
        rng = random.Random(seed)
        bad = 0
        for _ in range(samples):
            x, y = random_point(rng), random_point(rng)
            u = random_direction(rng)
            for _, a, b in _chains():
                if not np.array_equal(a(x).dot(b(y)), a(y).dot(b(x))):
                    bad += 1
                if not np.array_equal(a(u).dot(b(x)), a(x).dot(b(u))):
                    bad += 1
        return bad == 0, bad, {"pairs": samples}

    return _timed("exchange identities", run)


# condition numbers

KAPPA = {"s1": F(1), "s2": F(28, 9), "s2t": F(295, 9), "s3": F(415, 8), "s3t": F(1297, 17)}


def suite_kappa(seed: int = 0) -> Report:
    def run():
        rng = random.Random(seed)
        got = {}
        ok = True
        t2 = random_triangle(rng)
        for name, want in KAPPA.items():
            got[name] = marsden.condition_number(name)
            ok &= got[name] == want
            ok &= marsden.collocation_matrix(name) == marsden.collocation_matrix(name, t2)
        worst = max(abs(float(got[n] - KAPPA[n])) for n in KAPPA)
        return ok, worst, {n: str(v) for n, v in got.items()}

    return _timed("condition numbers", run)


# quasi-interpolation

#: Values of B300, B210, B111 at l_1..l_25 as published.
DUAL_AVERAGE_TABLE = {
    (3, 0, 0): "1 125/216 1/8 1/216 0 0 0 0 0 1/216 1/8 125/216 8/27 1/216 1/216 1/27 27/64 1/64 0 0 1/64 27/64 1/8 1/64 1/64",
    (2, 1, 0): "0 25/72 3/8 5/72 0 0 0 0 0 0 0 0 2/9 1/18 1/72 1/9 27/64 9/64 0 0 0 0 3/16 3/32 3/64",
    (1, 1, 1): "0 0 0 0 0 0 0 0 0 0 0 0 1/9 1/9 1/9 2/9 0 0 0 0 0 0 3/16 3/16 3/16",
}


def _multi_indices(d: int):
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def suite_qi(seed: int = 0, samples: int = 20) -> Report:
    def run():
        rng = random.Random(seed)
        bad = []
        for bid in ALL_BASES:
            if bid.degree == 0:
                continue
            spec = get_basis(bid)
            for idx in _multi_indices(bid.degree):
                coeffs = marsden.qi_apply_bary(bid, lambda b: sbasis.bernstein_value(idx, b))
                if coeffs != sbasis.bernstein_coeffs(bid, idx):
                    bad.append(f"{bid.name}{idx} coeffs")
                for _ in range(samples):
                    beta = random_point(rng)
                    val = sum(c * v for c, v in zip(coeffs, sbasis.eval_basis_bary(bid, beta)))
                    if val != sbasis.bernstein_value(idx, beta):
                        bad.append(f"{bid.name}{idx} value")
                        break
        b111 = marsden.qi_apply_bary("s3", lambda b: sbasis.bernstein_value((1, 1, 1), b))
        if b111[12:] != [F(1, 4), F(1, 4), F(1, 4), F(1)] or any(b111[:12]):
            bad.append("B111 coefficients")
        s13 = marsden.qi_functional("s3", 16)(lambda b: sbasis.eval_basis_bary("s3", b)[0])
        if s13 != F(1, 6):
            bad.append(f"l16(S1)={s13}")
        pts = marsden.dual_point_averages_cubic()
        for idx, row in DUAL_AVERAGE_TABLE.items():
            want = [F(v) for v in row.split()]
            got = [sbasis.bernstein_value(idx, p) for p in pts]
            if got != want:
                bad.append(f"table {idx}")
        return not bad, len(bad), {"failures": ",".join(bad) or "none", "l16(S1)": s13}

    return _timed("quasi-interpolant reproduction", run)


# derivatives

#: Derivative restriction table: row i -> three orders, each a list of
#: (B-spline index, coefficient as a function of alpha).
def _restriction_table(a):
    a1, a2, a3 = a
    a13, a23 = a1 - a3, a2 - a3
    return {
        1: ({1: 1}, {1: 2 * a1}, {1: 4 * a1 * a1}),
        2: ({2: 1}, {1: 2 * a2, 2: a13}, {1: 2 * a2 * (4 * a1 + a2), 2: a13 * a13}),
        3: ({3: 1}, {2: a2, 3: a1}, {1: 2 * a2 * a2, 2: 2 * a1 * a2, 3: 2 * a1 * a1}),
        4: ({4: 1}, {3: a23, 4: 2 * a1}, {2: a23 * a23, 3: 2 * a1 * (a1 + 4 * a2)}),
        5: ({5: 1}, {4: 2 * a2}, {3: 4 * a2 * a2}),
        6: ({}, {1: 2 * a3}, {1: 2 * a3 * (4 * a1 + a3)}),
        7: ({}, {2: 2 * a3}, {1: 8 * a2 * a3, 2: 2 * a3 * (3 * a1 + a2)}),
        8: ({}, {3: 2 * a3}, {2: 2 * a3 * (3 * a2 + a1), 3: 8 * a1 * a3}),
        9: ({}, {4: 2 * a3}, {3: 2 * a3 * (4 * a2 + a3)}),
        10: ({}, {}, {1: 2 * a3 * a3, 2: a3 * a3}),
        11: ({}, {}, {2: a3 * a3}),
        12: ({}, {}, {2: a3 * a3, 3: 2 * a3 * a3}),
        13: ({}, {}, {}),
        14: ({}, {}, {}),
        15: ({}, {}, {}),
        16: ({}, {}, {}),
    }


def restriction_table_check(alpha) -> tuple[int, int]:
    """(mismatching cells, cells checked) for one direction."""
    table = _restriction_table(alpha)
    bad = 0
    terms = 0
    for i, row in table.items():
        for order, cell in enumerate(row):
            got = calculus.edge_derivative_restriction(i, order, alpha)
            coeffs = list(got.coeffs) if got is not None else [F(0)] * (5 - order)
            want = [F(cell.get(m, 0)) for m in range(1, 6 - order)]
            terms += 1
            if coeffs != want:
                bad += 1
    return bad, terms


def _fd_ratio(f: SplineFunction, x, u, second: bool, h: float) -> tuple[float, float]:
    """Central-difference errors at steps h and h/2."""
    t = f.triangle
    errs = []
    for step in (h, h / 2):
        if second:
            exact = _deriv_value(f, x, [u, u])
            plus = _deriv_value(f, (x[0] + step * u[0], x[1] + step * u[1]), [u])
            minus = _deriv_value(f, (x[0] - step * u[0], x[1] - step * u[1]), [u])
        else:
            exact = _deriv_value(f, x, [u])
            plus = f((x[0] + step * u[0], x[1] + step * u[1]))
            minus = f((x[0] - step * u[0], x[1] - step * u[1]))
        errs.append(abs((plus - minus) / (2 * step) - exact))
    return errs[0], errs[1]


def _deriv_value(f: SplineFunction, x, dirs) -> float:
    vals = calculus.eval_derivatives(f.basis, f.triangle, x, dirs)
    return float(sum(float(c) * float(v) for c, v in zip(f.coeffs, vals)))


def suite_derivatives(seed: int = 0, points: int = 20) -> Report:
    """Finite-difference convergence and the restriction table.

    The O(h^2) ratio is observable only where the truncation error is
    nonzero: first derivatives of cubic pieces.  Central differences are
    exact for first derivatives of quadratic pieces and for second
    derivatives of cubic pieces, so there the error must stay at roundoff.
    A second pass with h = 1e-5 diam checks a 1e-6 relative tolerance.
    """

    def run():
        rng = random.Random(seed)
        t = Triangle(Point2(0.0, 0.0), Point2(1.3, 0.2), Point2(0.4, 1.1))
        ratios = []
        roundoff = 0.0
        small_step = 0.0
        for bid in (BasisId(2), BasisId(2, "tilde"), BasisId(3), BasisId(3, "tilde")):
            n = get_basis(bid).size
            done = 0
            while done < points:
                coeffs = [rng.uniform(-1, 1) for _ in range(n)]
                f = SplineFunction(bid, coeffs, t)
                k = rng.randint(1, 12)
                beta = tuple(float(c) for c in random_point_in(rng, k))
                x = cartesian(t, beta)
                ang = rng.uniform(0, 2 * np.pi)
                u = (np.cos(ang), np.sin(ang))
                h = 2e-3 * t.diameter
                # the whole stencil must stay inside one polynomial piece
                probe = [(x[0] + s * h * u[0], x[1] + s * h * u[1]) for s in (-1.5, 1.5)]
                if any(locate_bary(tuple(barycentric_many(t, [p])[0])) != k for p in probe):
                    continue
                e1, e2 = _fd_ratio(f, x, u, False, h)
                if bid.degree == 3:
                    ratios.append(e1 / e2)
                else:
                    # central differences are exact on quadratic pieces
                    roundoff = max(roundoff, e1, e2)
                if bid.degree == 3:
                    roundoff = max(roundoff, *_fd_ratio(f, x, u, True, h))
                # tolerance check at the small step
                hs = 1e-5 * t.diameter
                for second in (False, True) if bid.degree == 3 else (False,):
                    err = _fd_ratio(f, x, u, second, hs)[0]
                    scale = max(1.0, abs(_deriv_value(f, x, [u, u] if second else [u])))
                    small_step = max(small_step, err / scale)
                done += 1
        rat_ok = all(3.5 <= r <= 4.5 for r in ratios) and roundoff <= 1e-8 and small_step <= 1e-6
        bad_cells = 0
        terms = 0
        for _ in range(3):
            b, terms = restriction_table_check(random_direction(rng))
            bad_cells += b
        worst = max(abs(r - 4) for r in ratios)
        return rat_ok and bad_cells == 0, worst, {
            "ratio_min": round(min(ratios), 4),
            "ratio_max": round(max(ratios), 4),
            "exact_case_max_error": f"{roundoff:.2e}",
            "small_step_rel_error": f"{small_step:.2e}",
            "table_cells": terms,
            "table_mismatches": bad_cells,
        }

    return _timed("derivatives", run)


# joins


def suite_joins(seed: int = 0, cases: int = 20, samples: int = 50) -> Report:
    def run():
        rng = random.Random(seed)
        worst = 0.0
        weakest_perturbation = np.inf
        for _ in range(cases):
            t = Triangle(
                Point2(rng.uniform(-1, 0), rng.uniform(-0.2, 0.2)),
                Point2(rng.uniform(1, 2), rng.uniform(-0.2, 0.2)),
                Point2(rng.uniform(-0.5, 1.5), rng.uniform(0.5, 1.5)),
            )
            apex = (rng.uniform(-0.5, 1.5), rng.uniform(-1.5, -0.5))
            cfg = smoothness.JoinConfiguration(t, apex, 2)
            c = [rng.uniform(-1, 1) for _ in range(16)]
            ch = smoothness.complete_join(cfg, c, [rng.uniform(-1, 1) for _ in range(4)])
            res = smoothness.verify_join(*smoothness.spline_pair(cfg, c, ch), 2, samples)
            worst = max(worst, max(res))
            for i in range(12):
                pert = list(ch)
                pert[i] += 1.0
                res = smoothness.verify_join(*smoothness.spline_pair(cfg, c, pert), 2, samples)
                weakest_perturbation = min(weakest_perturbation, max(res))
        return worst <= 1e-10 and weakest_perturbation > 1e-3, worst, {
            "min_perturbed_residual": f"{weakest_perturbation:.3g}"
        }

    return _timed("smoothness joins", run)


# enumeration

PUBLISHED_CLASSES = {
    1: ["2001010000", "1101010000", "1111000000", "1101000001", "1110000001",
        "1100110000", "1001110000", "1001010001", "0001110001"],
    2: ["3001010000", "2101010000", "2111000000", "1101110000", "1111010000"],
    3: ["4001010000", "3101010000", "3111000000", "2220000000", "2211000000",
        "2111010000", "1111110000"],
}
PUBLISHED_QUADRATIC_UNFILTERED = ["3110000000", "2210000000", "2111000000", "1111010000",
                                  "2101010000", "1101110000", "3001010000"]


def _orbits(strings) -> set:
    return {simplex.canonical_form(simplex.KnotMultiset.parse(s).mu) for s in strings}


def suite_enumeration(seed: int = 0) -> Report:
    def run():
        details = {}
        ok = True
        for d, rows in PUBLISHED_CLASSES.items():
            got = {k.mu for k in simplex.enumerate_simplex_splines(d, True)}
            match = got == _orbits(rows)
            details[f"d{d}_filtered"] = f"{len(got)}{'' if match else ' (mismatch)'}"
            ok &= match and len(got) == len(rows)
        got2 = {k.mu for k in simplex.enumerate_simplex_splines(2, False)}
        want2 = _orbits(PUBLISHED_QUADRATIC_UNFILTERED)
        extra = sorted("".join(map(str, m)) for m in got2 - want2)
        details["d2_unfiltered"] = len(got2)
        if extra:
            details["d2_unfiltered_extra"] = ",".join(extra)
        ok &= got2 == want2
        return ok, 0 if ok else 1, details

    return _timed("enumeration", run)


# supports


def suite_supports(seed: int = 0) -> Report:
    def run():
        ok = True
        s2 = get_basis("s2").index_sets
        s3 = get_basis("s3").index_sets
        ok &= all(len(g) == 6 for g in s2)
        ok &= all(len(g) == (11 if k < 6 else 10) for k, g in enumerate(s3))
        ok &= s2 == sbasis.TABLE_G2
        ok &= get_basis("s1").index_sets == sbasis.TABLE_G1
        ok &= s3 == tuple(tuple(sorted(set(a) | set(sbasis.TABLE_G3_COMMON))) for a in sbasis.TABLE_G3_BAR)
        return ok, 0 if ok else 1, {
            "s2_per_subtriangle": sorted({len(g) for g in s2}),
            "s3_border": sorted({len(g) for g in s3[:6]}),
            "s3_inner": sorted({len(g) for g in s3[6:]}),
        }

    return _timed("supports and local linear independence", run)


# partition of unity and positivity


def suite_partition(seed: int = 0, samples: int = 10_000, exact_samples: int = 100) -> Report:
    def run():
        rng = np.random.default_rng(seed)
        pyrng = random.Random(seed)
        worst_sum = 0.0
        worst_neg = 0.0
        exact_ok = True
        t = Triangle(Point2(0.0, 0.0), Point2(2.0, 0.5), Point2(0.7, 1.9))
        for bid in ALL_BASES:
            w = rng.dirichlet((1, 1, 1), size=samples)
            xs = w @ np.array([list(t.p1), list(t.p2), list(t.p3)])
            vals = sbasis.eval_basis_many(bid, t, xs)
            worst_sum = max(worst_sum, float(np.max(np.abs(vals.sum(axis=1) - 1))))
            worst_neg = max(worst_neg, float(-min(0.0, vals.min())))
            for _ in range(exact_samples):
                v = sbasis.eval_basis_bary(bid, random_point(pyrng))
                exact_ok &= sum(v) == 1 and min(v) >= 0
        ok = worst_sum <= 1e-12 and worst_neg <= 1e-12 and exact_ok
        return ok, max(worst_sum, worst_neg), {"max_sum_error": f"{worst_sum:.2e}", "exact": exact_ok}

    return _timed("partition of unity and positivity", run)


# stability and control-point gap


def _bary_grid(n: int) -> np.ndarray:
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    mask = i + j <= n
    i, j = i[mask], j[mask]
    return np.column_stack([n - i - j, i, j]) / n


def suite_stability(seed: int = 0, vectors: int = 20, grid: int = 100) -> Report:
    def run():
        rng = random.Random(seed)
        t = Triangle(Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(0.3, 0.8))
        ok = True
        worst_ratio = 0.0
        for name in ("s2", "s2t", "s3", "s3t"):
            kappa = float(marsden.condition_number(name))
            pts = np.vstack([_bary_grid(grid), np.array(marsden.domain_points(name), dtype=float)])
            vals = sbasis.eval_basis_many_bary(name, pts)
            for _ in range(vectors):
                c = np.array([rng.uniform(-1, 1) for _ in range(vals.shape[1])])
                fmax = float(np.max(np.abs(vals @ c)))
                cmax = float(np.max(np.abs(c)))
                ok &= cmax / kappa <= fmax <= cmax * (1 + 1e-12)
                f = SplineFunction(BasisId.parse(name), list(c), t)
                bound, observed = marsden.control_point_gap(f)
                ok &= observed <= bound
                if bound > 0:
                    worst_ratio = max(worst_ratio, observed / bound)
        return ok, worst_ratio, {"max_gap_over_bound": f"{worst_ratio:.3g}"}

    return _timed("stability and control-point gap", run)


SUITES: dict[str, Callable[..., Report]] = {
    "oracle": suite_oracle,
    "marsden": suite_marsden,
    "exchange": suite_exchange,
    "kappa": suite_kappa,
    "qi": suite_qi,
    "derivatives": suite_derivatives,
    "joins": suite_joins,
    "enumeration": suite_enumeration,
    "supports": suite_supports,
    "partition": suite_partition,
    "stability": suite_stability,
}


def run_suites(names=None, seed: int = 0) -> list[Report]:
    names = list(names) if names else list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {', '.join(unknown)}")
    return [SUITES[n](seed=seed) for n in names]
