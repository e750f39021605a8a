"""Ground-truth dimensions on a random quartic surface in P^3 over F_p.

Divisors cut on a smooth quartic S = {F = 0} by degree-d forms realize the
degree-d systems on a K3 surface with gamma = 4.  A fat point of
multiplicity m at a smooth point P of S imposes the vanishing of every
coefficient of total degree < m of G restricted to S in local coordinates
at P, where the restriction is computed through the implicit local series
z = phi(x, y) of the surface.  Degree-d multiples of F restrict to zero, so
the ambient projective dimension is C(d+3,3) - C(d-1,3) - 1 and the
measured dimension of the system is that minus the condition-matrix rank.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..core import point_conditions
from .config import (
    BudgetExceededError,
    OracleMeasurement,
    PrimeFieldConfig,
    SamplingError,
    derived_rng,
)
from .field import poly_roots, rank_mod_p
from .planar import _normalized_groups
from .series import ChartSingularError, Series2, eval_poly3_scalar, power_table, solve_implicit

_MAX_POINT_ATTEMPTS = 256
_MAX_SURFACE_ATTEMPTS = 32

Exponents = Tuple[int, int, int, int]


def monomial_exponents(degree: int, nvars: int = 4) -> List[Tuple[int, ...]]:
    """Exponent tuples of total degree `degree`, in a fixed lexicographic order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for e in range(degree, -1, -1):
        for rest in monomial_exponents(degree - e, nvars - 1):
            out.append((e,) + rest)
    return out


def binom3(n: int) -> int:
    """C(n, 3), zero for n < 3."""
    return n * (n - 1) * (n - 2) // 6 if n >= 3 else 0


def num_degree_forms(d: int) -> int:
    """Monomial count C(d+3, 3) of degree-d forms in four variables."""
    return binom3(d + 3)


def _dehomogenize(coeffs: Dict[Exponents, int]) -> Dict[Tuple[int, int, int], int]:
    """Set x0 = 1: exponents collapse onto the last three variables."""
    out: Dict[Tuple[int, int, int], int] = {}
    for (e0, e1, e2, e3), c in coeffs.items():
        key = (e1, e2, e3)
        out[key] = out.get(key, 0) + c
    return out


def _affine_partial(f: Dict[Tuple[int, int, int], int], slot: int, p: int):
    out: Dict[Tuple[int, int, int], int] = {}
    for exps, c in f.items():
        e = exps[slot - 1]
        if e > 0:
            key = list(exps)
            key[slot - 1] = e - 1
            key = tuple(key)
            out[key] = (out.get(key, 0) + e * c) % p
    return out


def _eval_affine(f, x1: int, x2: int, x3: int, p: int) -> int:
    return eval_poly3_scalar(f, x1, x2, x3, p)


@dataclass(frozen=True)
class SurfacePoint:
    """A smooth point of the sampled quartic with its local chart data.

    Affine coordinates live in the chart x0 = 1.  solved_slot is the affine
    coordinate (1-based) expressed as a series in the other two, which are
    the local parameters; the chart requires the partial of F along the
    solved coordinate to be nonzero at the point.
    """

    affine: Tuple[int, int, int]
    multiplicity: int
    solved_slot: int
    param_slots: Tuple[int, int]
    local_series: Optional[Series2]


@dataclass(frozen=True)
class QuarticSurfaceInstance:
    """A random quartic over F_p with sampled surface points and local data."""

    prime: int
    coefficients: Tuple[Tuple[Exponents, int], ...]
    points: Tuple[SurfacePoint, ...]

    def affine_poly(self) -> Dict[Tuple[int, int, int], int]:
        return _dehomogenize(dict(self.coefficients))

    def validate(self) -> None:
        """Check F(P) = 0 and chart smoothness at every stored point."""
        f = self.affine_poly()
        p = self.prime
        for pt in self.points:
            if _eval_affine(f, *pt.affine, p) != 0:
                raise AssertionError(f"stored point {pt.affine} is not on the surface")
            fs = _affine_partial(f, pt.solved_slot, p)
            if _eval_affine(fs, *pt.affine, p) == 0:
                raise AssertionError(f"chart is singular at {pt.affine}")

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "quartic": [
                {"exponents": list(e), "coefficient": c} for e, c in self.coefficients
            ],
            "points": [
                {
                    "affine": list(pt.affine),
                    "multiplicity": pt.multiplicity,
                    "solved_slot": pt.solved_slot,
                    "param_slots": list(pt.param_slots),
                    "local_series": (
                        None
                        if pt.local_series is None
                        else [
                            {"exponents": list(ij), "coefficient": c}
                            for ij, c in pt.local_series.coeffs
                        ]
                    ),
                }
                for pt in self.points
            ],
        }

    def dump(self, path, matrix=None) -> None:
        doc = self.to_dict()
        if matrix is not None:
            doc["condition_matrix"] = [list(map(int, row)) for row in matrix]
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2))


def _oriented_poly(f, param_slots, solved_slot):
    """Reorder affine exponents to (param1, param2, solved)."""
    a, b = param_slots
    out = {}
    for exps, c in f.items():
        out[(exps[a - 1], exps[b - 1], exps[solved_slot - 1])] = c
    return out


def expand_local_series(
    coefficients, point: SurfacePoint, order: int, p: int
) -> Series2:
    """Local series z = phi(s, t) of the quartic at a stored surface point.

    phi(0, 0) is the solved coordinate of the point and the quartic vanishes
    identically on (s, t) up to total degree `order` after substitution.
    Raises ChartSingularError when the solved-coordinate partial vanishes.
    """
    f = _dehomogenize(dict(coefficients))
    g = _oriented_poly(f, point.param_slots, point.solved_slot)
    a, b = point.param_slots
    p1 = point.affine[a - 1]
    p2 = point.affine[b - 1]
    p3 = point.affine[point.solved_slot - 1]
    return solve_implicit(g, p1, p2, p3, order, p)


def _sample_point(f_affine, p: int, rng, seen) -> Tuple[Tuple[int, int, int], int]:
    """One smooth surface point in the chart x0 = 1, with its solved slot."""
    partials = {slot: _affine_partial(f_affine, slot, p) for slot in (1, 2, 3)}
    for _ in range(_MAX_POINT_ATTEMPTS):
        a = rng.randrange(p)
        b = rng.randrange(p)
        restricted = [0, 0, 0, 0, 0]
        for (e1, e2, e3), c in f_affine.items():
            restricted[e3] = (restricted[e3] + c * pow(a, e1, p) * pow(b, e2, p)) % p
        if not any(restricted):
            continue  # the whole vertical line lies on the surface; resample
        roots = poly_roots(restricted, p, rng)
        if not roots:
            continue
        z = roots[rng.randrange(len(roots))]
        point = (a, b, z)
        if point in seen:
            continue
        solved = 0
        for slot in (3, 2, 1):  # largest available index first
            if _eval_affine(partials[slot], a, b, z, p) != 0:
                solved = slot
                break
        if solved == 0:
            continue  # singular point of the surface; resample
        return point, solved
    raise SamplingError("could not sample a smooth surface point within budget")


def sample_quartic_instance(
    groups: Sequence[Tuple[int, int]], p: int, rng
) -> QuarticSurfaceInstance:
    """Random quartic plus one smooth point per required fat point.

    groups is a normalized ((multiplicity, count), ...) multiset; the local
    series at a point of multiplicity m is expanded to order m - 1, enough
    to impose all conditions of total degree < m.
    """
    quartic_exps = monomial_exponents(4)
    for _ in range(_MAX_SURFACE_ATTEMPTS):
        coeffs = {e: rng.randrange(p) for e in quartic_exps}
        if not any(coeffs.values()):
            continue
        f_affine = {k: v for k, v in _dehomogenize(coeffs).items() if v % p}
        try:
            points: List[SurfacePoint] = []
            seen = set()
            for m, count in groups:
                for _ in range(count):
                    affine, solved = _sample_point(f_affine, p, rng, seen)
                    seen.add(affine)
                    params = tuple(s for s in (1, 2, 3) if s != solved)
                    series = None
                    if m >= 2:
                        g = _oriented_poly(f_affine, params, solved)
                        p1 = affine[params[0] - 1]
                        p2 = affine[params[1] - 1]
                        series = solve_implicit(g, p1, p2, affine[solved - 1], m - 1, p)
                    points.append(SurfacePoint(affine, m, solved, params, series))
            instance = QuarticSurfaceInstance(
                p, tuple(sorted(coeffs.items())), tuple(points)
            )
            instance.validate()
            return instance
        except (SamplingError, ChartSingularError):
            continue
    raise SamplingError("could not sample a usable quartic within budget")


def k3_condition_rows(d: int, instance: QuarticSurfaceInstance) -> List[List[int]]:
    """Condition rows over the degree-d monomial columns for every point."""
    p = instance.prime
    columns = monomial_exponents(d)
    rows: List[List[int]] = []
    for pt in instance.points:
        m = pt.multiplicity
        a1, a2, a3 = pt.affine
        if m == 1:
            x1 = [pow(a1, e, p) for e in range(d + 1)]
            x2 = [pow(a2, e, p) for e in range(d + 1)]
            x3 = [pow(a3, e, p) for e in range(d + 1)]
            rows.append([x1[e1] * x2[e2] % p * x3[e3] % p for (_, e1, e2, e3) in columns])
            continue
        order = m - 1
        sa, sb = pt.param_slots
        var_series: Dict[int, Series2] = {
            sa: Series2.linear(p, order, pt.affine[sa - 1], 1, 0),
            sb: Series2.linear(p, order, pt.affine[sb - 1], 0, 1),
            pt.solved_slot: pt.local_series.truncate(order),
        }
        tables = {slot: power_table(var_series[slot], d) for slot in (1, 2, 3)}
        coeff_positions = [
            (i, j) for i in range(order + 1) for j in range(order + 1 - i)
        ]
        point_rows = [[0] * len(columns) for _ in coeff_positions]
        for col, (_, e1, e2, e3) in enumerate(columns):
            composed = tables[1][e1] * tables[2][e2] * tables[3][e3]
            values = composed.as_dict()
            for ridx, ij in enumerate(coeff_positions):
                point_rows[ridx][col] = values.get(ij, 0)
        rows.extend(point_rows)
    return rows


def measure_k3(
    d: int, points, cfg: PrimeFieldConfig, prime: int = 0
) -> OracleMeasurement:
    """Monte-Carlo dimension of the degree-d system through fat points on a
    random quartic, min-aggregated over independently seeded trials."""
    if d < 1:
        raise ValueError("d must be positive")
    p = prime or cfg.prime
    groups = _normalized_groups(points)
    ncols = num_degree_forms(d)
    nrows = sum(n * point_conditions(m) for m, n in groups)
    if nrows > cfg.budget_rows or ncols > cfg.budget_rows:
        raise BudgetExceededError(
            f"quartic condition matrix {nrows}x{ncols} exceeds budget {cfg.budget_rows}"
        )
    ambient = ncols - binom3(d - 1)  # degree-d multiples of F cut no divisor
    trial_dims = []
    for trial in range(cfg.trials):
        rng = derived_rng(cfg.seed, "k3", p, d, groups, trial)
        instance = sample_quartic_instance(groups, p, rng)
        rows = k3_condition_rows(d, instance)
        rank = rank_mod_p(rows, p) if rows else 0
        trial_dims.append(ambient - rank - 1)
    dim = min(trial_dims)
    low_confidence = len(set(trial_dims)) > 1
    return OracleMeasurement(dim, tuple(trial_dims), low_confidence, p, nrows, ncols)


def measure_k3_cross_checked(d: int, points, cfg: PrimeFieldConfig) -> OracleMeasurement:
    """Measure over cfg.prime and, when set, cfg.prime2; disagreement between
    the primes (or between trials) flags the result LOW_CONFIDENCE."""
    first = measure_k3(d, points, cfg)
    if cfg.prime2 is None:
        return first
    second = measure_k3(d, points, cfg, prime=cfg.prime2)
    low = first.low_confidence or second.low_confidence or first.dim != second.dim
    return OracleMeasurement(
        min(first.dim, second.dim),
        first.trial_dims + second.trial_dims,
        low,
        cfg.prime,
        first.rows,
        first.cols,
    )


def k3_dim_oracle(d: int, points, cfg: PrimeFieldConfig) -> int:
    """Measured dimension of L^4(d, ...) on a random quartic (see measure_k3)."""
    return measure_k3(d, points, cfg).dim
